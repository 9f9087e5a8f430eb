"""Command-line front end.

Subcommands compile and inspect constraint machines, verify them
against the independent pattern matcher, replay token streams, solve
and sample hitting times, and run seeded training experiments with
CSV/JSON outputs and companion figures.

Exit codes: 0 success, 1 user or configuration error, 2 internal error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

import numpy as np

from .agents import load_experiment, train
from .automata import RegexMatcher, parse_regex, to_dot, to_json
from .constraint import ConstraintSpec, RecognizerRuntime, load
from .errors import FlcError, ParseError, ValidationError
from .shaping import TvEstimator, exact_hitting_times


# ---------------------------------------------------------------- compile

def _bundle_json(spec: ConstraintSpec) -> str:
    """Everything a foreign monitor needs in one document."""
    doc = {
        "name": spec.name,
        "alphabet": list(spec.alphabet),
        "dfa": json.loads(to_json(spec.dfa)),
        "cost": list(spec.cost_map),
        "mode": spec.violation_mode.value,
        "limit": spec.limit,
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _summary(spec: ConstraintSpec) -> str:
    nonzero = [f"q{q}={c!r}" for q, c in enumerate(spec.cost_map) if c != 0.0]
    lines = [
        f"name: {spec.name}",
        f"alphabet: {' '.join(spec.alphabet)}",
        f"states: {spec.dfa.num_states}",
        f"start: q{spec.dfa.start}",
        "accepting: " + " ".join(f"q{q}" for q in sorted(spec.dfa.accepting)),
        f"source: {spec.source}",
        f"translator: {type(spec.translator).__name__}",
        f"mode: {spec.violation_mode.value}",
        f"limit: {spec.limit!r}",
        "cost: " + (" ".join(nonzero) if nonzero else "none"),
    ]
    return "\n".join(lines) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _cmd_compile(args) -> int:
    spec = load(args.spec)
    if args.dot:
        text = to_dot(spec.dfa)
    elif args.json:
        text = to_json(spec.dfa)
    elif args.bundle:
        text = _bundle_json(spec)
    else:
        text = _summary(spec)
    _emit(text, args.out)
    return 0


# ------------------------------------------------------------------ check

def _cmd_check(args) -> int:
    spec = load(args.spec)
    rt = RecognizerRuntime(spec)
    for i, token in enumerate(args.tokens, start=1):
        outcome = rt.step_token(token)
        line = f"step {i}: {token} -> q{outcome.state}"
        if outcome.violated:
            line += f"  violation at step {i}"
        print(line)
    accepting = "yes" if rt.q in spec.dfa.accepting else "no"
    print(f"final: q{rt.q}  accepting: {accepting}  "
          f"violations: {rt.violation_count}  cost: {rt.episode_cost!r}")
    return 0


# ------------------------------------------------------------------ equiv

def _oracle_matcher(spec: ConstraintSpec) -> RegexMatcher:
    try:
        ast = parse_regex(spec.source, spec.alphabet)
    except FlcError:
        raise ValidationError(
            "oracle comparison needs a pattern-based spec; this one is "
            f"built programmatically ({spec.source})") from None
    return RegexMatcher(ast, spec.alphabet)


def _describe(word: tuple[str, ...]) -> str:
    return " ".join(word) if word else "<empty word>"


def _equiv_exhaustive(spec, matcher, max_len):
    """DFS over the prefix tree, both machines advanced in lock step."""
    dfa = spec.dfa
    symbols = list(spec.alphabet)
    checked = 0
    stack = [((), dfa.start, matcher.start())]
    while stack:
        word, q, pos = stack.pop()
        checked += 1
        if (q in dfa.accepting) != matcher.is_accepting(pos):
            return checked, word
        if len(word) == max_len:
            continue
        for i, sym in enumerate(symbols):
            stack.append((word + (sym,), dfa.delta[q][i], matcher.step(pos, sym)))
    return checked, None


def _equiv_sampled(spec, matcher, max_len, samples, seed):
    dfa = spec.dfa
    symbols = list(spec.alphabet)
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        length = int(rng.integers(0, max_len + 1))
        word = tuple(symbols[int(i)]
                     for i in rng.integers(0, len(symbols), size=length))
        q = dfa.start
        pos = matcher.start()
        for sym in word:
            q = dfa.delta[q][spec.alphabet.index(sym)]
            pos = matcher.step(pos, sym)
        if (q in dfa.accepting) != matcher.is_accepting(pos):
            return word
    return None


def _cmd_equiv(args) -> int:
    spec = load(args.spec)
    matcher = _oracle_matcher(spec)
    if args.samples is not None:
        witness = _equiv_sampled(spec, matcher, args.max_len, args.samples,
                                 args.seed)
        if witness is None:
            print(f"EQUIVALENT (sampled): {args.samples} words, "
                  f"max length {args.max_len}, seed {args.seed}")
            return 0
    else:
        checked, witness = _equiv_exhaustive(spec, matcher, args.max_len)
        if witness is None:
            print(f"EQUIVALENT (exhaustive): {checked} words, "
                  f"max length {args.max_len}")
            return 0
    print(f"MISMATCH: {_describe(witness)}", file=sys.stderr)
    return 1


# -------------------------------------------------------------------- run

def _write_outputs(summary, base: Path, figures: bool) -> None:
    # plain concatenation: the basename may contain dots (sweep-lam0.01)
    base.parent.mkdir(parents=True, exist_ok=True)
    csv_path = Path(f"{base}.csv")
    json_path = Path(f"{base}.json")
    csv_path.write_text(summary.to_csv(), encoding="utf-8")
    json_path.write_text(summary.to_json(), encoding="utf-8")
    print(f"wrote {csv_path}")
    print(f"wrote {json_path}")
    if figures:
        from . import report
        png = report.render_run(summary, Path(f"{base}.png"))
        print(f"wrote {png}")


def _out_base(args, config) -> Path:
    return Path(args.out or config.out or Path(args.config).stem)


def _cmd_run(args) -> int:
    config = load_experiment(args.config)
    summary = train(config)
    _write_outputs(summary, _out_base(args, config), not args.no_figures)
    agg = summary.aggregate()
    print(f"eval return: mean {agg['eval']['return']['mean']!r} "
          f"std {agg['eval']['return']['std']!r}")
    print(f"eval violations/episode: mean {agg['eval']['violations']['mean']!r} "
          f"std {agg['eval']['violations']['std']!r}")
    print(f"cost rate: mean {agg['cost_rate']['mean']!r} "
          f"std {agg['cost_rate']['std']!r}")
    return 0


# ------------------------------------------------------------------ sweep

_SWEEP_HEADER = ("lambda,eval_return_mean,eval_return_std,"
                 "eval_violations_mean,eval_violations_std,"
                 "eval_cost_mean,eval_cost_std,cost_rate_mean,cost_rate_std")


def _cmd_sweep(args) -> int:
    config = load_experiment(args.config)
    if config.enforcement != "shaping":
        raise ValidationError(
            "sweep varies the shaping coefficient; the config must use "
            f"shaping enforcement, got {config.enforcement!r}")
    for lam in args.lams:
        if lam < 0:
            raise ValidationError(
                f"coefficients are positive magnitudes, got {lam}")
    base = _out_base(args, config)
    base.parent.mkdir(parents=True, exist_ok=True)
    rows = [_SWEEP_HEADER]
    aggregates = []
    for lam in args.lams:
        summary = train(dataclasses.replace(config, lam=lam))
        run_base = base.with_name(f"{base.name}-lam{lam:g}")
        _write_outputs(summary, run_base, figures=False)
        agg = summary.aggregate()
        aggregates.append(agg)
        e = agg["eval"]
        rows.append(f"{lam:g},{e['return']['mean']!r},{e['return']['std']!r},"
                    f"{e['violations']['mean']!r},{e['violations']['std']!r},"
                    f"{e['cost']['mean']!r},{e['cost']['std']!r},"
                    f"{agg['cost_rate']['mean']!r},{agg['cost_rate']['std']!r}")
        print(f"lambda {lam:g}: eval violations/episode "
              f"{e['violations']['mean']!r}, return {e['return']['mean']!r}")
    table = base.with_name(f"{base.name}-sweep.csv")
    table.write_text("\n".join(rows) + "\n", encoding="utf-8")
    print(f"wrote {table}")
    if not args.no_figures:
        from . import report
        png = report.render_sweep(args.lams, aggregates,
                                  base.with_name(f"{base.name}-sweep.png"))
        print(f"wrote {png}")
    return 0


# ---------------------------------------------------------------- hitting

def _load_chain(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror or exc}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from None
    if isinstance(doc, list):
        doc = {"chain": doc}
    if not isinstance(doc, dict) or "chain" not in doc:
        raise ValidationError(
            f'{path}: expected {{"chain": [[...], ...]}} or a bare matrix')
    return doc


def _sample_hitting(chain, targets, start, episodes, horizon, seed):
    """Walks from the start state; a target ends the walk, the horizon censors."""
    n = len(chain)
    estimator = TvEstimator(n, targets)
    cum = np.cumsum(np.asarray(chain, dtype=float), axis=1)
    rng = np.random.default_rng(seed)
    target_set = set(targets)
    for _ in range(episodes):
        q = start
        states = [q]
        hits = []
        for t in range(1, horizon + 1):
            draw = rng.random()
            q = min(int(np.searchsorted(cum[q], draw, side="right")), n - 1)
            states.append(q)
            if q in target_set:
                hits.append(t)
                break
        estimator.update(states, hits)
    return estimator


def _cmd_hitting(args) -> int:
    spec = load(args.spec)
    doc = _load_chain(args.chain)
    chain = doc["chain"]
    if len(chain) != spec.dfa.num_states:
        raise ValidationError(
            f"chain has {len(chain)} states but the machine has "
            f"{spec.dfa.num_states}")
    targets = doc.get("targets", sorted(spec.dfa.accepting))
    exact = exact_hitting_times(chain, targets)
    estimator = _sample_hitting(chain, targets, spec.dfa.start, args.episodes,
                                args.horizon, args.seed)
    print(f"{'state':<8}{'exact':>12}{'empirical':>12}{'samples':>10}")
    for q in range(len(chain)):
        emp = estimator.estimate(q)
        print(f"{'q%d' % q:<8}{exact[q]:>12g}{emp:>12g}"
              f"{estimator.sample_count(q):>10}")
    return 0


# ------------------------------------------------------------------ trace

def _mask_decision(rt: RecognizerRuntime, ranked) -> int | None:
    """First ranked token whose peeked state is non-accepting, else None."""
    for i, token in enumerate(ranked):
        if rt.peek_token(token) not in rt.dfa.accepting:
            return i
    return None


def _trace_stream(spec, tokens, ranked):
    rt = RecognizerRuntime(spec)
    steps = []
    masks = [] if ranked is not None else None
    for token in tokens:
        if ranked is not None:
            masks.append(_mask_decision(rt, ranked))
        outcome = rt.step_token(token)
        steps.append([outcome.state, outcome.cost, outcome.violated])
    result = {
        "steps": steps,
        "final": rt.q,
        "violations": rt.violation_count,
        "cost": rt.episode_cost,
    }
    if masks is not None:
        result["masks"] = masks
    return result


def _cmd_trace(args) -> int:
    spec = load(args.spec)
    ranked = args.ranked.split(",") if args.ranked else None
    if args.batch is not None:
        if args.tokens:
            raise ValidationError("give tokens or --batch, not both")
        doc = _load_batch(args.batch)
        streams = doc["streams"]
        if ranked is None:
            ranked = doc.get("ranked")
        results = [_trace_stream(spec, stream, ranked) for stream in streams]
        payload = {"results": results}
    else:
        if not args.tokens:
            raise ValidationError("no tokens given (or use --batch FILE)")
        payload = _trace_stream(spec, args.tokens, ranked)
    print(json.dumps(payload, indent=2, sort_keys=True))
    return 0


def _load_batch(path: str) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror or exc}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from None
    if not isinstance(doc, dict) or not isinstance(doc.get("streams"), list):
        raise ValidationError(f'{path}: expected {{"streams": [[tok, ...], ...]}}')
    for stream in doc["streams"]:
        if not isinstance(stream, list) or not all(isinstance(t, str) for t in stream):
            raise ValidationError(f"{path}: streams must be lists of token strings")
    return doc


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flc",
        description="Compile formal-language constraints, replay traces, "
                    "and run constrained tabular RL experiments.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("compile",
                       help="compile a constraint spec and print the machine")
    p.add_argument("spec", help="spec path or built-in name")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--dot", action="store_true", help="emit Graphviz DOT")
    fmt.add_argument("--json", action="store_true",
                     help="emit the machine as JSON")
    fmt.add_argument("--bundle", action="store_true",
                     help="emit machine, costs, mode, and limit as one "
                          "JSON document")
    p.add_argument("-o", "--out", help="write to this file instead of stdout")
    p.set_defaults(func=_cmd_compile)

    p = sub.add_parser("check", help="replay a token stream step by step")
    p.add_argument("spec", help="spec path or built-in name")
    p.add_argument("tokens", nargs="+", help="token stream")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("equiv",
                       help="compare the compiled machine against the "
                            "independent pattern matcher")
    p.add_argument("spec", help="spec path or built-in name")
    p.add_argument("--oracle", action="store_true", required=True,
                   help="enable the oracle comparison (required)")
    p.add_argument("--max-len", type=int, required=True,
                   help="maximum word length")
    p.add_argument("--samples", type=int, default=None,
                   help="sample this many words instead of exhaustive "
                        "enumeration")
    p.add_argument("--seed", type=int, default=0, help="sampling seed")
    p.set_defaults(func=_cmd_equiv)

    p = sub.add_parser("run", help="train and evaluate one experiment config")
    p.add_argument("config", help="experiment config path")
    p.add_argument("--out", help="output basename (overrides the config)")
    p.add_argument("--no-figures", action="store_true",
                   help="skip figure rendering")
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("sweep",
                       help="run a shaping-coefficient grid over one config")
    p.add_argument("config", help="experiment config path (shaping mode)")
    p.add_argument("--lambda", dest="lams", nargs="+", type=float,
                   required=True, metavar="LAM",
                   help="coefficient grid, positive magnitudes")
    p.add_argument("--out", help="output basename (overrides the config)")
    p.add_argument("--no-figures", action="store_true",
                   help="skip figure rendering")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("hitting",
                       help="exact vs sampled expected steps to acceptance "
                            "under a state chain")
    p.add_argument("spec", help="spec path or built-in name")
    p.add_argument("--chain", required=True,
                   help='JSON file: {"chain": [[...], ...], "targets": [...]}')
    p.add_argument("--episodes", type=int, default=10000,
                   help="sampled walks (default 10000)")
    p.add_argument("--horizon", type=int, default=10000,
                   help="censor walks longer than this (default 10000)")
    p.add_argument("--seed", type=int, default=0, help="sampling seed")
    p.set_defaults(func=_cmd_hitting)

    p = sub.add_parser("trace",
                       help="replay token streams and report (state, cost, "
                            "violated) per step as JSON")
    p.add_argument("spec", help="spec path or built-in name")
    p.add_argument("tokens", nargs="*", help="token stream")
    p.add_argument("--batch",
                   help='JSON file: {"streams": [[tok, ...], ...], '
                        '"ranked": [tok, ...]}')
    p.add_argument("--ranked",
                   help="comma-separated ranked tokens; adds a per-step "
                        "mask decision")
    p.set_defaults(func=_cmd_trace)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; fold into the config-error code
        return 0 if exc.code in (0, None) else 1
    try:
        return args.func(args)
    except FlcError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {exc!r}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
