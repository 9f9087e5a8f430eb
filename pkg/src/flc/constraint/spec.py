"""Constraint spec files and their in-memory form.

The file format is line-oriented `key = value`, UTF-8, `#` comments.
A spec names an alphabet, exactly one recognizer source (a pattern or a
builder call), and optionally a translator, violation mode, per-episode
cost limit, and per-state cost overrides. See the package data directory
for the shipped examples.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .. import automata
from ..automata import Alphabet, Dfa, compile_pattern
from ..errors import ParseError, ValidationError
from ..kvformat import Call, parse_lines
from .translate import (Direction2D, Identity, MagnitudeBins, ProximityBins,
                        Sign1D, TranslatorBinding)


class ViolationMode(enum.Enum):
    RESET = "reset"
    ABSORBING = "absorbing"


@dataclass(frozen=True)
class ConstraintSpec:
    name: str
    alphabet: Alphabet
    dfa: Dfa
    source: str
    cost_map: tuple[float, ...]
    violation_mode: ViolationMode
    translator: TranslatorBinding
    limit: float | None

    def cost(self, state: int) -> float:
        return self.cost_map[state]


_BUILDERS = {
    "successive_identical": automata.successive_identical,
    "sum_threshold": automata.sum_threshold,
    "proximity_levels": automata.proximity_levels,
    "zero_displacement": automata.zero_displacement,
}

_TRANSLATORS = {
    "sign1d": Sign1D,
    "direction2d": Direction2D,
    "magnitude_bins": MagnitudeBins,
    "proximity_bins": ProximityBins,
    "identity": Identity,
}


_KNOWN_KEYS = {"name", "alphabet", "pattern", "builder", "translator", "mode",
               "limit", "cost"}


def loads(text: str, default_name: str = "constraint") -> ConstraintSpec:
    """Parse and validate spec text; compile the recognizer."""
    entries = parse_lines(text, numbered_prefix="cost")
    for key, value in entries.items():
        if key not in _KNOWN_KEYS:
            raise ParseError(f"unknown key {key!r}", value[1])

    def take(key, default=None):
        if key in entries and key != "cost":
            return entries[key][0]
        return default

    alphabet_value = take("alphabet")
    if alphabet_value is None:
        raise ValidationError("spec must declare an alphabet")
    if not isinstance(alphabet_value, list):
        raise ValidationError("alphabet must be a [sym ...] list")
    alphabet = Alphabet(tuple(alphabet_value))

    pattern = take("pattern")
    builder = take("builder")
    if (pattern is None) == (builder is None):
        raise ValidationError("spec needs exactly one of pattern or builder")

    if pattern is not None:
        if not isinstance(pattern, str):
            raise ValidationError(f"pattern must be quoted text, got {pattern!r}")
        dfa = compile_pattern(pattern, alphabet)
        source = pattern
    else:
        if isinstance(builder, str):
            builder = Call(builder, {})
        if not isinstance(builder, Call):
            raise ValidationError(f"builder must be a call, got {builder!r}")
        factory = _BUILDERS.get(builder.name)
        if factory is None:
            raise ValidationError(
                f"unknown builder {builder.name!r}; have {sorted(_BUILDERS)}")
        kwargs = {k: tuple(v) if isinstance(v, list) else v
                  for k, v in builder.kwargs.items()}
        try:
            dfa = factory(alphabet, **kwargs)
        except TypeError as exc:
            raise ValidationError(f"bad arguments for {builder.name}: {exc}") from None
        source = str(builder)

    translator_value = take("translator", "identity")
    if isinstance(translator_value, str):
        translator_value = Call(translator_value, {})
    if not isinstance(translator_value, Call):
        raise ValidationError(f"translator must be a name or call, got {translator_value!r}")
    factory = _TRANSLATORS.get(translator_value.name)
    if factory is None:
        raise ValidationError(
            f"unknown translator {translator_value.name!r}; have {sorted(_TRANSLATORS)}")
    kwargs = {k: tuple(v) if isinstance(v, list) else v
              for k, v in translator_value.kwargs.items()}
    try:
        translator = factory(**kwargs)
    except TypeError as exc:
        raise ValidationError(f"bad arguments for {translator_value.name}: {exc}") from None

    mode_value = take("mode", "reset")
    try:
        mode = ViolationMode(mode_value)
    except ValueError:
        raise ValidationError(f"mode must be reset or absorbing, got {mode_value!r}") from None

    limit_value = take("limit")
    limit: float | None = None
    if limit_value is not None:
        if not isinstance(limit_value, (int, float)) or isinstance(limit_value, bool):
            raise ValidationError(f"limit must be numeric, got {limit_value!r}")
        limit = float(limit_value)
        if not (math.isfinite(limit) and limit >= 0):
            raise ValidationError(f"limit must be finite and non-negative, got {limit}")

    # default sparse costs: unit on accepting states
    cost_map = [1.0 if q in dfa.accepting else 0.0 for q in range(dfa.num_states)]
    for idx, (value, line_no) in entries["cost"].items():
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise ParseError(f"cost must be numeric, got {value!r}", line_no)
        value = float(value)
        if idx >= dfa.num_states:
            raise ValidationError(
                f"cost override for state {idx}, but the machine has "
                f"{dfa.num_states} states (line {line_no})")
        if not (math.isfinite(value) and value >= 0):
            raise ValidationError(
                f"cost must be finite and non-negative, got {value} (line {line_no})")
        cost_map[idx] = value

    name = take("name", default_name)
    if not isinstance(name, str):
        raise ValidationError(f"name must be a string, got {name!r}")

    return ConstraintSpec(
        name=name,
        alphabet=alphabet,
        dfa=dfa,
        source=source,
        cost_map=tuple(cost_map),
        violation_mode=mode,
        translator=translator,
        limit=limit,
    )


def load_spec(path: str | Path) -> ConstraintSpec:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror or exc}") from None
    return loads(text, default_name=path.stem)


def builtin_names() -> list[str]:
    root = resources.files("flc.constraints")
    return sorted(entry.name[:-len(".flc")] for entry in root.iterdir()
                  if entry.name.endswith(".flc"))


def load(name_or_path: str | Path) -> ConstraintSpec:
    """Load a spec from a filesystem path or by built-in name."""
    path = Path(name_or_path)
    if path.exists():
        return load_spec(path)
    stem = path.name[:-len(".flc")] if path.name.endswith(".flc") else path.name
    candidate = resources.files("flc.constraints") / f"{stem}.flc"
    if candidate.is_file():
        return loads(candidate.read_text(encoding="utf-8"), default_name=stem)
    raise ParseError(
        f"no constraint spec at {name_or_path!r} and no built-in named {stem!r} "
        f"(built-ins: {', '.join(builtin_names())})")
