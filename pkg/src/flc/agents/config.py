"""Experiment configuration: the .cfg format and its validated form.

Same key=value file format as constraint specs. An experiment names an
environment, one or more constraints, exactly one enforcement mode, and
the training hyperparameters. `dense = true` switches the learning
signal to the potential-shaped cost and is only meaningful when a
shaping coefficient exists, so it requires shaping or lagrangian mode.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from ..actionshape import EnforcementMode
from ..errors import ConfigError, ParseError
from ..kvformat import Call, parse_lines

_ENV_KINDS = ("corridor1d", "hazardgrid")
_ENFORCEMENTS = ("none", "shaping", "lagrangian", "hard")
_AUGMENTATIONS = ("none", "product")


@dataclass(frozen=True)
class ExperimentConfig:
    env: Call
    constraints: tuple[str, ...]
    enforcement: str = "none"
    lam: float = 0.0
    d: float = 25.0
    eta: float = 0.05
    hard_mode: EnforcementMode = EnforcementMode.TRAIN_AND_EVAL
    augmentation: str = "none"
    dense: bool = False
    beta: float = 1.0
    t_v_baseline: float | None = None
    seeds: tuple[int, ...] = (0,)
    episodes: int = 200
    eval_episodes: int = 100
    alpha: float = 0.1
    gamma: float = 0.99
    epsilon_start: float = 1.0
    epsilon_end: float = 0.05
    epsilon_fraction: float = 0.5
    out: str | None = None

    def __post_init__(self):
        if not isinstance(self.env, Call) or self.env.name not in _ENV_KINDS:
            raise ConfigError(
                f"env must be one of {_ENV_KINDS} as a call, got {self.env!r}")
        if not self.constraints:
            raise ConfigError("experiment needs at least one constraint")
        if self.enforcement not in _ENFORCEMENTS:
            raise ConfigError(
                f"enforcement must be one of {_ENFORCEMENTS}, got {self.enforcement!r}")
        if self.augmentation not in _AUGMENTATIONS:
            raise ConfigError(
                f"augmentation must be one of {_AUGMENTATIONS}, got {self.augmentation!r}")
        if self.dense and self.enforcement not in ("shaping", "lagrangian"):
            raise ConfigError("dense cost needs shaping or lagrangian enforcement")
        if self.lam < 0:
            raise ConfigError(f"lambda must be non-negative, got {self.lam!r}")
        if self.beta < 0:
            raise ConfigError(f"beta must be non-negative, got {self.beta!r}")
        if not self.eta > 0:
            raise ConfigError(f"eta must be positive, got {self.eta!r}")
        if not self.d > 0:
            raise ConfigError(f"cost limit d must be positive, got {self.d!r}")
        if self.t_v_baseline is not None and not self.t_v_baseline > 0:
            raise ConfigError(
                f"t_v_baseline must be positive, got {self.t_v_baseline!r}")
        if not self.seeds:
            raise ConfigError("seeds must not be empty")
        if len(set(self.seeds)) != len(self.seeds):
            raise ConfigError("seeds must be distinct")
        if self.episodes < 1 or self.eval_episodes < 0:
            raise ConfigError("episodes must be positive, eval_episodes >= 0")
        if not 0.0 <= self.alpha <= 1.0 or not 0.0 <= self.gamma <= 1.0:
            raise ConfigError("alpha and gamma must lie in [0, 1]")
        for name, value in (("epsilon_start", self.epsilon_start),
                            ("epsilon_end", self.epsilon_end)):
            if not 0.0 <= value <= 1.0:
                raise ConfigError(f"{name} must lie in [0, 1], got {value!r}")
        if self.epsilon_end > self.epsilon_start:
            raise ConfigError("epsilon_end must not exceed epsilon_start")
        if not 0.0 < self.epsilon_fraction <= 1.0:
            raise ConfigError(
                f"epsilon_fraction must lie in (0, 1], got {self.epsilon_fraction!r}")


def _number(value, key, line_no) -> float:
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise ParseError(f"{key} must be numeric, got {value!r}", line_no)
    return float(value)


def _enforcement_fields(value, line_no) -> dict:
    if isinstance(value, str):
        value = Call(value, {})
    if not isinstance(value, Call):
        raise ParseError(f"enforcement must be a mode name or call, got {value!r}",
                         line_no)
    fields: dict = {"enforcement": value.name}
    known = {
        "shaping": {"lambda"},
        "lagrangian": {"d", "eta"},
        "hard": {"mode"},
        "none": set(),
    }.get(value.name)
    if known is None:
        raise ParseError(f"enforcement must be one of {_ENFORCEMENTS}, "
                         f"got {value.name!r}", line_no)
    extra = set(value.kwargs) - known
    if extra:
        raise ParseError(f"{value.name} does not take {sorted(extra)}", line_no)
    if value.name == "shaping" and "lambda" in value.kwargs:
        fields["lam"] = _number(value.kwargs["lambda"], "lambda", line_no)
    if value.name == "lagrangian":
        if "d" in value.kwargs:
            fields["d"] = _number(value.kwargs["d"], "d", line_no)
        if "eta" in value.kwargs:
            fields["eta"] = _number(value.kwargs["eta"], "eta", line_no)
    if value.name == "hard":
        mode = value.kwargs.get("mode", "both")
        try:
            fields["hard_mode"] = EnforcementMode(mode)
        except ValueError:
            raise ParseError(f"hard mode must be both, train, or eval, "
                             f"got {mode!r}", line_no) from None
    return fields


_NUMERIC_KEYS = {
    "beta": "beta",
    "t_v_baseline": "t_v_baseline",
    "alpha": "alpha",
    "gamma": "gamma",
    "epsilon_start": "epsilon_start",
    "epsilon_end": "epsilon_end",
    "epsilon_fraction": "epsilon_fraction",
}
_INT_KEYS = {"episodes": "episodes", "eval_episodes": "eval_episodes"}


def parse_experiment(text: str) -> ExperimentConfig:
    entries = parse_lines(text, repeated=frozenset({"constraint"}))
    fields: dict = {}

    known = ({"env", "constraint", "enforcement", "augmentation", "dense",
              "seeds", "out"} | set(_NUMERIC_KEYS) | set(_INT_KEYS))
    for key, value in entries.items():
        if key not in known:
            line_no = value[0][1] if isinstance(value, list) else value[1]
            raise ParseError(f"unknown key {key!r}", line_no)

    if "env" not in entries:
        raise ConfigError("experiment must declare env")
    env_value, env_line = entries["env"]
    if isinstance(env_value, str):
        env_value = Call(env_value, {})
    if not isinstance(env_value, Call):
        raise ParseError(f"env must be a call, got {env_value!r}", env_line)
    fields["env"] = env_value

    if "constraint" not in entries:
        raise ConfigError("experiment must declare at least one constraint")
    names = []
    for value, line_no in entries["constraint"]:
        if not isinstance(value, str):
            raise ParseError(f"constraint must name a spec, got {value!r}", line_no)
        names.append(value)
    fields["constraints"] = tuple(names)

    if "enforcement" in entries:
        fields.update(_enforcement_fields(*entries["enforcement"]))

    if "augmentation" in entries:
        value, line_no = entries["augmentation"]
        fields["augmentation"] = value

    if "dense" in entries:
        value, line_no = entries["dense"]
        if not isinstance(value, bool):
            raise ParseError(f"dense must be true or false, got {value!r}", line_no)
        fields["dense"] = value

    if "seeds" in entries:
        value, line_no = entries["seeds"]
        if not isinstance(value, list):
            raise ParseError("seeds must be a [s0 s1 ...] list", line_no)
        try:
            fields["seeds"] = tuple(int(s) for s in value)
        except ValueError:
            raise ParseError(f"seeds must be integers, got {value!r}",
                             line_no) from None

    for key, target in _NUMERIC_KEYS.items():
        if key in entries:
            value, line_no = entries[key]
            fields[target] = _number(value, key, line_no)
    for key, target in _INT_KEYS.items():
        if key in entries:
            value, line_no = entries[key]
            if not isinstance(value, int) or isinstance(value, bool):
                raise ParseError(f"{key} must be an integer, got {value!r}", line_no)
            fields[target] = value

    if "out" in entries:
        value, line_no = entries["out"]
        if not isinstance(value, str):
            raise ParseError(f"out must be a path, got {value!r}", line_no)
        fields["out"] = value

    return ExperimentConfig(**fields)


def load_experiment(path: str | Path) -> ExperimentConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror or exc}") from None
    return parse_experiment(text)
