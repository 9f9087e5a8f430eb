"""One-step lookahead over ranked actions.

Walks the ranking best-first, simulates each action's token through the
recognizer without advancing it, and returns the first action that stays
out of the accepting set. Lookahead depth is exactly one transition.
"""

from __future__ import annotations

import enum
from collections.abc import Callable, Sequence

from ..constraint.runtime import RecognizerRuntime
from ..constraint.translate import Transition, translate
from ..errors import EmptyActionSet, ValidationError


class EnforcementMode(enum.Enum):
    TRAIN_AND_EVAL = "both"
    TRAIN_ONLY = "train"
    EVAL_ONLY = "eval"


class Phase(enum.Enum):
    TRAIN = "train"
    EVAL = "eval"


def enforcement_schedule(mode: EnforcementMode, phase: Phase) -> bool:
    if mode is EnforcementMode.TRAIN_AND_EVAL:
        return True
    if mode is EnforcementMode.TRAIN_ONLY:
        return phase is Phase.TRAIN
    return phase is Phase.EVAL


def filter_action(rt: RecognizerRuntime, env_state, ranked: Sequence,
                  predict: Callable[[object, object], Transition]):
    """Best non-violating action and how many better ones were masked.

    predict(env_state, action) must describe the would-be step without
    taking it; the environments' peek() has that contract. Raises
    EmptyActionSet when the whole ranking leads into F, at which point
    the caller falls back to its safe policy.
    """
    if not ranked:
        raise ValidationError("ranking must not be empty")
    if len(set(ranked)) != len(ranked):
        raise ValidationError(f"ranking contains duplicates: {list(ranked)!r}")
    masked = 0
    for action in ranked:
        token = translate(rt.spec.translator, predict(env_state, action))
        if rt.peek_token(token) not in rt.dfa.accepting:
            return action, masked
        masked += 1
    raise EmptyActionSet(f"all {len(ranked)} ranked actions lead to a violation")
