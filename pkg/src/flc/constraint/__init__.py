"""Constraint specs, translators, runtime recognizers, and augmentation."""

from .augment import AugmentMode, AugmentedState, augment, embedding_dim
from .runtime import RecognizerRuntime, StepOutcome
from .spec import (ConstraintSpec, ViolationMode, builtin_names, load,
                   load_spec, loads)
from .translate import (Direction2D, Identity, MagnitudeBins, ProximityBins,
                        Sign1D, Transition, TranslatorBinding, translate)

__all__ = [
    "ConstraintSpec", "ViolationMode", "load", "load_spec", "loads",
    "builtin_names",
    "Transition", "TranslatorBinding", "translate",
    "Sign1D", "Direction2D", "MagnitudeBins", "ProximityBins", "Identity",
    "RecognizerRuntime", "StepOutcome",
    "AugmentMode", "AugmentedState", "augment", "embedding_dim",
]
