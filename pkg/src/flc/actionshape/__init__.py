"""Hard enforcement: mask actions whose one-step lookahead enters F."""

from .filter import EnforcementMode, Phase, enforcement_schedule, filter_action

__all__ = ["EnforcementMode", "Phase", "enforcement_schedule", "filter_action"]
