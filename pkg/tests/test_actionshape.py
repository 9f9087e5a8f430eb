import random

import pytest

from flc.actionshape import (EnforcementMode, Phase, enforcement_schedule,
                             filter_action)
from flc.constraint import RecognizerRuntime, Transition, load, loads
from flc.errors import EmptyActionSet, ValidationError

VALUE_OF = {"l": -1.0, "n": 0.0, "r": 1.0}


def predict(state, action):
    return Transition(state, action, state, action_value=VALUE_OF[action])


def at_three_deep():
    """Runtime walked to the state one step short of a violation."""
    rt = RecognizerRuntime(load("dithering-1d"))
    for value in (-1.0, 1.0, -1.0):  # l r l
        rt.step(Transition(0, 0, 0, action_value=value))
    return rt


def test_masks_the_violating_top_choice():
    rt = at_three_deep()
    action, masked = filter_action(rt, 0, ["r", "n", "l"], predict)
    assert action == "n"
    assert masked == 1


def test_start_state_passes_top_choice():
    rt = RecognizerRuntime(load("dithering-1d"))
    action, masked = filter_action(rt, 0, ["r", "l", "n"], predict)
    assert action == "r"
    assert masked == 0


def test_every_action_violating_raises():
    spec = loads('alphabet = [a b]\npattern = "."\ntranslator = identity\n')
    rt = RecognizerRuntime(spec)

    def by_token(state, action):
        return Transition(state, action, state, token=action)

    with pytest.raises(EmptyActionSet):
        filter_action(rt, 0, ["a", "b"], by_token)


def test_lookahead_is_pure():
    rt = at_three_deep()
    q = rt.q
    filter_action(rt, 0, ["r", "n", "l"], predict)
    assert rt.q == q
    assert rt.violation_count == 0
    assert rt.episode_cost == 0.0


def test_chosen_action_is_actually_safe():
    rt = at_three_deep()
    action, _ = filter_action(rt, 0, ["r", "n", "l"], predict)
    outcome = rt.step(predict(0, action))
    assert not outcome.violated


def test_chosen_is_highest_ranked_unmasked():
    rt = RecognizerRuntime(load("dithering-1d"))
    rng = random.Random(31)
    for _ in range(300):
        ranking = rng.sample(("l", "n", "r"), 3)
        unsafe = {a for a in ranking
                  if rt.peek_token({"l": "l", "n": "n", "r": "r"}[a]) in rt.dfa.accepting}
        action, masked = filter_action(rt, 0, ranking, predict)
        survivors = [a for a in ranking if a not in unsafe]
        assert action == survivors[0]
        assert masked == ranking.index(action)
        rt.step(predict(0, action))


def test_filtered_random_walk_never_violates():
    # n is safe from every state of this machine, so masking suffices
    rt = RecognizerRuntime(load("dithering-1d"))
    rng = random.Random(77)
    for _ in range(10_000):
        ranking = rng.sample(("l", "n", "r"), 3)
        action, _ = filter_action(rt, 0, ranking, predict)
        rt.step(predict(0, action))
    assert rt.violation_count == 0


def test_rejects_empty_ranking():
    rt = RecognizerRuntime(load("dithering-1d"))
    with pytest.raises(ValidationError):
        filter_action(rt, 0, [], predict)


def test_rejects_duplicate_ranking():
    rt = RecognizerRuntime(load("dithering-1d"))
    with pytest.raises(ValidationError):
        filter_action(rt, 0, ["r", "r", "n"], predict)


@pytest.mark.parametrize("mode,phase,active", [
    (EnforcementMode.TRAIN_AND_EVAL, Phase.TRAIN, True),
    (EnforcementMode.TRAIN_AND_EVAL, Phase.EVAL, True),
    (EnforcementMode.TRAIN_ONLY, Phase.TRAIN, True),
    (EnforcementMode.TRAIN_ONLY, Phase.EVAL, False),
    (EnforcementMode.EVAL_ONLY, Phase.TRAIN, False),
    (EnforcementMode.EVAL_ONLY, Phase.EVAL, True),
])
def test_enforcement_schedule(mode, phase, active):
    assert enforcement_schedule(mode, phase) is active
