import numpy as np
import pytest

from libanyon.contextuality import (
    ContextualityError,
    MeasurementScenario,
    classify_hierarchy,
    global_assignments,
    noncontextual_lp,
)
from libanyon.contextuality.empirical import model_from_events
from libanyon.contextuality.noncontextual import event_labels, replay_weights
from libanyon.message_numbers import (
    CONTEXTUAL,
    LOGICALLY_CONTEXTUAL,
    NONCONTEXTUAL,
    STRONGLY_CONTEXTUAL,
    VERDICT_ORDER,
)

BINARY = ("0", "1")
EVEN = {"0,0": 0.5, "1,1": 0.5}
ODD = {"0,1": 0.5, "1,0": 0.5}


def _chsh_scenario():
    return MeasurementScenario(
        measurements=("a0", "a1", "b0", "b1"),
        contexts=(("a0", "b0"), ("a0", "b1"), ("a1", "b0"), ("a1", "b1")),
        outcomes={m: BINARY for m in ("a0", "a1", "b0", "b1")},
    )


def _pr_box():
    return model_from_events(_chsh_scenario(), {0: EVEN, 1: EVEN, 2: EVEN, 3: ODD})


def _hardy_mixture():
    """Half PR box, half the all-zero deterministic box."""
    tilted = {"0,0": 0.75, "1,1": 0.25}
    last = {"0,0": 0.5, "0,1": 0.25, "1,0": 0.25}
    return model_from_events(_chsh_scenario(), {0: tilted, 1: tilted, 2: tilted, 3: last})


def test_global_assignment_order():
    g = global_assignments(_chsh_scenario())
    assert g.shape == (16, 4)
    assert tuple(g[0]) == (0, 0, 0, 0) and tuple(g[1]) == (0, 0, 0, 1), "Last measurement varies fastest"
    assert tuple(g[-1]) == (1, 1, 1, 1)
    assert event_labels(_chsh_scenario())[:4] == ((0, "0,0"), (0, "0,1"), (0, "1,0"), (0, "1,1"))


def test_deterministic_model_has_point_mass():
    scenario = MeasurementScenario(("a", "b"), (("a", "b"),), {"a": BINARY, "b": BINARY})
    model = model_from_events(scenario, {0: {"0,1": 1.0}})
    verdict = classify_hierarchy(model)
    assert verdict.classification == NONCONTEXTUAL
    weights = verdict.certificate.weights
    assert int(np.argmax(weights)) == 1 and weights[1] == pytest.approx(1.0, abs=1e-7)
    assert verdict.consistent_assignments == 1
    assert np.allclose(replay_weights(model, weights), [0, 1, 0, 0], atol=1e-7)
    assert verdict.replay(model)


def test_pr_box_is_strongly_contextual():
    model = _pr_box()
    verdict = classify_hierarchy(model)
    assert verdict.classification == STRONGLY_CONTEXTUAL
    assert verdict.consistent_assignments == 0
    cert = verdict.certificate
    assert cert.distance > 0.1, "PR box is far from every noncontextual model"
    assert cert.violation > 0.1 and cert.duality_gap < 1e-6
    assert np.all((cert.functional >= 0) & (cert.functional <= 1))
    assert verdict.replay(model), "Strong verdict should replay from the support alone"


def test_hardy_mixture_is_logically_contextual():
    model = _hardy_mixture()
    assert model.check_compatibility().passed
    verdict = classify_hierarchy(model)
    assert verdict.classification == LOGICALLY_CONTEXTUAL
    assert verdict.consistent_assignments == 1, "Only the all-zero assignment fits the support"
    assert (0, "1,1") in verdict.unextendable and (3, "0,1") in verdict.unextendable
    assert (0, "0,0") not in verdict.unextendable
    assert verdict.replay(model)


def test_hierarchy_is_ordered():
    for model in (_pr_box(), _hardy_mixture()):
        verdict = classify_hierarchy(model)
        lp = noncontextual_lp(model)
        assert verdict.rank() >= VERDICT_ORDER.index(lp.classification)
        assert lp.classification == CONTEXTUAL and verdict.is_contextual


def test_mixture_with_noise_becomes_noncontextual():
    scenario = _chsh_scenario()
    # A quarter PR box plus three quarters white noise stays under the CHSH bound.
    noisy_even = {"0,0": 0.3125, "0,1": 0.1875, "1,0": 0.1875, "1,1": 0.3125}
    noisy_odd = {"0,0": 0.1875, "0,1": 0.3125, "1,0": 0.3125, "1,1": 0.1875}
    model = model_from_events(scenario, {0: noisy_even, 1: noisy_even, 2: noisy_even, 3: noisy_odd})
    verdict = classify_hierarchy(model)
    assert verdict.classification == NONCONTEXTUAL
    assert verdict.certificate.feasible and verdict.consistent_assignments == 16
    assert abs(verdict.certificate.weights.sum() - 1) < 1e-7
    assert verdict.replay(model)


def test_verdict_invariant_under_reorder_and_relabel():
    model = _pr_box()
    base = classify_hierarchy(model)
    for variant in (model.reordered([3, 1, 0, 2]), model.relabeled({"a0": "x", "b1": "y"})):
        verdict = classify_hierarchy(variant)
        assert verdict.classification == base.classification
        assert abs(verdict.certificate.distance - base.certificate.distance) < 1e-7


def test_signalling_model_is_rejected():
    model = model_from_events(_chsh_scenario(), {0: {"0,0": 1.0}, 1: EVEN, 2: EVEN, 3: EVEN})
    with pytest.raises(ContextualityError, match="signalling"):
        noncontextual_lp(model)
    with pytest.raises(ContextualityError, match="signalling"):
        classify_hierarchy(model)


def test_replay_detects_a_wrong_certificate():
    noncontextual = classify_hierarchy(model_from_events(_chsh_scenario(), {ci: EVEN for ci in range(4)}))
    assert noncontextual.classification == NONCONTEXTUAL
    assert not noncontextual.replay(_pr_box()), "A global distribution for one model cannot replay another"


if __name__ == "__main__":
    test_global_assignment_order()
    test_deterministic_model_has_point_mass()
    test_pr_box_is_strongly_contextual()
    test_hardy_mixture_is_logically_contextual()
    test_hierarchy_is_ordered()
    test_mixture_with_noise_becomes_noncontextual()
    test_verdict_invariant_under_reorder_and_relabel()
    test_signalling_model_is_rejected()
    test_replay_detects_a_wrong_certificate()
