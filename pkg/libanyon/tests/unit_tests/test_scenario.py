import numpy as np
import pytest

from libanyon.contextuality import (
    ContextualityError,
    EmpiricalModel,
    MeasurementScenario,
    ProjectorSet,
    empirical_from_state,
    scenario_from_projectors,
)
from libanyon.contextuality.empirical import model_from_events, table_events

BINARY = ("0", "1")


def _chsh_scenario():
    return MeasurementScenario(
        measurements=("a0", "a1", "b0", "b1"),
        contexts=(("a0", "b0"), ("a0", "b1"), ("a1", "b0"), ("a1", "b1")),
        outcomes={m: BINARY for m in ("a0", "a1", "b0", "b1")},
    )


def test_scenario_validation():
    out = {"a": BINARY, "b": BINARY}
    with pytest.raises(ContextualityError, match="not maximal"):
        MeasurementScenario(("a", "b"), (("a",), ("a", "b")), out)
    with pytest.raises(ContextualityError, match="unknown measurements"):
        MeasurementScenario(("a", "b"), (("a", "c"),), out)
    with pytest.raises(ContextualityError, match="appear in no context"):
        MeasurementScenario(("a", "b"), (("a",),), out)
    with pytest.raises(ContextualityError, match="no outcomes"):
        MeasurementScenario(("a", "b"), (("a", "b"),), {"a": BINARY})
    with pytest.raises(ContextualityError, match="distinct"):
        MeasurementScenario(("a", "b"), (("a", "b"), ("b", "a")), out)


def test_overlaps():
    overlaps = list(_chsh_scenario().overlaps())
    assert (0, 1, ("a0",)) in overlaps and (0, 2, ("b0",)) in overlaps
    assert all(i < j for i, j, _ in overlaps)
    assert len(overlaps) == 4, "Each CHSH context overlaps two others"
    assert _chsh_scenario().n_global_assignments() == 16


def test_projector_set_validation():
    p = np.diag([1.0, 0.0])
    with pytest.raises(ContextualityError, match="Hermitian idempotent"):
        ProjectorSet([np.diag([0.5, 0.0])], ["P"])
    with pytest.raises(ContextualityError, match="unique"):
        ProjectorSet([p, p], ["P", "P"])
    with pytest.raises(ContextualityError, match="different dimension"):
        ProjectorSet([p, np.eye(3)], ["P", "Q"])
    with pytest.raises(ContextualityError):
        ProjectorSet([], [])


def test_scenario_from_projectors_trivial_cases():
    single = scenario_from_projectors(ProjectorSet([np.diag([1.0, 0.0])], ["P"]))
    assert single.contexts == (("P",),)

    commuting = ProjectorSet([np.diag([1.0, 0.0, 0.0]), np.diag([0.0, 1.0, 0.0])], ["P", "Q"])
    assert scenario_from_projectors(commuting).contexts == (("P", "Q"),)

    plus = 0.5 * np.ones((2, 2))
    clash = ProjectorSet([np.diag([1.0, 0.0]), plus], ["Z", "X"])
    scenario = scenario_from_projectors(clash)
    assert scenario.contexts == (("Z",), ("X",)), "Non-commuting projectors land in separate contexts"
    assert all(scenario.outcomes[m] == BINARY for m in scenario.measurements)


def test_eigenvector_singleton_is_deterministic():
    ps = ProjectorSet([np.diag([1.0, 0.0])], ["P"])
    model = empirical_from_state(np.array([1.0, 0.0]), ps, scenario_from_projectors(ps))
    assert model.prob(0, ["1"]) == pytest.approx(1.0)
    assert model.prob(0, ["0"]) == pytest.approx(0.0)


def test_born_rule_tables():
    ps = ProjectorSet([np.diag([1.0, 0.0, 0.0]), np.diag([0.0, 1.0, 0.0])], ["P", "Q"])
    state = np.array([1.0, 1.0, 1.0]) / np.sqrt(3)
    model = empirical_from_state(state, ps, scenario_from_projectors(ps))
    events = table_events(model, 0)
    assert events["1,1"] == pytest.approx(0.0), "Orthogonal projectors never click together"
    for key in ("0,0", "0,1", "1,0"):
        assert events[key] == pytest.approx(1 / 3)

    rho = np.diag([0.5, 0.5, 0.0])
    mixed = empirical_from_state(rho, ps, scenario_from_projectors(ps))
    assert mixed.prob(0, ["1", "0"]) == pytest.approx(0.5)


def test_non_commuting_context_is_rejected():
    plus = 0.5 * np.ones((2, 2))
    ps = ProjectorSet([np.diag([1.0, 0.0]), plus], ["Z", "X"])
    forced = MeasurementScenario(("Z", "X"), (("Z", "X"),), {"Z": BINARY, "X": BINARY})
    with pytest.raises(ContextualityError, match="non-commuting context"):
        empirical_from_state(np.array([1.0, 0.0]), ps, forced)
    with pytest.raises(ContextualityError, match="unit vector"):
        empirical_from_state(np.array([1.0, 1.0]), ps, scenario_from_projectors(ps))


def test_model_validation():
    scenario = MeasurementScenario(("a",), (("a",),), {"a": BINARY})
    with pytest.raises(ContextualityError, match="sums to"):
        EmpiricalModel(scenario, [np.array([0.5, 0.4])])
    with pytest.raises(ContextualityError, match="negative"):
        EmpiricalModel(scenario, [np.array([1.5, -0.5])])
    with pytest.raises(ContextualityError, match="shape"):
        EmpiricalModel(scenario, [np.array([1.0, 0.0, 0.0])])
    model = EmpiricalModel(scenario, [np.array([0.25, 0.75])])
    with pytest.raises(ValueError):
        model.tables[0][0] = 1.0


def test_marginals_and_compatibility():
    scenario = _chsh_scenario()
    even = {"0,0": 0.5, "1,1": 0.5}
    model = model_from_events(scenario, {0: even, 1: even, 2: even, 3: {"0,1": 0.5, "1,0": 0.5}})
    assert model.check_compatibility().passed
    assert np.allclose(model.measurement_marginal("b1"), [0.5, 0.5])
    assert np.allclose(model.marginal(3, ("b1", "a1")), model.tables[3].T)

    skewed = model_from_events(scenario, {0: {"0,0": 1.0}, 1: even, 2: even, 3: even})
    report = skewed.check_compatibility()
    assert not report.passed and report.residual == pytest.approx(0.5)
    assert report.worst[2] in ("a0", "b0"), "Worst overlap should name the shared measurement"


if __name__ == "__main__":
    test_scenario_validation()
    test_overlaps()
    test_projector_set_validation()
    test_scenario_from_projectors_trivial_cases()
    test_eigenvector_singleton_is_deterministic()
    test_born_rule_tables()
    test_non_commuting_context_is_rejected()
    test_model_validation()
    test_marginals_and_compatibility()
