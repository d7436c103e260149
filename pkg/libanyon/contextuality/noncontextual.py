"""
Noncontextuality LP and the possibilistic hierarchy
===================================================

Global assignments g: X -> O are enumerated in lexicographic order of
outcome indices (the last measurement varies fastest). Each context
event ``(C, s)`` is a row of the incidence matrix ``A`` with
``A[(C, s), g] = 1`` iff ``g`` restricted to ``C`` equals ``s``.

The LP minimises the total-variation distance

    min 1/2 sum(s+ + s-)   s.t.   A lam + s+ - s- = p,   sum(lam) = 1,

over ``lam, s+, s- >= 0``. A zero optimum gives the global distribution
``lam``. The dual LP, solved separately, finds a functional ``y`` with
entries in [0, 1] maximising ``y . p - max_g y . a_g``; at optimality this
violation equals the distance, and the difference is the reported gap.
"""

import logging
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np
import scipy.sparse
from scipy.optimize import linprog

from libanyon.contextuality.empirical import SUPPORT_TOL, EmpiricalModel, outcome_key
from libanyon.contextuality.scenario import ContextualityError, MeasurementScenario
from libanyon.message_numbers import (
    CONTEXTUAL,
    LOGICALLY_CONTEXTUAL,
    NONCONTEXTUAL,
    STRONGLY_CONTEXTUAL,
    VERDICT_ORDER,
)
from libanyon.utils.reports import max_abs

logger = logging.getLogger(__name__)

LP_TOL = 1e-7
MAX_ASSIGNMENTS = 10**6


def global_assignments(scenario: MeasurementScenario) -> np.ndarray:
    """Rows are global assignments as outcome indices, one column per measurement."""
    n = scenario.n_global_assignments()
    if n > MAX_ASSIGNMENTS:
        raise ContextualityError(f"{n} global assignments exceeds desk-scale bound of {MAX_ASSIGNMENTS}")
    shape = tuple(len(scenario.outcomes[m]) for m in scenario.measurements)
    return np.indices(shape, dtype=np.int32).reshape(len(shape), -1).T


def event_offsets(scenario: MeasurementScenario) -> np.ndarray:
    """Start of each context's block in the flattened event vector."""
    sizes = [int(np.prod(scenario.context_shape(ci))) for ci in range(len(scenario.contexts))]
    return np.concatenate([[0], np.cumsum(sizes)]).astype(int)


def assignment_events(scenario: MeasurementScenario, assignments: np.ndarray) -> np.ndarray:
    """``events[g, ci]``: flattened event index hit by assignment ``g`` in context ``ci``."""
    offsets = event_offsets(scenario)
    columns = []
    for ci in range(len(scenario.contexts)):
        sub = assignments[:, list(scenario.context_indices(ci))].T
        columns.append(offsets[ci] + np.ravel_multi_index(tuple(sub), scenario.context_shape(ci)))
    return np.stack(columns, axis=1)


def _incidence(scenario: MeasurementScenario, events: np.ndarray) -> scipy.sparse.csc_matrix:
    n_events = event_offsets(scenario)[-1]
    n_assign, n_ctx = events.shape
    cols = np.repeat(np.arange(n_assign), n_ctx)
    data = np.ones(n_assign * n_ctx)
    return scipy.sparse.csc_matrix((data, (events.ravel(), cols)), shape=(n_events, n_assign))


def event_vector(model: EmpiricalModel) -> np.ndarray:
    return np.concatenate([table.ravel() for table in model.tables])


def event_labels(scenario: MeasurementScenario) -> Tuple[Tuple[int, str], ...]:
    """(context index, "o1,o2,...") for every flattened event."""
    labels = []
    for ci, ctx in enumerate(scenario.contexts):
        outs = [scenario.outcomes[m] for m in ctx]
        for idx in np.ndindex(*scenario.context_shape(ci)):
            labels.append((ci, outcome_key([o[k] for o, k in zip(outs, idx)])))
    return tuple(labels)


@dataclass(frozen=True)
class LPCertificate:
    """Evidence behind an LP verdict.

    ``distance`` is the primal optimum. ``weights`` is the global
    distribution found by the primal; ``functional`` is the separating
    functional with entries in [0, 1], ``bound`` its maximum over global
    assignments, ``value`` its value on the model and ``violation`` the
    difference.
    """

    distance: float
    weights: np.ndarray = field(repr=False)
    functional: np.ndarray = field(repr=False)
    value: float
    bound: float
    violation: float
    duality_gap: float
    tol: float

    @property
    def feasible(self) -> bool:
        return self.distance <= self.tol


def _require_compatible(model: EmpiricalModel, compat_tol: float) -> None:
    report = model.check_compatibility(compat_tol)
    if not report.passed:
        raise ContextualityError(f"Model is signalling: marginals disagree by {report.residual:.3e} at {report.worst}")


def _linprog(cost, **kwargs):
    res = linprog(cost, method="highs", **kwargs)
    if res.status != 0:
        logger.check_warning(f"LP solver failed: {res.message}")
        raise ContextualityError(f"LP solver failed: {res.message}")
    return res


def _solve_lp(model: EmpiricalModel, incidence: scipy.sparse.csc_matrix, tol: float) -> LPCertificate:
    n_events, n_assign = incidence.shape
    p = event_vector(model)
    eye = scipy.sparse.identity(n_events, format="csc")
    A_eq = scipy.sparse.vstack(
        [
            scipy.sparse.hstack([incidence, eye, -eye]),
            scipy.sparse.hstack(
                [scipy.sparse.csc_matrix(np.ones((1, n_assign))), scipy.sparse.csc_matrix((1, 2 * n_events))]
            ),
        ],
        format="csc",
    )
    b_eq = np.concatenate([p, [1.0]])
    cost = np.concatenate([np.zeros(n_assign), 0.5 * np.ones(2 * n_events)])
    res = _linprog(cost, A_eq=A_eq, b_eq=b_eq, bounds=(0, None))
    distance = float(res.fun)
    weights = np.clip(res.x[:n_assign], 0.0, None)

    # Dual: max y.p - z  s.t.  y.a_g <= z for every g, 0 <= y <= 1.
    A_ub = scipy.sparse.hstack([incidence.T, -np.ones((n_assign, 1))], format="csc")
    bounds = [(0.0, 1.0)] * n_events + [(None, None)]
    dual = _linprog(np.concatenate([-p, [1.0]]), A_ub=A_ub, b_ub=np.zeros(n_assign), bounds=bounds)
    functional = np.clip(dual.x[:n_events], 0.0, 1.0)
    value = float(functional @ p)
    bound = float(np.max(incidence.T @ functional))
    violation = value - bound
    gap = abs(distance - violation)
    logger.debug(f"LP distance {distance:.3e}, functional violation {violation:.3e}, gap {gap:.3e}")
    return LPCertificate(distance, weights, functional, value, bound, violation, gap, tol)


def replay_weights(model: EmpiricalModel, weights: np.ndarray) -> np.ndarray:
    """Context tables implied by a global distribution, as a flat event vector."""
    assignments = global_assignments(model.scenario)
    incidence = _incidence(model.scenario, assignment_events(model.scenario, assignments))
    return incidence @ np.asarray(weights, dtype=float)


@dataclass(frozen=True)
class ContextualityVerdict:
    """Classification of an empirical model and the evidence for it.

    ``consistent_assignments`` counts the global assignments whose every
    context restriction lies in the support; ``unextendable`` lists the
    support events that no such assignment reaches.
    """

    classification: str
    certificate: LPCertificate
    consistent_assignments: Optional[int] = None
    unextendable: Tuple[Tuple[int, str], ...] = ()
    lp_tol: float = LP_TOL
    support_tol: float = SUPPORT_TOL

    @property
    def is_contextual(self) -> bool:
        return self.classification != NONCONTEXTUAL

    def rank(self) -> int:
        return VERDICT_ORDER.index(self.classification)

    def replay(self, model: EmpiricalModel) -> bool:
        """Recompute the verdict on ``model`` from the stored certificate alone."""
        cert = self.certificate
        if self.classification == NONCONTEXTUAL:
            reconstructed = replay_weights(model, cert.weights)
            return max_abs(reconstructed - event_vector(model)) <= 2 * self.lp_tol

        assignments = global_assignments(model.scenario)
        events = assignment_events(model.scenario, assignments)
        value = float(cert.functional @ event_vector(model))
        bound = float(np.max(cert.functional[events].sum(axis=1)))
        if self.classification == CONTEXTUAL or self.consistent_assignments is None:
            return value - bound > self.lp_tol

        support = event_vector(model) > self.support_tol
        consistent = support[events].all(axis=1)
        if self.classification == STRONGLY_CONTEXTUAL:
            return not consistent.any()
        reached = np.zeros_like(support)
        reached[events[consistent].ravel()] = True
        return bool(np.any(support & ~reached))


def noncontextual_lp(model: EmpiricalModel, tol: float = LP_TOL, compat_tol: float = 1e-9) -> ContextualityVerdict:
    """Noncontextual iff some global distribution reproduces every table within ``tol``."""
    _require_compatible(model, compat_tol)
    assignments = global_assignments(model.scenario)
    incidence = _incidence(model.scenario, assignment_events(model.scenario, assignments))
    cert = _solve_lp(model, incidence, tol)
    if cert.feasible:
        return ContextualityVerdict(NONCONTEXTUAL, cert, lp_tol=tol)
    if cert.violation <= tol:
        logger.check_warning(
            f"Dual functional violation {cert.violation:.3e} does not separate (gap {cert.duality_gap:.3e})"
        )
    return ContextualityVerdict(CONTEXTUAL, cert, lp_tol=tol)


def classify_hierarchy(
    model: EmpiricalModel,
    tol: float = LP_TOL,
    support_tol: float = SUPPORT_TOL,
    compat_tol: float = 1e-9,
) -> ContextualityVerdict:
    """Noncontextual, contextual, logically or strongly contextual.

    The possibilistic levels only look at the support ``p > support_tol``.
    """
    lp_verdict = noncontextual_lp(model, tol, compat_tol)
    scenario = model.scenario
    events = assignment_events(scenario, global_assignments(scenario))
    support = event_vector(model) > support_tol
    consistent = support[events].all(axis=1)
    reached = np.zeros_like(support)
    reached[events[consistent].ravel()] = True
    labels = event_labels(scenario)
    unextendable = tuple(labels[k] for k in np.flatnonzero(support & ~reached))

    strong = not consistent.any()
    logical = len(unextendable) > 0
    contextual = lp_verdict.is_contextual
    if logical and not contextual:
        # The support argument is exact; only the LP tolerance hides it.
        logger.check_warning(
            f"Support events {unextendable} are unextendable but the LP distance "
            f"{lp_verdict.certificate.distance:.3e} is within tol {tol:g}"
        )
        contextual = True

    assert not strong or logical, "Strong contextuality must imply logical contextuality"
    assert not logical or contextual, "Logical contextuality must imply contextuality"

    if strong:
        classification = STRONGLY_CONTEXTUAL
    elif logical:
        classification = LOGICALLY_CONTEXTUAL
    elif contextual:
        classification = CONTEXTUAL
    else:
        classification = NONCONTEXTUAL
    logger.info(f"Model classified {classification} ({int(consistent.sum())} consistent assignments)")
    return ContextualityVerdict(
        classification,
        lp_verdict.certificate,
        consistent_assignments=int(consistent.sum()),
        unextendable=unextendable,
        lp_tol=tol,
        support_tol=support_tol,
    )
