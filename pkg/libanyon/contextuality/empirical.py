"""
Empirical models
================

An :class:`EmpiricalModel` stores one probability table per context. The
table of context ``C = (m_1, ..., m_k)`` is an array of shape
``(|O(m_1)|, ..., |O(m_k)|)`` indexed by outcome positions.
"""

import logging
from itertools import product
from typing import Dict, Mapping, Optional, Sequence

import numpy as np

from libanyon.contextuality.scenario import COMMUTE_TOL, ContextualityError, MeasurementScenario, ProjectorSet
from libanyon.utils.reports import CheckReport

logger = logging.getLogger(__name__)

NORM_TOL = 1e-9
COMPAT_TOL = 1e-9
SUPPORT_TOL = 1e-9
_NEGATIVE_TOL = 1e-12


class EmpiricalModel:
    """Per-context outcome distributions on a scenario.

    Tables must be non-negative and normalized within 1e-9. Agreement of
    marginals on overlaps is checked by :meth:`check_compatibility`, not at
    construction, so signalling tables can still be loaded and diagnosed.
    """

    def __init__(self, scenario: MeasurementScenario, tables: Sequence[np.ndarray]) -> None:
        if len(tables) != len(scenario.contexts):
            raise ContextualityError(f"Expected {len(scenario.contexts)} tables, got {len(tables)}")
        checked = []
        for ci, table in enumerate(tables):
            table = np.array(table, dtype=float)
            shape = scenario.context_shape(ci)
            if table.shape != shape:
                raise ContextualityError(f"Table {ci} has shape {table.shape}, context needs {shape}")
            if np.any(table < -_NEGATIVE_TOL):
                raise ContextualityError(f"Table {ci} has negative entries")
            table = np.clip(table, 0.0, None)
            if abs(table.sum() - 1.0) > NORM_TOL:
                raise ContextualityError(f"Table {ci} sums to {table.sum():.12g}, not 1")
            table.setflags(write=False)
            checked.append(table)
        self.scenario = scenario
        self.tables = tuple(checked)

    def __repr__(self) -> str:
        return f"EmpiricalModel({len(self.scenario.measurements)} measurements, {len(self.tables)} contexts)"

    def prob(self, ci: int, outcomes: Sequence[str]) -> float:
        """Probability of the outcome labels ``outcomes`` in context ``ci``."""
        ctx = self.scenario.contexts[ci]
        idx = tuple(self.scenario.outcomes[m].index(str(o)) for m, o in zip(ctx, outcomes))
        return float(self.tables[ci][idx])

    def marginal(self, ci: int, measurements: Sequence[str]) -> np.ndarray:
        """Marginal of context ``ci`` on ``measurements`` (in the given order)."""
        ctx = self.scenario.contexts[ci]
        keep = [ctx.index(m) for m in measurements]
        drop = tuple(k for k in range(len(ctx)) if k not in keep)
        reduced = self.tables[ci].sum(axis=drop) if drop else self.tables[ci]
        remaining = [k for k in range(len(ctx)) if k in keep]
        return np.transpose(reduced, [remaining.index(k) for k in keep])

    def measurement_marginal(self, m: str) -> np.ndarray:
        """Outcome distribution of ``m`` from the first context containing it."""
        ci = next(i for i, ctx in enumerate(self.scenario.contexts) if m in ctx)
        return self.marginal(ci, (m,))

    def check_compatibility(self, tol: float = COMPAT_TOL) -> CheckReport:
        """Max disagreement of marginals over all overlapping context pairs."""
        worst, where = 0.0, None
        for i, j, shared in self.scenario.overlaps():
            residual = float(np.max(np.abs(self.marginal(i, shared) - self.marginal(j, shared))))
            if residual > worst:
                worst, where = residual, (i, j, ",".join(shared))
        passed = worst <= tol
        if not passed:
            i, j, shared = where
            logger.check_warning(f"Signalling model: contexts {i} and {j} disagree on {shared} by {worst:.3e}")
        return CheckReport("compatibility", worst, tol, passed, worst=where)

    def reordered(self, order: Sequence[int]) -> "EmpiricalModel":
        """The same model with its contexts listed in ``order``."""
        scenario = MeasurementScenario(
            measurements=self.scenario.measurements,
            contexts=tuple(self.scenario.contexts[i] for i in order),
            outcomes=self.scenario.outcomes,
        )
        return EmpiricalModel(scenario, [self.tables[i] for i in order])

    def relabeled(self, mapping: Mapping[str, str]) -> "EmpiricalModel":
        """The same model with measurements renamed through ``mapping``."""
        rename = lambda m: mapping.get(m, m)  # noqa: E731
        scenario = MeasurementScenario(
            measurements=tuple(rename(m) for m in self.scenario.measurements),
            contexts=tuple(tuple(rename(m) for m in ctx) for ctx in self.scenario.contexts),
            outcomes={rename(m): o for m, o in self.scenario.outcomes.items()},
        )
        return EmpiricalModel(scenario, self.tables)


def _density_matrix(state: np.ndarray, dim: int) -> np.ndarray:
    state = np.asarray(state, dtype=complex)
    if state.ndim == 1:
        if state.shape[0] != dim:
            raise ContextualityError(f"State has dimension {state.shape[0]}, projectors act on {dim}")
        norm = np.linalg.norm(state)
        if abs(norm - 1.0) > NORM_TOL:
            raise ContextualityError(f"State must be a unit vector, norm is {norm:.12g}")
        return np.outer(state, state.conj())
    if state.shape != (dim, dim):
        raise ContextualityError(f"Density matrix has shape {state.shape}, projectors act on {dim}")
    if np.max(np.abs(state - state.conj().T)) > 1e-10 or abs(np.trace(state) - 1.0) > NORM_TOL:
        raise ContextualityError("Density matrix must be Hermitian with unit trace")
    return state


def empirical_from_state(
    state: np.ndarray,
    ps: ProjectorSet,
    scenario: MeasurementScenario,
    commute_tol: float = COMMUTE_TOL,
) -> EmpiricalModel:
    """Born-rule tables for a pure state (unit vector) or a density matrix.

    Outcome "1" of measurement P is the projector P, outcome "0" its
    complement I - P.
    """
    rho = _density_matrix(state, ps.dim)
    eye = np.eye(ps.dim)
    tables = []
    for ctx in scenario.contexts:
        idx = [ps.index(m) for m in ctx]
        for a, pos in enumerate(idx):
            for b in idx[a + 1 :]:
                if ps.commutator_norm(pos, b) >= commute_tol:
                    raise ContextualityError(f"non-commuting context: {ps.labels[pos]} and {ps.labels[b]}")
        table = np.zeros((2,) * len(ctx))
        for outcome in product((0, 1), repeat=len(ctx)):
            op = eye.astype(complex)
            for pos, bit in zip(idx, outcome):
                op = op @ (ps.projectors[pos] if bit else eye - ps.projectors[pos])
            table[outcome] = np.real(np.trace(rho @ op))
        tables.append(np.clip(table, 0.0, None))
    model = EmpiricalModel(scenario, tables)
    report = model.check_compatibility()
    if not report.passed:
        logger.check_warning(f"Born-rule model fails compatibility by {report.residual:.3e}")
    return model


def outcome_key(outcomes: Sequence[str]) -> str:
    return ",".join(outcomes)


def table_events(model: EmpiricalModel, ci: int) -> Dict[str, float]:
    """``{"o1,o2,...": probability}`` for every outcome tuple of context ``ci``."""
    ctx = model.scenario.contexts[ci]
    labels = [model.scenario.outcomes[m] for m in ctx]
    events = {}
    for idx in product(*[range(len(lab)) for lab in labels]):
        events[outcome_key([lab[k] for lab, k in zip(labels, idx)])] = float(model.tables[ci][idx])
    return events


def model_from_events(scenario: MeasurementScenario, events: Mapping[int, Mapping[str, float]]) -> EmpiricalModel:
    """Build tables from ``{context index: {"o1,o2,...": probability}}``; missing tuples are 0."""
    tables = []
    for ci, ctx in enumerate(scenario.contexts):
        table = np.zeros(scenario.context_shape(ci))
        for key, prob in (events.get(ci) or {}).items():
            parts = key.split(",") if key else []
            idx = tuple(scenario.outcomes[m].index(o) for m, o in zip(ctx, parts))
            table[idx] = prob
        tables.append(table)
    return EmpiricalModel(scenario, tables)


def optional_state(state: Optional[np.ndarray], dim: int) -> np.ndarray:
    """``state`` or the first basis vector."""
    if state is not None:
        return np.asarray(state, dtype=complex)
    default = np.zeros(dim, dtype=complex)
    default[0] = 1.0
    return default
