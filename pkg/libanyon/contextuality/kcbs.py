"""
KCBS pentagon in the Fibonacci fusion space
===========================================

The five umbrella vectors

    v_j = (sin t cos(4 pi j / 5), sin t sin(4 pi j / 5), cos t),
    cos^2 t = cos(pi/5) / (1 + cos(pi/5)),

are written in the coordinates of the comb basis of Hom(tau, tau^4)
(dimension 3). Consecutive vectors are orthogonal, so the orthogonality
graph of the projectors P_j = v_j v_j^T is the 5-cycle. The symmetry axis
(0, 0, 1) maximizes sum_j <P_j>.
"""

import logging
from dataclasses import dataclass
from itertools import product
from typing import Dict, Mapping, Optional, Union

import numpy as np

from libanyon.categories.builtin import fibonacci_category
from libanyon.contextuality.empirical import EmpiricalModel, empirical_from_state
from libanyon.contextuality.scenario import (
    BINARY_OUTCOMES,
    ContextualityError,
    MeasurementScenario,
    ProjectorSet,
    scenario_from_projectors,
)
from libanyon.fusion_space import FusionBasis, enumerate_basis

logger = logging.getLogger(__name__)

N_KCBS = 5
Functional = Mapping[str, float]


@dataclass(frozen=True, eq=False)
class KCBSConstruction:
    """Pentagon projectors, the maximizing state, and the basis they live in."""

    projectors: ProjectorSet
    state: np.ndarray
    vectors: np.ndarray
    basis: FusionBasis

    @property
    def scenario(self) -> MeasurementScenario:
        return scenario_from_projectors(self.projectors)

    def model(self, state: Optional[np.ndarray] = None) -> EmpiricalModel:
        """Born-rule model for ``state`` (default: the maximizing state)."""
        return empirical_from_state(self.state if state is None else state, self.projectors, self.scenario)


def kcbs_vectors() -> np.ndarray:
    """Rows are the five unit vectors v_1 .. v_5."""
    c = np.cos(np.pi / 5)
    cos_t = np.sqrt(c / (1 + c))
    sin_t = np.sqrt(1 - cos_t**2)
    angles = 4 * np.pi * np.arange(N_KCBS) / N_KCBS
    return np.stack([sin_t * np.cos(angles), sin_t * np.sin(angles), np.full(N_KCBS, cos_t)], axis=1)


def kcbs_projectors_fibonacci() -> KCBSConstruction:
    cat = fibonacci_category()
    tau = cat.label_id("tau")
    basis = enumerate_basis(cat, (tau,) * 4, tau)
    if basis.dim != 3:
        raise ContextualityError(f"Hom(tau, tau^4) has dimension {basis.dim}, expected 3")
    vectors = kcbs_vectors()
    projectors = [np.outer(v, v).astype(complex) for v in vectors]
    labels = [f"P{j + 1}" for j in range(N_KCBS)]
    state = np.zeros(basis.dim, dtype=complex)
    state[2] = 1.0
    logger.debug(f"KCBS vectors placed in the basis {[tree.internal for tree in basis]}")
    return KCBSConstruction(ProjectorSet(projectors, labels), state, vectors, basis)


def kcbs_functional(scenario: MeasurementScenario) -> Dict[str, int]:
    """Unit weight on outcome 1 of every measurement."""
    return {m: 1 for m in scenario.measurements}


def _check_binary(scenario: MeasurementScenario, functional: Functional) -> None:
    unknown = set(functional) - set(scenario.measurements)
    if unknown:
        raise ContextualityError(f"Functional names unknown measurements {sorted(unknown)}")
    for m in functional:
        if "1" not in scenario.outcomes[m]:
            raise ContextualityError(f"Measurement {m} has no outcome '1'")


def functional_value(model: EmpiricalModel, functional: Functional) -> float:
    """sum_m w_m Prob(m = 1)."""
    _check_binary(model.scenario, functional)
    value = 0.0
    for m, w in functional.items():
        marginal = model.measurement_marginal(m)
        value += w * float(marginal[model.scenario.outcomes[m].index("1")])
    return value


def kcbs_value(
    source: Union[EmpiricalModel, np.ndarray], projectors: Optional[ProjectorSet] = None
) -> float:
    """sum_i Prob(P_i = 1) of a model, or of a state measured with ``projectors``."""
    if isinstance(source, EmpiricalModel):
        return functional_value(source, kcbs_functional(source.scenario))
    if projectors is None:
        raise ContextualityError("A state needs projectors to evaluate the KCBS sum")
    state = np.asarray(source, dtype=complex)
    rho = np.outer(state, state.conj()) if state.ndim == 1 else state
    return float(sum(np.real(np.trace(rho @ p)) for p in projectors.projectors))


def max_state_value(projectors: ProjectorSet, functional: Optional[Functional] = None) -> float:
    """Largest eigenvalue of sum_i w_i P_i (all weights 1 by default)."""
    weights = functional or {label: 1 for label in projectors.labels}
    total = sum(w * projectors[m] for m, w in weights.items())
    return float(np.linalg.eigvalsh(total)[-1])


def classical_bound(scenario: MeasurementScenario, functional: Functional) -> Union[int, float]:
    """Max of the functional over 0/1 assignments with at most one 1 per context.

    Integer weights give an exact integer bound.
    """
    _check_binary(scenario, functional)
    measurements = scenario.measurements
    contexts = [scenario.context_indices(ci) for ci in range(len(scenario.contexts))]
    weights = [functional.get(m, 0) for m in measurements]
    best = None
    for bits in product((0, 1), repeat=len(measurements)):
        if any(sum(bits[k] for k in ctx) > 1 for ctx in contexts):
            continue
        value = sum(w for w, b in zip(weights, bits) if b)
        if best is None or value > best:
            best = value
    return best


def uniform_noise_model(scenario: MeasurementScenario) -> EmpiricalModel:
    """Exclusivity-respecting noise: half the mass on no click, the rest spread over single clicks."""
    for m in scenario.measurements:
        if tuple(scenario.outcomes[m]) != BINARY_OUTCOMES:
            raise ContextualityError(f"Measurement {m} is not binary")
    tables = []
    for ci in range(len(scenario.contexts)):
        k = len(scenario.contexts[ci])
        table = np.zeros(scenario.context_shape(ci))
        if k == 1:
            table[...] = 0.5
        else:
            table[(0,) * k] = 0.5
            for pos in range(k):
                click = [0] * k
                click[pos] = 1
                table[tuple(click)] = 0.5 / k
        tables.append(table)
    return EmpiricalModel(scenario, tables)
