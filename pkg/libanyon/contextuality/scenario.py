"""
Measurement scenarios and projector families.
"""

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Mapping, Sequence, Tuple

import networkx as nx
import numpy as np

from libanyon.utils.reports import max_abs

logger = logging.getLogger(__name__)

COMMUTE_TOL = 1e-8
PROJECTOR_TOL = 1e-10
MAX_MEASUREMENTS = 24
BINARY_OUTCOMES = ("0", "1")


class ContextualityError(Exception):
    """Raised on invalid scenarios, projectors or models, and on solver failures"""


@dataclass(frozen=True)
class MeasurementScenario:
    """(X, M, O): measurements, maximal contexts, outcome sets.

    Contexts keep the measurement order they were given in; the per-context
    tables of an empirical model are indexed in that order.
    """

    measurements: Tuple[str, ...]
    contexts: Tuple[Tuple[str, ...], ...]
    outcomes: Mapping[str, Tuple[str, ...]]

    def __post_init__(self) -> None:
        measurements = tuple(self.measurements)
        contexts = tuple(tuple(ctx) for ctx in self.contexts)
        outcomes = {m: tuple(str(o) for o in (self.outcomes or {}).get(m, ())) for m in measurements}
        object.__setattr__(self, "measurements", measurements)
        object.__setattr__(self, "contexts", contexts)
        object.__setattr__(self, "outcomes", outcomes)

        if len(set(measurements)) != len(measurements):
            raise ContextualityError("Measurement labels must be unique")
        for m in measurements:
            if not outcomes.get(m):
                raise ContextualityError(f"Measurement {m} has no outcomes")
        covered = set()
        for ctx in contexts:
            if not ctx or len(set(ctx)) != len(ctx):
                raise ContextualityError(f"Context {ctx} must be a non-empty set")
            unknown = set(ctx) - set(measurements)
            if unknown:
                raise ContextualityError(f"Context {ctx} names unknown measurements {sorted(unknown)}")
            covered.update(ctx)
        missing = [m for m in measurements if m not in covered]
        if missing:
            raise ContextualityError(f"Measurements {missing} appear in no context")
        as_sets = [frozenset(ctx) for ctx in contexts]
        if len(set(as_sets)) != len(as_sets):
            raise ContextualityError("Contexts must be distinct")
        for (i, s), (j, t) in combinations(enumerate(as_sets), 2):
            if s < t or t < s:
                raise ContextualityError(f"Context {contexts[min(i, j)]} is not maximal")

    def index(self, m: str) -> int:
        return self.measurements.index(m)

    def context_indices(self, ci: int) -> Tuple[int, ...]:
        return tuple(self.index(m) for m in self.contexts[ci])

    def context_shape(self, ci: int) -> Tuple[int, ...]:
        return tuple(len(self.outcomes[m]) for m in self.contexts[ci])

    def n_global_assignments(self) -> int:
        return int(np.prod([len(self.outcomes[m]) for m in self.measurements], dtype=object))

    def overlaps(self):
        """(i, j, shared measurements) for every pair of overlapping contexts."""
        for i, j in combinations(range(len(self.contexts)), 2):
            shared = tuple(m for m in self.contexts[i] if m in self.contexts[j])
            if shared:
                yield i, j, shared


class ProjectorSet:
    """Labelled Hermitian idempotents on a common Hilbert space."""

    def __init__(self, projectors: Sequence[np.ndarray], labels: Sequence[str], tol: float = PROJECTOR_TOL) -> None:
        if len(projectors) == 0:
            raise ContextualityError("A projector set needs at least one projector")
        if len(projectors) != len(labels):
            raise ContextualityError("Every projector needs exactly one label")
        if len(set(labels)) != len(labels):
            raise ContextualityError("Projector labels must be unique")
        mats = []
        for label, p in zip(labels, projectors):
            p = np.array(p, dtype=complex)
            if p.ndim != 2 or p.shape[0] != p.shape[1]:
                raise ContextualityError(f"Projector {label} is not square")
            if mats and p.shape != mats[0].shape:
                raise ContextualityError(f"Projector {label} has a different dimension")
            if max_abs(p @ p - p) > tol or max_abs(p - p.conj().T) > tol:
                raise ContextualityError(f"{label} is not a Hermitian idempotent within {tol}")
            p.setflags(write=False)
            mats.append(p)
        self.projectors = tuple(mats)
        self.labels = tuple(labels)
        self._index: Dict[str, int] = {label: i for i, label in enumerate(self.labels)}

    def __len__(self) -> int:
        return len(self.projectors)

    @property
    def dim(self) -> int:
        return self.projectors[0].shape[0]

    def __getitem__(self, label: str) -> np.ndarray:
        return self.projectors[self._index[label]]

    def index(self, label: str) -> int:
        return self._index[label]

    def commutator_norm(self, i: int, j: int) -> float:
        p, q = self.projectors[i], self.projectors[j]
        return max_abs(p @ q - q @ p)

    def commutation_graph(self, tol: float = COMMUTE_TOL) -> nx.Graph:
        """Nodes are labels; an edge joins projectors whose commutator is below ``tol``."""
        graph = nx.Graph()
        graph.add_nodes_from(self.labels)
        for i, j in combinations(range(len(self)), 2):
            if self.commutator_norm(i, j) < tol:
                graph.add_edge(self.labels[i], self.labels[j])
        return graph


def scenario_from_projectors(ps: ProjectorSet, tol: float = COMMUTE_TOL) -> MeasurementScenario:
    """Contexts are the maximal cliques of the commutation graph.

    Each context lists its measurements in projector order; contexts are
    sorted by those index tuples.
    """
    if len(ps) > MAX_MEASUREMENTS:
        raise ContextualityError(f"{len(ps)} projectors exceeds desk-scale bound of {MAX_MEASUREMENTS}")
    graph = ps.commutation_graph(tol)
    cliques = sorted(tuple(sorted(ps.index(m) for m in clique)) for clique in nx.find_cliques(graph))
    contexts = tuple(tuple(ps.labels[i] for i in clique) for clique in cliques)
    logger.debug(f"Commutation graph has {graph.number_of_edges()} edges and {len(contexts)} maximal cliques")
    return MeasurementScenario(
        measurements=ps.labels,
        contexts=contexts,
        outcomes={m: BINARY_OUTCOMES for m in ps.labels},
    )
