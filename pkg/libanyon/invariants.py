"""
Link invariants from braid closures
===================================

The quantum trace of a braid on homogeneous leaves x is

    Tr_q(w) = sum_c d_c tr rho_c(w)

over all total charges c. With x = tau in the Fibonacci category the
generators satisfy rho(s_i) = A^{-1} + A E_i with A = exp(-3 pi i / 5),
where E_i has loop value d_tau = phi. The writhe-corrected value
theta_tau^{-writhe} Tr_q(w) / d_tau is therefore the Jones polynomial at
t = A^{-4} = exp(2 pi i / 5), which :func:`kauffman_bracket_oracle`
recomputes independently from the Kauffman state sum.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Sequence

import numpy as np
from scipy.cluster.hierarchy import DisjointSet

from libanyon.braid_rep import apply_word, build_rep
from libanyon.braid_word import BraidError, BraidWord
from libanyon.categories.builtin import fibonacci_category
from libanyon.categories.core import CategoryData, EmptyFusionSpaceError, LabelRef
from libanyon.categories.modular import quantum_dimensions
from libanyon.fusion_space import dimension
from libanyon.message_numbers import NORM_GLOBAL, NORM_MARKOV, NORM_NONE, NORM_UNKNOT, TRACE_NORMALIZATIONS

logger = logging.getLogger(__name__)

FIBONACCI_A = np.exp(-3j * np.pi / 5)
FIBONACCI_T = np.exp(2j * np.pi / 5)
ORACLE_MAX_CROSSINGS = 20


class InvariantError(Exception):
    """Raised when an invariant cannot be evaluated for the given input"""


@dataclass(frozen=True)
class LinkDiagramFromBraid:
    """Trace closure of a braid word."""

    word: BraidWord

    @property
    def n_strands(self) -> int:
        return self.word.n_strands

    @property
    def writhe(self) -> int:
        return self.word.writhe

    @property
    def crossings(self) -> int:
        return len(self.word)

    @property
    def components(self) -> int:
        """Number of link components: cycles of the braid permutation."""
        perm = self.word.permutation()
        seen = set()
        cycles = 0
        for start in range(len(perm)):
            if start in seen:
                continue
            cycles += 1
            k = start
            while k not in seen:
                seen.add(k)
                k = perm[k]
        return cycles


@lru_cache(maxsize=64)
def _sector_reps(cat: CategoryData, leaves: tuple):
    """(total charge, rep) for every non-empty sector, by ascending charge."""
    return tuple((c, build_rep(cat, leaves, c)) for c in range(cat.n_labels) if dimension(cat, leaves, c) > 0)


def quantum_trace(cat: CategoryData, leaves: Sequence[LabelRef], w: BraidWord) -> complex:
    """sum_c d_c tr rho_c(w), summed in ascending c."""
    leaves = cat.label_ids(leaves)
    if len(set(leaves)) > 1:
        raise BraidError("inhomogeneous leaves unsupported")
    if w.n_strands != len(leaves):
        raise BraidError(f"Word on {w.n_strands} strands closed over {len(leaves)} leaves")
    sectors = _sector_reps(cat, leaves)
    if not sectors:
        raise EmptyFusionSpaceError("zero-dimensional total space: no total charge is reachable")
    dims = quantum_dimensions(cat)
    value = 0j
    for c, rep in sectors:
        value += dims[c] * np.trace(apply_word(rep, w))
    return complex(value)


def markov_trace(
    cat: CategoryData, leaves: Sequence[LabelRef], w: BraidWord, normalization: str = NORM_UNKNOT
) -> complex:
    """Normalized quantum trace.

    ``unknot`` divides by d_leaf (a single closed strand evaluates to 1),
    ``markov`` by d_leaf ** n, ``global`` by the sum of d_a ** 2, and
    ``none`` returns :func:`quantum_trace` unchanged.
    """
    if normalization not in TRACE_NORMALIZATIONS:
        raise InvariantError(f"Unknown normalization {normalization!r}")
    value = quantum_trace(cat, leaves, w)
    dims = quantum_dimensions(cat)
    d_leaf = dims[cat.label_id(leaves[0])]
    if normalization == NORM_UNKNOT:
        return value / d_leaf
    if normalization == NORM_MARKOV:
        return value / d_leaf ** len(leaves)
    if normalization == NORM_GLOBAL:
        return value / float(np.sum(dims**2))
    assert normalization == NORM_NONE
    return value


def jones_at_fibonacci_root(w: BraidWord) -> complex:
    """Jones polynomial of the closure of ``w`` at t = exp(2 pi i / 5)."""
    cat = fibonacci_category()
    tau = cat.label_id("tau")
    leaves = (tau,) * w.n_strands
    framing = cat.twist(tau) ** (-w.writhe)
    return complex(framing * markov_trace(cat, leaves, w, NORM_UNKNOT))


def kauffman_bracket_oracle(w: BraidWord, variable: complex = FIBONACCI_A) -> complex:
    """Jones evaluation at t = variable^-4 from the Kauffman state sum.

    Each crossing s_i^e is smoothed into the identity (weight A^-e) or the
    cup-cap E_i (weight A^e). Loops of the closed diagram are counted with
    union-find over the strand endpoints (level, position). The result is
    (-A^3)^writhe <L> / delta with delta = -A^2 - A^-2.
    """
    m = len(w)
    if m > ORACLE_MAX_CROSSINGS:
        raise InvariantError(f"oracle limit exceeded: {m} crossings > {ORACLE_MAX_CROSSINGS}")
    A = complex(variable)
    delta = -(A**2) - A**-2
    n = w.n_strands

    def node(level: int, pos: int) -> int:
        return level * n + pos

    # Pass-through strands and the closure are the same in every smoothing,
    # so they are merged once and each smoothing works on the segments left.
    base = DisjointSet(range((m + 1) * n))
    for level, (i, _) in enumerate(w.letters):
        for pos in range(n):
            if pos not in (i - 1, i):
                base.merge(node(level, pos), node(level + 1, pos))
    for pos in range(n):
        base.merge(node(0, pos), node(m, pos))
    segment = {root: k for k, root in enumerate(sorted({base[x] for x in range((m + 1) * n)}))}

    def seg(level: int, pos: int) -> int:
        return segment[base[node(level, pos)]]

    choices = []
    for level, (i, e) in enumerate(w.letters):
        left, right = i - 1, i
        identity = ((seg(level, left), seg(level + 1, left)), (seg(level, right), seg(level + 1, right)))
        cup_cap = ((seg(level, left), seg(level, right)), (seg(level + 1, left), seg(level + 1, right)))
        choices.append(((identity, -e), (cup_cap, e)))

    # Integer tallies per (power of A, loop count) keep the reduction order-independent.
    tallies = Counter()
    for smoothing in product(*choices):
        loops = DisjointSet(range(len(segment)))
        power = 0
        for pairs, weight in smoothing:
            for a, b in pairs:
                loops.merge(a, b)
            power += weight
        tallies[(power, loops.n_subsets)] += 1

    bracket = 0j
    for (power, n_loops), count in sorted(tallies.items()):
        bracket += count * A**power * delta ** (n_loops - 1)
    return complex((-(A**3)) ** w.writhe * bracket)
