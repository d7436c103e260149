"""
Fusion-tree bases
=================

A basis vector of Hom(c, x_1 (x) ... (x) x_n) is a left comb

    (((x_1 x_2)_{c_2} x_3)_{c_3} ... x_n)_{c_n},   c_1 = x_1, c_n = c

labelled by the intermediate charges ``internal = (c_2, ..., c_{n-1})``.
Bases are ordered lexicographically by ``internal`` so that, with the unit
at id 0, the unit channel comes first.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from libanyon.categories.core import CategoryData, CategoryError, LabelRef

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FusionTree:
    leaves: Tuple[int, ...]
    total: int
    internal: Tuple[int, ...]

    @property
    def chain(self) -> Tuple[int, ...]:
        """Charges (c_1, ..., c_n) along the comb."""
        if len(self.leaves) == 1:
            return (self.total,)
        return (self.leaves[0],) + self.internal + (self.total,)


class FusionBasis(Sequence[FusionTree]):
    """Ordered, duplicate-free list of trees sharing leaves and total charge."""

    def __init__(self, leaves: Tuple[int, ...], total: int, trees: Sequence[FusionTree]) -> None:
        self.leaves = tuple(leaves)
        self.total = total
        self._trees = tuple(sorted(trees, key=lambda t: t.internal))
        self._index: Dict[Tuple[int, ...], int] = {t.internal: i for i, t in enumerate(self._trees)}
        assert len(self._index) == len(self._trees), "Duplicate fusion trees in basis"

    def __len__(self) -> int:
        return len(self._trees)

    def __getitem__(self, i):
        return self._trees[i]

    def __iter__(self) -> Iterator[FusionTree]:
        return iter(self._trees)

    def __eq__(self, other) -> bool:
        return isinstance(other, FusionBasis) and (self.leaves, self.total, self._trees) == (
            other.leaves,
            other.total,
            other._trees,
        )

    @property
    def dim(self) -> int:
        return len(self._trees)

    @property
    def n_leaves(self) -> int:
        return len(self.leaves)

    def index_of(self, internal: Tuple[int, ...]) -> Optional[int]:
        return self._index.get(tuple(internal))

    def table(self, cat: CategoryData) -> List[str]:
        """Aligned text rows: index, then the chain of intermediate charges."""
        header = ["idx"] + [f"c{i}" for i in range(2, self.n_leaves)]
        rows = [header] + [[str(i)] + [cat.name_of(c) for c in tree.internal] for i, tree in enumerate(self)]
        widths = [max(len(row[j]) for row in rows) for j in range(len(header))]
        return ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]


def enumerate_basis(cat: CategoryData, leaves: Sequence[LabelRef], total: LabelRef) -> FusionBasis:
    """All admissible left-comb labelings of Hom(total, leaves).

    An empty basis is a valid result. Unknown labels raise CategoryError.
    """
    leaves = cat.label_ids(leaves)
    total = cat.label_id(total)
    if not leaves:
        raise CategoryError("A fusion space needs at least one leaf")

    if len(leaves) == 1:
        trees = [FusionTree(leaves, total, ())] if leaves[0] == total else []
        return FusionBasis(leaves, total, trees)

    trees = []

    def extend(chain: Tuple[int, ...]) -> None:
        depth = len(chain)
        if depth == len(leaves):
            if chain[-1] == total:
                trees.append(FusionTree(leaves, total, chain[1:-1]))
            return
        for c in cat.channels(chain[-1], leaves[depth]):
            extend(chain + (c,))

    extend((leaves[0],))
    return FusionBasis(leaves, total, trees)


def dimension(cat: CategoryData, leaves: Sequence[LabelRef], total: LabelRef) -> int:
    """dim Hom(total, leaves) from iterated fusion-matrix products."""
    leaves = cat.label_ids(leaves)
    total = cat.label_id(total)
    if not leaves:
        raise CategoryError("A fusion space needs at least one leaf")
    N = cat.rules.N
    v = np.zeros(cat.n_labels, dtype=np.int64)
    v[leaves[0]] = 1
    for x in leaves[1:]:
        v = v @ N[:, x, :]
    return int(v[total])


@dataclass(frozen=True, eq=False)
class FMove:
    """Change of basis for one associativity move on the comb.

    ``matrix[i, j]`` is the coefficient of target tree ``targets[j]`` in
    source tree ``i``. For the inverse move the roles are swapped.
    """

    position: int
    matrix: np.ndarray
    sources: Tuple[Tuple[int, ...], ...]
    targets: Tuple[Tuple[int, ...], ...]


def _check_position(basis: FusionBasis, position: int) -> None:
    n = basis.n_leaves
    if not 1 <= position <= n - 2:
        raise CategoryError(f"inadmissible F-move position {position} for {n} leaves (valid: 1..{n - 2})")


def f_move(cat: CategoryData, basis: FusionBasis, position: int, inverse: bool = False) -> FMove:
    """Re-associate ((c_p x_{p+1}) x_{p+2}) into (c_p (x_{p+1} x_{p+2})).

    Positions are 1-based. Target trees carry the new channel of
    x_{p+1} x_{p+2} in place of c_{p+1} and are sorted lexicographically.
    """
    _check_position(basis, position)
    p = position
    b, c = basis.leaves[p], basis.leaves[p + 1]

    targets = set()
    for tree in basis:
        a, d = tree.chain[p - 1], tree.chain[p + 1]
        for f in cat.channels(b, c):
            if cat.N(a, f, d):
                targets.add(tree.internal[: p - 1] + (f,) + tree.internal[p:])
    targets = tuple(sorted(targets))
    target_index = {t: j for j, t in enumerate(targets)}
    sources = tuple(tree.internal for tree in basis)

    blocks = {}
    matrix = np.zeros((len(sources), len(targets)), dtype=complex)
    for i, tree in enumerate(basis):
        a, e, d = tree.chain[p - 1], tree.chain[p], tree.chain[p + 1]
        if (a, d) not in blocks:
            es, fs, block = cat.f_block(a, b, c, d)
            blocks[(a, d)] = (es, fs, np.linalg.inv(block) if inverse else block)
        es, fs, block = blocks[(a, d)]
        for fi, f in enumerate(fs):
            j = target_index[tree.internal[: p - 1] + (f,) + tree.internal[p:]]
            if inverse:
                matrix[i, j] = block[fi, es.index(e)]
            else:
                matrix[i, j] = block[es.index(e), fi]

    if inverse:
        return FMove(position=p, matrix=matrix.T.copy(), sources=targets, targets=sources)
    return FMove(position=p, matrix=matrix, sources=sources, targets=targets)


def f_move_matrix(cat: CategoryData, basis: FusionBasis, position: int, inverse: bool = False) -> np.ndarray:
    """Matrix of :func:`f_move`; rows index the input basis."""
    return f_move(cat, basis, position, inverse=inverse).matrix
