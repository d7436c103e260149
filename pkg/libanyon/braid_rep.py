"""
Braid-group representations on fusion spaces
============================================

For homogeneous leaves x the generator s_i acts on the comb basis as

* i = 1: the phase R^{xx}_{c_2} on each basis vector;
* i >= 2: the block F R F^{-1} on the charge c_i with (c_{i-1}, c_{i+1})
  fixed, where F = [F^{c_{i-1} x x}_{c_{i+1}}] and R = diag(R^{xx}_f).

Column ``j`` of a generator matrix is the image of basis vector ``j``.
Words act left to right: rho(w_1 w_2 ... w_m) = rho(w_1) rho(w_2) ... rho(w_m).
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg

from libanyon.braid_word import BraidError, BraidWord, random_braid_word
from libanyon.categories.core import DEFAULT_TOL, CategoryData, EmptyFusionSpaceError, LabelRef
from libanyon.fusion_space import FusionBasis, enumerate_basis
from libanyon.utils.reports import CheckReport, max_abs

logger = logging.getLogger(__name__)

RANK_TOL = 1e-8
_BRANCH_TOL = 1e-6  # eigenvalues this close to -1 trigger the phase shift before logm
_BRANCH_SHIFT = 1e-3


@dataclass(frozen=True, eq=False)
class BraidRep:
    """Unitary generators rho(s_1) .. rho(s_{n-1}) on a fusion basis."""

    cat: CategoryData
    leaves: Tuple[int, ...]
    total: int
    basis: FusionBasis
    generators: Tuple[np.ndarray, ...]
    _inverses: Tuple[np.ndarray, ...] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        generators = tuple(np.array(g, dtype=complex) for g in self.generators)
        for g in generators:
            g.setflags(write=False)
        inverses = tuple(np.linalg.inv(g) for g in generators)
        object.__setattr__(self, "generators", generators)
        object.__setattr__(self, "_inverses", inverses)

    @property
    def n_strands(self) -> int:
        return len(self.leaves)

    @property
    def dim(self) -> int:
        return self.basis.dim

    def generator(self, i: int, exponent: int = 1) -> np.ndarray:
        """rho(s_i) or its inverse; ``i`` is 1-based."""
        if not 1 <= i <= len(self.generators):
            raise BraidError(f"Generator s{i} does not exist on {self.n_strands} strands")
        return self.generators[i - 1] if exponent == 1 else self._inverses[i - 1]

    def replace_generator(self, i: int, matrix: np.ndarray) -> "BraidRep":
        """A copy with rho(s_i) replaced; used to probe the checks."""
        generators = list(self.generators)
        generators[i - 1] = matrix
        return BraidRep(self.cat, self.leaves, self.total, self.basis, tuple(generators))


def _local_braid_block(cat: CategoryData, a: int, x: int, d: int) -> Tuple[Tuple[int, ...], np.ndarray]:
    """M[e, e'] = sum_f F_{ef} R^{xx}_f (F^{-1})_{fe'} for F = [F^{a x x}_d]."""
    es, fs, F = cat.f_block(a, x, x, d)
    phases = np.diag([cat.R(x, x, f) for f in fs])
    return es, F @ phases @ np.linalg.inv(F)


def build_rep(cat: CategoryData, leaves: Sequence[LabelRef], total: LabelRef) -> BraidRep:
    """Generators of B_n on Hom(total, leaves) for identical leaves."""
    leaves = cat.label_ids(leaves)
    total = cat.label_id(total)
    if len(set(leaves)) > 1:
        raise BraidError("inhomogeneous leaves unsupported")
    basis = enumerate_basis(cat, leaves, total)
    if basis.dim == 0:
        names = ", ".join(cat.name_of(x) for x in leaves)
        raise EmptyFusionSpaceError(f"Hom({cat.name_of(total)}, {names}) is zero-dimensional")

    x = leaves[0]
    n = len(leaves)
    dim = basis.dim
    blocks: Dict[Tuple[int, int], Tuple[Tuple[int, ...], np.ndarray]] = {}
    generators = []
    for i in range(1, n):
        G = np.zeros((dim, dim), dtype=complex)
        for col, tree in enumerate(basis):
            chain = tree.chain
            if i == 1:
                G[col, col] = cat.R(x, x, chain[1])
                continue
            a, e, d = chain[i - 2], chain[i - 1], chain[i]
            if (a, d) not in blocks:
                blocks[(a, d)] = _local_braid_block(cat, a, x, d)
            es, M = blocks[(a, d)]
            row_e = es.index(e)
            for k, e_new in enumerate(es):
                internal = list(tree.internal)
                internal[i - 2] = e_new
                row = basis.index_of(tuple(internal))
                G[row, col] += M[row_e, k]
        generators.append(G)

    logger.debug(f"Built {cat.name} representation of B_{n} on dimension {dim}")
    return BraidRep(cat=cat, leaves=leaves, total=total, basis=basis, generators=tuple(generators))


def apply_word(rep: BraidRep, w: BraidWord) -> np.ndarray:
    """Ordered product of generators and inverses; identity for the empty word."""
    if w.n_strands != rep.n_strands:
        raise BraidError(f"Word on {w.n_strands} strands applied to a {rep.n_strands}-strand representation")
    result = np.eye(rep.dim, dtype=complex)
    for i, e in w.letters:
        result = result @ rep.generator(i, e)
    return result


def verify_braid_relations(rep: BraidRep, tol: float = DEFAULT_TOL) -> CheckReport:
    """Far commutation and Yang-Baxter residuals; vacuous for two strands."""
    worst, where = 0.0, None
    n_gen = len(rep.generators)
    for i in range(1, n_gen + 1):
        for j in range(i + 2, n_gen + 1):
            gi, gj = rep.generator(i), rep.generator(j)
            residual = max_abs(gi @ gj - gj @ gi)
            if residual > worst:
                worst, where = residual, ("far", i, j)
        if i < n_gen:
            gi, gk = rep.generator(i), rep.generator(i + 1)
            residual = max_abs(gi @ gk @ gi - gk @ gi @ gk)
            if residual > worst:
                worst, where = residual, ("yang-baxter", i, i + 1)
    notes = ("no relations on fewer than three strands",) if n_gen < 2 else ()
    passed = worst <= tol
    if not passed:
        logger.check_warning(f"Braid relation residual {worst:.3e} at {where}")
    return CheckReport("braid_relations", worst, tol, passed, worst=where, notes=notes)


def verify_unitarity(rep: BraidRep, tol: float = DEFAULT_TOL) -> CheckReport:
    worst, where = 0.0, None
    eye = np.eye(rep.dim)
    for i, g in enumerate(rep.generators, start=1):
        residual = max_abs(g @ g.conj().T - eye)
        if residual > worst:
            worst, where = residual, (f"s{i}",)
    passed = worst <= tol
    if not passed:
        logger.check_warning(f"Generator unitarity residual {worst:.3e} at {where}")
    return CheckReport("unitarity", worst, tol, passed, worst=where)


def verify_determinants(rep: BraidRep, tol: float = DEFAULT_TOL) -> CheckReport:
    """|det rho(s_i)| = 1."""
    residuals = [abs(abs(np.linalg.det(g)) - 1.0) for g in rep.generators]
    worst = max(residuals, default=0.0)
    where = (f"s{int(np.argmax(residuals)) + 1}",) if residuals else None
    return CheckReport("determinants", worst, tol, worst <= tol, worst=where)


def verify_word_inverses(
    rep: BraidRep,
    n_words: int = 200,
    max_length: int = 40,
    rng: Optional[np.random.Generator] = None,
    tol: float = DEFAULT_TOL,
) -> CheckReport:
    """rho(w) rho(w^-1) = I for seeded random words of length up to ``max_length``."""
    rng = rng if rng is not None else np.random.default_rng(0)
    worst, where = 0.0, None
    eye = np.eye(rep.dim)
    for _ in range(n_words):
        w = random_braid_word(rep.n_strands, int(rng.integers(0, max_length + 1)), rng)
        residual = max_abs(apply_word(rep, w) @ apply_word(rep, w.inverse()) - eye)
        if residual > worst:
            worst, where = residual, (str(w),)
    passed = worst <= tol
    if not passed:
        logger.check_warning(f"Word inverse residual {worst:.3e} for {where[0]!r}")
    return CheckReport("word_inverses", worst, tol, passed, worst=where, notes=(f"{n_words} random words",))


def commutant_dimension(generators: Sequence[np.ndarray], tol: float = RANK_TOL) -> int:
    """Dimension of the matrices commuting with every generator.

    Equals 1 exactly when the generators act irreducibly.
    """
    if not generators:
        raise BraidError("The commutant needs at least one generator")
    d = np.asarray(generators[0]).shape[0]
    eye = np.eye(d)
    rows = [np.kron(eye, g) - np.kron(g.T, eye) for g in map(np.asarray, generators)]
    return scipy.linalg.null_space(np.vstack(rows), rcond=tol).shape[1]


@dataclass(frozen=True)
class LieClosureReport:
    """Outcome of the Lie-closure diagnostic.

    ``dimension == max_dimension`` (= d^2 - 1) means the generators'
    logarithms generate su(d).
    """

    dimension: int
    max_dimension: int
    shifted_generators: Tuple[int, ...] = ()
    notes: Tuple[str, ...] = ()

    @property
    def is_full(self) -> bool:
        return self.dimension == self.max_dimension


def _traceless_log(u: np.ndarray, index: int, shifted: List[int]) -> np.ndarray:
    """Traceless anti-Hermitian part of the principal logarithm of ``u``."""
    d = u.shape[0]
    if np.any(np.abs(np.linalg.eigvals(u) + 1.0) < _BRANCH_TOL):
        # A global phase moves the spectrum off the branch cut; the trace
        # projection below removes it again.
        u = u * np.exp(1j * _BRANCH_SHIFT)
        shifted.append(index)
        logger.debug(f"Generator {index} has eigenvalue -1; shifted by a global phase before logm")
    h = scipy.linalg.logm(u)
    h = 0.5 * (h - h.conj().T)
    return h - np.trace(h) / d * np.eye(d)


def lie_closure(generators: Sequence[np.ndarray], rank_tol: float = RANK_TOL) -> LieClosureReport:
    """Real dimension of the Lie algebra generated by the generators' logarithms.

    Elements are kept in a real orthonormal frame (Gram-Schmidt on the
    stacked real and imaginary parts); a candidate whose residual after
    projection is at most ``rank_tol`` is in the span already.
    """
    generators = [np.asarray(g, dtype=complex) for g in generators]
    if not generators:
        return LieClosureReport(0, 0)
    d = generators[0].shape[0]
    max_dim = d * d - 1
    frame: List[np.ndarray] = []
    elements: List[np.ndarray] = []

    def try_add(x: np.ndarray) -> None:
        v = np.concatenate([x.real.ravel(), x.imag.ravel()])
        norm = np.linalg.norm(v)
        if norm <= rank_tol:
            return
        v = v / norm
        for _ in range(2):  # second pass restores orthogonality lost to rounding
            for q in frame:
                v = v - (q @ v) * q
        residual = np.linalg.norm(v)
        if residual > rank_tol:
            frame.append(v / residual)
            elements.append(x / norm)

    shifted: List[int] = []
    for index, g in enumerate(generators, start=1):
        try_add(_traceless_log(g, index, shifted))

    i = 0
    while i < len(elements) and len(elements) < max_dim:
        for j in range(i):
            try_add(elements[i] @ elements[j] - elements[j] @ elements[i])
            if len(elements) == max_dim:
                break
        i += 1

    notes = tuple(f"s{k} shifted by exp(i*{_BRANCH_SHIFT}) before the logarithm" for k in shifted)
    return LieClosureReport(len(elements), max_dim, tuple(shifted), notes)


def lie_closure_dim(generators: Sequence[np.ndarray], rank_tol: float = RANK_TOL) -> int:
    return lie_closure(generators, rank_tol).dimension
