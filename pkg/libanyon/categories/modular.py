"""
Quantum dimensions, twists and the S-matrix.
"""

import logging

import numpy as np

from libanyon.categories.core import DEFAULT_TOL, CategoryData, CategoryError, FusionRules, RSymbolTable
from libanyon.utils.reports import CheckReport, max_abs

logger = logging.getLogger(__name__)


def perron_dimensions(rules: FusionRules, unit: int) -> np.ndarray:
    """Perron-Frobenius eigenvalue of each fusion matrix."""
    dims = np.empty(rules.n_labels)
    for a in range(rules.n_labels):
        if a == unit:
            dims[a] = 1.0
            continue
        eigs = np.linalg.eigvals(rules.matrix(a).astype(float))
        dims[a] = float(np.max(np.abs(eigs)))
    return dims


def quantum_dimensions(cat: CategoryData) -> np.ndarray:
    """Quantum dimension d_a of every label, indexed by label id."""
    return perron_dimensions(cat.rules, cat.unit)


def global_dimension(cat: CategoryData) -> float:
    """sqrt(sum_a d_a^2)."""
    return float(np.sqrt(np.sum(quantum_dimensions(cat) ** 2)))


def ribbon_twists(rules: FusionRules, r: RSymbolTable, unit: int) -> np.ndarray:
    """Twists derived from the R-symbols: theta_a = sum_c (d_c / d_a) R^{aa}_c."""
    dims = perron_dimensions(rules, unit)
    twists = np.zeros(rules.n_labels, dtype=complex)
    for a in range(rules.n_labels):
        for c in rules.channels(a, a):
            if (a, a, c) not in r:
                raise CategoryError(f"Missing R-symbol for allowed vertex (a,b,c) = {(a, a, c)}")
            twists[a] += dims[c] / dims[a] * r[(a, a, c)]
    return twists


def s_matrix(cat: CategoryData) -> np.ndarray:
    """Unnormalized S-matrix with S[unit, a] = d_a.

    S[a, b] = sum_c N[dual a][b][c] theta_c / (theta_a theta_b) d_c
    """
    dims = quantum_dimensions(cat)
    theta = cat.twists
    n = cat.n_labels
    S = np.zeros((n, n), dtype=complex)
    for a in range(n):
        abar = cat.dual(a)
        for b in range(n):
            for c in cat.channels(abar, b):
                S[a, b] += theta[c] / (theta[abar] * theta[b]) * dims[c]
    return S


def verify_modularity(cat: CategoryData, tol: float = DEFAULT_TOL) -> CheckReport:
    """Modular iff |det S| > tol. Also notes how far S / D is from unitary."""
    S = s_matrix(cat)
    det = abs(np.linalg.det(S))
    normalized = S / global_dimension(cat)
    unitarity = max_abs(normalized @ normalized.conj().T - np.eye(cat.n_labels))
    passed = bool(det > tol)
    if not passed:
        logger.check_warning(f"{cat.name}: S-matrix is singular, |det S| = {det:.3e}")
    return CheckReport(
        name="modularity",
        residual=det,
        tol=tol,
        passed=passed,
        notes=(f"|det S| must exceed tol; unitarity residual of S/D = {unitarity:.3e}",),
    )


def verify_ribbon(cat: CategoryData, tol: float = DEFAULT_TOL) -> CheckReport:
    """Compare stored twists with those derived from the R-symbols."""
    derived = ribbon_twists(cat.rules, cat.r, cat.unit)
    diffs = np.abs(derived - cat.twists)
    worst = int(np.argmax(diffs))
    residual = float(diffs[worst])
    passed = residual <= tol
    if not passed:
        logger.check_warning(f"{cat.name}: twist of {cat.name_of(worst)} disagrees with R-symbols by {residual:.3e}")
    return CheckReport(name="ribbon", residual=residual, tol=tol, passed=passed, worst=(cat.name_of(worst),))
