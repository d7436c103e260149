"""
Axiom checks
============

Each check evaluates an identity over every admissible label tuple and
reports the worst absolute residual. Missing symbols for admissible keys
raise :class:`~libanyon.categories.core.CategoryError` naming the key.

Pentagon:

    F^{fcd}_{e;gj} F^{abj}_{e;fk} = sum_h F^{abc}_{g;fh} F^{ahd}_{e;gk} F^{bcd}_{k;hj}

Hexagon (and the same with every R^{xy}_z replaced by 1 / R^{yx}_z):

    R^{ca}_e F^{acb}_{d;eg} R^{cb}_g = sum_f F^{cab}_{d;ef} R^{cf}_d F^{abc}_{d;fg}
"""

import logging
from itertools import product
from typing import Callable, List

import numpy as np

from libanyon.categories.core import DEFAULT_TOL, CategoryData
from libanyon.categories.modular import verify_modularity, verify_ribbon
from libanyon.utils.reports import CheckReport, max_abs

logger = logging.getLogger(__name__)


class _Worst:
    """Tracks the largest residual and where it occurred."""

    def __init__(self) -> None:
        self.value = 0.0
        self.where = None

    def update(self, residual: float, where: tuple) -> None:
        if residual > self.value:
            self.value = residual
            self.where = where

    def report(self, name: str, tol: float, cat: CategoryData) -> CheckReport:
        passed = self.value <= tol
        if not passed:
            logger.check_warning(f"{cat.name}: {name} residual {self.value:.3e} exceeds {tol:.1e} at {self.where}")
        return CheckReport(name=name, residual=self.value, tol=tol, passed=passed, worst=self.where)


def verify_fusion_rules(cat: CategoryData) -> CheckReport:
    """Unit law, commutativity, associativity of counts and duality.

    The residual is the number of violated instances.
    """
    N = cat.rules.N
    n = cat.n_labels
    unit = cat.unit
    violations = 0
    first = None

    def flag(where):
        nonlocal violations, first
        violations += 1
        if first is None:
            first = where

    for b, c in product(range(n), repeat=2):
        if N[unit, b, c] != int(b == c):
            flag(("unit", b, c))
    for a, b, c in product(range(n), repeat=3):
        if N[a, b, c] != N[b, a, c]:
            flag(("commutativity", a, b, c))
    left = np.einsum("abe,ecd->abcd", N, N)
    right = np.einsum("bcf,afd->abcd", N, N)
    for where in zip(*np.nonzero(left != right)):
        flag(("associativity",) + tuple(int(i) for i in where))
    for a, b in product(range(n), repeat=2):
        if N[a, b, unit] != int(b == cat.dual(a)):
            flag(("duality", a, b))

    passed = violations == 0
    if not passed:
        logger.check_warning(f"{cat.name}: {violations} fusion-rule violations, first {first}")
    return CheckReport(name="fusion_rules", residual=float(violations), tol=0.0, passed=passed, worst=first)


def verify_pentagon(cat: CategoryData, tol: float = DEFAULT_TOL) -> CheckReport:
    """Max residual of the pentagon identity over all admissible tuples."""
    n = cat.n_labels
    N = cat.rules.N
    ch = cat.channels
    F = cat.F
    worst = _Worst()
    for a, b, c, d in product(range(n), repeat=4):
        for f in ch(a, b):
            for g in ch(f, c):
                for e in ch(g, d):
                    for j in ch(c, d):
                        if not N[f, j, e]:
                            continue
                        for k in ch(b, j):
                            if not N[a, k, e]:
                                continue
                            lhs = F(f, c, d, e, g, j) * F(a, b, j, e, f, k)
                            rhs = sum(F(a, b, c, g, f, h) * F(a, h, d, e, g, k) * F(b, c, d, k, h, j) for h in ch(b, c))
                            worst.update(abs(lhs - rhs), (a, b, c, d, e, f, g, k, j))
    return worst.report("pentagon", tol, cat)


def _hexagon_residual(cat: CategoryData, R: Callable[[int, int, int], complex], worst: _Worst, orientation: str):
    n = cat.n_labels
    N = cat.rules.N
    ch = cat.channels
    F = cat.F
    for a, b, c in product(range(n), repeat=3):
        for e in ch(a, c):
            for d in ch(e, b):
                for g in ch(c, b):
                    if not N[a, g, d]:
                        continue
                    lhs = R(c, a, e) * F(a, c, b, d, e, g) * R(c, b, g)
                    rhs = sum(F(c, a, b, d, e, f) * R(c, f, d) * F(a, b, c, d, f, g) for f in ch(a, b))
                    worst.update(abs(lhs - rhs), (orientation, a, b, c, d, e, g))


def _inverse(z: complex) -> complex:
    return 1 / z if z != 0 else 0j


def verify_hexagon(cat: CategoryData, tol: float = DEFAULT_TOL) -> CheckReport:
    """Max residual over both hexagon orientations (R and R inverse)."""
    worst = _Worst()
    _hexagon_residual(cat, cat.R, worst, "R")
    _hexagon_residual(cat, lambda x, y, z: _inverse(cat.R(y, x, z)), worst, "R^-1")
    return worst.report("hexagon", tol, cat)


def verify_f_unitarity(cat: CategoryData, tol: float = DEFAULT_TOL) -> CheckReport:
    """Max over all blocks of ||F F^dagger - I||_max."""
    worst = _Worst()
    for a, b, c, d in product(range(cat.n_labels), repeat=4):
        es, fs, block = cat.f_block(a, b, c, d)
        if not es and not fs:
            continue
        if len(es) != len(fs):
            worst.update(float("inf"), (a, b, c, d))
            continue
        worst.update(max_abs(block @ block.conj().T - np.eye(len(es))), (a, b, c, d))
    return worst.report("f_unitarity", tol, cat)


def verify_r_phases(cat: CategoryData, tol: float = DEFAULT_TOL) -> CheckReport:
    """Every R-symbol has unit modulus."""
    worst = _Worst()
    for a, b, c in cat.rules.admissible_r_keys():
        worst.update(abs(abs(cat.R(a, b, c)) - 1.0), (a, b, c))
    return worst.report("r_phases", tol, cat)


def verify_category(cat: CategoryData, tol: float = DEFAULT_TOL) -> List[CheckReport]:
    """Run the full suite in a fixed order."""
    reports = [
        verify_fusion_rules(cat),
        verify_pentagon(cat, tol),
        verify_hexagon(cat, tol),
        verify_f_unitarity(cat, tol),
        verify_r_phases(cat, tol),
        verify_ribbon(cat, tol),
        verify_modularity(cat, tol),
    ]
    logger.info(f"{cat.name}: {sum(r.passed for r in reports)} of {len(reports)} checks passed")
    return reports
