"""
Built-in categories
===================

Fibonacci, Ising and SU(2)_k (1 <= k <= 8). F-symbols are real in the gauge
used here, so every [F^{abc}_d] block is real orthogonal, and the Fibonacci
block [F^{tau tau tau}_tau] is symmetric. Twists are derived from the
R-symbols with :func:`libanyon.categories.modular.ribbon_twists`.

SU(2)_k labels are doubled spins 0..k (label ``j`` has id ``2j``) with
names "0", "1/2", "1", ...
"""

import logging
import math
from functools import lru_cache
from itertools import product
from typing import Dict

import numpy as np

from libanyon.categories.core import (
    CategoryData,
    CategoryError,
    FKey,
    FSymbolTable,
    FusionRules,
    Label,
    RKey,
    RSymbolTable,
    trivial_f_entries,
    trivial_r_entries,
)
from libanyon.categories.modular import ribbon_twists
from libanyon.utils.specs_checkers import BUILTIN_NAME_RE

logger = logging.getLogger(__name__)

PHI = (1 + math.sqrt(5)) / 2
MAX_LEVEL = 8


def _assemble(name, labels, N, f_entries, r_entries) -> CategoryData:
    rules = FusionRules(N)
    r = RSymbolTable(r_entries)
    unit = next(lab.id for lab in labels if lab.is_unit)
    return CategoryData(
        name=name,
        labels=tuple(labels),
        rules=rules,
        f=FSymbolTable(f_entries),
        r=r,
        twists=ribbon_twists(rules, r, unit),
    )


@lru_cache(maxsize=None)
def fibonacci_category() -> CategoryData:
    """Fibonacci anyons {1, tau} with tau x tau = 1 + tau."""
    one, tau = 0, 1
    labels = [Label(one, "1", one, is_unit=True), Label(tau, "tau", tau)]
    N = np.zeros((2, 2, 2), dtype=int)
    N[one, one, one] = N[one, tau, tau] = N[tau, one, tau] = 1
    N[tau, tau, one] = N[tau, tau, tau] = 1

    f_entries = trivial_f_entries(FusionRules(N))
    f_entries[(tau, tau, tau, tau, one, one)] = 1 / PHI
    f_entries[(tau, tau, tau, tau, one, tau)] = math.sqrt(1 / PHI)
    f_entries[(tau, tau, tau, tau, tau, one)] = math.sqrt(1 / PHI)
    f_entries[(tau, tau, tau, tau, tau, tau)] = -1 / PHI

    r_entries = trivial_r_entries(FusionRules(N))
    r_entries[(tau, tau, one)] = np.exp(-4j * np.pi / 5)
    r_entries[(tau, tau, tau)] = np.exp(3j * np.pi / 5)
    return _assemble("fibonacci", labels, N, f_entries, r_entries)


@lru_cache(maxsize=None)
def ising_category() -> CategoryData:
    """Ising anyons {1, sigma, psi}."""
    one, sigma, psi = 0, 1, 2
    labels = [Label(one, "1", one, is_unit=True), Label(sigma, "sigma", sigma), Label(psi, "psi", psi)]
    N = np.zeros((3, 3, 3), dtype=int)
    for x in range(3):
        N[one, x, x] = N[x, one, x] = 1
    N[sigma, sigma, one] = N[sigma, sigma, psi] = 1
    N[sigma, psi, sigma] = N[psi, sigma, sigma] = 1
    N[psi, psi, one] = 1

    f_entries = trivial_f_entries(FusionRules(N))
    s = 1 / math.sqrt(2)
    for e, f in product((one, psi), repeat=2):
        f_entries[(sigma, sigma, sigma, sigma, e, f)] = -s if e == f == psi else s
    f_entries[(sigma, psi, sigma, psi, sigma, sigma)] = -1.0
    f_entries[(psi, sigma, psi, sigma, sigma, sigma)] = -1.0

    r_entries = trivial_r_entries(FusionRules(N))
    r_entries[(sigma, sigma, one)] = np.exp(-1j * np.pi / 8)
    r_entries[(sigma, sigma, psi)] = np.exp(3j * np.pi / 8)
    r_entries[(sigma, psi, sigma)] = -1j
    r_entries[(psi, sigma, sigma)] = -1j
    r_entries[(psi, psi, one)] = -1.0
    return _assemble("ising", labels, N, f_entries, r_entries)


def _spin_name(jj: int) -> str:
    return str(jj // 2) if jj % 2 == 0 else f"{jj}/2"


class _QuantumSU2:
    """q-integers and q-6j symbols of SU(2)_k on doubled spins."""

    def __init__(self, k: int) -> None:
        self.k = k
        self._angle = math.pi / (k + 2)

    @lru_cache(maxsize=None)
    def qint(self, m: int) -> float:
        return math.sin(m * self._angle) / math.sin(self._angle)

    @lru_cache(maxsize=None)
    def qfactorial(self, m: int) -> float:
        return math.prod(self.qint(i) for i in range(1, m + 1))

    def admissible(self, a: int, b: int, c: int) -> bool:
        return abs(a - b) <= c <= min(a + b, 2 * self.k - a - b) and (a + b + c) % 2 == 0

    def delta(self, a: int, b: int, c: int) -> float:
        qf = self.qfactorial
        num = qf((a + b - c) // 2) * qf((a - b + c) // 2) * qf((-a + b + c) // 2)
        return math.sqrt(num / qf((a + b + c) // 2 + 1))

    def six_j(self, a: int, b: int, e: int, c: int, d: int, f: int) -> float:
        """q-Racah formula for {a b e; c d f} on doubled spins."""
        qf = self.qfactorial
        triads = [(a + b + e) // 2, (a + d + f) // 2, (c + b + f) // 2, (c + d + e) // 2]
        quads = [(a + b + c + d) // 2, (a + c + e + f) // 2, (b + d + e + f) // 2]
        total = 0.0
        for z in range(max(triads), min(quads) + 1):
            denom = qf(quads[0] - z) * qf(quads[1] - z) * qf(quads[2] - z)
            for t in triads:
                denom *= qf(z - t)
            total += (-1) ** z * qf(z + 1) / denom
        prefactor = self.delta(a, b, e) * self.delta(a, d, f) * self.delta(c, b, f) * self.delta(c, d, e)
        return prefactor * total

    def f_symbol(self, a: int, b: int, c: int, d: int, e: int, f: int) -> float:
        sign = (-1) ** ((a + b + c + d) // 2)
        return sign * math.sqrt(self.qint(e + 1) * self.qint(f + 1)) * self.six_j(a, b, e, c, d, f)

    def r_symbol(self, a: int, b: int, c: int) -> complex:
        sign = (-1) ** ((a + b - c) // 2)
        exponent = (c * (c + 2) - a * (a + 2) - b * (b + 2)) / 8
        return sign * np.exp(2j * np.pi / (self.k + 2) * exponent)


@lru_cache(maxsize=None)
def su2k_category(k: int) -> CategoryData:
    """SU(2) at level k, labels j = 0, 1/2, ..., k/2 stored as 2j."""
    if isinstance(k, bool) or not isinstance(k, int) or not 1 <= k <= MAX_LEVEL:
        raise CategoryError(f"unsupported level {k!r}: SU(2)_k is available for 1 <= k <= {MAX_LEVEL}")
    quantum = _QuantumSU2(k)
    n = k + 1
    labels = [Label(jj, _spin_name(jj), jj, is_unit=(jj == 0)) for jj in range(n)]
    N = np.zeros((n, n, n), dtype=int)
    for a, b, c in product(range(n), repeat=3):
        N[a, b, c] = int(quantum.admissible(a, b, c))
    rules = FusionRules(N)

    f_entries: Dict[FKey, complex] = {key: quantum.f_symbol(*key) for key in rules.admissible_f_keys()}
    r_entries: Dict[RKey, complex] = {key: quantum.r_symbol(*key) for key in rules.admissible_r_keys()}
    logger.debug(f"Built su2k:{k} with {len(f_entries)} F-symbols")
    return _assemble(f"su2k:{k}", labels, N, f_entries, r_entries)


def builtin_names() -> list:
    return ["fibonacci", "ising"] + [f"su2k:{k}" for k in range(1, MAX_LEVEL + 1)]


def category_from_builtin(name: str) -> CategoryData:
    """Resolve ``fibonacci``, ``ising`` or ``su2k:<k>``."""
    match = BUILTIN_NAME_RE.match(name or "")
    if not match:
        raise CategoryError(f"Unknown builtin category {name!r}; use 'fibonacci', 'ising' or 'su2k:<k>'")
    if match.group(1) == "fibonacci":
        return fibonacci_category()
    if match.group(1) == "ising":
        return ising_category()
    return su2k_category(int(match.group(2)))
