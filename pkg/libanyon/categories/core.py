"""
Modular tensor category data
============================

A :class:`CategoryData` holds the algebraic datum of a multiplicity-free
modular tensor category: simple labels, fusion multiplicities, F-symbols,
R-symbols and twists. Instances never change after construction and may be
shared freely between threads.

F-symbols use the convention

    |(a b)_e c; d> = sum_f [F^{abc}_d]_{ef} |a (b c)_f; d>

so ``e`` is the channel of the left bracketing and ``f`` the channel of the
right bracketing. A key ``(a, b, c, d, e, f)`` is admissible when all four
vertices ``a b -> e``, ``e c -> d``, ``b c -> f`` and ``a f -> d`` are
allowed. R-symbols are keyed ``(a, b, c)`` for ``a b -> c``.
"""

import logging
from dataclasses import dataclass
from itertools import product
from types import MappingProxyType
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

logger = logging.getLogger(__name__)

FKey = Tuple[int, int, int, int, int, int]
RKey = Tuple[int, int, int]
LabelRef = Union[int, str]

MAX_LABELS = 16
DEFAULT_TOL = 1e-10


class CategoryError(Exception):
    """Raised on malformed category data, unknown labels or missing symbols"""


class EmptyFusionSpaceError(CategoryError):
    """Raised when an operation needs a fusion space of dimension at least one"""


@dataclass(frozen=True)
class Label:
    id: int
    name: str
    dual: int
    is_unit: bool = False


class FusionRules:
    """Multiplicity tensor ``N[a][b][c]`` with entries in {0, 1}.

    The algebraic laws (unit, commutativity, associativity, duality) are
    checked by :func:`libanyon.categories.axioms.verify_fusion_rules`, not
    here, so that inconsistent data can still be loaded and diagnosed.
    """

    def __init__(self, N) -> None:
        N = np.array(N, dtype=np.int64)
        if N.ndim != 3 or len(set(N.shape)) != 1:
            raise CategoryError(f"Fusion tensor must be cubic, got shape {N.shape}")
        if np.any(N < 0):
            raise CategoryError("Fusion multiplicities must be non-negative")
        if np.any(N > 1):
            raise CategoryError("non-multiplicity-free fusion rules are unsupported")
        N.setflags(write=False)
        self.N = N
        self.n_labels = N.shape[0]
        self._channels = {
            (a, b): tuple(int(c) for c in np.flatnonzero(N[a, b]))
            for a, b in product(range(self.n_labels), repeat=2)
        }

    def __call__(self, a: int, b: int, c: int) -> int:
        return int(self.N[a, b, c])

    def channels(self, a: int, b: int) -> Tuple[int, ...]:
        """Labels c with N[a][b][c] = 1, ascending."""
        return self._channels[(a, b)]

    def matrix(self, a: int) -> np.ndarray:
        """Fusion matrix (N_a)_{bc} = N[a][b][c]."""
        return self.N[a]

    def quadruples(self) -> List[Tuple[int, int, int, int]]:
        return [(int(a), int(b), int(c), int(self.N[a, b, c])) for a, b, c in zip(*np.nonzero(self.N))]

    def admissible_f_keys(self) -> Iterator[FKey]:
        """All admissible F keys in lexicographic (a, b, c, d, e, f) order."""
        n = self.n_labels
        for a, b, c, d in product(range(n), repeat=4):
            for e in self.channels(a, b):
                if not self.N[e, c, d]:
                    continue
                for f in self.channels(b, c):
                    if self.N[a, f, d]:
                        yield (a, b, c, d, e, f)

    def admissible_r_keys(self) -> Iterator[RKey]:
        n = self.n_labels
        for a, b in product(range(n), repeat=2):
            for c in self.channels(a, b):
                yield (a, b, c)


class _SymbolTable:
    """Read-only mapping from integer keys to complex scalars."""

    key_length = 0

    def __init__(self, entries: Mapping[tuple, complex]) -> None:
        cleaned = {}
        for key, value in entries.items():
            key = tuple(int(i) for i in key)
            if len(key) != self.key_length:
                raise CategoryError(f"{type(self).__name__} key {key} must have {self.key_length} labels")
            cleaned[key] = complex(value)
        self._entries = MappingProxyType(dict(sorted(cleaned.items())))

    def __getitem__(self, key: tuple) -> complex:
        return self._entries[key]

    def __contains__(self, key: tuple) -> bool:
        return key in self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self):
        return iter(self._entries)

    def items(self):
        return self._entries.items()

    def updated(self, updates: Mapping[tuple, complex]):
        merged = dict(self._entries)
        merged.update({tuple(int(i) for i in k): complex(v) for k, v in updates.items()})
        return type(self)(merged)


class FSymbolTable(_SymbolTable):
    """Entries ``(a, b, c, d, e, f) -> [F^{abc}_d]_{ef}`` for admissible keys"""

    key_length = 6


class RSymbolTable(_SymbolTable):
    """Entries ``(a, b, c) -> R^{ab}_c`` for allowed vertices"""

    key_length = 3


@dataclass(frozen=True, eq=False)
class CategoryData:
    """Complete datum of a multiplicity-free modular tensor category.

    Construction validates structure only (label ids, duals, unit, shapes).
    Axioms are checked by the ``verify_*`` functions.
    """

    name: str
    labels: Tuple[Label, ...]
    rules: FusionRules
    f: FSymbolTable
    r: RSymbolTable
    twists: np.ndarray

    def __post_init__(self) -> None:
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)
        n = len(labels)
        if n == 0:
            raise CategoryError("A category needs at least one label")
        if n > MAX_LABELS:
            raise CategoryError(f"Categories with more than {MAX_LABELS} labels are unsupported")
        if self.rules.n_labels != n:
            raise CategoryError(f"Fusion tensor covers {self.rules.n_labels} labels, category has {n}")
        if [lab.id for lab in labels] != list(range(n)):
            raise CategoryError("Label ids must be 0..n-1 in order")
        if len({lab.name for lab in labels}) != n:
            raise CategoryError("Label names must be unique")
        units = [lab.id for lab in labels if lab.is_unit]
        if len(units) != 1:
            raise CategoryError(f"Exactly one unit label required, found {len(units)}")
        for lab in labels:
            if not 0 <= lab.dual < n:
                raise CategoryError(f"Dual of label {lab.name!r} is out of range")
            if labels[lab.dual].dual != lab.id:
                raise CategoryError(f"Dual of dual of label {lab.name!r} is not itself")
        if labels[units[0]].dual != units[0]:
            raise CategoryError("The unit must be self-dual")

        twists = np.array(self.twists, dtype=complex)
        if twists.shape != (n,):
            raise CategoryError(f"Expected {n} twists, got shape {twists.shape}")
        twists.setflags(write=False)
        object.__setattr__(self, "twists", twists)
        object.__setattr__(self, "_by_name", {lab.name: lab.id for lab in labels})

    @property
    def n_labels(self) -> int:
        return len(self.labels)

    @property
    def unit(self) -> int:
        return next(lab.id for lab in self.labels if lab.is_unit)

    def label(self, ref: LabelRef) -> Label:
        """Resolve a label by id (int) or by name (str)."""
        if isinstance(ref, Label):
            ref = ref.id
        if isinstance(ref, (int, np.integer)) and not isinstance(ref, bool):
            if 0 <= ref < self.n_labels:
                return self.labels[int(ref)]
            raise CategoryError(f"Unknown label id {ref} in category {self.name}")
        if isinstance(ref, str) and ref in self._by_name:
            return self.labels[self._by_name[ref]]
        raise CategoryError(f"Unknown label {ref!r} in category {self.name}")

    def label_id(self, ref: LabelRef) -> int:
        return self.label(ref).id

    def label_ids(self, refs: Sequence[LabelRef]) -> Tuple[int, ...]:
        return tuple(self.label_id(ref) for ref in refs)

    def name_of(self, a: int) -> str:
        return self.labels[a].name

    def dual(self, a: int) -> int:
        return self.labels[a].dual

    def N(self, a: int, b: int, c: int) -> int:
        return self.rules(a, b, c)

    def channels(self, a: int, b: int) -> Tuple[int, ...]:
        return self.rules.channels(a, b)

    def f_admissible(self, a: int, b: int, c: int, d: int, e: int, f: int) -> bool:
        N = self.rules.N
        return bool(N[a, b, e] and N[e, c, d] and N[b, c, f] and N[a, f, d])

    def F(self, a: int, b: int, c: int, d: int, e: int, f: int) -> complex:
        """[F^{abc}_d]_{ef}; zero for inadmissible keys."""
        if not self.f_admissible(a, b, c, d, e, f):
            return 0j
        try:
            return self.f[(a, b, c, d, e, f)]
        except KeyError:
            raise CategoryError(f"Missing F-symbol for admissible key (a,b,c,d,e,f) = {(a, b, c, d, e, f)}")

    def f_block(self, a: int, b: int, c: int, d: int) -> Tuple[Tuple[int, ...], Tuple[int, ...], np.ndarray]:
        """The matrix [F^{abc}_d] with its row (e) and column (f) labels."""
        es = tuple(e for e in self.channels(a, b) if self.rules.N[e, c, d])
        fs = tuple(f for f in self.channels(b, c) if self.rules.N[a, f, d])
        block = np.array([[self.F(a, b, c, d, e, f) for f in fs] for e in es], dtype=complex)
        return es, fs, block.reshape(len(es), len(fs))

    def R(self, a: int, b: int, c: int) -> complex:
        """R^{ab}_c; zero when c is not a channel of a b."""
        if not self.rules.N[a, b, c]:
            return 0j
        try:
            return self.r[(a, b, c)]
        except KeyError:
            raise CategoryError(f"Missing R-symbol for allowed vertex (a,b,c) = {(a, b, c)}")

    def twist(self, a: int) -> complex:
        return complex(self.twists[a])

    def perturbed(
        self,
        f_updates: Optional[Mapping[FKey, complex]] = None,
        r_updates: Optional[Mapping[RKey, complex]] = None,
        twists: Optional[Sequence[complex]] = None,
        name: Optional[str] = None,
    ) -> "CategoryData":
        """A copy with some symbols replaced; this instance is left untouched."""
        return CategoryData(
            name=name or f"{self.name} (perturbed)",
            labels=self.labels,
            rules=self.rules,
            f=self.f.updated(f_updates or {}),
            r=self.r.updated(r_updates or {}),
            twists=self.twists if twists is None else twists,
        )


def trivial_f_entries(rules: FusionRules) -> Dict[FKey, complex]:
    """Every admissible F key mapped to 1."""
    return {key: 1.0 + 0j for key in rules.admissible_f_keys()}


def trivial_r_entries(rules: FusionRules) -> Dict[RKey, complex]:
    return {key: 1.0 + 0j for key in rules.admissible_r_keys()}
