"""
Braid words
===========

Grammar::

    word  := token (" " token)*
    token := "s" INT ["^-1"]

with ``1 <= INT <= n_strands - 1``. The empty string is the identity word.
"""

import re
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

Letter = Tuple[int, int]

_TOKEN_RE = re.compile(r"s([0-9]+)(\^-1)?")


class BraidError(Exception):
    """Raised on strand mismatches and unsupported braid inputs"""


class BraidWordParseError(BraidError, ValueError):
    """Malformed braid word; ``column`` is the 1-based position of the bad token"""

    def __init__(self, message: str, column: int) -> None:
        super().__init__(f"{message} at column {column}")
        self.column = column


@dataclass(frozen=True)
class BraidWord:
    """Word in the Artin generators s_1 .. s_{n-1} of the braid group B_n."""

    n_strands: int
    letters: Tuple[Letter, ...] = ()

    def __post_init__(self) -> None:
        if self.n_strands < 1:
            raise BraidError(f"A braid needs at least one strand, got {self.n_strands}")
        letters = tuple((int(i), int(e)) for i, e in self.letters)
        for i, e in letters:
            if not 1 <= i <= self.n_strands - 1:
                raise BraidError(f"Generator s{i} does not exist on {self.n_strands} strands")
            if e not in (1, -1):
                raise BraidError(f"Exponent of s{i} must be +1 or -1, got {e}")
        object.__setattr__(self, "letters", letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return " ".join(f"s{i}" if e == 1 else f"s{i}^-1" for i, e in self.letters)

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if not isinstance(other, BraidWord):
            return NotImplemented
        if other.n_strands != self.n_strands:
            raise BraidError(f"Cannot concatenate braids on {self.n_strands} and {other.n_strands} strands")
        return BraidWord(self.n_strands, self.letters + other.letters)

    def __pow__(self, k: int) -> "BraidWord":
        if k < 0:
            return self.inverse() ** (-k)
        return BraidWord(self.n_strands, self.letters * k)

    @property
    def writhe(self) -> int:
        return sum(e for _, e in self.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.n_strands, tuple((i, -e) for i, e in reversed(self.letters)))

    def mirror(self) -> "BraidWord":
        return BraidWord(self.n_strands, tuple((i, -e) for i, e in self.letters))

    def stabilized(self, sign: int = 1) -> "BraidWord":
        """Add a strand and append s_n^sign."""
        n = self.n_strands
        return BraidWord(n + 1, self.letters + ((n, sign),))

    def conjugated_by(self, u: "BraidWord") -> "BraidWord":
        """u w u^-1"""
        return u * self * u.inverse()

    def permutation(self) -> Tuple[int, ...]:
        """Where each strand ends up after the braid."""
        perm = list(range(self.n_strands))
        for i, _ in self.letters:
            perm[i - 1], perm[i] = perm[i], perm[i - 1]
        return tuple(perm)


def identity_word(n_strands: int) -> BraidWord:
    return BraidWord(n_strands)


def parse_braid_word(text: str, n_strands: int) -> BraidWord:
    """Parse ``text`` into a word on ``n_strands`` strands."""
    if n_strands < 1:
        raise BraidError(f"A braid needs at least one strand, got {n_strands}")
    letters = []
    if text.strip() == "":
        return BraidWord(n_strands)
    for position, token in _tokens(text):
        column = position + 1
        match = _TOKEN_RE.fullmatch(token)
        if match is None:
            raise BraidWordParseError(f"malformed token {token!r}", column)
        index = int(match.group(1))
        if not 1 <= index <= n_strands - 1:
            raise BraidWordParseError(f"generator index {index} out of range 1..{n_strands - 1}", column)
        letters.append((index, -1 if match.group(2) else 1))
    return BraidWord(n_strands, tuple(letters))


def _tokens(text: str):
    """(0-based offset, token) pairs; tokens are separated by single spaces."""
    offset = 0
    for token in text.split(" "):
        if token == "":
            raise BraidWordParseError("empty token (tokens are separated by single spaces)", offset + 1)
        yield offset, token
        offset += len(token) + 1


def random_braid_word(n_strands: int, length: int, rng: Optional[np.random.Generator] = None) -> BraidWord:
    """Uniformly random letters; ``rng`` defaults to ``np.random.default_rng(0)``."""
    rng = rng if rng is not None else np.random.default_rng(0)
    if n_strands < 2 or length == 0:
        return BraidWord(n_strands)
    indices = rng.integers(1, n_strands, size=length)
    signs = rng.choice([-1, 1], size=length)
    return BraidWord(n_strands, tuple(zip(indices.tolist(), signs.tolist())))
