"""
Check reports and number formatting shared by every check and the CLI.
"""

from dataclasses import dataclass, field
from typing import Any, Optional, Tuple

import numpy as np

SIG_DIGITS = 12
_NOISE_FLOOR = 5e-15


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one numerical check.

    ``residual`` is the worst value found; ``passed`` is decided by the
    check itself (for most checks ``residual <= tol``, for modularity the
    determinant must exceed ``tol``). ``worst`` locates the worst instance.
    """

    name: str
    residual: float
    tol: float
    passed: bool
    worst: Optional[Tuple[Any, ...]] = None
    notes: Tuple[str, ...] = field(default_factory=tuple)

    def summary(self) -> str:
        status = "pass" if self.passed else "FAIL"
        line = f"{self.name:<16} residual {fmt_real(self.residual):<20} tol {fmt_real(self.tol):<8} {status}"
        if self.worst is not None and not self.passed:
            line += f"  worst at {self.worst}"
        return line

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "residual": real_value(self.residual),
            "tol": real_value(self.tol),
            "passed": self.passed,
            "worst": None if self.worst is None else [str(x) for x in self.worst],
            "notes": list(self.notes),
        }


def _clean(x: float) -> float:
    x = float(x)
    if abs(x) < _NOISE_FLOOR:
        return 0.0
    return x + 0.0  # drops negative zero


def fmt_real(x: float) -> str:
    """Format with 12 significant digits; round-off below 5e-15 prints as 0."""
    return format(_clean(x), f".{SIG_DIGITS}g")


def fmt_complex(z: complex) -> str:
    """Format a complex number as an 're im' pair."""
    z = complex(z)
    return f"{fmt_real(z.real)} {fmt_real(z.imag)}"


def real_value(x: float) -> float:
    """The float a JSON report carries for ``x``; agrees with :func:`fmt_real`."""
    return float(fmt_real(x))


def complex_value(z: complex) -> dict:
    z = complex(z)
    return {"re": real_value(z.real), "im": real_value(z.imag)}


def matrix_rows(m: np.ndarray) -> list:
    """JSON form of a complex matrix: a list of rows of {re, im} pairs."""
    return [[complex_value(z) for z in row] for row in np.atleast_2d(m)]


def fmt_matrix(m: np.ndarray, indent: str = "  ") -> list:
    """Text form of a complex matrix, one line per row."""
    rows = []
    for row in np.atleast_2d(m):
        rows.append(indent + "  |  ".join(fmt_complex(z) for z in row))
    return rows


def max_abs(m: np.ndarray) -> float:
    """Max absolute entry; the matrix comparison metric used everywhere."""
    m = np.asarray(m)
    if m.size == 0:
        return 0.0
    return float(np.max(np.abs(m)))
