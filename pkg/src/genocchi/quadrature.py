"""Simpson's rule with its certified error bound, composite Simpson, Romberg.

The single-panel certificate is ``M (b - a)^5 / 2880`` with ``M >= |f''''|``
on [a, b].  The composite certificate sums it over ``m`` equal panels,
giving ``M (b - a)^5 / (2880 m^4)``.  Romberg columns beyond the first
carry no certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import InsufficientDerivativeOrder
from .interpolation import ErrorCertificate
from .tables import FunctionOracle, acquire_sup

__all__ = [
    "QuadResult",
    "RombergTable",
    "simpson",
    "composite_simpson",
    "romberg",
    "pairwise_sum",
    "simpson_bound",
    "SIMPSON_CONSTANT",
]

SIMPSON_CONSTANT = 2880


@dataclass(frozen=True)
class QuadResult:
    value: float
    certificate: Optional[ErrorCertificate] = None
    panels: int = 1

    def __post_init__(self):
        if self.panels < 1:
            raise ValueError("panels must be >= 1")


@dataclass(frozen=True)
class RombergTable:
    """``entries[k][j]`` for ``j <= k``; row k starts from 2^k trapezoids."""

    entries: tuple[tuple[float, ...], ...]

    @property
    def levels(self) -> int:
        return len(self.entries)

    def __getitem__(self, k):
        return self.entries[k]

    @property
    def best(self) -> float:
        return self.entries[-1][-1]


def pairwise_sum(values: Sequence[float]) -> float:
    n = len(values)
    if n == 0:
        return 0.0
    if n == 1:
        return values[0]
    if n == 2:
        return values[0] + values[1]
    mid = n // 2
    return pairwise_sum(values[:mid]) + pairwise_sum(values[mid:])


def _check_interval(a, b):
    if a > b:
        raise ValueError(f"need a <= b, got [{a!r}, {b!r}]")


def _panel(f, lo, hi):
    return (hi - lo) / 6.0 * (f(lo) + 4.0 * f(0.5 * (lo + hi)) + f(hi))


def simpson_bound(M: float, a: float, b: float, m: int = 1) -> float:
    return M * (b - a) ** 5 / (SIMPSON_CONSTANT * m ** 4)


def _certificate(oracle, a, b, m, M4):
    try:
        M, rigor = acquire_sup(oracle, 4, a, b, M4)
    except InsufficientDerivativeOrder:
        return None
    name = "simpson_2880" if m == 1 else "composite_simpson_2880"
    return ErrorCertificate(simpson_bound(M, a, b, m), name, M, rigor)


def simpson(oracle: FunctionOracle, a: float, b: float,
            M4: Optional[float] = None) -> QuadResult:
    """``(b - a)/6 * (f(a) + 4 f((a + b)/2) + f(b))`` with its certificate.

    The certificate is attached when a bound on ``|f''''|`` is supplied or
    can be obtained from the oracle.
    """
    _check_interval(a, b)
    value = _panel(oracle.value, a, b)
    return QuadResult(value, _certificate(oracle, a, b, 1, M4), 1)


def composite_simpson(oracle: FunctionOracle, a: float, b: float, m: int,
                      M4: Optional[float] = None) -> QuadResult:
    _check_interval(a, b)
    if m < 1:
        raise ValueError("m must be >= 1")
    if m == 1:
        return simpson(oracle, a, b, M4)
    h = (b - a) / m
    edges = [a + i * h for i in range(m)] + [b]
    panels = [_panel(oracle.value, edges[i], edges[i + 1]) for i in range(m)]
    return QuadResult(pairwise_sum(panels), _certificate(oracle, a, b, m, M4), m)


def romberg(oracle: FunctionOracle, a: float, b: float, levels: int) -> RombergTable:
    _check_interval(a, b)
    if levels < 1:
        raise ValueError("levels must be >= 1")
    f = oracle.value
    width = b - a
    rows = [(0.5 * width * (f(a) + f(b)),)]
    for k in range(1, levels):
        count = 2 ** (k - 1)
        h = width / (2 ** k)
        fresh = pairwise_sum([f(a + (2 * i + 1) * h) for i in range(count)])
        row = [0.5 * rows[-1][0] + h * fresh]
        for j in range(1, k + 1):
            scale = 4.0 ** j
            row.append((scale * row[j - 1] - rows[-1][j - 1]) / (scale - 1.0))
        rows.append(tuple(row))
    return RombergTable(tuple(rows))
