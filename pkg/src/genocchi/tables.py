"""Node lists, function oracles and the divided-difference table.

Entry ``entries[k][i]`` of a :class:`DividedDifferenceTable` holds
``f_k(x_i, ..., x_{i+k})``.  Spans whose nodes are all bit-equal are filled
with ``f^{(k)}(x_i) / k!`` (the confluent limit); every other entry comes from

    f_k(x_i..x_{i+k}) = (f_{k-1}(x_{i+1}..x_{i+k}) - f_{k-1}(x_i..x_{i+k-1})) / (x_{i+k} - x_i)
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .errors import ConfluentNodes, InsufficientDerivativeOrder

__all__ = [
    "NodeList",
    "Rigor",
    "FunctionOracle",
    "DividedDifferenceTable",
    "build_table",
    "ampere_explicit",
    "top_difference",
    "sampled_sup",
    "acquire_sup",
    "SUP_GRID_POINTS",
    "SUP_INFLATION",
]

SUP_GRID_POINTS = 1024
SUP_INFLATION = 1.1


@dataclass(frozen=True)
class NodeList:
    """Ordered abscissae, possibly repeated.  Bit-equal entries are confluent."""

    nodes: tuple[float, ...]
    all_distinct: bool = field(init=False)

    def __post_init__(self):
        nodes = tuple(float(x) for x in self.nodes)
        if not nodes:
            raise ValueError("NodeList needs at least one node")
        if any(math.isnan(x) or math.isinf(x) for x in nodes):
            raise ValueError("nodes must be finite")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "all_distinct", len(set(nodes)) == len(nodes))

    @classmethod
    def of(cls, nodes: Sequence[float] | "NodeList") -> "NodeList":
        if isinstance(nodes, NodeList):
            return nodes
        return cls(tuple(nodes))

    def __len__(self):
        return len(self.nodes)

    def __iter__(self):
        return iter(self.nodes)

    def __getitem__(self, i):
        return self.nodes[i]

    @property
    def order(self) -> int:
        """Order of the divided difference these nodes define (``len - 1``)."""
        return len(self.nodes) - 1

    def sorted(self) -> "NodeList":
        return NodeList(tuple(sorted(self.nodes)))

    def max_multiplicity(self) -> int:
        counts: dict[float, int] = {}
        for x in self.nodes:
            counts[x] = counts.get(x, 0) + 1
        return max(counts.values())

    def hull(self) -> tuple[float, float]:
        return min(self.nodes), max(self.nodes)


class Rigor(str, enum.Enum):
    RIGOROUS = "rigorous"
    SAMPLED = "sampled"


SupBound = Callable[[int, tuple[float, float]], tuple[float, Rigor]]


@dataclass(frozen=True)
class FunctionOracle:
    """Evaluation access to ``f`` and its derivatives up to ``max_order``.

    ``derivatives[k]`` evaluates ``f^{(k)}``; ``derivatives[0]`` is ``f``.
    ``sup_bound(k, (lo, hi))`` optionally returns an upper bound for
    ``|f^{(k)}|`` on ``[lo, hi]`` together with its rigor.
    """

    derivatives: tuple[Callable[[float], float], ...]
    sup_bound: Optional[SupBound] = None
    label: str = "f"

    def __post_init__(self):
        if not self.derivatives:
            raise ValueError("oracle needs at least the function value")
        object.__setattr__(self, "derivatives", tuple(self.derivatives))

    @property
    def max_order(self) -> int:
        return len(self.derivatives) - 1

    def value(self, x: float) -> float:
        return self.derivatives[0](x)

    def derivative(self, k: int, x: float) -> float:
        if k < 0:
            raise ValueError("derivative order must be nonnegative")
        if k > self.max_order:
            raise InsufficientDerivativeOrder(k, self.max_order)
        return self.derivatives[k](x)

    def require(self, k: int) -> None:
        if k > self.max_order:
            raise InsufficientDerivativeOrder(k, self.max_order)


def sampled_sup(func: Callable[[float], float], lo: float, hi: float,
                points: int = SUP_GRID_POINTS, inflation: float = SUP_INFLATION) -> float:
    """``inflation`` times the max of ``|func|`` over a uniform grid on [lo, hi].

    Not a bound in general; callers must flag the result as sampled.
    """
    if lo == hi:
        return inflation * abs(func(lo))
    step = (hi - lo) / (points - 1)
    best = 0.0
    for i in range(points):
        x = hi if i == points - 1 else lo + i * step
        best = max(best, abs(func(x)))
    return inflation * best


def acquire_sup(oracle: FunctionOracle, k: int, lo: float, hi: float,
                M: Optional[float] = None) -> tuple[float, Rigor]:
    """Sup of ``|f^{(k)}|`` on [lo, hi]: supplied, from the oracle, or sampled.

    A caller-supplied ``M`` is trusted and marked rigorous.
    """
    if M is not None:
        if M < 0 or math.isnan(M):
            raise ValueError("M must be nonnegative")
        return float(M), Rigor.RIGOROUS
    if oracle.sup_bound is not None:
        return oracle.sup_bound(k, (lo, hi))
    oracle.require(k)
    return sampled_sup(oracle.derivatives[k], lo, hi), Rigor.SAMPLED


@dataclass(frozen=True)
class DividedDifferenceTable:
    nodes: NodeList
    entries: tuple[tuple[float, ...], ...]

    @property
    def order(self) -> int:
        return len(self.entries) - 1

    def entry(self, k: int, i: int) -> float:
        return self.entries[k][i]

    def first_column(self) -> tuple[float, ...]:
        """``f_k(x_0, ..., x_k)`` for k = 0..n: the Newton coefficients."""
        return tuple(row[0] for row in self.entries)


def build_table(oracle: FunctionOracle, nodes: Sequence[float] | NodeList,
                sort: bool = True) -> DividedDifferenceTable:
    """Full triangular divided-difference table of ``oracle`` over ``nodes``.

    Nodes are stably sorted first so that confluent nodes are adjacent.
    Pass ``sort=False`` to keep the given order; confluent nodes must then
    already be adjacent.
    """
    nodes = NodeList.of(nodes)
    if sort:
        nodes = nodes.sorted()
    xs = nodes.nodes
    n = len(xs) - 1

    rows = [tuple(oracle.value(x) for x in xs)]
    for k in range(1, n + 1):
        prev = rows[-1]
        row = []
        for i in range(n - k + 1):
            lo, hi = xs[i], xs[i + k]
            if lo == hi:
                if any(x != lo for x in xs[i:i + k + 1]):
                    raise ConfluentNodes(
                        f"bit-equal nodes {lo!r} are not adjacent; sort the node list"
                    )
                row.append(oracle.derivative(k, lo) / math.factorial(k))
            else:
                row.append((prev[i + 1] - prev[i]) / (hi - lo))
        rows.append(tuple(row))
    return DividedDifferenceTable(nodes, tuple(rows))


def ampere_explicit(values: Sequence[float], nodes: Sequence[float] | NodeList) -> float:
    """Symmetric closed form ``sum_j f(x_j) / prod_{i != j} (x_j - x_i)``.

    Independent of the recurrence; only defined for pairwise distinct nodes.
    """
    nodes = NodeList.of(nodes)
    if not nodes.all_distinct:
        raise ConfluentNodes("explicit formula needs pairwise distinct nodes")
    if len(values) != len(nodes):
        raise ValueError("one value per node required")
    xs = nodes.nodes
    terms = []
    for j, xj in enumerate(xs):
        denom = 1.0
        for i, xi in enumerate(xs):
            if i != j:
                denom *= xj - xi
        terms.append(values[j] / denom)
    return math.fsum(terms)


def top_difference(table: DividedDifferenceTable) -> float:
    return table.entries[-1][0]
