"""Newton-form interpolation, its exact remainder, and the Lagrange certificate."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .hermite import hg_divided_difference
from .simplex import QuadratureConfig
from .tables import FunctionOracle, NodeList, Rigor, acquire_sup, build_table

__all__ = [
    "NewtonPolynomial",
    "ErrorCertificate",
    "newton_fit",
    "newton_eval",
    "newton_derivatives",
    "remainder",
    "lagrange_bound",
    "lagrange_certificate",
    "node_product",
]


@dataclass(frozen=True)
class ErrorCertificate:
    bound: float
    constant_name: str
    M: float
    rigor: Rigor

    def __post_init__(self):
        if not self.bound >= 0:
            raise ValueError(f"certificate bound must be >= 0, got {self.bound!r}")
        object.__setattr__(self, "rigor", Rigor(self.rigor))

    @property
    def rigorous(self) -> bool:
        return self.rigor is Rigor.RIGOROUS


@dataclass(frozen=True)
class NewtonPolynomial:
    """``coeffs[0] + coeffs[1](x - x_0) + ... + coeffs[n-1](x - x_0)...(x - x_{n-2})``."""

    nodes: NodeList
    coeffs: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "nodes", NodeList.of(self.nodes))
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))
        if len(self.coeffs) != len(self.nodes):
            raise ValueError("need exactly one coefficient per node")

    @property
    def degree_bound(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: float) -> float:
        return newton_eval(self, x)


def newton_fit(oracle: FunctionOracle, nodes: Sequence[float] | NodeList,
               sort: bool = True) -> NewtonPolynomial:
    table = build_table(oracle, nodes, sort=sort)
    return NewtonPolynomial(table.nodes, table.first_column())


def newton_eval(p: NewtonPolynomial, x: float) -> float:
    xs, cs = p.nodes.nodes, p.coeffs
    acc = cs[-1]
    for k in range(len(cs) - 2, -1, -1):
        acc = cs[k] + (x - xs[k]) * acc
    return acc


def newton_derivatives(p: NewtonPolynomial, x: float, order: int) -> list[float]:
    """``[P(x), P'(x), ..., P^{(order)}(x)]`` by extended nested multiplication."""
    xs, cs = p.nodes.nodes, p.coeffs
    # d[j] carries the j-th derivative divided by j!
    d = [0.0] * (order + 1)
    d[0] = cs[-1]
    for k in range(len(cs) - 2, -1, -1):
        dx = x - xs[k]
        for j in range(order, 0, -1):
            d[j] = d[j - 1] + dx * d[j]
        d[0] = cs[k] + dx * d[0]
    return [math.factorial(j) * d[j] for j in range(order + 1)]


def node_product(nodes: Sequence[float] | NodeList, x: float) -> float:
    prod = 1.0
    for xk in NodeList.of(nodes):
        prod *= x - xk
    return prod


def remainder(oracle: FunctionOracle, nodes: Sequence[float] | NodeList, x: float,
              cfg: QuadratureConfig = QuadratureConfig()) -> float:
    """``f(x) - P(x)`` via ``prod(x - x_k) * f_n(x_0, ..., x_{n-1}, x)``."""
    nodes = NodeList.of(nodes)
    prod = node_product(nodes, x)
    if prod == 0.0:
        return 0.0
    return prod * hg_divided_difference(oracle, nodes.nodes + (float(x),), cfg)


def lagrange_bound(nodes: Sequence[float] | NodeList, x: float, M: float,
                   rigor: Rigor | str = Rigor.RIGOROUS) -> ErrorCertificate:
    """``|prod(x - x_k)| * M / n!`` with ``n = len(nodes)``."""
    if M < 0:
        raise ValueError("M must be nonnegative")
    nodes = NodeList.of(nodes)
    bound = abs(node_product(nodes, x)) * M / math.factorial(len(nodes))
    return ErrorCertificate(bound, "lagrange_n!", float(M), Rigor(rigor))


def lagrange_certificate(oracle: FunctionOracle, nodes: Sequence[float] | NodeList,
                         x: float, M: Optional[float] = None) -> ErrorCertificate:
    """Lagrange certificate with ``M`` taken over the hull of the nodes and ``x``."""
    nodes = NodeList.of(nodes)
    lo, hi = nodes.hull()
    lo, hi = min(lo, x), max(hi, x)
    M, rigor = acquire_sup(oracle, len(nodes), lo, hi, M)
    return lagrange_bound(nodes, x, M, rigor)
