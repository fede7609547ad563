"""Divided differences as simplex averages of the n-th derivative.

    f_n(x_0, ..., x_n) = int_{Sigma_n} f^{(n)}(t_0 x_0 + ... + t_n x_n) dt

This route is valid for any node multiset, so it is the reference for
confluent and mixed node lists; :func:`genocchi.tables.build_table` is the
fast path.
"""

from __future__ import annotations

import math
from typing import Sequence

from .simplex import QuadratureConfig, SimplexIntegrand, integrate_simplex
from .tables import FunctionOracle, NodeList

__all__ = ["hg_divided_difference", "derivative_from_dd", "hg_integrand"]


def hg_integrand(oracle: FunctionOracle, nodes: Sequence[float] | NodeList) -> SimplexIntegrand:
    nodes = NodeList.of(nodes)
    n = nodes.order
    oracle.require(n)
    xs = nodes.nodes
    deriv = oracle.derivatives[n]

    def g(t):
        # compensated sum: node spreads can be wide
        return deriv(math.fsum(ti * xi for ti, xi in zip(t, xs)))

    return SimplexIntegrand(n, g)


def hg_divided_difference(oracle: FunctionOracle, nodes: Sequence[float] | NodeList,
                          cfg: QuadratureConfig = QuadratureConfig()) -> float:
    return integrate_simplex(hg_integrand(oracle, nodes), cfg)


def derivative_from_dd(oracle: FunctionOracle, x: float, n: int,
                       cfg: QuadratureConfig = QuadratureConfig()) -> float:
    """Recover ``f^{(n)}(x)`` as ``n! * f_n(x, ..., x)``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return math.factorial(n) * hg_divided_difference(oracle, [x] * (n + 1), cfg)
