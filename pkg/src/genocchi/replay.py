"""Numerical re-execution of the divided-difference proof of Simpson's rule.

With ``F(t) = f(c + r t)``, ``c = (a + b)/2``, ``r = (b - a)/2``::

    G(t) = int_{-t}^{t} F - (t/3) (F(-t) + 4 F(0) + F(t))
    H(t) = G(t) - t^5 G(1)

``H`` vanishes at 0 and 1 and has ``H'(0) = H''(0) = 0``, so the divided
difference ``H_3(0, 0, 0, 1)`` is zero.  Writing it as a simplex average of
``H'''`` and bounding ``H'''`` by ``N = sup |F''''|`` gives
``|90 G(1)| <= N``.  The replay evaluates every link in that chain.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import EmptyInterval
from .hermite import hg_divided_difference
from .quadrature import simpson
from .simplex import QuadratureConfig, integrate_1d
from .tables import FunctionOracle, Rigor, acquire_sup, build_table

SIMPLEX_CHECK_TOL = 1e-8

__all__ = [
    "Check",
    "ReplayReport",
    "build_F",
    "eval_G",
    "eval_H",
    "h_oracle",
    "replay",
]


@dataclass(frozen=True)
class Check:
    """``relation`` is ``"eq"`` (|lhs - rhs| <= tol) or ``"le"`` (lhs <= rhs + tol)."""

    name: str
    lhs: float
    rhs: float
    tolerance: float
    relation: str = "eq"

    @property
    def residual(self) -> float:
        return self.lhs - self.rhs

    @property
    def passed(self) -> bool:
        if self.relation == "le":
            return self.lhs <= self.rhs + self.tolerance
        return abs(self.lhs - self.rhs) <= self.tolerance


@dataclass(frozen=True)
class ReplayReport:
    f_id: str
    interval: tuple[float, float]
    N: float
    N_rigor: Rigor
    G1: float
    checks: tuple[Check, ...]
    diagnostics: dict = field(default_factory=dict)

    @property
    def overall(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def build_F(oracle: FunctionOracle, a: float, b: float) -> FunctionOracle:
    """Rescale ``f`` on [a, b] to ``F`` on [-1, 1]; ``F^{(k)} = r^k f^{(k)}``."""
    if not a < b:
        raise EmptyInterval(f"need a < b, got [{a!r}, {b!r}]")
    oracle.require(4)
    c = 0.5 * (a + b)
    r = 0.5 * (b - a)

    def scaled(k):
        fk = oracle.derivatives[k]
        scale = r ** k
        return lambda t: scale * fk(c + r * t)

    sup_bound = None
    if oracle.sup_bound is not None:
        inner = oracle.sup_bound

        def sup_bound(k, interval):
            lo, hi = interval
            M, rigor = inner(k, (c + r * lo, c + r * hi))
            return r ** k * M, rigor

    derivs = tuple(scaled(k) for k in range(oracle.max_order + 1))
    return FunctionOracle(derivs, sup_bound, label=f"F[{oracle.label}]")


def eval_G(F: FunctionOracle, t: float, cfg: QuadratureConfig = QuadratureConfig()) -> float:
    if t == 0.0:
        return 0.0
    f = F.value
    return integrate_1d(f, -t, t, cfg) - t / 3.0 * (f(-t) + 4.0 * f(0.0) + f(t))


def _G_derivative_fn(F, order):
    # closed forms obtained by differentiating G under the integral sign
    d0, d1, d2, d3 = F.derivatives[:4]
    if order == 1:
        f0 = d0(0.0)
        return lambda t: (2.0 / 3.0 * (d0(t) + d0(-t)) - 4.0 / 3.0 * f0
                          - t / 3.0 * (d1(t) - d1(-t)))
    if order == 2:
        return lambda t: (d1(t) - d1(-t)) / 3.0 - t / 3.0 * (d2(t) + d2(-t))
    if order == 3:
        return lambda t: -t / 3.0 * (d3(t) - d3(-t))
    raise ValueError("G derivatives are only provided up to order 3")


def _H_fn(F, cfg, order, G1):
    if order == 0:
        return lambda t: eval_G(F, t, cfg) - t ** 5 * G1
    dG = _G_derivative_fn(F, order)
    if order == 1:
        return lambda t: dG(t) - 5.0 * t ** 4 * G1
    if order == 2:
        return lambda t: dG(t) - 20.0 * t ** 3 * G1
    return lambda t: dG(t) - 60.0 * t * t * G1


def eval_H(F: FunctionOracle, t: float, cfg: QuadratureConfig = QuadratureConfig(),
           order: int = 0, G1: Optional[float] = None) -> float:
    """``H^{(order)}(t)`` for order 0..3.  Pass ``G1`` to skip recomputing ``G(1)``."""
    if G1 is None:
        G1 = eval_G(F, 1.0, cfg)
    return _H_fn(F, cfg, order, G1)(t)


def h_oracle(F: FunctionOracle, cfg: QuadratureConfig = QuadratureConfig(),
             G1: Optional[float] = None) -> FunctionOracle:
    if G1 is None:
        G1 = eval_G(F, 1.0, cfg)
    F.require(3)
    return FunctionOracle(tuple(_H_fn(F, cfg, k, G1) for k in range(4)),
                          label=f"H[{F.label}]")


def _h3_display(F, t, cfg, G1):
    """``H'''(t)`` in integral form: ``-(t/3) int_{-t}^{t} F'''' - 60 t^2 G(1)``."""
    inner = integrate_1d(lambda s: F.derivative(4, s), -t, t, cfg)
    return -t / 3.0 * inner - 60.0 * t * t * G1


def _simplex_cfg(cfg):
    # nested quadrature noise stays two orders below the 1e-6 tolerance of that check
    return QuadratureConfig(max(cfg.tol, SIMPLEX_CHECK_TOL), cfg.max_depth)


def replay(oracle: FunctionOracle, a: float, b: float,
           cfg: QuadratureConfig = QuadratureConfig(),
           N: Optional[float] = None) -> ReplayReport:
    """Evaluate each identity and inequality of the proof for ``f`` on [a, b].

    Failed checks are recorded, never raised.
    """
    F = build_F(oracle, a, b)
    G1 = eval_G(F, 1.0, cfg)
    H = h_oracle(F, cfg, G1)
    checks = []

    # (1) boundary data of H
    checks.append(Check("H(0)", H.value(0.0), 0.0, 1e-8))
    checks.append(Check("H(1)", H.value(1.0), 0.0, 1e-8))
    checks.append(Check("H'(0)", H.derivative(1, 0.0), 0.0, 1e-8))
    checks.append(Check("H''(0)", H.derivative(2, 0.0), 0.0, 1e-8))

    # (2) the divided-difference chain over the confluent node list (0, 0, 0, 1)
    table = build_table(H, [0.0, 0.0, 0.0, 1.0])
    h1_00, h1_01 = table.entry(1, 0), table.entry(1, 2)
    h2_000, h2_001 = table.entry(2, 0), table.entry(2, 1)
    h3 = table.entry(3, 0)
    link1 = -(h2_000 - h2_001)
    checks.append(Check("H3(0,0,0,1) = -(H2(0,0,0) - H2(0,0,1))", h3, link1, 1e-6))
    checks.append(Check("-(H2(0,0,0) - H2(0,0,1)) = -H1(0,0) + H1(0,1)",
                        link1, -h1_00 + h1_01, 1e-6))
    checks.append(Check("-(H2(0,0,0) - H2(0,0,1)) = H1(0,0)/2 + H1(0,1)",
                        link1, 0.5 * h1_00 + h1_01, 1e-6))
    checks.append(Check("-H1(0,0) + H1(0,1) = 0", -h1_00 + h1_01, 0.0, 1e-6))

    # (3) the same divided difference as a simplex average of H'''
    hg = hg_divided_difference(H, [0.0, 0.0, 0.0, 1.0], _simplex_cfg(cfg))
    checks.append(Check("int_Sigma3 H'''(t_3) = 0", hg, 0.0, 1e-6))
    for t in (0.25, 0.5, 1.0):
        checks.append(Check(f"H'''({t}) closed form = integral form",
                            H.derivative(3, t), _h3_display(F, t, cfg, G1), 1e-6))

    # (4) the conclusion
    N, rigor = acquire_sup(F, 4, -1.0, 1.0, N)
    checks.append(Check("|90 G(1)| <= N", abs(90.0 * G1), N, 1e-8, "le"))

    # tie back to [a, b]: int f - Simpson(f) = r G(1)
    r = 0.5 * (b - a)
    direct = integrate_1d(oracle.value, a, b, cfg) - simpson(oracle, a, b).value
    checks.append(Check("int f - Simpson(f) = r G(1)", direct, r * G1, 1e-8))

    diagnostics = {
        "H3(0,0,0,1)": h3,
        # unweighted integral of H''' over [0, 1]; differs from the simplex average
        "int_0^1 H'''": H.derivative(2, 1.0) - H.derivative(2, 0.0),
        "90*G(1)": 90.0 * G1,
        "simpson_bound": r * N / 90.0,
    }
    return ReplayReport(oracle.label, (float(a), float(b)), N, rigor, G1,
                        tuple(checks), diagnostics)
