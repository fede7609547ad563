"""Adaptive 1-D quadrature and integration over the standard simplex.

The simplex integral is reduced to iterated 1-D integrals:

    I_0(g) = g(1)
    I_n(g) = I_{n-1}(h),  h(t_0..t_{n-1}) = t_{n-1} int_0^1 g(t_0, .., t_{n-1}(1-u), t_{n-1} u) du

The factor ``t_{n-1}`` is the Jacobian of splitting the last coordinate; it
is what makes the total mass ``1/n!``.

Every 1-D level is resolved by adaptive Simpson to the full ``cfg.tol``.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import MaxDepthExceeded

__all__ = [
    "QuadratureConfig",
    "SimplexIntegrand",
    "integrate_1d",
    "integrate_simplex",
    "DEFAULT_TOL",
    "DEFAULT_MAX_DEPTH",
]

DEFAULT_TOL = 1e-9
DEFAULT_MAX_DEPTH = 40


@dataclass(frozen=True)
class QuadratureConfig:
    tol: float = DEFAULT_TOL
    max_depth: int = DEFAULT_MAX_DEPTH

    def __post_init__(self):
        if not (self.tol > 0) or math.isinf(self.tol):
            raise ValueError(f"tol must be a positive finite number, got {self.tol!r}")
        if self.max_depth < 1:
            raise ValueError(f"max_depth must be >= 1, got {self.max_depth!r}")

    @classmethod
    def from_env(cls, var: str = "GENOCCHI_TOL", **kwargs) -> "QuadratureConfig":
        raw = os.environ.get(var)
        if raw is not None and "tol" not in kwargs:
            kwargs["tol"] = float(raw)
        return cls(**kwargs)


@dataclass(frozen=True)
class SimplexIntegrand:
    """``eval`` receives barycentric coordinates ``(t_0, ..., t_order)``."""

    order: int
    eval: Callable[[tuple[float, ...]], float]

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("simplex order must be nonnegative")

    def __call__(self, t: tuple[float, ...]) -> float:
        return self.eval(t)


def _adaptive(h, a, fa, m, fm, b, fb, whole, tol, depth, max_depth):
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm = h(lm)
    frm = h(rm)
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    delta = left + right - whole
    if abs(delta) <= 15.0 * tol:
        return left + right + delta / 15.0
    if depth >= max_depth:
        raise MaxDepthExceeded(a, b, max_depth)
    return (_adaptive(h, a, fa, lm, flm, m, fm, left, 0.5 * tol, depth + 1, max_depth)
            + _adaptive(h, m, fm, rm, frm, b, fb, right, 0.5 * tol, depth + 1, max_depth))


def integrate_1d(h: Callable[[float], float], a: float, b: float,
                 cfg: QuadratureConfig = QuadratureConfig()) -> float:
    """Adaptive composite Simpson estimate of ``int_a^b h``.

    Halves are accepted when they differ from the parent estimate by at most
    ``15 * tol``; the tolerance halves with each bisection.  Local Richardson
    correction is applied on acceptance, so cubics (and quintics) are exact.
    """
    if a > b:
        raise ValueError(f"integrate_1d needs a <= b, got [{a!r}, {b!r}]")
    if a == b:
        return 0.0
    m = 0.5 * (a + b)
    fa, fm, fb = h(a), h(m), h(b)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    return _adaptive(h, a, fa, m, fm, b, fb, whole, cfg.tol, 0, cfg.max_depth)


def integrate_simplex(g: SimplexIntegrand | Callable[[tuple[float, ...]], float],
                      cfg: QuadratureConfig = QuadratureConfig(),
                      order: int | None = None) -> float:
    """Integral of ``g`` over Sigma_n with respect to ``dt_0 ... dt_n``.

    The measure has total mass ``1/n!``.  ``g`` may be a
    :class:`SimplexIntegrand` or a plain callable together with ``order``.
    """
    if isinstance(g, SimplexIntegrand):
        n, func = g.order, g.eval
    else:
        if order is None:
            raise TypeError("order is required when g is a plain callable")
        n, func = order, g
    if n < 0:
        raise ValueError("simplex order must be nonnegative")
    return _reduce(func, n, cfg)


def _reduce(func, n, cfg):
    if n == 0:
        return func((1.0,))

    def h(t: Sequence[float]) -> float:
        head = tuple(t[:-1])
        last = t[-1]
        if last == 0.0:
            return 0.0
        return last * integrate_1d(lambda u: func(head + (last * (1.0 - u), last * u)),
                                   0.0, 1.0, cfg)

    return _reduce(h, n - 1, cfg)
