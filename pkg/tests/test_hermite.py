import math

import pytest
from hypothesis import given, settings, strategies as st

from genocchi.errors import InsufficientDerivativeOrder
from genocchi.hermite import derivative_from_dd, hg_divided_difference
from genocchi.simplex import QuadratureConfig
from genocchi.tables import build_table, top_difference

from oracles import exp_oracle, monomial, poly_oracle, sin_oracle

TOL = QuadratureConfig().tol


def test_square_on_unit_interval():
    # int_0^1 2u du
    value = hg_divided_difference(monomial(2), [0.0, 1.0])
    assert value == pytest.approx(1.0, abs=1e-12)
    assert value == pytest.approx(top_difference(build_table(monomial(2), [0.0, 1.0])), abs=1e-12)


def test_square_confluent():
    assert hg_divided_difference(monomial(2), [3.0, 3.0]) == pytest.approx(6.0, abs=1e-12)


def test_exp_fourfold_zero():
    # f_3(0,0,0,0) = exp'''(0) / 3!
    assert hg_divided_difference(exp_oracle(), [0.0] * 4) == pytest.approx(1 / 6, abs=1e-9)


@pytest.mark.parametrize("oracle,x,n,expected", [
    (sin_oracle(), 0.0, 1, 1.0),
    (exp_oracle(), 0.0, 3, 1.0),
    (monomial(4), 1.0, 4, 24.0),
])
def test_derivative_from_dd_examples(oracle, x, n, expected):
    assert abs(derivative_from_dd(oracle, x, n) - expected) <= 1e-6


def _degree6(seed):
    import numpy as np
    return poly_oracle(list(np.random.default_rng(seed).uniform(-2, 2, 7)), 6)


@pytest.mark.parametrize("make", [sin_oracle, exp_oracle, lambda: _degree6(1), lambda: _degree6(2)])
@pytest.mark.parametrize("n", range(5))
@pytest.mark.parametrize("x", [-1.0, -0.3, 0.0, 0.55, 1.0])
def test_derivative_identity(make, n, x):
    oracle = make()
    assert abs(derivative_from_dd(oracle, x, n) - oracle.derivative(n, x)) <= 1e-6


@settings(max_examples=10, deadline=None)
@given(st.lists(st.floats(-1, 1), min_size=2, max_size=4).filter(
    lambda xs: min(abs(a - b) for i, a in enumerate(xs) for b in xs[i + 1:]) > 0.1))
def test_recurrence_equivalence(nodes):
    for oracle in (sin_oracle(), exp_oracle()):
        table = top_difference(build_table(oracle, nodes))
        assert abs(hg_divided_difference(oracle, nodes) - table) <= 1e-7


@pytest.mark.parametrize("nodes", [
    [0.0, 0.0, 1.0, 1.0],
    [0.5, 0.5, 0.5, 2.0],
    [-1.0, 0.2, 0.2],
    [1.5, 1.5, 1.5, 1.5],
])
def test_confluent_fast_path_agrees(nodes):
    oracle = exp_oracle()
    fast = top_difference(build_table(oracle, nodes))
    assert abs(hg_divided_difference(oracle, nodes) - fast) <= 1e-6


def test_continuity_at_confluence():
    oracle = sin_oracle()
    c = 0.4
    exact = math.cos(c)
    errors = []
    for h in (1e-2, 1e-3, 1e-4):
        err = abs(hg_divided_difference(oracle, [c, c + h]) - exact)
        assert err <= h / 2 * 1.0 + 1e-7
        errors.append(err)
    # shrinking until quadrature noise dominates
    assert errors[0] > errors[1] > errors[2] - 10 * TOL


@pytest.mark.parametrize("nodes", [[0.0, 0.4, 1.0], [-1.0, -0.2, 0.3, 1.0], [0.0, 0.0, 2.0]])
def test_bound_transfer(nodes):
    n = len(nodes) - 1
    for oracle in (sin_oracle(), exp_oracle()):
        M, _ = oracle.sup_bound(n, (min(nodes), max(nodes)))
        assert abs(hg_divided_difference(oracle, nodes)) <= M / math.factorial(n) + 10 * TOL


def test_insufficient_order():
    with pytest.raises(InsufficientDerivativeOrder):
        hg_divided_difference(poly_oracle([1, 2, 3], 1), [0.0, 1.0, 2.0])
