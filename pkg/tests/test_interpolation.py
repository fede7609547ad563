import math
from itertools import permutations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from genocchi.interpolation import (
    ErrorCertificate,
    NewtonPolynomial,
    lagrange_bound,
    lagrange_certificate,
    newton_derivatives,
    newton_eval,
    newton_fit,
    remainder,
)
from genocchi.tables import FunctionOracle, Rigor

from oracles import exp_oracle, monomial, poly_oracle, sin_oracle

nodes_strategy = st.lists(st.floats(-2, 2), min_size=1, max_size=6).filter(
    lambda xs: len(xs) < 2 or min(abs(a - b) for i, a in enumerate(xs) for b in xs[i + 1:]) > 0.05)


class TestNewtonFit:
    def test_cubic(self):
        assert newton_fit(monomial(3), [0, 1, 2]).coeffs == (0.0, 1.0, 3.0)

    @given(st.floats(-50, 50), st.integers(1, 5))
    def test_constant(self, c, size):
        oracle = poly_oracle([c], 4)
        p = newton_fit(oracle, [0.3 * i for i in range(size)])
        assert p.coeffs == (c,) + (0.0,) * (size - 1)

    def test_confluent_is_taylor(self):
        assert newton_fit(monomial(2), [1, 1, 1]).coeffs == (1.0, 2.0, 1.0)

    def test_coefficient_count_checked(self):
        with pytest.raises(ValueError):
            NewtonPolynomial((0.0, 1.0), (1.0,))


class TestNewtonEval:
    def test_cubic_outside(self):
        p = NewtonPolynomial((0.0, 1.0, 2.0), (0.0, 1.0, 3.0))
        assert newton_eval(p, 3.0) == 21.0

    @given(st.lists(st.floats(-5, 5), min_size=1, max_size=5), st.floats(-5, 5))
    def test_first_node(self, coeffs, x0):
        nodes = [x0 + i for i in range(len(coeffs))]
        assert newton_eval(NewtonPolynomial(nodes, coeffs), x0) == coeffs[0]

    def test_taylor_form(self):
        assert newton_eval(NewtonPolynomial((1.0, 1.0, 1.0), (1.0, 2.0, 1.0)), 2.0) == 4.0

    def test_derivatives_of_taylor_form(self):
        p = NewtonPolynomial((1.0, 1.0, 1.0), (1.0, 2.0, 1.0))
        assert newton_derivatives(p, 3.0, 3) == [9.0, 6.0, 2.0, 0.0]


class TestRemainder:
    @pytest.mark.parametrize("x,expected", [(3.0, 6.0), (1.5, -0.375), (1.0, 0.0)])
    def test_cubic(self, x, expected):
        assert remainder(monomial(3), [0, 1, 2], x) == pytest.approx(expected, abs=1e-9)

    def test_identity(self, rng):
        for oracle in (sin_oracle(), exp_oracle(), monomial(5)):
            nodes = [0.0, 0.7, 2.0]
            p = newton_fit(oracle, nodes)
            for x in rng.uniform(0, 2, 5):
                gap = oracle.value(x) - newton_eval(p, x)
                assert abs(gap - remainder(oracle, nodes, x)) <= 1e-7


class TestLagrangeBound:
    def test_quarter_pi(self):
        cert = lagrange_bound([0, math.pi / 2, math.pi], math.pi / 4, 1.0)
        assert abs(cert.bound - math.pi ** 3 / 128) <= 1e-12
        assert cert.constant_name == "lagrange_n!"
        assert cert.rigor is Rigor.RIGOROUS

    def test_zero_M(self):
        assert lagrange_bound([0, 1, 2], 5.0, 0.0).bound == 0.0

    def test_at_node(self):
        assert lagrange_bound([0, 1, 2], 1.0, 3.0).bound == 0.0

    def test_negative_bound_rejected(self):
        with pytest.raises(ValueError):
            ErrorCertificate(-1.0, "x", 1.0, Rigor.SAMPLED)

    def test_sampled_M_is_flagged(self):
        oracle = FunctionOracle((math.sin, math.cos, lambda x: -math.sin(x)))
        cert = lagrange_certificate(oracle, [0.0, 1.0], 0.5)
        assert cert.rigor is Rigor.SAMPLED
        # 1.1 x the grid max of |sin| on [0, 1]
        assert cert.M == pytest.approx(1.1 * math.sin(1.0))

    def test_supplied_M_is_rigorous(self):
        cert = lagrange_certificate(sin_oracle(), [0.0, 1.0], 0.5, M=1.0)
        assert (cert.M, cert.rigor) == (1.0, Rigor.RIGOROUS)


@given(nodes_strategy)
def test_interpolates_at_nodes(nodes):
    for oracle in (sin_oracle(), exp_oracle()):
        p = newton_fit(oracle, nodes)
        for x in nodes:
            fx = oracle.value(x)
            assert abs(newton_eval(p, x) - fx) <= 1e-12 * (1 + abs(fx))


@pytest.mark.parametrize("nodes", [[0.0, 0.0, 1.0], [0.5, 0.5, 0.5, -1.0], [2.0, 2.0, 1.0, 1.0, 1.0]])
def test_confluent_matches_derivatives(nodes):
    oracle = exp_oracle()
    p = newton_fit(oracle, nodes)
    for x in set(nodes):
        l = nodes.count(x)
        ders = newton_derivatives(p, x, l - 1)
        for k in range(l):
            assert ders[k] == pytest.approx(oracle.derivative(k, x), rel=1e-10)


def test_certified_containment(rng):
    oracle = sin_oracle()
    nodes = [0.0, math.pi / 2, math.pi]
    p = newton_fit(oracle, nodes)
    for x in rng.uniform(0, math.pi, 100):
        cert = lagrange_bound(nodes, x, 1.0)
        assert abs(oracle.value(x) - newton_eval(p, x)) <= cert.bound + 1e-10


def test_polynomial_unique_under_permutation(rng):
    oracle = exp_oracle()
    nodes = [-1.0, -0.2, 0.4, 0.9, 1.7]
    xs = rng.uniform(-1, 1.7, 20)
    ref = newton_fit(oracle, nodes, sort=False)
    for perm in list(permutations(nodes))[::17]:
        p = newton_fit(oracle, perm, sort=False)
        for x in xs:
            a, b = newton_eval(ref, x), newton_eval(p, x)
            assert abs(a - b) <= 1e-9 * max(abs(a), abs(b))


def test_matches_numpy_polyfit():
    oracle = sin_oracle()
    nodes = np.linspace(0, 2, 5)
    p = newton_fit(oracle, nodes)
    ref = np.polynomial.Polynomial.fit(nodes, np.sin(nodes), 4)
    for x in np.linspace(0, 2, 11):
        assert newton_eval(p, x) == pytest.approx(ref(x), abs=1e-12)
