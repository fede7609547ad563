import math

import pytest
from hypothesis import given, strategies as st

from genocchi.errors import EvaluationDomainError, ExprSyntaxError, NonDifferentiable
from genocchi.expression import (
    Add, Call, Const, Div, Mul, Neg, Pow, Sub, Var,
    compile_expr, differentiate, evaluate, parse, simplify, to_oracle, to_text,
)
from genocchi.tables import Rigor

X = Var()

# expression, sampling interval
CORPUS = [
    ("sin(x)", (-3, 3)),
    ("exp(x)", (-2, 2)),
    ("x^4", (-2, 2)),
    ("x^6", (-2, 2)),
    ("1/(1+x^2)", (-3, 3)),
    ("sin(x)*exp(-x)", (-2, 2)),
    ("log(x) + sqrt(x)", (0.1, 4)),
    ("cos(x^2) / (2 + sin(3*x))", (-2, 2)),
    ("x^2.5 - 2^x", (0.1, 3)),
    ("-x^3 + 4*x - 1/x", (0.5, 3)),
]


def close(a, b, rel):
    return abs(a - b) <= rel * max(1.0, abs(a), abs(b))


class TestParse:
    @pytest.mark.parametrize("text,x,expected", [
        ("x^2 + 1", 2.0, 5.0),
        ("sin(x)*exp(-x)", 0.0, 0.0),
        ("1/(1+x^2)", 1.0, 0.5),
        ("-x^2", 3.0, -9.0),
        ("2^3^2", 0.0, 512.0),
        ("x - 1 - 2", 0.0, -3.0),
        ("8 / 2 / 2", 0.0, 2.0),
        ("2^-1", 0.0, 0.5),
        ("--x", 4.0, 4.0),
        ("pi", 0.0, math.pi),
        (" 1.5e1 *\tx ", 2.0, 30.0),
    ])
    def test_values(self, text, x, expected):
        assert evaluate(parse(text), x) == pytest.approx(expected, rel=1e-15)

    def test_trees(self):
        assert parse("x^2 + 1") == Add(Pow(X, Const(2.0)), Const(1.0))
        assert parse("-x^2") == Neg(Pow(X, Const(2.0)))
        assert parse("2^3^2") == Pow(Const(2.0), Pow(Const(3.0), Const(2.0)))
        assert parse("-3") == Const(-3.0)

    @pytest.mark.parametrize("text,offset,expected", [
        ("2x", 1, "*"),
        ("x +", 3, "("),
        ("sin x", 4, "("),
        ("(x + 1", 6, ")"),
        ("y + 1", 0, "x"),
        ("x $ 1", 2, "("),
        ("x\u00a0+\u00a0", 6, "x"),  # offsets count UTF-8 bytes
    ])
    def test_errors(self, text, offset, expected):
        with pytest.raises(ExprSyntaxError) as info:
            parse(text)
        assert info.value.offset == offset
        assert expected in info.value.expected

    def test_syntax_error_is_builtin_subclass(self):
        with pytest.raises(SyntaxError):
            parse("")

    def test_abs_not_supported(self):
        with pytest.raises(ExprSyntaxError):
            parse("abs(x)")


class TestPrint:
    @pytest.mark.parametrize("text,canonical", [
        ("x^2+1", "x^2 + 1"),
        ("-x^2", "-x^2"),
        ("(-x)^2", "(-x)^2"),
        ("(-2)^2", "(-2)^2"),
        ("2^3^2", "2^3^2"),
        ("(2^3)^2", "(2^3)^2"),
        ("x-(1-x)", "x - (1 - x)"),
        ("x/(2*x)", "x / (2 * x)"),
        ("2*pi*x", "2 * pi * x"),
        ("0.25*x", "0.25 * x"),
        ("x^-1", "x^-1"),
    ])
    def test_canonical(self, text, canonical):
        assert to_text(parse(text)) == canonical

    @pytest.mark.parametrize("text,interval", CORPUS)
    def test_round_trip(self, text, interval, rng):
        e = parse(text)
        assert parse(to_text(e)) == e
        f, g = compile_expr(e), compile_expr(parse(to_text(e)))
        for x in rng.uniform(*interval, 50):
            assert close(f(x), g(x), 1e-12)


class TestDifferentiate:
    def test_quartic_four_times(self):
        assert differentiate(parse("x^4"), 4) == Const(24.0)
        assert differentiate(parse("x^4"), 5) == Const(0.0)

    def test_sin_four_times(self, rng):
        d4 = compile_expr(differentiate(parse("sin(x)"), 4))
        for x in rng.uniform(-3, 3, 20):
            assert d4(x) == pytest.approx(math.sin(x), abs=1e-15)

    def test_exp_neg_third(self):
        assert evaluate(differentiate(parse("exp(-x)"), 3), 0.0) == -1.0

    def test_zero_order_rejected(self):
        with pytest.raises(ValueError):
            differentiate(X, 0)

    def test_memoized(self):
        e = parse("sin(x)^3 * exp(x)")
        assert differentiate(e, 3) is differentiate(e, 3)

    def test_simplification_basics(self):
        assert differentiate(parse("3*x + 2")) == Const(3.0)
        assert differentiate(parse("x^2")) == Mul(Const(2.0), X)

    @pytest.mark.parametrize("text,interval", CORPUS)
    def test_against_finite_difference(self, text, interval, rng):
        e = parse(text)
        f, df = compile_expr(e), compile_expr(differentiate(e))
        h = 1e-5
        for x in rng.uniform(*interval, 50):
            fd = (f(x + h) - f(x - h)) / (2 * h)
            exact = df(x)
            assert abs(exact - fd) <= 1e-6 * (1 + abs(exact))

    @pytest.mark.parametrize("text,interval", CORPUS)
    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_simplifier_sound(self, text, interval, k, rng):
        e = parse(text)
        smart = compile_expr(differentiate(e, k))
        raw = compile_expr(differentiate(e, k, simplified=False))
        for x in rng.uniform(*interval, 50):
            assert close(smart(x), raw(x), 1e-12)


@st.composite
def trees(draw, depth=3):
    if depth == 0 or draw(st.booleans()):
        return draw(st.sampled_from([X, Const(0.0), Const(1.0), Const(2.0), Const(-0.5)]))
    kind = draw(st.sampled_from(["neg", "add", "sub", "mul", "div", "pow", "sin", "exp"]))
    a = draw(trees(depth - 1))
    if kind == "neg":
        return Neg(a)
    if kind in ("sin", "exp"):
        return Call(kind, a)
    if kind == "pow":
        return Pow(a, Const(float(draw(st.integers(0, 3)))))
    b = draw(trees(depth - 1))
    return {"add": Add, "sub": Sub, "mul": Mul, "div": Div}[kind](a, b)


def _safe(f, x):
    try:
        return f(x)
    except EvaluationDomainError:
        return None


@given(trees(), st.floats(-2, 2))
def test_simplify_preserves_value(e, x):
    a, b = _safe(compile_expr(e), x), _safe(compile_expr(simplify(e)), x)
    if a is None or b is None or not (math.isfinite(a) and math.isfinite(b)):
        return
    assert close(a, b, 1e-12)


@given(trees(), st.floats(-2, 2))
def test_printer_round_trip(e, x):
    a = _safe(compile_expr(e), x)
    b = _safe(compile_expr(parse(to_text(e))), x)
    assert (a is None) == (b is None)
    if a is not None and math.isfinite(a):
        assert close(a, b, 1e-12)


@given(trees(), st.floats(-2, 2))
def test_codegen_matches_closures(e, x):
    a = _safe(compile_expr(e, codegen=True), x)
    b = _safe(compile_expr(e, codegen=False), x)
    assert (a is None) == (b is None)
    if a is not None and not math.isnan(a):
        assert a == b


class TestDomain:
    def test_log_nonpositive(self):
        with pytest.raises(EvaluationDomainError):
            evaluate(parse("log(x)"), 0.0)

    def test_sqrt_negative(self):
        with pytest.raises(EvaluationDomainError):
            evaluate(parse("sqrt(x)"), -1.0)

    def test_division_by_zero(self):
        with pytest.raises(EvaluationDomainError):
            evaluate(parse("1/x"), 0.0)

    def test_derivative_reports_non_differentiable(self):
        oracle = to_oracle("sqrt(x)", 2)
        assert oracle.value(0.0) == 0.0
        with pytest.raises(NonDifferentiable):
            oracle.derivative(1, 0.0)


class TestToOracle:
    def test_cubic_has_zero_fourth_derivative(self, rng):
        oracle = to_oracle("x^3")
        for x in rng.uniform(-5, 5, 10):
            assert oracle.derivative(4, x) == 0.0
        assert oracle.sup_bound(4, (0.0, 1.0)) == (0.0, Rigor.RIGOROUS)

    def test_sin_sup_is_sampled(self):
        M, rigor = to_oracle("sin(x)").sup_bound(4, (0.0, math.pi))
        assert rigor is Rigor.SAMPLED
        assert M == pytest.approx(1.1, rel=1e-5)

    def test_exp_second_derivative(self):
        assert to_oracle("exp(x)").derivative(2, 1.0) == pytest.approx(math.e, rel=1e-15)

    def test_label_is_canonical(self):
        assert to_oracle("1/(1+x^2)").label == "1 / (1 + x^2)"

    def test_order(self):
        assert to_oracle(parse("x"), 6).max_order == 6
        with pytest.raises(ValueError):
            to_oracle("x", -1)
