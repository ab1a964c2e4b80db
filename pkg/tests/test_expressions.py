import math

import numpy as np
import pytest

from oscpairs.errors import EvaluationError, ParseError
from oscpairs.expressions import parse_expression


def val(expr, x, params=None):
    return parse_expression(expr, params).eval(x)


def dval(expr, x, params=None, order=1):
    tree = parse_expression(expr, params)
    for _ in range(order):
        tree = tree.deriv()
    return tree.eval(x)


def test_identity_function():
    assert val("x", 2.0) == 2.0
    assert dval("x", 2.0) == 1.0
    assert dval("x", 2.0, order=2) == 0.0


def test_parameter_substitution_and_derivatives():
    # q = g^2/x^2 with g = 1: q' = -2/x^3, q'' = 6/x^4
    assert val("g^2/x^2", 2.0, {"g": 1.0}) == pytest.approx(0.25, abs=1e-15)
    assert dval("g^2/x^2", 2.0, {"g": 1.0}) == pytest.approx(-0.25, abs=1e-14)
    assert dval("g^2/x^2", 2.0, {"g": 1.0}, order=2) == pytest.approx(0.375, abs=1e-14)


def test_syntax_error_position():
    with pytest.raises(ParseError) as err:
        parse_expression("x +")
    assert err.value.position == 3


def test_unbound_identifier_position():
    with pytest.raises(ParseError) as err:
        parse_expression("x + y")
    assert err.value.position == 4


def test_unknown_function_rejected():
    with pytest.raises(ParseError):
        parse_expression("tan(x)")


def test_trailing_input_rejected():
    with pytest.raises(ParseError):
        parse_expression("x) + 1")


def test_precedence_unary_minus_below_power():
    assert val("-x^2", 3.0) == -9.0
    assert val("(-x)^2", 3.0) == 9.0


def test_power_right_associative():
    assert val("2^3^2", 0.0) == 512.0


def test_power_negative_exponent():
    assert val("2^-1", 0.0) == 0.5
    assert val("x^-2", 2.0) == 0.25


def test_division_left_associative():
    assert val("6/3/2", 0.0) == 1.0


def test_number_formats():
    assert val("1.5e-3", 0.0) == 1.5e-3
    assert val(".5 + 2e2", 0.0) == 200.5


@pytest.mark.parametrize("expr", ["sin(x)", "cos(x)", "exp(x)", "log(x)",
                                  "sqrt(x)", "x^3", "x*sin(x)/(1 + x^2)",
                                  "exp(-x^2/4)*cos(2*x)"])
def test_derivatives_match_finite_differences(expr):
    rng = np.random.default_rng(42)
    tree = parse_expression(expr)
    d1 = tree.deriv()
    for x in rng.uniform(0.4, 3.0, 8):
        h = 1e-6 * (1.0 + x)
        fd = (tree.eval(x + h) - tree.eval(x - h)) / (2 * h)
        assert d1.eval(x) == pytest.approx(fd, rel=1e-7, abs=1e-9)


def test_abs_derivative():
    tree = parse_expression("abs(x)").deriv()
    assert tree.eval(2.0) == 1.0
    assert tree.eval(-2.0) == -1.0
    with pytest.raises(EvaluationError):
        tree.eval(0.0)


def test_sqrt_derivative_singular_at_origin():
    tree = parse_expression("sqrt(x)").deriv()
    assert tree.eval(4.0) == pytest.approx(0.25)
    with pytest.raises(EvaluationError):
        tree.eval(0.0)


def test_division_by_zero_at_evaluation():
    tree = parse_expression("1/(x - 5)")
    assert tree.eval(6.0) == 1.0
    with pytest.raises(EvaluationError):
        tree.eval(5.0)


def test_fractional_power_of_negative_base():
    tree = parse_expression("x^0.5")
    with pytest.raises(EvaluationError):
        tree.eval(-1.0)
    assert val("(0 - 2)^2", 0.0) == 4.0


def test_log_domain():
    with pytest.raises(EvaluationError):
        val("log(x)", 0.0)
    assert val("log(x)", math.e) == pytest.approx(1.0)
