import random

import pytest

from qkernel.catalog import element
from qkernel.dsl import DSLSyntaxError, UnknownGenerator, format_expr, format_latex, parse
from qkernel.ncalg import commutator
from qkernel.presentations import UnknownPresentation, get_presentation
from qkernel.rewrite import normal_form
from qkernel.scalars import I, Scalar, s, sym

ospq = get_presentation("ospq")
g = {x: ospq.gen(x) for x in ospq.alphabet}


def test_parse_relation():
    x = parse("{A+, A-} - (K - K^-1)/(s - s^-1)")
    expected = g["A+"] * g["A-"] + g["A-"] * g["A+"] - (g["K"] - g["Kinv"]) / (s - s.inv())
    assert x == expected
    assert normal_form(x, ospq).is_zero()


def test_parse_unit_and_scalars():
    assert parse("1") == ospq.one()
    assert parse("q") == ospq.one().scale(s ** 2)
    assert parse("(1 + i)*K/2") == g["K"].scale((1 + I) / 2)
    assert parse("a*b^-2") == ospq.one().scale(sym("a") / sym("b") ** 2)


def test_named_elements_resolve():
    X, Y = element("X", "ospq").expr, element("Y", "ospq").expr
    assert parse("[X, Y]") == commutator(X, Y)
    assert parse("Y^-1") == element("Yinv", "ospq").expr


def test_signed_generators_versus_operators():
    assert parse("A+ + A-") == g["A+"] + g["A-"]
    assert parse("A+*A-") == g["A+"] * g["A-"]
    assert parse("A- - A+") == g["A-"] - g["A+"]


def test_q_anticommutator():
    assert parse("{A+, K}_q") == (g["A+"] * g["K"]).scale(s) + (g["K"] * g["A+"]).scale(s.inv())


def test_format():
    assert format_expr(normal_form(g["P"] * g["P"], ospq)) == "1"
    assert format_expr(element("Y", "ospq").expr) == "K*P"
    assert format_expr(ospq.one().scale(s ** 2 + s ** -2)) == "s^2 + s^-2"
    assert format_expr(g["A+"] * 0) == "0"


def test_latex():
    out = format_latex(g["A+"] * g["A+"] * g["K"] * s ** 2)
    assert "A_{+}^{2}" in out and "q" in out


def test_errors():
    with pytest.raises(DSLSyntaxError) as info:
        parse("A+ * (K")
    assert info.value.column is not None
    with pytest.raises(UnknownGenerator):
        parse("Foo")
    with pytest.raises(DSLSyntaxError):
        parse("K / A+")
    with pytest.raises(DSLSyntaxError):
        parse("A+ K")
    with pytest.raises(UnknownPresentation):
        parse("1", "nope")


def test_other_alphabets():
    x = parse("{J+, J-}", "slq")
    assert x.alphabet == get_presentation("slq").alphabet
    assert parse("y*y^-1", "slq_equitable") == parse("y*yinv", "slq_equitable")


COEFFS = [Scalar(1), Scalar(-2), s, s ** -3, (s - s.inv()), 1 / (s + 1), I * s, sym("a") / (s ** 2 + sym("b")),
          Scalar(3) / 7, (1 + I) / (s - I)]


def _random_expr(rng, depth):
    if depth == 0 or rng.random() < 0.25:
        if rng.random() < 0.7:
            return g[rng.choice(list(ospq.alphabet))]
        return ospq.one().scale(rng.choice(COEFFS))
    op = rng.choice("+-*^s")
    if op == "+":
        return _random_expr(rng, depth - 1) + _random_expr(rng, depth - 1)
    if op == "-":
        return _random_expr(rng, depth - 1) - _random_expr(rng, depth - 1)
    if op == "*":
        return _random_expr(rng, depth - 1) * _random_expr(rng, depth - 1)
    if op == "^":
        return _random_expr(rng, depth - 1) ** rng.randint(0, 2)
    return _random_expr(rng, depth - 1).scale(rng.choice(COEFFS))


def test_round_trip_random():
    rng = random.Random(2024)
    count = 0
    while count < 500:
        x = _random_expr(rng, 5)
        if x.max_length() > 10 or len(x) > 60:
            continue
        assert parse(format_expr(x)) == x
        count += 1
