import random

import pytest
from hypothesis import given, settings, strategies as st

from qkernel.ncalg import (
    Alphabet, AlphabetMismatch, MissingImage, NCExpr, TensorExpr, anticommutator, bracket,
    commutator, extend_antihom, extend_hom, q_anticommutator, tensor,
)
from qkernel.scalars import ONE, Scalar, s

A = Alphabet("free3", ["a", "b", "c"])
a, b, c = (NCExpr.gen(A, g) for g in "abc")


def test_words_and_coefficients():
    x = a * b * 2 - b * a + 3
    assert x.coefficient(("a", "b")) == Scalar(2)
    assert x.coefficient(("b", "a")) == Scalar(-1)
    assert x.coefficient(()) == Scalar(3)
    assert x.max_length() == 2
    assert len(x) == 3
    assert (x - x).is_zero()


def test_no_stored_zeros():
    x = NCExpr(A, {("a",): 1, ("b",): 0})
    assert dict(x.terms) == {("a",): ONE}


def test_alphabet_mismatch():
    other = NCExpr.gen(Alphabet("other", ["a"]), "a")
    with pytest.raises(AlphabetMismatch):
        a + other


def test_brackets():
    assert commutator(a, b) == a * b - b * a
    assert anticommutator(a, b) == a * b + b * a
    assert q_anticommutator(a, b) == (a * b).scale(s) + (b * a).scale(s.inv())
    assert bracket("commutator", a, b) == commutator(a, b)
    with pytest.raises(ValueError):
        bracket("nope", a, b)


def test_jacobi_identity():
    lhs = commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) + commutator(c, commutator(a, b))
    assert lhs.is_zero()


def test_power_and_division():
    assert a ** 0 == NCExpr.one(A)
    assert a ** 3 == a * a * a
    assert (a * 4) / 2 == a * 2


def test_tensor():
    t = tensor(a + 1, b)
    assert t.arity == 2
    assert t * t == tensor((a + 1) * (a + 1), b * b)
    assert TensorExpr.one(A, 3) * tensor(a, b, c) == tensor(a, b, c)


def test_extend_hom_and_antihom():
    swap = {"a": b, "b": a, "c": c * 2}
    assert extend_hom(swap, a * b * c) == b * a * c * 2
    assert extend_antihom(swap, a * b * c) == c * a * b * 2
    assert extend_hom({"a": Scalar(3), "b": ONE, "c": ONE}, a * a + b) == Scalar(10)
    with pytest.raises(MissingImage):
        extend_hom({"a": a}, b)


words = st.lists(st.sampled_from("abc"), max_size=4).map(tuple)
exprs = st.dictionaries(words, st.integers(-3, 3), max_size=4).map(lambda d: NCExpr(A, d))


@settings(max_examples=80, deadline=None)
@given(exprs, exprs, exprs)
def test_ring_axioms(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert (x + y) * z == x * z + y * z


@settings(max_examples=50, deadline=None)
@given(exprs, exprs)
def test_hom_is_multiplicative(x, y):
    images = {"a": b + c, "b": a * s, "c": NCExpr.one(A) - a}
    assert extend_hom(images, x * y) == extend_hom(images, x) * extend_hom(images, y)
    assert extend_antihom(images, x * y) == extend_antihom(images, y) * extend_antihom(images, x)


def test_seeded_random_associativity():
    rng = random.Random(3)
    for _ in range(20):
        x, y, z = (NCExpr(A, {tuple(rng.choice("abc") for _ in range(rng.randint(0, 3))): rng.randint(1, 4)})
                   for _ in range(3))
        assert (x * y) * z == x * (y * z)
