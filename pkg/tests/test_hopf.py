import random

import pytest

from qkernel.catalog import element
from qkernel.hopf import (
    antipode, check_hopf_axioms, coproduct, counit, counit_via_normal_form, hopf_data,
)
from qkernel.ncalg import tensor
from qkernel.oracle import random_expression
from qkernel.presentations import get_presentation
from qkernel.rewrite import normal_form, tensor_normal_form
from qkernel.scalars import ONE, ZERO

ospq = get_presentation("ospq")
g = {x: ospq.gen(x) for x in ospq.alphabet}
RESULTS = {r.id: r for r in check_hopf_axioms()}


@pytest.mark.parametrize("rid", sorted(RESULTS))
def test_axiom(rid):
    assert RESULTS[rid].holds, RESULTS[rid].residual


def test_axiom_families_cover_generators():
    for family in ("coassoc", "counit.left", "counit.right", "antipode.left", "antipode.right"):
        for x in ospq.alphabet:
            assert f"hopf.{family}.{x}" in RESULTS
    assert sum(r.startswith("hopf.coproduct_hom.") for r in RESULTS) == sum(
        r.startswith("hopf.counit_hom.") for r in RESULTS)


def test_images():
    assert coproduct(g["K"]) == tensor(g["K"], g["K"])
    assert counit(g["A+"]) == ZERO
    assert counit(g["K"] * g["P"]) == ONE
    assert antipode(g["K"]) == g["Kinv"]
    assert set(hopf_data().coproduct_images) == set(ospq.alphabet)


def test_equitable_coproduct_of_Y():
    Y = element("Y", "ospq").expr
    assert tensor_normal_form(coproduct(Y), ospq) == tensor_normal_form(tensor(Y, Y), ospq)


def test_antipode_is_antihom():
    x, y = g["A+"] * g["K"], g["A-"] + g["P"]
    lhs = normal_form(antipode(x * y), ospq)
    rhs = normal_form(antipode(y) * antipode(x), ospq)
    assert lhs == rhs


def test_wrong_antipode_fails():
    # negative control: dropping the sign in sigma(A+) breaks the antipode axiom
    from qkernel.hopf import apply_to_slot, multiply_slots
    from qkernel.ncalg import NCExpr, extend_antihom
    images = dict(hopf_data().antipode_images)
    images["A+"] = -images["A+"]
    applied = apply_to_slot(coproduct(g["A+"]), 0,
                            lambda w: extend_antihom(images, NCExpr.word(ospq.alphabet, w), unit=ospq.one()))
    assert not normal_form(multiply_slots(applied), ospq).is_zero()


def test_counit_cross_check():
    rng = random.Random(5)
    for _ in range(50):
        x = random_expression(rng, ospq, 6)
        assert counit(x) == counit_via_normal_form(x)
