import random

import pytest

from qkernel.dsl import parse
from qkernel.ncalg import NCExpr
from qkernel.oracle import random_expression
from qkernel.presentations import NAMES, UnknownPresentation, corrupted_ospq, get_presentation
from qkernel.rewrite import (
    Presentation, StepLimitExceeded, check_identity, is_central, is_normal,
    local_confluence_report, normal_form, termination_measure,
)
from qkernel.scalars import ONE, s

ospq = get_presentation("ospq")
g = {x: ospq.gen(x) for x in ospq.alphabet}


def test_basic_reductions():
    assert normal_form(g["P"] * g["P"], ospq) == ospq.one()
    assert normal_form(g["K"] * g["Kinv"], ospq) == ospq.one()
    assert normal_form(g["P"] * g["A+"], ospq) == -(g["A+"] * g["P"])
    assert normal_form(g["K"] * g["A+"], ospq) == g["A+"] * g["K"] * s ** 2


def test_anticommutator_relation():
    lhs = g["A+"] * g["A-"] + g["A-"] * g["A+"]
    rhs = (g["K"] - g["Kinv"]) / (s - s.inv())
    assert check_identity(lhs, rhs, ospq).holds


def test_failing_identity_has_residual():
    res = check_identity(g["A+"] * g["A-"], g["A-"] * g["A+"], ospq)
    assert not res.holds
    assert not res.residual.is_zero()


def test_step_limit(monkeypatch):
    x = (g["P"] * g["A-"] * g["K"]) ** 3
    with pytest.raises(StepLimitExceeded):
        normal_form(x, ospq, limit=2)
    monkeypatch.setenv("QKERNEL_STEP_LIMIT", "1")
    with pytest.raises(StepLimitExceeded):
        normal_form(x, ospq)


def test_rules_decrease_measure():
    for name in ("ospq", "slq", "qbi", "bi", "slq_omega"):
        p = get_presentation(name)
        for rule in p.rules:
            before = termination_measure(rule.lhs, p)
            for word, _ in rule.rhs.items():
                assert termination_measure(word, p) < before


@pytest.mark.parametrize("name", ["ospq", "slq", "qbi", "bi", "slq_omega"])
def test_local_confluence(name):
    report = local_confluence_report(get_presentation(name))
    assert report
    assert all(cp.joinable for cp in report)


def test_corrupted_fixture_detected():
    bad = [cp for cp in local_confluence_report(corrupted_ospq()) if not cp.joinable]
    assert bad
    assert all(cp.branch1 != cp.branch2 for cp in bad)


def test_ospq_has_pbw_order():
    assert ospq.misordered_pairs() == []


def test_normal_form_properties():
    rng = random.Random(11)
    for _ in range(40):
        x = random_expression(rng, ospq, 12)
        y = random_expression(rng, ospq, 12)
        nx = normal_form(x, ospq)
        assert is_normal(nx, ospq)
        assert normal_form(nx, ospq) == nx
        assert normal_form(x + y, ospq) == nx + normal_form(y, ospq)
        assert normal_form(x * 3, ospq) == nx * 3


def test_centrality_negative_control():
    assert not is_central(g["A+"], ospq)
    assert is_central(ospq.one(), ospq)


def test_text_round_trip():
    for name in ("ospq", "slq", "qbi", "bi", "slq_omega"):
        p = get_presentation(name)
        back = Presentation.from_text(p.to_text())
        assert back.alphabet == p.alphabet
        assert [r.lhs for r in back.rules] == [r.lhs for r in p.rules]
        assert all(r1.rhs == r2.rhs for r1, r2 in zip(back.rules, p.rules))


def test_presentation_from_file(tmp_path):
    path = tmp_path / "toy.pres"
    path.write_text("name: toy\ngenerators: u v\n# comment\nrule: v*u -> s^2*u*v\n")
    p = get_presentation(str(path))
    u, v = p.gen("u"), p.gen("v")
    assert normal_form(v * v * u, p) == u * v * v * s ** 4


def test_unknown_presentation():
    with pytest.raises(UnknownPresentation):
        get_presentation("nope")
    assert "ospq" in NAMES


def test_parse_in_other_presentations():
    qbi = get_presentation("qbi")
    x = parse("{I1, I2}_q - I3 - iota3", "qbi")
    assert normal_form(x, qbi).is_zero()
    assert isinstance(x, NCExpr) and x.coefficient(()) != ONE
