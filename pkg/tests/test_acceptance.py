"""Acceptance criteria 1-10, all at exact tolerance.

Run with pytest (one line per criterion appears in the terminal summary) or
directly: ``python3 tests/test_acceptance.py``.
"""
from __future__ import annotations

import sys

import pytest

from qkernel.catalog import (
    SLQ_TO_OSPQ_EQUITABLE, element, equitable_osp_relations, equitable_su_relations,
    equitable_to_standard, q_limit_check, q_to_minus_q, suite,
)
from qkernel.hopf import check_hopf_axioms
from qkernel.oracle import cross_check
from qkernel.presentations import corrupted_ospq, get_presentation
from qkernel.reps import WModule, annihilates, basis_vector, check_rep, finite_matrix, finite_weight, rho
from qkernel.rewrite import is_central, local_confluence_report
from qkernel.scalars import q_bracket, substitute, w

RESULTS: dict[int, tuple[bool, str]] = {}


def criterion_1():
    recs = suite()
    bad = [r.id for r in recs if not r.check().holds]
    return not bad, f"{len(recs) - len(bad)}/{len(recs)} identity records hold" + (f"; failing {bad}" if bad else "")


def criterion_2():
    res = check_hopf_axioms()
    ids = {r.id for r in res}
    gens = get_presentation("ospq").alphabet
    families = ("coassoc", "counit.left", "counit.right", "antipode.left", "antipode.right")
    covered = all(f"hopf.{f}.{g}" in ids for f in families for g in gens)
    homs = sum(i.startswith("hopf.coproduct_hom.") for i in ids)
    eq = sum(i.startswith("hopf.equitable.") for i in ids)
    bad = [r.id for r in res if not r.holds]
    ok = not bad and covered and homs > 0 and eq == 4
    return ok, f"{len(res)} axiom checks ({homs} coproduct relations, {eq} equitable coproducts), failing {bad}"


def criterion_3():
    checked, bad = 0, []
    for rec in suite():
        if rec.presentation not in ("ospq", "ospq_equitable"):
            continue
        x = rec.lhs - rec.rhs
        if rec.presentation == "ospq_equitable":
            x = equitable_to_standard(x)
        checked += 1
        if annihilates(x, cutoff=20, Ns=(2, 4)):
            bad.append(rec.id)
    return not bad, f"{checked} identities act as zero on W (n <= 20, e = +-1) and at N = 2, 4; failing {bad}"


def criterion_4():
    Q = element("Q", "ospq").expr
    bad = []
    for e in (1, -1):
        module = WModule(e)
        for n in range(21):
            v = basis_vector(n, e)
            if module.act(Q, v) != v.scale(-e * q_bracket(w)):
                bad.append(f"W n={n} e={e}")
        for N in (2, 4):
            if not finite_matrix(Q, N, e).is_scalar(-e * q_bracket(finite_weight(N))):
                bad.append(f"N={N} e={e}")
    return not bad, f"Q = -e[nu]_q on W and scalar on N = 2, 4; failing {bad}"


def criterion_5():
    bad = [N for N in (2, 4, 6, 8) if not substitute(rho(N + 1), {"w": finite_weight(N)}).is_zero()]
    irr = {N: check_rep("finite_irreducibility", N=N).passed for N in (2, 4)}
    return not bad and all(irr.values()), f"rho(N+1) = 0 fails for {bad}; commutant dimension 1 at s=2: {irr}"


def criterion_6():
    target = get_presentation("ospq_equitable")
    su, osp = equitable_su_relations(), equitable_osp_relations()
    pairs = (("xy", "XY"), ("yz", "YZ"), ("zx", "ZX"))
    mapped = [q_to_minus_q(su[a], SLQ_TO_OSPQ_EQUITABLE, target) == osp[b] for a, b in pairs]
    tilde = [r for r in suite() if r.id.startswith("tilde.")]
    tilde_ok = all(r.check().holds and r.presentation == "ospq" for r in tilde)
    ok = all(mapped) and tilde_ok and len(tilde) >= 3
    return ok, f"term-for-term matches {sum(mapped)}/3; {len(tilde)} tilde-generator identities hold: {tilde_ok}"


def criterion_7():
    rel, cas, sc = (q_limit_check(f) for f in ("qbi_relations", "qbi_casimir", "structure_constants"))
    pole = any(e.status == "pole" and e.label.startswith("inverse.A+") for e in sc.entries)
    poles = sum(e.status == "pole" for e in sc.entries)
    ok = rel.passed and cas.passed and pole
    return ok, f"relations -> zero: {rel.passed}; Casimir -> zero: {cas.passed}; {poles} coefficients with a pole at q = 1"


def criterion_8():
    joinable = {n: all(cp.joinable for cp in local_confluence_report(get_presentation(n)))
                for n in ("ospq", "slq", "qbi", "bi")}
    caught = any(not cp.joinable for cp in local_confluence_report(corrupted_ospq()))
    return all(joinable.values()) and caught, f"all joinable: {joinable}; corrupted fixture detected: {caught}"


def criterion_9():
    cases = cross_check(count=100, N=4, s_value=2, max_len=6)
    agree = sum(c.agrees for c in cases)
    equal = sum(c.nf_equal for c in cases)
    return agree == 100, f"{agree}/100 agree ({equal} equal pairs, {100 - equal} unequal)"


def criterion_10():
    checks = {
        "Q/ospq": is_central(element("Q", "ospq").expr, get_presentation("ospq")),
        "Lambda/qbi": is_central(element("Lambda", "qbi").expr, get_presentation("qbi")),
        "L/bi": is_central(element("L", "bi").expr, get_presentation("bi")),
    }
    negative = not is_central(get_presentation("ospq").gen("A+"), get_presentation("ospq"))
    return all(checks.values()) and negative, f"{checks}; A+ rejected: {negative}"


CRITERIA = {k: globals()[f"criterion_{k}"] for k in range(1, 11)}


def _run(k: int) -> tuple[bool, str]:
    ok, detail = CRITERIA[k]()
    RESULTS[k] = (ok, detail)
    return ok, detail


def format_line(k: int, ok: bool, detail: str) -> str:
    return f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}"


@pytest.mark.parametrize("k", range(1, 11))
def test_criterion(k):
    ok, detail = _run(k)
    print(format_line(k, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for k in CRITERIA:
        ok, detail = _run(k)
        failed += not ok
        print(format_line(k, ok, detail), flush=True)
    sys.exit(1 if failed else 0)
