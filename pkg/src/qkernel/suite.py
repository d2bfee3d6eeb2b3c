"""Suite runner: every identity, axiom, representation, confluence and limit check
as one flat list of records with a JSON report."""
from __future__ import annotations

import fnmatch
import json
import time
from dataclasses import asdict, dataclass
from functools import lru_cache
from pathlib import Path
from typing import Callable

from .catalog import equitable_to_standard, element, q_limit_check, suite as identity_records
from .dsl import format_expr
from .presentations import corrupted_ospq, get_presentation
from .rewrite import is_central, local_confluence_report

SCHEMA = 1
Outcome = tuple[bool, str]


@dataclass(frozen=True)
class SuiteItem:
    id: str
    anchor: str
    run: Callable[[], Outcome]


@dataclass(frozen=True)
class RecordResult:
    id: str
    anchor: str
    status: str          # pass, fail or error
    residual: str
    wall_time: float


@dataclass(frozen=True)
class SuiteReport:
    records: tuple[RecordResult, ...]

    @property
    def passed(self) -> bool:
        return all(r.status == "pass" for r in self.records)

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def counts(self) -> dict[str, int]:
        out = {"pass": 0, "fail": 0, "error": 0}
        for r in self.records:
            out[r.status] += 1
        return out

    def to_dict(self, timings: bool = True) -> dict:
        rows = []
        for r in self.records:
            row = asdict(r)
            if not timings:
                row.pop("wall_time")
            rows.append(row)
        return {"schema": SCHEMA, "counts": self.counts(), "records": rows}

    def to_json(self, timings: bool = True) -> str:
        return json.dumps(self.to_dict(timings), indent=2, sort_keys=True) + "\n"


# ---- item builders ----

def _identity_items() -> list[SuiteItem]:
    def run(rec):
        def go():
            res = rec.check()
            return res.holds, "" if res.holds else format_expr(res.residual)
        return go
    return [SuiteItem(r.id, r.anchor, run(r)) for r in identity_records()]


@lru_cache(maxsize=None)
def _hopf_results():
    from .hopf import check_hopf_axioms
    return {r.id: r for r in check_hopf_axioms()}


def _hopf_items() -> list[SuiteItem]:
    ids = sorted(_hopf_results())

    def run(i):
        def go():
            r = _hopf_results()[i]
            return r.holds, r.residual
        return go
    return [SuiteItem(i, "Hopf structure of osp_q(1|2)", run(i)) for i in ids]


def _bridge_items() -> list[SuiteItem]:
    from .reps import annihilates
    items = []
    for rec in identity_records():
        if rec.presentation not in ("ospq", "ospq_equitable"):
            continue

        def go(rec=rec):
            x = rec.lhs - rec.rhs
            if rec.presentation == "ospq_equitable":
                x = equitable_to_standard(x)
            failures = annihilates(x)
            return not failures, "; ".join(failures)
        items.append(SuiteItem(f"bridge.{rec.id}", f"{rec.anchor}; acts as zero on W and its truncations", go))
    return items


def _rep_items() -> list[SuiteItem]:
    from .reps import check_rep, finite_matrix, finite_weight, rho
    from .scalars import q_bracket, substitute

    def rep(kind, **kw):
        def go():
            r = check_rep(kind, **kw)
            return r.passed, "; ".join(r.details)
        return go

    def truncation(N):
        def go():
            v = substitute(rho(N + 1), {"w": finite_weight(N)})
            return v.is_zero(), "" if v.is_zero() else str(v)
        return go

    def finite_casimir(N):
        def go():
            Q = element("Q", "ospq").expr
            bad = []
            for e in (1, -1):
                value = q_bracket(finite_weight(N)) * (-e)
                if not finite_matrix(Q, N, e).is_scalar(value):
                    bad.append(f"e={e}")
            return not bad, ", ".join(bad)
        return go

    def nilpotent(N):
        def go():
            Ap = get_presentation("ospq").gen("A+")
            bad = []
            for e in (1, -1):
                if finite_matrix(Ap ** N, N, e).is_zero() or not finite_matrix(Ap ** (N + 1), N, e).is_zero():
                    bad.append(f"e={e}")
            return not bad, ", ".join(bad)
        return go

    anchor_w = "representations W(e, nu)"
    anchor_f = "finite-dimensional truncations at nu = -(N+1)/2"
    items = [
        SuiteItem("rep.W_relations", anchor_w, rep("W_relations")),
        SuiteItem("rep.W_equitable", "equitable generators on W(e, nu)", rep("W_equitable")),
        SuiteItem("rep.W_casimir", "Casimir eigenvalue on W(e, nu)", rep("W_casimir")),
        SuiteItem("rep.bargmann_consistency", "Bargmann realization", rep("bargmann_consistency")),
    ]
    for N in (2, 4):
        items.append(SuiteItem(f"rep.finite_irreducibility.N{N}", anchor_f,
                               rep("finite_irreducibility", N=N)))
        items.append(SuiteItem(f"rep.finite_casimir.N{N}", anchor_f, finite_casimir(N)))
        items.append(SuiteItem(f"rep.nilpotent.N{N}", anchor_f, nilpotent(N)))
    for N in (2, 4, 6, 8):
        items.append(SuiteItem(f"rep.truncation.N{N}", anchor_f, truncation(N)))
    return items


def _oracle_items() -> list[SuiteItem]:
    def go():
        from .oracle import cross_check
        bad = [c.index for c in cross_check() if not c.agrees]
        return not bad, "" if not bad else f"disagreements at {bad}"
    return [SuiteItem("oracle.cross_check", "normal forms against matrix images (N=4, s=2)", go)]


def _confluence_outcome(p) -> Outcome:
    bad = [cp for cp in local_confluence_report(p) if not cp.joinable]
    if not bad:
        return True, ""
    cp = bad[0]
    return False, (f"{len(bad)} non-joinable overlap(s); first {'*'.join(cp.overlap)}: "
                   f"{format_expr(cp.branch1 - cp.branch2)}")


def _confluence_items() -> list[SuiteItem]:
    names = ("ospq", "slq", "qbi", "bi", "slq_omega")
    return [SuiteItem(f"confluence.{n}", f"local confluence of the {n} rewrite rules",
                      lambda n=n: _confluence_outcome(get_presentation(n))) for n in names]


def _limit_items() -> list[SuiteItem]:
    def go(family):
        r = q_limit_check(family)
        if family == "structure_constants":
            poles = [e.label for e in r.entries if e.status == "pole"]
            return r.passed, "" if r.passed else f"poles: {poles}"
        bad = [f"{e.label}: {e.detail}" for e in r.entries if e.status != "zero"]
        return r.passed, "; ".join(bad)
    anchors = {
        "qbi_relations": "q -> 1 limit of the q-deformed Bannai-Ito relations",
        "qbi_casimir": "q -> 1 limit of the q-deformed Bannai-Ito Casimir",
        "structure_constants": "q -> 1 singularity of the equitable realization",
    }
    return [SuiteItem(f"limits.{f}", a, lambda f=f: go(f)) for f, a in anchors.items()]


def _centrality_items() -> list[SuiteItem]:
    def central(name, pres, expect=True):
        def go():
            p = get_presentation(pres)
            x = element(name, pres).expr if name in ("Q", "Lambda", "L") else p.gen(name)
            got = is_central(x, p)
            return got == expect, "" if got == expect else f"is_central returned {got}"
        return go
    return [
        SuiteItem("central.ospq.Q", "Casimir of osp_q(1|2)", central("Q", "ospq")),
        SuiteItem("central.qbi.Lambda", "Casimir of the q-deformed Bannai-Ito algebra", central("Lambda", "qbi")),
        SuiteItem("central.bi.L", "Casimir of the Bannai-Ito algebra", central("L", "bi")),
        SuiteItem("central.ospq.A+.negative", "A+ is not central", central("A+", "ospq", expect=False)),
    ]


def corrupted_fixture_item() -> SuiteItem:
    """Negative control: a deliberately wrong rule must be caught."""
    return SuiteItem("fixture.corrupted_ospq.confluence", "negative control with a wrong K*A- rule",
                     lambda: _confluence_outcome(corrupted_ospq()))


def all_items(inject_corrupted: bool = False) -> list[SuiteItem]:
    items = (_identity_items() + _hopf_items() + _bridge_items() + _rep_items()
             + _oracle_items() + _confluence_items() + _limit_items() + _centrality_items())
    if inject_corrupted:
        items.append(corrupted_fixture_item())
    ids = [i.id for i in items]
    assert len(ids) == len(set(ids)), "duplicate suite ids"
    return sorted(items, key=lambda i: i.id)


def run_suite(pattern: str = "*", output: str | Path | None = None,
              inject_corrupted: bool = False) -> SuiteReport:
    results = []
    for item in all_items(inject_corrupted):
        if not fnmatch.fnmatchcase(item.id, pattern):
            continue
        start = time.perf_counter()
        try:
            holds, residual = item.run()
            status = "pass" if holds else "fail"
        except Exception as exc:  # reported, not raised
            status, residual = "error", f"{type(exc).__name__}: {exc}"
        results.append(RecordResult(item.id, item.anchor, status, residual,
                                    round(time.perf_counter() - start, 6)))
    report = SuiteReport(tuple(results))
    if output is not None:
        Path(output).write_text(report.to_json())
    return report
