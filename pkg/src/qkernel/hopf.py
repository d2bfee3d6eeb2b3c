"""Coproduct, counit and antipode of osp_q(1|2), and the Hopf axiom checks.

Tensor products multiply slot by slot with no sign rule; the grade
involution P carries the parity information instead.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from .catalog import element
from .ncalg import NCExpr, TensorExpr, Word, extend_antihom, extend_hom, tensor
from .presentations import get_presentation
from .rewrite import normal_form, tensor_normal_form
from .scalars import ONE, ZERO, Scalar


@dataclass(frozen=True)
class HopfData:
    coproduct_images: dict[str, TensorExpr]
    counit_images: dict[str, Scalar]
    antipode_images: dict[str, NCExpr]


@lru_cache(maxsize=None)
def hopf_data() -> HopfData:
    p = get_presentation("ospq")
    g = {x: p.gen(x) for x in p.alphabet}
    one = p.one()
    Ap, Am, K, Ki, P = g["A+"], g["A-"], g["K"], g["Kinv"], g["P"]
    delta = {
        "A+": tensor(Ap, K * P) + tensor(one, Ap),
        "A-": tensor(Am, P) + tensor(Ki, Am),
        "K": tensor(K, K),
        "Kinv": tensor(Ki, Ki),
        "P": tensor(P, P),
    }
    eps = {"A+": ZERO, "A-": ZERO, "K": ONE, "Kinv": ONE, "P": ONE}
    sigma = {
        "A+": -(Ap * Ki * P),
        "A-": -(K * Am * P),
        "K": Ki,
        "Kinv": K,
        "P": P,
    }
    return HopfData(delta, eps, sigma)


def _ospq():
    return get_presentation("ospq")


def coproduct(x: NCExpr) -> TensorExpr:
    return extend_hom(hopf_data().coproduct_images, x, unit=TensorExpr.one(_ospq().alphabet, 2))


def counit(x: NCExpr) -> Scalar:
    return extend_hom(hopf_data().counit_images, x, unit=ONE)


def antipode(x: NCExpr) -> NCExpr:
    return extend_antihom(hopf_data().antipode_images, x, unit=_ospq().one())


def counit_via_normal_form(x: NCExpr) -> Scalar:
    """Independent route: reduce, then keep words free of A+- with K, Kinv, P -> 1."""
    total = ZERO
    for word, c in normal_form(x, _ospq()).items():
        if "A+" not in word and "A-" not in word:
            total = total + c
    return total


def apply_to_slot(t: TensorExpr, slot: int, f: Callable[[Word], object]) -> TensorExpr:
    """Apply ``f`` to one tensor slot.

    ``f`` returns a TensorExpr (slot expands), an NCExpr (slot replaced) or a
    Scalar (slot removed).
    """
    alphabet = t.alphabet
    out = None
    arity = None
    for key, c in t.items():
        img = f(key[slot])
        before, after = key[:slot], key[slot + 1:]
        if isinstance(img, TensorExpr):
            parts = {before + k + after: c * v for k, v in img.items()}
            arity = t.arity + img.arity - 1
        elif isinstance(img, NCExpr):
            parts = {before + (w,) + after: c * v for w, v in img.items()}
            arity = t.arity
        else:
            parts = {before + after: c * img}
            arity = t.arity - 1
        piece = TensorExpr(alphabet, arity, parts)
        out = piece if out is None else out + piece
    if out is None:
        return TensorExpr.zero(alphabet, t.arity)
    return out


def multiply_slots(t: TensorExpr) -> NCExpr:
    """m: a (x) b -> ab."""
    alphabet = t.alphabet
    terms: dict[Word, Scalar] = {}
    for key, c in t.items():
        w = tuple(g for part in key for g in part)
        terms[w] = terms[w] + c if w in terms else c
    return NCExpr(alphabet, terms)


def _word_expr(w: Word) -> NCExpr:
    return NCExpr.word(_ospq().alphabet, w)


@dataclass(frozen=True)
class AxiomResult:
    id: str
    holds: bool
    residual: str = ""


def _tensor_residual(t: TensorExpr) -> tuple[bool, str]:
    from .dsl import format_tensor
    r = tensor_normal_form(t, _ospq())
    return r.is_zero(), "" if r.is_zero() else format_tensor(r)


def _expr_residual(x: NCExpr) -> tuple[bool, str]:
    from .dsl import format_expr
    r = normal_form(x, _ospq())
    return r.is_zero(), "" if r.is_zero() else format_expr(r)


def displayed_relations() -> dict[str, NCExpr]:
    """Defining relations of osp_q(1|2) in displayed form, as lhs - rhs."""
    p = _ospq()
    g = {x: p.gen(x) for x in p.alphabet}
    Ap, Am, K, Ki, P = g["A+"], g["A-"], g["K"], g["Kinv"], g["P"]
    q, s = Scalar.symbol("q"), Scalar.symbol("s")
    return {
        "KA+Kinv": K * Ap * Ki - Ap * q,
        "KA-Kinv": K * Am * Ki - Am * q.inv(),
        "KKinv": K * Ki - 1,
        "KinvK": Ki * K - 1,
        "P2": P * P - 1,
        "KP": K * P - P * K,
        "KinvP": Ki * P - P * Ki,
        "A+P": Ap * P + P * Ap,
        "A-P": Am * P + P * Am,
        "A+A-": Ap * Am + Am * Ap - (K - Ki) / (s - s.inv()),
    }


def check_hopf_axioms() -> list[AxiomResult]:
    p = _ospq()
    out: list[AxiomResult] = []
    rels = {f"rule.{'*'.join(r.lhs)}": r.relation() for r in p.rules}
    rels.update({f"display.{k}": v for k, v in displayed_relations().items()})
    # (1) coproduct and (5) counit respect the relations
    for key, rel in rels.items():
        ok, res = _tensor_residual(coproduct(rel))
        out.append(AxiomResult(f"hopf.coproduct_hom.{key}", ok, res))
        val = counit(rel)
        out.append(AxiomResult(f"hopf.counit_hom.{key}", val.is_zero(), "" if val.is_zero() else str(val)))
    for g in p.alphabet:
        x = p.gen(g)
        d = coproduct(x)
        # (2) coassociativity
        left = apply_to_slot(d, 0, lambda w: coproduct(_word_expr(w)))
        right = apply_to_slot(d, 1, lambda w: coproduct(_word_expr(w)))
        ok, res = _tensor_residual(left - right)
        out.append(AxiomResult(f"hopf.coassoc.{g}", ok, res))
        # (3) counit
        for side, slot in (("left", 0), ("right", 1)):
            contracted = apply_to_slot(d, slot, lambda w: counit(_word_expr(w)))
            ok, res = _tensor_expr_minus(contracted, x)
            out.append(AxiomResult(f"hopf.counit.{side}.{g}", ok, res))
        # (4) antipode
        eps_one = p.one().scale(counit(x))
        for side, slot in (("left", 0), ("right", 1)):
            applied = apply_to_slot(d, slot, lambda w: antipode(_word_expr(w)))
            ok, res = _expr_residual(multiply_slots(applied) - eps_one)
            out.append(AxiomResult(f"hopf.antipode.{side}.{g}", ok, res))
    # equitable coproduct formulas
    for key, (lhs, rhs) in equitable_coproducts().items():
        ok, res = _tensor_residual(lhs - rhs)
        out.append(AxiomResult(f"hopf.equitable.{key}", ok, res))
    return out


def _tensor_expr_minus(t: TensorExpr, x: NCExpr) -> tuple[bool, str]:
    # arity-1 tensors are plain elements
    as_expr = NCExpr(x.alphabet, {k[0]: c for k, c in t.items()})
    return _expr_residual(as_expr - x)


def equitable_coproducts() -> dict[str, tuple[TensorExpr, TensorExpr]]:
    """Coproduct of each equitable generator against its displayed formula."""
    one = _ospq().one()
    X, Y, Yi, Z, wy = (element(k, "ospq").expr for k in ("X", "Y", "Yinv", "Z", "wy"))
    return {
        "X": (coproduct(X), tensor(X, one) + tensor(Yi, X - 1)),
        "Z": (coproduct(Z), tensor(Z, one) + tensor(Yi, Z - 1)),
        "Y": (coproduct(Y), tensor(Y, Y)),
        "wy": (coproduct(wy), tensor(wy, wy)),
    }
