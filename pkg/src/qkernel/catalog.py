"""Named elements and the identity suite.

Elements are stored exactly as written (unreduced) in the generators of
their presentation; normal forms are computed on demand and cached.
Equitable expressions are first written over the free equitable alphabets
and then pushed into the standard generators through
:func:`equitable_to_standard`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Callable

from .ncalg import NCExpr, anticommutator, commutator, extend_hom, q_anticommutator
from .presentations import get_presentation
from .rewrite import Presentation, check_identity, normal_form
from .scalars import I, PoleAtOne, Scalar, limit_q_to_one, s, substitute, sym


class UnknownElement(KeyError):
    pass


q = s ** 2
a, b, c = sym("a"), sym("b"), sym("c")
s_plus = s + s.inv()        # q^1/2 + q^-1/2
s_minus = s - s.inv()       # q^1/2 - q^-1/2
q_minus = q - q.inv()       # q - q^-1


@dataclass
class NamedElement:
    name: str
    expr: NCExpr
    presentation: str

    @cached_property
    def normal_form(self) -> NCExpr:
        return normal_form(self.expr, get_presentation(self.presentation))


# ---- osp_q(1|2) ----

def _osp_gens():
    p = get_presentation("ospq")
    return p, {g: p.gen(g) for g in p.alphabet}


def _ospq_elements() -> dict[str, NCExpr]:
    p, g = _osp_gens()
    Ap, Am, K, Ki, P = g["A+"], g["A-"], g["K"], g["Kinv"], g["P"]
    S = Ap * Am - (K * s.inv() - Ki * s) / q_minus
    Q = S * P
    ups = Q * q_minus
    out = {
        "A+": Ap, "A-": Am, "K": K, "Kinv": Ki, "P": P,
        "S": S, "Q": Q, "Ups": ups,
        "X": Ki * P - Ap * Ki * P * (1 - q.inv()),
        "Y": K * P,
        "Yinv": Ki * P,
        "Z": Ki * P + Am * P * s_plus,
        "wy": P,
        # generators realizing sl_q(2) at -q
        "kt": K * P,
        "ktinv": Ki * P,
        "Jt+": Ap * ((1 - q.inv()) / s_plus / I),
        "Jt-": Am * P * (s_plus / (1 + q.inv())),
    }
    return out


def equitable_images() -> dict[str, NCExpr]:
    e = _ospq_elements()
    return {"X": e["X"], "Y": e["Y"], "Yinv": e["Yinv"], "Z": e["Z"], "wy": e["wy"]}


def equitable_to_standard(x: NCExpr) -> NCExpr:
    """Push an expression over the equitable letters into the ospq generators."""
    return extend_hom(equitable_images(), x, unit=get_presentation("ospq").one())


def _eq_gens(name: str = "ospq_equitable"):
    p = get_presentation(name)
    return p, {g: p.gen(g) for g in p.alphabet}


def _covariance_equitable() -> dict[str, NCExpr]:
    """A, B, C over the equitable letters, plus the six Upsilon forms."""
    _, g = _eq_gens()
    X, Y, Z = g["X"], g["Y"], g["Z"]
    A = X * a - Y * a.inv() + (X * Y - Y * X) * (b / c / s_plus)
    B = Y * b - Z * b.inv() + (Y * Z - Z * Y) * (c / a / s_plus)
    C = Z * c - X * c.inv() + (Z * X - X * Z) * (a / b / s_plus)
    si = s.inv()
    forms = {
        "Ups1": X * s - Y * si + Z * s - X * Y * Z * s,
        "Ups2": Y * s - Z * si + X * s - Y * Z * X * s,
        "Ups3": Z * s - X * si + Y * s - Z * X * Y * s,
        "Ups4": Y * s - Z * si - X * si + Z * Y * X * si,
        "Ups5": Z * s - X * si - Y * si + X * Z * Y * si,
        "Ups6": X * s - Y * si - Z * si + Y * X * Z * si,
    }
    out = {"Acov": A, "Bcov": B, "Ccov": C, **forms}
    for k, name in enumerate(("Acov", "Bcov", "Ccov"), 1):
        out[f"M{k}"] = out[name] / q_minus
    return out


def inverse_map_equitable() -> dict[str, NCExpr]:
    """Standard generators written in the equitable letters."""
    _, g = _eq_gens()
    X, Y, Yi, Z, wy = g["X"], g["Y"], g["Yinv"], g["Z"], g["wy"]
    return {
        "A+": (1 - X * Y) / (1 - q.inv()),
        "A-": (Z - Yi) * wy / s_plus,
        "K": Y * wy,
        "Kinv": Yi * wy,
        "P": wy,
    }


def _structure_constant(k: int, ups: NCExpr) -> NCExpr:
    d = [a - a.inv(), b - b.inv(), c - c.inv()]
    i, j = [(1, 2), (2, 0), (0, 1)][k]
    # m_k = (q^1/2 + q^-1/2) ((d_i d_j) - d_k Ups) / (q - q^-1)^2
    return (ups.scale(-d[k]) + d[i] * d[j]) * (s_plus / q_minus ** 2)


def _ospq_realization() -> dict[str, NCExpr]:
    base = _ospq_elements()
    cov = {k: equitable_to_standard(v) for k, v in _covariance_equitable().items()}
    ups = base["Ups"]
    m = {f"m{k + 1}": _structure_constant(k, ups) for k in range(3)}
    d = [a - a.inv(), b - b.inv(), c - c.inv()]
    value = (ups * (d[0] * d[1] * d[2] / q_minus ** 2)
             + (d[0] / q_minus) ** 2 + (d[1] / q_minus) ** 2 + (d[2] / q_minus) ** 2
             + ups * ups / q_minus ** 2
             - q / (1 + q) ** 2)
    M1, M2, M3 = cov["M1"], cov["M2"], cov["M3"]
    realized = (M1 * M2 * M3 * (s.inv() - s ** 3)
                + M1 * M1 * q + M2 * M2 * q.inv() + M3 * M3 * q
                - m["m1"] * M1 * (1 - q) - m["m2"] * M2 * (1 - q.inv()) - m["m3"] * M3 * (1 - q))
    return {**cov, **m, "LambdaValue": value, "LambdaRealized": realized}


# ---- sl_q(2) ----

def _slq_equitable(name: str) -> dict[str, NCExpr]:
    p = get_presentation(name)
    g = {x: p.gen(x) for x in p.alphabet}
    Jp, Jm, k, ki = g["J+"], g["J-"], g["kappa"], g["kappainv"]
    out = {
        "x": ki - Jp * ki * s_minus,
        "y": k,
        "yinv": ki,
        "z": ki + Jm * (1 - q.inv()),
    }
    return out


# ---- Bannai-Ito ----

def _qbi_casimir() -> NCExpr:
    p = get_presentation("qbi")
    I1, I2, I3 = (p.gen(f"I{k}") for k in (1, 2, 3))
    i1, i2, i3 = (sym(f"iota{k}") for k in (1, 2, 3))
    return (I1 * I2 * I3 * (s.inv() - s ** 3) + I1 * I1 * q + I2 * I2 * q.inv() + I3 * I3 * q
            - I1 * (i1 * (1 - q)) - I2 * (i2 * (1 - q.inv())) - I3 * (i3 * (1 - q)))


def _bi_casimir() -> NCExpr:
    p = get_presentation("bi")
    K1, K2, K3 = (p.gen(f"K{k}") for k in (1, 2, 3))
    return K1 * K1 + K2 * K2 + K3 * K3


@lru_cache(maxsize=None)
def _registry() -> dict[str, dict[str, Callable[[], NCExpr]]]:
    """presentation -> element name -> builder."""

    def lazy(builder, key):
        return lambda: builder()[key]

    osp_base = lru_cache(maxsize=None)(_ospq_elements)
    osp_real = lru_cache(maxsize=None)(_ospq_realization)
    cov_eq = lru_cache(maxsize=None)(_covariance_equitable)
    reg: dict[str, dict[str, Callable[[], NCExpr]]] = {}
    ospq = {}
    for k in ("S", "Q", "Ups", "X", "Y", "Yinv", "Z", "wy", "kt", "ktinv", "Jt+", "Jt-"):
        ospq[k] = lazy(osp_base, k)
    for k in ("Acov", "Bcov", "Ccov", "M1", "M2", "M3", "m1", "m2", "m3",
              "LambdaValue", "LambdaRealized", "Ups1", "Ups2", "Ups3", "Ups4", "Ups5", "Ups6"):
        ospq[k] = lazy(osp_real, k)
    reg["ospq"] = ospq
    reg["ospq_equitable"] = {k: lazy(cov_eq, k) for k in
                             ("Acov", "Bcov", "Ccov", "M1", "M2", "M3",
                              "Ups1", "Ups2", "Ups3", "Ups4", "Ups5", "Ups6")}
    slq = lru_cache(maxsize=None)(lambda: _slq_equitable("slq"))
    slqw = lru_cache(maxsize=None)(lambda: _slq_equitable("slq_omega"))
    reg["slq"] = {k: lazy(slq, k) for k in ("x", "y", "yinv", "z")}
    reg["slq_omega"] = {k: lazy(slqw, k) for k in ("x", "y", "yinv", "z")}
    reg["qbi"] = {"Lambda": lru_cache(maxsize=None)(_qbi_casimir)}
    reg["bi"] = {"L": lru_cache(maxsize=None)(_bi_casimir)}
    reg["slq_equitable"] = {}
    return reg


def element_resolvers(presentation: str) -> dict[str, Callable[[], NCExpr]]:
    return _registry().get(presentation, {})


_DEFAULT_HOME = ("ospq", "slq", "qbi", "bi", "ospq_equitable", "slq_omega")


@lru_cache(maxsize=None)
def element(name: str, presentation: str | None = None) -> NamedElement:
    """Look up a named element; without a presentation the first home wins."""
    homes = (presentation,) if presentation else _DEFAULT_HOME
    for home in homes:
        builders = element_resolvers(home)
        if name in builders:
            return NamedElement(name, builders[name](), home)
    raise UnknownElement(f"unknown element {name!r}")


# ---- identity records ----

@dataclass(frozen=True)
class IdentityRecord:
    id: str
    lhs: NCExpr
    rhs: NCExpr
    presentation: str
    anchor: str

    def check(self):
        return check_identity(self.lhs, self.rhs, get_presentation(self.presentation))


@dataclass
class _Builder:
    records: list[IdentityRecord] = field(default_factory=list)

    def add(self, id, lhs, rhs, presentation, anchor):
        if isinstance(rhs, (int, Scalar)):
            rhs = NCExpr.scalar(lhs.alphabet, rhs)
        self.records.append(IdentityRecord(id, lhs, rhs, presentation, anchor))


def q_to_minus_q(x: NCExpr, rename: dict[str, str] | None = None,
                 target: Presentation | None = None) -> NCExpr:
    """Coefficient map s -> i*s (q -> -q) followed by a generator renaming."""
    mapped = x.map_coefficients(lambda v: substitute(v, {"s": I * s}))
    if rename is None:
        return mapped
    if target is None:
        raise ValueError("a target presentation is required with a renaming")
    return mapped.rename(rename, target.alphabet)


SLQ_TO_OSPQ_EQUITABLE = {"x": "X", "y": "Y", "yinv": "Yinv", "z": "Z"}


def equitable_su_relations() -> dict[str, NCExpr]:
    """The three sl_q(2) equitable relations over the free letters, as lhs - rhs."""
    _, g = _eq_gens("slq_equitable")
    x, y, z = g["x"], g["y"], g["z"]
    out = {}
    for key, (u, v) in {"xy": (x, y), "yz": (y, z), "zx": (z, x)}.items():
        out[key] = (u * v * s - v * u * s.inv()) / s_minus - 1
    return out


def equitable_osp_relations() -> dict[str, NCExpr]:
    """The three osp_q(1|2) equitable relations over the free letters, as lhs - rhs."""
    _, g = _eq_gens()
    X, Y, Z = g["X"], g["Y"], g["Z"]
    out = {}
    for key, (u, v) in {"XY": (X, Y), "YZ": (Y, Z), "ZX": (Z, X)}.items():
        out[key] = (u * v * s + v * u * s.inv()) / s_plus - 1
    return out


def _add_identities(B: _Builder):
    base = _ospq_elements()
    real = _ospq_realization()
    p = get_presentation("ospq")
    S, Q, ups = base["S"], base["Q"], base["Ups"]
    zero = NCExpr.zero(p.alphabet)
    one = p.one()

    # (a) sCasimir
    for g in ("A+", "A-"):
        B.add(f"scasimir.anticomm.{g}", anticommutator(S, p.gen(g)), zero, "ospq",
              f"sCasimir anticommutes with {g}")
    for g in ("K", "Kinv", "P"):
        B.add(f"scasimir.comm.{g}", commutator(S, p.gen(g)), zero, "ospq",
              f"sCasimir commutes with the even generator {g}")
    # (b) Casimir centrality
    for g in p.alphabet:
        B.add(f"casimir.central.{g}", commutator(Q, p.gen(g)), zero, "ospq",
              f"Casimir Q = S P commutes with {g}")
    # (c) equitable relations
    for key, rel in equitable_osp_relations().items():
        B.add(f"equitable.rel1.{key}", equitable_to_standard(rel), zero, "ospq",
              f"equitable q-anticommutator relation for the pair {key}")
    # (d) relations with the involution
    _, e = _eq_gens()
    X, Y, Yi, Z, wy = e["X"], e["Y"], e["Yinv"], e["Z"], e["wy"]
    inv_rel = {
        "X": (anticommutator(X, wy), Yi * wy * 2),
        "Y": (anticommutator(Y, wy), Y * wy * 2),
        "Z": (anticommutator(Z, wy), Yi * wy * 2),
        "YYinv": (Y * Yi, NCExpr.one(X.alphabet)),
        "YinvY": (Yi * Y, NCExpr.one(X.alphabet)),
        "wy2": (wy * wy, NCExpr.one(X.alphabet)),
    }
    for key, (lhs, rhs) in inv_rel.items():
        B.add(f"equitable.rel2.{key}", equitable_to_standard(lhs), equitable_to_standard(rhs),
              "ospq", f"equitable relation with the involution ({key})")
    # (e) inverse map
    for g, expr in inverse_map_equitable().items():
        B.add(f"equitable.inverse.{g}", equitable_to_standard(expr), p.gen(g), "ospq",
              f"standard generator {g} recovered from the equitable generators")
    # (f) Upsilon forms
    B.add("upsilon.definition", ups, Q * q_minus, "ospq", "normalized Casimir Ups = (q - q^-1) Q")
    for k in range(1, 7):
        B.add(f"upsilon.form{k}", real[f"Ups{k}"], ups, "ospq",
              f"expression number {k} of the normalized Casimir in equitable generators")
    # (h) tilde generators: sl_q(2) at -q inside ospq
    kt, kti, Jp, Jm = base["kt"], base["ktinv"], base["Jt+"], base["Jt-"]
    B.add("tilde.kk_inv", kt * kti, one, "ospq", "tilde kappa times its inverse")
    B.add("tilde.kinv_k", kti * kt, one, "ospq", "inverse tilde kappa times tilde kappa")
    B.add("tilde.kJ+", kt * Jp * kti, Jp * (-q), "ospq", "tilde kappa conjugates tilde J+ by -q")
    B.add("tilde.kJ-", kt * Jm * kti, Jm * (-q.inv()), "ospq",
          "tilde kappa conjugates tilde J- by -1/q")
    B.add("tilde.comm", commutator(Jp, Jm), (kt - kti) / (I * s_plus), "ospq",
          "tilde J+, J- commutator at -q")
    # (i) covariance relations
    A, Bc, C = real["Acov"], real["Bcov"], real["Ccov"]
    d = {"a": a - a.inv(), "b": b - b.inv(), "c": c - c.inv()}
    cyc = [("AB", A, Bc, C, "a", "b", "c"), ("BC", Bc, C, A, "b", "c", "a"),
           ("CA", C, A, Bc, "c", "a", "b")]
    for key, U, V, W, x1, x2, x3 in cyc:
        lhs = q_anticommutator(U, V) / q_minus
        rhs = W + (ups.scale(-d[x3]) + d[x1] * d[x2]) / s_minus
        B.add(f"qbi_cov.{key}", lhs, rhs, "ospq",
              f"covariance operators: q-anticommutator {key}")
    # (j) normalized generators
    M = [real["M1"], real["M2"], real["M3"]]
    m = [real["m1"], real["m2"], real["m3"]]
    for (i, j, k) in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        B.add(f"qbi_norm.M{i + 1}M{j + 1}", q_anticommutator(M[i], M[j]), M[k] + m[k], "ospq",
              f"normalized covariance generators satisfy the q-deformed relation {{M{i + 1},M{j + 1}}}_q")
    # (k) Casimir value
    B.add("qbi_cas.value", real["LambdaRealized"], real["LambdaValue"], "ospq",
          "q-Bannai-Ito Casimir takes a definite value in the realization")
    B.add("qbi_cas.value_central", commutator(real["LambdaValue"], p.gen("A+")), zero, "ospq",
          "the Casimir value commutes with A+")
    # (g) sl_q(2) equitable relations
    slq = get_presentation("slq")
    sl = _slq_equitable("slq")
    images = {"x": sl["x"], "y": sl["y"], "yinv": sl["yinv"], "z": sl["z"]}
    for key, rel in equitable_su_relations().items():
        B.add(f"slq.equitable.{key}", extend_hom(images, rel, unit=slq.one()),
              NCExpr.zero(slq.alphabet), "slq", f"sl_q(2) equitable relation for the pair {key}")
    # q -> -q, term for term over the free letters
    target = get_presentation("ospq_equitable")
    su = equitable_su_relations()
    osp = equitable_osp_relations()
    for (ks, rel), ko in zip(su.items(), osp):
        B.add(f"qminusq.{ks}", q_to_minus_q(rel, SLQ_TO_OSPQ_EQUITABLE, target), osp[ko],
              "ospq_equitable", f"q -> -q maps the sl_q(2) relation {ks} onto the osp relation {ko}")
    # (l) centrality in abstract algebras
    for name, pres, elt in (("Lambda", "qbi", _qbi_casimir()), ("L", "bi", _bi_casimir())):
        pp = get_presentation(pres)
        for g in pp.alphabet:
            B.add(f"centrality.{pres}.{name}.{g}", commutator(elt, pp.gen(g)),
                  NCExpr.zero(pp.alphabet), pres, f"Casimir {name} of {pres} commutes with {g}")
    # (m) involution adjoined to sl_q(2)
    pw = get_presentation("slq_omega")
    sw = _slq_equitable("slq_omega")
    x, y, yi, z, om = sw["x"], sw["y"], sw["yinv"], sw["z"], pw.gen("wy")
    for key, (lhs, rhs) in {
        "x": (anticommutator(x, om), yi * om * 2),
        "y": (anticommutator(y, om), y * om * 2),
        "z": (anticommutator(z, om), yi * om * 2),
        "yyinv": (y * yi, pw.one()),
        "wy2": (om * om, pw.one()),
    }.items():
        B.add(f"slq_omega.rel2.{key}", lhs, rhs, "slq_omega",
              f"sl_q(2) with adjoined involution: relation ({key})")


@lru_cache(maxsize=None)
def _suite() -> tuple[IdentityRecord, ...]:
    B = _Builder()
    _add_identities(B)
    ids = [r.id for r in B.records]
    assert len(ids) == len(set(ids)), "duplicate record ids"
    return tuple(sorted(B.records, key=lambda r: r.id))


def suite() -> list[IdentityRecord]:
    return list(_suite())


# ---- q -> 1 limits ----

@dataclass(frozen=True)
class LimitEntry:
    label: str
    status: str          # "zero", "nonzero", "finite", "pole"
    detail: str = ""


@dataclass(frozen=True)
class LimitReport:
    family: str
    entries: tuple[LimitEntry, ...]

    @property
    def passed(self) -> bool:
        if self.family == "structure_constants":
            return any(e.status == "pole" and e.label.startswith("inverse.A+") for e in self.entries)
        return all(e.status == "zero" for e in self.entries)


def limit_expr(x: NCExpr, rename: dict[str, str] | None = None, target=None,
               bindings: dict[str, Scalar] | None = None) -> NCExpr:
    """Coefficientwise q -> 1 limit, optionally renaming generators and constants."""
    def coeff(v: Scalar) -> Scalar:
        if bindings:
            v = substitute(v, bindings)
        return limit_q_to_one(v)
    out = x.map_coefficients(coeff)
    if rename is not None:
        out = out.rename(rename, target.alphabet)
    return out


def q_limit_check(family: str) -> LimitReport:
    from .dsl import format_expr
    qbi, bi = get_presentation("qbi"), get_presentation("bi")
    rename = {"I1": "K1", "I2": "K2", "I3": "K3"}
    consts = {f"iota{k}": sym(f"alpha{k}") for k in (1, 2, 3)}
    entries = []
    if family == "qbi_relations":
        gens = [qbi.gen(f"I{k}") for k in (1, 2, 3)]
        K = [bi.gen(f"K{k}") for k in (1, 2, 3)]
        for (i, j, k) in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
            deformed = q_anticommutator(gens[i], gens[j]) - gens[k] - sym(f"iota{k + 1}")
            classical = anticommutator(K[i], K[j]) - K[k] - sym(f"alpha{k + 1}")
            residual = limit_expr(deformed, rename, bi, consts) - classical
            entries.append(LimitEntry(f"I{i + 1}I{j + 1}", "zero" if residual.is_zero() else "nonzero",
                                      format_expr(residual)))
    elif family == "qbi_casimir":
        residual = limit_expr(_qbi_casimir(), rename, bi, consts) - _bi_casimir()
        entries.append(LimitEntry("Lambda", "zero" if residual.is_zero() else "nonzero",
                                  format_expr(residual)))
    elif family == "structure_constants":
        sources = {f"inverse.{k}": v for k, v in inverse_map_equitable().items()}
        cov = _covariance_equitable()
        for k in ("X", "Y", "Yinv", "Z"):
            sources[f"equitable.{k}"] = _ospq_elements()[k]
        for k in ("Acov", "Bcov", "Ccov", "M1", "M2", "M3"):
            sources[f"realization.{k}"] = cov[k]
        ups = _ospq_elements()["Ups"]
        for k in range(3):
            sources[f"structure.m{k + 1}"] = _structure_constant(k, ups)
        for label, expr in sources.items():
            for word, coeff in expr.sorted_items():
                tag = f"{label}[{'*'.join(word) or '1'}]"
                try:
                    limit_q_to_one(coeff)
                    entries.append(LimitEntry(tag, "finite", str(coeff)))
                except PoleAtOne:
                    entries.append(LimitEntry(tag, "pole", str(coeff)))
    else:
        raise ValueError(f"unknown limit family {family!r}")
    return LimitReport(family, tuple(entries))

