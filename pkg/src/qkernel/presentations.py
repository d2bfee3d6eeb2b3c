"""Bundled presentations.

``ospq``      osp_q(1|2) with grade involution, PBW order A+ < A- < K < Kinv < P
``slq``       sl_q(2), PBW order J+ < J- < kappa < kappainv
``slq_omega`` sl_q(2) with an adjoined involution wy anticommuting with J+-
``qbi``       q-deformed Bannai-Ito algebra with central constants iota1..3
``bi``        Bannai-Ito algebra with central constants alpha1..3
``ospq_equitable`` / ``slq_equitable``  free algebras on the equitable letters
"""
from __future__ import annotations

from functools import lru_cache
from pathlib import Path

from .rewrite import Presentation, build_presentation
from .scalars import s, sym


class UnknownPresentation(KeyError):
    pass


def _cartan_rules(E, F, k, kinv, extra=()):
    """Cartan-type rules shared by osp_q(1|2) and sl_q(2)."""
    q = s ** 2
    return [
        ((k, E), lambda g: g[E] * g[k] * q),
        ((k, F), lambda g: g[F] * g[k] * q.inv()),
        ((kinv, E), lambda g: g[E] * g[kinv] * q.inv()),
        ((kinv, F), lambda g: g[F] * g[kinv] * q),
        ((k, kinv), 1),
        ((kinv, k), 1),
        *extra,
    ]


def _ospq() -> Presentation:
    c = (s - s.inv()).inv()
    rules = [
        (("A-", "A+"), lambda g: -g["A+"] * g["A-"] + (g["K"] - g["Kinv"]) * c),
        *_cartan_rules("A+", "A-", "K", "Kinv"),
        (("P", "A+"), lambda g: -g["A+"] * g["P"]),
        (("P", "A-"), lambda g: -g["A-"] * g["P"]),
        (("P", "K"), lambda g: g["K"] * g["P"]),
        (("P", "Kinv"), lambda g: g["Kinv"] * g["P"]),
        (("P", "P"), 1),
    ]
    return build_presentation("ospq", ["A+", "A-", "K", "Kinv", "P"], rules, {"K": "Kinv"})


def _slq(with_involution: bool = False) -> Presentation:
    c = (s - s.inv()).inv()
    rules = [
        (("J-", "J+"), lambda g: g["J+"] * g["J-"] - (g["kappa"] - g["kappainv"]) * c),
        *_cartan_rules("J+", "J-", "kappa", "kappainv"),
    ]
    letters = ["J+", "J-", "kappa", "kappainv"]
    name = "slq"
    if with_involution:
        letters.append("wy")
        name = "slq_omega"
        rules += [
            (("wy", "J+"), lambda g: -g["J+"] * g["wy"]),
            (("wy", "J-"), lambda g: -g["J-"] * g["wy"]),
            (("wy", "kappa"), lambda g: g["kappa"] * g["wy"]),
            (("wy", "kappainv"), lambda g: g["kappainv"] * g["wy"]),
            (("wy", "wy"), 1),
        ]
    return build_presentation(name, letters, rules, {"kappa": "kappainv"})


def _bannai_ito(deformed: bool) -> Presentation:
    if deformed:
        name, L, const = "qbi", ["I1", "I2", "I3"], "iota"
        up, down = s, s.inv()
    else:
        name, L, const = "bi", ["K1", "K2", "K3"], "alpha"
        up = down = s ** 0
    k = [sym(f"{const}{j}") for j in (1, 2, 3)]
    g1, g2, g3 = L
    # {x, y}_q = z + const  =>  yx = up*(z + const) - up^2 * xy, oriented to PBW order
    rules = [
        ((g2, g1), lambda g: (g[g3] + k[2]) * up - g[g1] * g[g2] * up ** 2),
        ((g3, g2), lambda g: (g[g1] + k[0]) * up - g[g2] * g[g3] * up ** 2),
        ((g3, g1), lambda g: (g[g2] + k[1]) * down - g[g1] * g[g3] * down ** 2),
    ]
    return build_presentation(name, L, rules)


def _free(name: str, letters, inverses=None) -> Presentation:
    return build_presentation(name, letters, [], inverses)


_BUILDERS = {
    "ospq": _ospq,
    "slq": _slq,
    "slq_omega": lambda: _slq(with_involution=True),
    "qbi": lambda: _bannai_ito(True),
    "bi": lambda: _bannai_ito(False),
    "ospq_equitable": lambda: _free("ospq_equitable", ["X", "Y", "Yinv", "Z", "wy"], {"Y": "Yinv"}),
    "slq_equitable": lambda: _free("slq_equitable", ["x", "y", "yinv", "z"], {"y": "yinv"}),
}

NAMES = tuple(_BUILDERS)


@lru_cache(maxsize=None)
def get_presentation(name: str) -> Presentation:
    """Look up a bundled presentation by name, or load one from a file path."""
    if name in _BUILDERS:
        return _BUILDERS[name]()
    path = Path(name)
    if path.suffix and path.is_file():
        return Presentation.from_text(path.read_text())
    raise UnknownPresentation(f"unknown presentation {name!r}")


def corrupted_ospq() -> Presentation:
    """ospq with K A- -> q A- K (wrong power); a negative-control fixture."""
    good = get_presentation("ospq")
    rules = []
    for rule in good.rules:
        if rule.lhs == ("K", "A-"):
            rule = type(rule)(rule.lhs, rule.rhs.scale(s ** 4))
        rules.append(rule)
    return Presentation("ospq_corrupted", good.alphabet, tuple(rules), good.inverses)
