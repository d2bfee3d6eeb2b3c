"""Representations of osp_q(1|2): the modules W(e, nu), their finite
truncations, and the Bargmann realization on polynomials.

The weight q^nu is the formal symbol ``w``; ``e`` is a concrete sign.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .ncalg import NCExpr, Word
from .presentations import get_presentation
from .scalars import ONE, ZERO, Scalar, q_bracket, s, substitute, w

q = s ** 2


class OddN(ValueError):
    pass


class TruncationError(ArithmeticError):
    pass


def rho(n: int, weight: Scalar = w) -> Scalar:
    """rho_n = [n + nu]_q - (-1)^n [nu]_q with q^nu = ``weight``."""
    sign = 1 if n % 2 == 0 else -1
    return q_bracket(q ** n * weight) - q_bracket(weight) * sign


def finite_weight(N: int) -> Scalar:
    """q^nu at nu = -(N+1)/2."""
    return s ** (-(N + 1))


@dataclass(frozen=True)
class WModule:
    e: int = 1
    weight: Scalar = w
    N: int | None = None      # truncate to f_0..f_N when set

    def __post_init__(self):
        if self.e not in (1, -1):
            raise ValueError("e must be +1 or -1")
        if self.N is not None:
            if self.N % 2:
                raise OddN(f"N must be even, got {self.N}")
            if not rho(self.N + 1, self.weight).is_zero():
                raise TruncationError(f"rho_{self.N + 1} does not vanish; the span of f_0..f_N is not invariant")

    @lru_cache(maxsize=None)
    def step(self, g: str, n: int) -> tuple[int, Scalar] | None:
        """Image of f_n under a generator as (index, coefficient), or None for zero."""
        if g == "K":
            return n, s ** (2 * n + 1) * self.weight
        if g == "Kinv":
            return n, (s ** (2 * n + 1) * self.weight).inv()
        if g == "P":
            return n, Scalar(self.e * (-1) ** n)
        if g == "A+":
            if self.N is not None and n >= self.N:
                return None
            return n + 1, ONE
        if g == "A-":
            if n == 0:
                return None
            r = rho(n, self.weight)
            return (n - 1, r) if not r.is_zero() else None
        raise KeyError(f"{g!r} does not act on W")

    def act_word(self, word: Word, n: int) -> tuple[int, Scalar] | None:
        coeff = ONE
        for g in reversed(word):
            hit = self.step(g, n)
            if hit is None:
                return None
            n, c = hit
            coeff = coeff * c
        return n, coeff

    def act(self, x: NCExpr, v: "RepVector") -> "RepVector":
        out: dict[int, Scalar] = {}
        cache: dict[tuple[Word, int], tuple[int, Scalar] | None] = {}
        for n, vn in v.entries.items():
            for word, c in x.items():
                key = (word, n)
                if key not in cache:
                    cache[key] = self._act_cached(word, n, cache)
                hit = cache[key]
                if hit is None:
                    continue
                m, d = hit
                val = c * d * vn
                out[m] = out[m] + val if m in out else val
        return RepVector(out, self.e)

    def _act_cached(self, word: Word, n: int, cache) -> tuple[int, Scalar] | None:
        # reuse the action of the longest already-computed suffix
        if not word:
            return n, ONE
        key = (word[1:], n)
        if key not in cache:
            cache[key] = self._act_cached(word[1:], n, cache)
        tail = cache[key]
        if tail is None:
            return None
        m, c = tail
        hit = self.step(word[0], m)
        if hit is None:
            return None
        return hit[0], c * hit[1]

    def matrix(self, x: NCExpr, size: int) -> list[list[Scalar]]:
        rows = [[ZERO] * size for _ in range(size)]
        for col in range(size):
            img = self.act(x, basis_vector(col, self.e))
            for row, val in img.entries.items():
                if row >= size:
                    raise TruncationError("action leaves the truncated space")
                rows[row][col] = val
        return rows


@dataclass(frozen=True)
class RepVector:
    entries: Mapping[int, Scalar]
    e: int = 1

    def __post_init__(self):
        object.__setattr__(self, "entries", {n: c for n, c in self.entries.items() if not c.is_zero()})

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other):
        return isinstance(other, RepVector) and self.e == other.e and self.entries == other.entries

    def __sub__(self, other: "RepVector") -> "RepVector":
        out = dict(self.entries)
        for n, c in other.entries.items():
            out[n] = out.get(n, ZERO) - c
        return RepVector(out, self.e)

    def scale(self, c: Scalar) -> "RepVector":
        return RepVector({n: v * c for n, v in self.entries.items()}, self.e)


def basis_vector(n: int, e: int = 1) -> RepVector:
    return RepVector({n: ONE}, e)


def act_W(x: NCExpr, v: RepVector) -> RepVector:
    return WModule(v.e).act(x, v)


@dataclass(frozen=True)
class RepMatrix:
    N: int
    e: int
    entries: tuple[tuple[Scalar, ...], ...]

    @property
    def dim(self) -> int:
        return self.N + 1

    def is_zero(self) -> bool:
        return all(c.is_zero() for row in self.entries for c in row)

    def is_scalar(self, value: Scalar) -> bool:
        return all(c == (value if i == j else ZERO)
                   for i, row in enumerate(self.entries) for j, c in enumerate(row))

    def evaluate(self, s_value: Fraction | int) -> list[list[Fraction]]:
        return [[substitute(c, {"s": s_value}).to_fraction() for c in row] for row in self.entries]

    def __matmul__(self, other: "RepMatrix") -> "RepMatrix":
        n = self.dim
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = ZERO
                for k in range(n):
                    a, b = self.entries[i][k], other.entries[k][j]
                    if not a.is_zero() and not b.is_zero():
                        acc = acc + a * b
                row.append(acc)
            rows.append(tuple(row))
        return RepMatrix(self.N, self.e, tuple(rows))

    def to_json(self, s_value: Fraction | int | None = None) -> str:
        if s_value is None:
            grid = [[str(c) for c in row] for row in self.entries]
        else:
            grid = [[str(v) for v in row] for row in self.evaluate(s_value)]
        payload = {"N": self.N, "e": self.e, "dim": self.dim, "matrix": grid}
        if s_value is not None:
            payload["s"] = str(s_value)
        return json.dumps(payload, indent=2)


def finite_matrix(x: NCExpr, N: int, e: int = 1) -> RepMatrix:
    """Matrix of x on span{f_0..f_N} at nu = -(N+1)/2, with A+ f_N = 0."""
    if N % 2:
        raise OddN(f"N must be even, got {N}")
    module = WModule(e, finite_weight(N), N)
    rows = module.matrix(x, N + 1)
    return RepMatrix(N, e, tuple(tuple(r) for r in rows))


# ---- Bargmann realization ----

@dataclass(frozen=True)
class BargmannPoly:
    coefficients: Mapping[int, Scalar] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "coefficients",
                           {n: c for n, c in self.coefficients.items() if not c.is_zero()})

    @classmethod
    def monomial(cls, n: int) -> "BargmannPoly":
        return cls({n: ONE})

    def __add__(self, other: "BargmannPoly") -> "BargmannPoly":
        out = dict(self.coefficients)
        for n, c in other.coefficients.items():
            out[n] = out.get(n, ZERO) + c
        return BargmannPoly(out)

    def __sub__(self, other: "BargmannPoly") -> "BargmannPoly":
        return self + other.scale(Scalar(-1))

    def scale(self, c: Scalar) -> "BargmannPoly":
        return BargmannPoly({n: v * c for n, v in self.coefficients.items()})

    def is_zero(self) -> bool:
        return not self.coefficients


def _q_shift(p: BargmannPoly, power: int) -> BargmannPoly:
    """T_q^power: z^n -> q^(power n) z^n."""
    return BargmannPoly({n: c * s ** (2 * n * power) for n, c in p.coefficients.items()})


def _reflect(p: BargmannPoly) -> BargmannPoly:
    return BargmannPoly({n: (-c if n % 2 else c) for n, c in p.coefficients.items()})


def _divide_by_z(p: BargmannPoly) -> BargmannPoly:
    if not p.coefficients.get(0, ZERO).is_zero():
        raise ArithmeticError("polynomial has a constant term; division by z is not exact")
    return BargmannPoly({n - 1: c for n, c in p.coefficients.items()})


def bargmann_generator(g: str, p: BargmannPoly, e: int = 1, weight: Scalar = w) -> BargmannPoly:
    if g == "A+":
        return BargmannPoly({n + 1: c for n, c in p.coefficients.items()})
    if g == "K":
        return _q_shift(p, 1).scale(s * weight)
    if g == "Kinv":
        return _q_shift(p, -1).scale((s * weight).inv())
    if g == "P":
        return _reflect(p).scale(Scalar(e))
    if g == "A-":
        qq = q - q.inv()
        up = _divide_by_z(_q_shift(p, 1) - _reflect(p)).scale(weight / qq)
        down = _divide_by_z(_q_shift(p, -1) - _reflect(p)).scale(weight.inv() / qq)
        return up - down
    raise KeyError(f"{g!r} has no Bargmann realization")


def bargmann_apply(x: NCExpr, p: BargmannPoly, e: int = 1, weight: Scalar = w) -> BargmannPoly:
    total = BargmannPoly()
    for word, c in x.items():
        v = p
        for g in reversed(word):
            v = bargmann_generator(g, v, e, weight)
            if v.is_zero():
                break
        total = total + v.scale(c)
    return total


# ---- checks ----

@dataclass(frozen=True)
class RepReport:
    kind: str
    passed: bool
    details: tuple[str, ...] = ()


def _ospq():
    return get_presentation("ospq")


def _relations() -> dict[str, NCExpr]:
    from .hopf import displayed_relations
    rels = {f"rule.{'*'.join(r.lhs)}": r.relation() for r in _ospq().rules}
    rels.update({f"display.{k}": v for k, v in displayed_relations().items()})
    return rels


def equitable_action_formula(name: str, n: int, e: int, weight: Scalar = w) -> RepVector:
    """The displayed actions of X, Y, Z on f_n."""
    sign = e * (-1) ** n
    top = s ** (2 * n + 1) * weight        # q^(n + nu + 1/2)
    if name == "X":
        return RepVector({n: top.inv() * sign, n + 1: -top.inv() * sign * (1 - q.inv())}, e)
    if name == "Y":
        return RepVector({n: top * sign}, e)
    if name == "Z":
        out = {n: top.inv() * sign}
        if n > 0:
            out[n - 1] = (s + s.inv()) * rho(n, weight) * sign
        return RepVector(out, e)
    raise KeyError(name)


def _commutant_dimension(mats: Iterable[list[list[Fraction]]], dim: int) -> int:
    # T M - M T = 0 as a linear system in the dim*dim entries of T
    rows = []
    for M in mats:
        for i in range(dim):
            for j in range(dim):
                row = [Fraction(0)] * (dim * dim)
                for k in range(dim):
                    row[i * dim + k] += M[k][j]      # (T M)_ij = sum_k T_ik M_kj
                    row[k * dim + j] -= M[i][k]      # (M T)_ij = sum_k M_ik T_kj
                rows.append([QQ(r.numerator, r.denominator) for r in row])
    A = DomainMatrix(rows, (len(rows), dim * dim), QQ)
    return dim * dim - A.rank()


def commutant_dimension(N: int, e: int = 1, s_value: int | Fraction = 2,
                        generators: Iterable[str] = ("A+", "A-", "K", "Kinv", "P")) -> int:
    p = _ospq()
    mats = [finite_matrix(p.gen(g), N, e).evaluate(s_value) for g in generators]
    return _commutant_dimension(mats, N + 1)


def check_rep(kind: str, cutoff: int = 20, N: int | None = None,
              signs: tuple[int, ...] = (1, -1)) -> RepReport:
    if cutoff < 1:
        raise ValueError("cutoff must be at least 1")
    p = _ospq()
    failures: list[str] = []
    if kind == "W_relations":
        for e in signs:
            module = WModule(e)
            for key, rel in _relations().items():
                for n in range(cutoff + 1):
                    if not module.act(rel, basis_vector(n, e)).is_zero():
                        failures.append(f"{key} on f_{n} (e={e})")
    elif kind == "W_equitable":
        from .catalog import element
        for e in signs:
            module = WModule(e)
            for name in ("X", "Y", "Z"):
                x = element(name, "ospq").expr
                for n in range(cutoff + 1):
                    got = module.act(x, basis_vector(n, e))
                    if got != equitable_action_formula(name, n, e):
                        failures.append(f"{name} f_{n} (e={e})")
    elif kind == "W_casimir":
        from .catalog import element
        Q = element("Q", "ospq").expr
        for e in signs:
            module = WModule(e)
            expected = q_bracket(w) * (-e)
            for n in range(cutoff + 1):
                got = module.act(Q, basis_vector(n, e))
                if got != basis_vector(n, e).scale(expected):
                    failures.append(f"Q f_{n} (e={e})")
    elif kind == "bargmann_consistency":
        for e in signs:
            module = WModule(e)
            for g in p.alphabet:
                for n in range(cutoff + 1):
                    abstract = module.act(p.gen(g), basis_vector(n, e)).entries
                    poly = bargmann_apply(p.gen(g), BargmannPoly.monomial(n), e).coefficients
                    if abstract != poly:
                        failures.append(f"{g} on z^{n} (e={e})")
    elif kind == "finite_irreducibility":
        if N is None:
            raise ValueError("finite_irreducibility needs N")
        if N % 2:
            raise OddN(f"N must be even, got {N}")
        for e in signs:
            dim = commutant_dimension(N, e)
            if dim != 1:
                failures.append(f"commutant dimension {dim} for N={N}, e={e}")
    else:
        raise ValueError(f"unknown check {kind!r}")
    return RepReport(kind, not failures, tuple(failures))


def annihilates(x: NCExpr, cutoff: int = 20, Ns: tuple[int, ...] = (2, 4),
                signs: tuple[int, ...] = (1, -1)) -> list[str]:
    """Where x fails to act as zero on W (n <= cutoff) and on the truncations."""
    failures = []
    for e in signs:
        module = WModule(e)
        for n in range(cutoff + 1):
            if not module.act(x, basis_vector(n, e)).is_zero():
                failures.append(f"W: f_{n}, e={e}")
        for N in Ns:
            if not finite_matrix(x, N, e).is_zero():
                failures.append(f"finite N={N}, e={e}")
    return failures
