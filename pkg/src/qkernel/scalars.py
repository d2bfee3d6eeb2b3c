"""Exact coefficient field for the algebra kernel.

Scalars live in the field of rational functions over the Gaussian rationals
in the formal symbols ``s`` (q = s**2), ``w`` (q**nu), ``a``, ``b``, ``c``,
``iota1..3`` and ``alpha1..3``.

A scalar is stored as ``(re + i*im) / den`` where ``re``, ``im`` and ``den``
are polynomials with rational coefficients.  Because the field is a degree
two extension of the real rational function field, every element has a
unique representation of this shape once ``gcd(re, im, den) = 1`` and
``den`` has leading coefficient 1 (lex order, symbols in the order above).
Laurent monomials are simply monomial denominators; :meth:`Scalar.laurent`
exposes the Laurent view used for printing.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Union

import flint

SYMBOLS: tuple[str, ...] = (
    "s", "w", "a", "b", "c",
    "iota1", "iota2", "iota3",
    "alpha1", "alpha2", "alpha3",
)
_INDEX = {name: k for k, name in enumerate(SYMBOLS)}
_CTX = flint.fmpq_mpoly_ctx.get(SYMBOLS, "lex")
_ZERO = _CTX.from_dict({})
_ONE = _CTX.constant(1)
_ZERO_EXP = (0,) * len(SYMBOLS)


class DivisionByZero(ZeroDivisionError):
    pass


class PoleAtOne(ArithmeticError):
    """Raised when a scalar has a genuine pole at q = 1."""


@dataclass(frozen=True)
class GaussianRational:
    re: Fraction
    im: Fraction = Fraction(0)

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return _imag_str(self.im)
        sign = "-" if self.im < 0 else "+"
        return f"({self.re} {sign} {_imag_str(abs(self.im))})"

    def __mul__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re * other.re - self.im * other.im,
                                self.re * other.im + self.im * other.re)

    def __add__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)


def _imag_str(v: Fraction) -> str:
    if v == 1:
        return "i"
    if v == -1:
        return "-i"
    return f"{v}*i"


# Laurent polynomial view: exponent vector -> coefficient.
LaurentPoly = dict[tuple[int, ...], GaussianRational]

Number = Union[int, Fraction]


def _fmpq(v: Number) -> flint.fmpq:
    if isinstance(v, Fraction):
        return flint.fmpq(v.numerator, v.denominator)
    return flint.fmpq(v)


class Scalar:
    """Immutable element of Q(i)(s, w, a, b, c, iota1..3, alpha1..3)."""

    __slots__ = ("_re", "_im", "_den", "_hash")

    def __init__(self, value: Union["Scalar", Number] = 0):
        if isinstance(value, Scalar):
            self._re, self._im, self._den = value._re, value._im, value._den
        else:
            self._re = _CTX.constant(_fmpq(value))
            self._im = _ZERO
            self._den = _ONE
        self._hash = None

    @classmethod
    def _raw(cls, re, im, den) -> "Scalar":
        obj = cls.__new__(cls)
        obj._re, obj._im, obj._den = re, im, den
        obj._hash = None
        return obj

    @classmethod
    def _canonical(cls, re, im, den) -> "Scalar":
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        if re.is_zero() and im.is_zero():
            return cls._raw(_ZERO, _ZERO, _ONE)
        if not den.is_constant():
            g = re.gcd(den) if im.is_zero() else re.gcd(im).gcd(den)
            if not g.is_one():
                re = re / g
                im = im / g
                den = den / g
        lc = den.leading_coefficient()
        if lc != 1:
            re = re / lc
            im = im / lc
            den = den / lc
        return cls._raw(re, im, den)

    # ---- constructors ----
    @classmethod
    def symbol(cls, name: str) -> "Scalar":
        if name == "q":
            return cls.symbol("s") ** 2
        if name == "i":
            return I
        try:
            gen = _CTX.gens()[_INDEX[name]]
        except KeyError:
            raise KeyError(f"unknown scalar symbol {name!r}") from None
        return cls._raw(gen, _ZERO, _ONE)

    @classmethod
    def monomial(cls, exponents: Mapping[str, int], coeff: Number = 1) -> "Scalar":
        num = [0] * len(SYMBOLS)
        den = [0] * len(SYMBOLS)
        for name, e in exponents.items():
            if e >= 0:
                num[_INDEX[name]] = e
            else:
                den[_INDEX[name]] = -e
        return cls._canonical(_CTX.term(exp_vec=tuple(num), coeff=_fmpq(coeff)), _ZERO,
                              _CTX.term(exp_vec=tuple(den), coeff=1))

    @classmethod
    def gaussian(cls, re: Number, im: Number = 0) -> "Scalar":
        return cls._raw(_CTX.constant(_fmpq(re)), _CTX.constant(_fmpq(im)), _ONE)

    # ---- predicates / access ----
    def is_zero(self) -> bool:
        return self._re.is_zero() and self._im.is_zero()

    def is_one(self) -> bool:
        return self._im.is_zero() and self._den.is_one() and self._re.is_one()

    def is_real(self) -> bool:
        return self._im.is_zero()

    def is_constant(self) -> bool:
        return self._re.is_constant() and self._im.is_constant() and self._den.is_constant()

    def is_laurent(self) -> bool:
        """True when the denominator is a monomial."""
        return len(self._den) == 1

    def symbols(self) -> set[str]:
        used = set()
        for poly in (self._re, self._im, self._den):
            for exp in poly.monoms():
                used.update(SYMBOLS[k] for k, e in enumerate(exp) if e)
        return used

    def to_gaussian(self) -> GaussianRational:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        d = Fraction(str(self._den.leading_coefficient()))
        re = Fraction(str(self._re.leading_coefficient())) if not self._re.is_zero() else Fraction(0)
        im = Fraction(str(self._im.leading_coefficient())) if not self._im.is_zero() else Fraction(0)
        return GaussianRational(re / d, im / d)

    def to_fraction(self) -> Fraction:
        g = self.to_gaussian()
        if g.im:
            raise ValueError(f"{self} is not real")
        return g.re

    def numerator_denominator(self) -> tuple["Scalar", "Scalar"]:
        """Split as (numerator, denominator), both Laurent polynomials.

        The denominator is normalized with smallest exponents shifted to zero.
        """
        mono = self._den.monoms()
        low = tuple(min(m[k] for m in mono) for k in range(len(SYMBOLS)))
        mon = _CTX.term(exp_vec=low, coeff=1)
        num = Scalar._canonical(self._re, self._im, mon)
        den = Scalar._raw(self._den / mon, _ZERO, _ONE)
        return num, den

    def laurent(self) -> LaurentPoly:
        """Laurent-polynomial view; only valid when :meth:`is_laurent`."""
        if not self.is_laurent():
            raise ValueError("denominator is not a monomial")
        (dexp,), (dc,) = self._den.monoms(), self._den.coeffs()
        dc = Fraction(str(dc))
        out: dict[tuple[int, ...], list[Fraction]] = {}
        for part, poly in ((0, self._re), (1, self._im)):
            for exp, c in zip(poly.monoms(), poly.coeffs()):
                key = tuple(int(e) - int(d) for e, d in zip(exp, dexp))
                slot = out.setdefault(key, [Fraction(0), Fraction(0)])
                slot[part] += Fraction(str(c)) / dc
        return {k: GaussianRational(v[0], v[1]) for k, v in out.items()}

    # ---- arithmetic ----
    def __add__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        if o.is_zero():
            return self
        if self.is_zero():
            return o
        d1, d2 = self._den, o._den
        if d1 == d2:
            return Scalar._canonical(self._re + o._re, self._im + o._im, d1)
        g = d1.gcd(d2)
        l1, l2 = d1 / g, d2 / g
        return Scalar._canonical(self._re * l2 + o._re * l1,
                                 self._im * l2 + o._im * l1, l1 * d2)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(-self._re, -self._im, self._den)

    def __sub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        if self.is_zero() or o.is_zero():
            return ZERO
        if self._im.is_zero() and o._im.is_zero():
            return Scalar._canonical(self._re * o._re, _ZERO, self._den * o._den)
        return Scalar._canonical(self._re * o._re - self._im * o._im,
                                 self._re * o._im + self._im * o._re,
                                 self._den * o._den)

    __rmul__ = __mul__

    def inv(self) -> "Scalar":
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        if self._im.is_zero():
            return Scalar._canonical(self._den, _ZERO, self._re)
        norm = self._re * self._re + self._im * self._im
        return Scalar._canonical(self._den * self._re, -self._den * self._im, norm)

    def __truediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inv()

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inv()

    def __pow__(self, n: int) -> "Scalar":
        if n < 0:
            return self.inv() ** (-n)
        if self._im.is_zero():
            return Scalar._raw(self._re ** n, _ZERO, self._den ** n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "Scalar":
        return Scalar._raw(self._re, -self._im, self._den)

    # ---- comparison ----
    def __eq__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._re == o._re and self._im == o._im and self._den == o._den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((str(self._re), str(self._im), str(self._den)))
        return self._hash

    def __repr__(self):
        return f"Scalar({self})"

    def __str__(self):
        return format_scalar(self)

    # ---- substitution ----
    def substitute(self, bindings: Mapping[str, Union["Scalar", Number]]) -> "Scalar":
        return substitute(self, bindings)


def _coerce(value):
    if isinstance(value, Scalar):
        return value
    if isinstance(value, (int, Fraction)):
        return Scalar(value)
    return NotImplemented


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar._raw(_ZERO, _ONE, _ONE)


def sym(name: str) -> Scalar:
    return Scalar.symbol(name)


s = Scalar.symbol("s")
w = Scalar.symbol("w")
q = s ** 2


def scalar_arith(op: str, x: Scalar, y: Scalar | None = None) -> Scalar:
    """Dispatch helper mirroring the arithmetic operations by name."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    if op == "neg":
        return -x
    if op == "inv":
        return x.inv()
    raise ValueError(f"unknown operation {op!r}")


def q_integer(n: int) -> Scalar:
    """[n]_q = (q^n - q^-n)/(q - q^-1), returned as a Laurent polynomial in s."""
    if n < 0:
        return -q_integer(-n)
    # s^(2n-2) + s^(2n-6) + ... + s^(-(2n-2))
    return sum((Scalar.monomial({"s": 2 * n - 2 - 4 * k}) for k in range(n)), ZERO)


def q_bracket(z: Scalar) -> Scalar:
    """[x]_q given z = q^x, i.e. (z - 1/z)/(q - 1/q)."""
    return (z - z.inv()) / (q - q.inv())


def _eval_poly(poly, values: list[Scalar | None], gens: list[Scalar]) -> Scalar:
    cache: dict[tuple[int, int], Scalar] = {}

    def power(k: int, e: int) -> Scalar:
        key = (k, e)
        if key not in cache:
            base = values[k] if values[k] is not None else gens[k]
            cache[key] = base ** e
        return cache[key]

    total = ZERO
    for exp, c in zip(poly.monoms(), poly.coeffs()):
        term = Scalar(Fraction(str(c)))
        for k, e in enumerate(exp):
            if e:
                term = term * power(k, e)
        total = total + term
    return total


def substitute(x: Scalar, bindings: Mapping[str, Union[Scalar, Number]]) -> Scalar:
    """Simultaneous substitution of symbols by scalars."""
    values: list[Scalar | None] = [None] * len(SYMBOLS)
    for name, value in bindings.items():
        if name not in _INDEX:
            raise KeyError(f"unknown scalar symbol {name!r}")
        values[_INDEX[name]] = Scalar(value) if not isinstance(value, Scalar) else value
    gens = [Scalar._raw(g, _ZERO, _ONE) for g in _CTX.gens()]
    den = _eval_poly(x._den, values, gens)
    if den.is_zero():
        raise DivisionByZero(f"denominator of {x} vanishes under {dict(bindings)}")
    re = _eval_poly(x._re, values, gens)
    im = _eval_poly(x._im, values, gens)
    return (re + I * im) / den


def limit_q_to_one(x: Scalar) -> Scalar:
    """Value at s = 1 after exact cancellation; raises PoleAtOne on a genuine pole."""
    den = x._den.subs({"s": 1})
    if den.is_zero():
        raise PoleAtOne(f"{x} has a pole at q = 1")
    return Scalar._canonical(x._re.subs({"s": 1}), x._im.subs({"s": 1}), den)


def evaluate(x: Scalar, point: Mapping[str, Number]) -> GaussianRational:
    """Evaluate at a point binding every occurring symbol to a rational."""
    return substitute(x, point).to_gaussian()


# ---- text rendering ----

def _monomial_str(exp: tuple[int, ...]) -> str:
    parts = []
    for k, e in enumerate(exp):
        if e == 1:
            parts.append(SYMBOLS[k])
        elif e:
            parts.append(f"{SYMBOLS[k]}^{e}")
    return "*".join(parts)


def _coeff_str(c: GaussianRational) -> str:
    if c.im == 0:
        return str(c.re)
    if c.re == 0:
        return _imag_str(c.im)
    sign = "-" if c.im < 0 else "+"
    return f"({c.re} {sign} {_imag_str(abs(c.im))})"


def format_laurent(poly: LaurentPoly) -> str:
    if not poly:
        return "0"
    out = []
    for exp in sorted(poly, reverse=True):
        c = poly[exp]
        mono = _monomial_str(exp)
        negative = (c.im == 0 and c.re < 0) or (c.re == 0 and c.im < 0)
        mag = -c if negative else c
        if mono:
            if mag == GaussianRational(Fraction(1)):
                body = mono
            else:
                body = f"{_coeff_str(mag)}*{mono}"
        else:
            body = _coeff_str(mag)
        if not out:
            out.append(("-" if negative else "") + body)
        else:
            out.append((" - " if negative else " + ") + body)
    return "".join(out)


def format_scalar(x: Scalar) -> str:
    if x.is_laurent():
        return format_laurent(x.laurent())
    num, den = x.numerator_denominator()
    ntext = format_laurent(num.laurent())
    if has_top_level(ntext, "+-"):
        ntext = f"({ntext})"
    return f"{ntext}/({format_laurent(den.laurent())})"


def has_top_level(text: str, chars: str) -> bool:
    """Whether ``text`` has one of ``chars`` outside parentheses (a leading sign
    and the sign of an exponent do not count)."""
    depth = 0
    for k, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and ch in chars and k > 0 and text[k - 1] != "^":
            return True
    return False


def is_sum_text(text: str) -> bool:
    """Whether rendered scalar text needs parentheses as a factor."""
    return has_top_level(text, "+-/")
