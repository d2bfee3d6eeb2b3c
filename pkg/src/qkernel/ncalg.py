"""Free associative algebra over :class:`Scalar` and its tensor powers."""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, Union

from .scalars import ONE, ZERO, Number, Scalar, s

Word = tuple[str, ...]


class AlphabetMismatch(ValueError):
    pass


class MissingImage(KeyError):
    pass


class Alphabet:
    """Ordered generator alphabet; the order is the PBW order."""

    def __init__(self, name: str, letters: Iterable[str]):
        self.name = name
        self.letters: tuple[str, ...] = tuple(letters)
        self.index = {g: k for k, g in enumerate(self.letters)}
        if len(self.index) != len(self.letters):
            raise ValueError(f"duplicate generator in alphabet {name}")

    def __contains__(self, g: str) -> bool:
        return g in self.index

    def __iter__(self) -> Iterator[str]:
        return iter(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self.letters == other.letters and self.name == other.name

    def __hash__(self):
        return hash((self.name, self.letters))

    def __repr__(self):
        return f"Alphabet({self.name!r}, {list(self.letters)!r})"

    def word_key(self, word: Word) -> tuple:
        """Length-lexicographic sort key."""
        idx = self.index
        return (len(word), tuple(idx[g] for g in word))


def _scalar(c) -> Scalar:
    return c if isinstance(c, Scalar) else Scalar(c)


class NCExpr:
    """Finite linear combination of words with scalar coefficients."""

    __slots__ = ("alphabet", "_terms")

    def __init__(self, alphabet: Alphabet, terms: Mapping[Word, Union[Scalar, Number]] | None = None):
        self.alphabet = alphabet
        clean: dict[Word, Scalar] = {}
        for word, c in (terms or {}).items():
            word = tuple(word)
            for g in word:
                if g not in alphabet:
                    raise AlphabetMismatch(f"{g!r} is not a generator of {alphabet.name}")
            c = _scalar(c)
            if word in clean:
                c = clean[word] + c
            if c.is_zero():
                clean.pop(word, None)
            else:
                clean[word] = c
        self._terms = clean

    @classmethod
    def _trusted(cls, alphabet: Alphabet, terms: dict[Word, Scalar]) -> "NCExpr":
        obj = cls.__new__(cls)
        obj.alphabet = alphabet
        obj._terms = terms
        return obj

    # ---- constructors ----
    @classmethod
    def gen(cls, alphabet: Alphabet, g: str) -> "NCExpr":
        return cls(alphabet, {(g,): ONE})

    @classmethod
    def word(cls, alphabet: Alphabet, word: Iterable[str], coeff=1) -> "NCExpr":
        return cls(alphabet, {tuple(word): coeff})

    @classmethod
    def scalar(cls, alphabet: Alphabet, c) -> "NCExpr":
        return cls(alphabet, {(): c})

    @classmethod
    def zero(cls, alphabet: Alphabet) -> "NCExpr":
        return cls._trusted(alphabet, {})

    @classmethod
    def one(cls, alphabet: Alphabet) -> "NCExpr":
        return cls._trusted(alphabet, {(): ONE})

    # ---- access ----
    @property
    def terms(self) -> Mapping[Word, Scalar]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def sorted_items(self) -> list[tuple[Word, Scalar]]:
        key = self.alphabet.word_key
        return sorted(self._terms.items(), key=lambda kv: key(kv[0]))

    def coefficient(self, word: Iterable[str]) -> Scalar:
        return self._terms.get(tuple(word), ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def max_length(self) -> int:
        return max((len(w) for w in self._terms), default=0)

    def map_coefficients(self, f: Callable[[Scalar], Scalar]) -> "NCExpr":
        return NCExpr(self.alphabet, {w: f(c) for w, c in self._terms.items()})

    def rename(self, mapping: Mapping[str, str], alphabet: Alphabet) -> "NCExpr":
        try:
            return NCExpr(alphabet, {tuple(mapping[g] for g in w): c for w, c in self._terms.items()})
        except KeyError as exc:
            raise MissingImage(f"no rename for generator {exc.args[0]!r}") from None

    # ---- arithmetic ----
    def _check(self, other: "NCExpr"):
        if other.alphabet != self.alphabet:
            raise AlphabetMismatch(f"{self.alphabet.name} vs {other.alphabet.name}")

    def _lift(self, other):
        if isinstance(other, NCExpr):
            self._check(other)
            return other
        if isinstance(other, (Scalar, int, Fraction)):
            return NCExpr.scalar(self.alphabet, other)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        out = dict(self._terms)
        for w, c in o._terms.items():
            if w in out:
                v = out[w] + c
                if v.is_zero():
                    del out[w]
                else:
                    out[w] = v
            else:
                out[w] = c
        return NCExpr._trusted(self.alphabet, out)

    __radd__ = __add__

    def __neg__(self):
        return NCExpr._trusted(self.alphabet, {w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def scale(self, c) -> "NCExpr":
        c = _scalar(c)
        if c.is_zero():
            return NCExpr.zero(self.alphabet)
        return NCExpr._trusted(self.alphabet, {w: v * c for w, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, NCExpr):
            return nc_mul(self, other)
        if isinstance(other, (Scalar, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (Scalar, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (Scalar, int, Fraction)):
            return self.scale(_scalar(other).inv())
        return NotImplemented

    def __pow__(self, n: int) -> "NCExpr":
        if n < 0:
            raise ValueError("negative powers are not defined in the free algebra")
        result = NCExpr.one(self.alphabet)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, NCExpr):
            return self.alphabet == other.alphabet and self._terms == other._terms
        if isinstance(other, (Scalar, int, Fraction)):
            return self == NCExpr.scalar(self.alphabet, other)
        return NotImplemented

    __hash__ = None

    def __repr__(self):
        from .dsl import format_expr
        return f"NCExpr[{self.alphabet.name}]({format_expr(self)})"


def nc_mul(x: NCExpr, y: NCExpr) -> NCExpr:
    x._check(y)
    out: dict[Word, Scalar] = {}
    for w1, c1 in x._terms.items():
        for w2, c2 in y._terms.items():
            w = w1 + w2
            c = c1 * c2
            if w in out:
                c = out[w] + c
                if c.is_zero():
                    del out[w]
                    continue
            out[w] = c
    return NCExpr._trusted(x.alphabet, out)


def commutator(x: NCExpr, y: NCExpr) -> NCExpr:
    return x * y - y * x


def anticommutator(x: NCExpr, y: NCExpr) -> NCExpr:
    return x * y + y * x


def q_anticommutator(x: NCExpr, y: NCExpr) -> NCExpr:
    """{x, y}_q = q^(1/2) xy + q^(-1/2) yx."""
    return (x * y).scale(s) + (y * x).scale(s.inv())


_BRACKETS = {
    "commutator": commutator,
    "anticommutator": anticommutator,
    "q_anticommutator": q_anticommutator,
}


def bracket(kind: str, x: NCExpr, y: NCExpr) -> NCExpr:
    try:
        return _BRACKETS[kind](x, y)
    except KeyError:
        raise ValueError(f"unknown bracket kind {kind!r}") from None


class TensorExpr:
    """Linear combination of tuples of words (an n-fold tensor power).

    Multiplication is componentwise concatenation with no sign rule.
    """

    __slots__ = ("alphabet", "arity", "_terms")

    def __init__(self, alphabet: Alphabet, arity: int, terms: Mapping[tuple[Word, ...], Union[Scalar, Number]] | None = None):
        self.alphabet = alphabet
        self.arity = arity
        clean: dict[tuple[Word, ...], Scalar] = {}
        for key, c in (terms or {}).items():
            key = tuple(tuple(w) for w in key)
            if len(key) != arity:
                raise ValueError(f"expected {arity} tensor slots, got {len(key)}")
            c = _scalar(c)
            if key in clean:
                c = clean[key] + c
            if c.is_zero():
                clean.pop(key, None)
            else:
                clean[key] = c
        self._terms = clean

    @classmethod
    def _trusted(cls, alphabet, arity, terms) -> "TensorExpr":
        obj = cls.__new__(cls)
        obj.alphabet, obj.arity, obj._terms = alphabet, arity, terms
        return obj

    @classmethod
    def one(cls, alphabet: Alphabet, arity: int = 2) -> "TensorExpr":
        return cls._trusted(alphabet, arity, {((),) * arity: ONE})

    @classmethod
    def zero(cls, alphabet: Alphabet, arity: int = 2) -> "TensorExpr":
        return cls._trusted(alphabet, arity, {})

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def _check(self, other: "TensorExpr"):
        if other.alphabet != self.alphabet:
            raise AlphabetMismatch(f"{self.alphabet.name} vs {other.alphabet.name}")
        if other.arity != self.arity:
            raise ValueError("tensor arity mismatch")

    def __add__(self, other):
        if not isinstance(other, TensorExpr):
            return NotImplemented
        self._check(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            v = out[k] + c if k in out else c
            if v.is_zero():
                out.pop(k, None)
            else:
                out[k] = v
        return TensorExpr._trusted(self.alphabet, self.arity, out)

    def __neg__(self):
        return TensorExpr._trusted(self.alphabet, self.arity, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TensorExpr":
        c = _scalar(c)
        if c.is_zero():
            return TensorExpr.zero(self.alphabet, self.arity)
        return TensorExpr._trusted(self.alphabet, self.arity, {k: v * c for k, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, TensorExpr):
            return tensor_mul(self, other)
        if isinstance(other, (Scalar, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (Scalar, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, TensorExpr):
            return NotImplemented
        return (self.alphabet == other.alphabet and self.arity == other.arity
                and self._terms == other._terms)

    __hash__ = None

    def __repr__(self):
        from .dsl import format_tensor
        return f"TensorExpr[{self.alphabet.name}]({format_tensor(self)})"


def tensor(*factors: NCExpr) -> TensorExpr:
    """Tensor product x1 (x) x2 (x) ... of plain elements."""
    alphabet = factors[0].alphabet
    keys: dict[tuple[Word, ...], Scalar] = {(): ONE}
    for f in factors:
        if f.alphabet != alphabet:
            raise AlphabetMismatch("tensor factors over different alphabets")
        nxt: dict[tuple[Word, ...], Scalar] = {}
        for k, c in keys.items():
            for w, d in f.items():
                nxt[k + (w,)] = c * d
        keys = nxt
    return TensorExpr(alphabet, len(factors), keys)


def tensor_mul(x: TensorExpr, y: TensorExpr) -> TensorExpr:
    x._check(y)
    out: dict[tuple[Word, ...], Scalar] = {}
    for k1, c1 in x._terms.items():
        for k2, c2 in y._terms.items():
            k = tuple(a + b for a, b in zip(k1, k2))
            c = c1 * c2
            if k in out:
                c = out[k] + c
                if c.is_zero():
                    del out[k]
                    continue
            out[k] = c
    return TensorExpr._trusted(x.alphabet, x.arity, out)


def _unit_like(value):
    if isinstance(value, NCExpr):
        return NCExpr.one(value.alphabet)
    if isinstance(value, TensorExpr):
        return TensorExpr.one(value.alphabet, value.arity)
    return ONE


def _scaled(value, c: Scalar):
    if isinstance(value, (NCExpr, TensorExpr)):
        return value.scale(c)
    return value * c


def _extend(images: Mapping[str, object], x: NCExpr, reverse: bool, unit=None):
    if unit is None:
        if not images:
            raise MissingImage("cannot infer the target unit from an empty image map")
        unit = _unit_like(next(iter(images.values())))
    cache: dict[Word, object] = {(): unit}

    def image_of(word: Word):
        if word in cache:
            return cache[word]
        head, last = word[:-1], word[-1]
        try:
            g = images[last]
        except KeyError:
            raise MissingImage(f"no image for generator {last!r}") from None
        prefix = image_of(head)
        val = g * prefix if reverse else prefix * g
        cache[word] = val
        return val

    total = None
    for word, c in x.items():
        term = _scaled(image_of(word), c)
        total = term if total is None else total + term
    if total is None:
        return _scaled(unit, ZERO)
    return total


def extend_hom(images: Mapping[str, object], x: NCExpr, unit=None):
    """Linear multiplicative extension of a generator map."""
    return _extend(images, x, reverse=False, unit=unit)


def extend_antihom(images: Mapping[str, object], x: NCExpr, unit=None):
    """Linear extension reversing products: g1...gk -> f(gk)...f(g1)."""
    return _extend(images, x, reverse=True, unit=unit)
