"""Oriented rewrite systems and PBW normal forms."""
from __future__ import annotations

import heapq
import os
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .ncalg import Alphabet, AlphabetMismatch, NCExpr, TensorExpr, Word
from .scalars import Scalar

DEFAULT_STEP_LIMIT = 10**6


class StepLimitExceeded(RuntimeError):
    pass


class PresentationError(ValueError):
    pass


def step_limit() -> int:
    raw = os.environ.get("QKERNEL_STEP_LIMIT")
    return int(raw) if raw else DEFAULT_STEP_LIMIT


@dataclass(frozen=True)
class RewriteRule:
    lhs: Word
    rhs: NCExpr

    def relation(self) -> NCExpr:
        """lhs - rhs as an element of the free algebra."""
        return NCExpr.word(self.rhs.alphabet, self.lhs) - self.rhs


@dataclass(frozen=True)
class Presentation:
    name: str
    alphabet: Alphabet
    rules: tuple[RewriteRule, ...]
    # pairs (g, g_inv) so that the DSL can read g^-n
    inverses: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        seen = set()
        for rule in self.rules:
            if len(rule.lhs) != 2:
                raise PresentationError(f"rule lhs must have two letters: {rule.lhs}")
            if rule.lhs in seen:
                raise PresentationError(f"duplicate rule for {rule.lhs}")
            if rule.rhs.alphabet != self.alphabet:
                raise AlphabetMismatch(f"rule {rule.lhs} over the wrong alphabet")
            seen.add(rule.lhs)
        table = {r.lhs: tuple(r.rhs.items()) for r in self.rules}
        object.__setattr__(self, "_table", table)

    @property
    def table(self) -> dict[Word, tuple[tuple[Word, Scalar], ...]]:
        return self._table  # type: ignore[attr-defined]

    def gen(self, g: str) -> NCExpr:
        return NCExpr.gen(self.alphabet, g)

    def one(self) -> NCExpr:
        return NCExpr.one(self.alphabet)

    def relations(self) -> list[NCExpr]:
        return [r.relation() for r in self.rules]

    def misordered_pairs(self) -> list[Word]:
        """Adjacent pairs out of PBW order that no rule reduces."""
        idx = self.alphabet.index
        return [(g, h) for g in self.alphabet for h in self.alphabet
                if idx[g] > idx[h] and (g, h) not in self.table]

    def to_text(self) -> str:
        from .dsl import format_expr
        lines = [f"name: {self.name}", "generators: " + " ".join(self.alphabet.letters)]
        for g, ginv in self.inverses.items():
            if self.inverses.get(ginv) != g or g < ginv:
                lines.append(f"inverse: {g} {ginv}")
        for rule in self.rules:
            lines.append(f"rule: {'*'.join(rule.lhs)} -> {format_expr(rule.rhs)}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Presentation":
        """Read the declarative format produced by :meth:`to_text`."""
        from .dsl import parse_with_alphabet
        name, letters, inverses, raw_rules = None, None, {}, []
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            key, _, value = line.partition(":")
            key, value = key.strip(), value.strip()
            if key == "name":
                name = value
            elif key == "generators":
                letters = value.split()
            elif key == "inverse":
                g, ginv = value.split()
                inverses[g], inverses[ginv] = ginv, g
            elif key == "rule":
                lhs, sep, rhs = value.partition("->")
                if not sep:
                    raise PresentationError(f"line {lineno}: rule needs '->'")
                raw_rules.append((lineno, lhs.strip(), rhs.strip()))
            else:
                raise PresentationError(f"line {lineno}: unknown key {key!r}")
        if name is None or letters is None:
            raise PresentationError("presentation needs 'name' and 'generators'")
        alphabet = Alphabet(name, letters)
        rules = []
        for lineno, lhs, rhs in raw_rules:
            word = tuple(t.strip() for t in lhs.split("*"))
            for g in word:
                if g not in alphabet:
                    raise PresentationError(f"line {lineno}: unknown generator {g!r}")
            rules.append(RewriteRule(word, parse_with_alphabet(rhs, alphabet, inverses)))
        return cls(name, alphabet, tuple(rules), inverses)


def _inversions(word: Word, idx: Mapping[str, int]) -> int:
    ranks = [idx[g] for g in word]
    n = len(ranks)
    return sum(1 for i in range(n) for j in range(i + 1, n) if ranks[i] > ranks[j])


def _find_redex(word: Word, table) -> int:
    for i in range(len(word) - 1):
        if (word[i], word[i + 1]) in table:
            return i
    return -1


def normal_form(x: NCExpr, p: Presentation, limit: int | None = None) -> NCExpr:
    """Rewrite ``x`` until no rule applies.

    Words are processed largest-first under (length, inversions) so that each
    word is usually expanded once with its fully accumulated coefficient.
    """
    if x.alphabet != p.alphabet:
        raise AlphabetMismatch(f"{x.alphabet.name} expression in {p.name}")
    limit = step_limit() if limit is None else limit
    table = p.table
    idx = p.alphabet.index
    pending: dict[Word, Scalar] = {}
    heap: list = []
    result: dict[Word, Scalar] = {}
    steps = 0

    def push(word: Word, c: Scalar):
        if word in pending:
            pending[word] = pending[word] + c
        else:
            pending[word] = c
            heapq.heappush(heap, (-len(word), -_inversions(word, idx), word))

    for word, c in x.items():
        push(word, c)
    while heap:
        _, _, word = heapq.heappop(heap)
        c = pending.pop(word, None)
        if c is None or c.is_zero():
            continue
        i = _find_redex(word, table)
        if i < 0:
            if word in result:
                v = result[word] + c
                if v.is_zero():
                    del result[word]
                else:
                    result[word] = v
            else:
                result[word] = c
            continue
        steps += 1
        if steps > limit:
            raise StepLimitExceeded(f"normal form in {p.name} exceeded {limit} rule applications")
        head, tail = word[:i], word[i + 2:]
        for rw, rc in table[(word[i], word[i + 1])]:
            push(head + rw + tail, c if rc.is_one() else c * rc)
    return NCExpr._trusted(p.alphabet, result)


def is_normal(x: NCExpr, p: Presentation) -> bool:
    return all(_find_redex(w, p.table) < 0 for w, _ in x.items())


def tensor_normal_form(t: TensorExpr, p: Presentation) -> TensorExpr:
    """Slot-wise normal form of a tensor expression."""
    cache: dict[Word, NCExpr] = {}

    def nf(word: Word) -> NCExpr:
        if word not in cache:
            cache[word] = normal_form(NCExpr.word(p.alphabet, word), p)
        return cache[word]

    out: dict[tuple[Word, ...], Scalar] = {}
    for key, c in t.items():
        partial: dict[tuple[Word, ...], Scalar] = {(): c}
        for word in key:
            reduced = nf(word)
            partial = {k + (w,): v * d for k, v in partial.items() for w, d in reduced.items()}
        for k, v in partial.items():
            v = out[k] + v if k in out else v
            if v.is_zero():
                out.pop(k, None)
            else:
                out[k] = v
    return TensorExpr._trusted(t.alphabet, t.arity, out)


@dataclass(frozen=True)
class IdentityCheck:
    holds: bool
    residual: NCExpr

    def __bool__(self):
        return self.holds


def check_identity(lhs: NCExpr, rhs: NCExpr, p: Presentation) -> IdentityCheck:
    residual = normal_form(lhs - rhs, p)
    return IdentityCheck(residual.is_zero(), residual)


def is_central(x: NCExpr, p: Presentation) -> bool:
    return all(check_identity(x * p.gen(g), p.gen(g) * x, p).holds for g in p.alphabet)


@dataclass(frozen=True)
class CriticalPair:
    overlap: Word
    branch1: NCExpr
    branch2: NCExpr

    @property
    def joinable(self) -> bool:
        return self.branch1 == self.branch2


def local_confluence_report(p: Presentation) -> list[CriticalPair]:
    """Reduce every three-letter overlap of rule left-hand sides both ways."""
    report = []
    for r1 in p.rules:
        for r2 in p.rules:
            if r1.lhs[1] != r2.lhs[0]:
                continue
            overlap = (r1.lhs[0], r1.lhs[1], r2.lhs[1])
            left = r1.rhs * p.gen(overlap[2])
            right = p.gen(overlap[0]) * r2.rhs
            report.append(CriticalPair(overlap, normal_form(left, p), normal_form(right, p)))
    return report


def termination_measure(word: Word, p: Presentation) -> tuple[int, int]:
    """(length, inversions); every bundled rule strictly decreases it."""
    return (len(word), _inversions(word, p.alphabet.index))


def build_presentation(name: str, letters: Sequence[str],
                       rules: Iterable[tuple[Sequence[str], object]],
                       inverses: Mapping[str, str] | None = None) -> Presentation:
    """Convenience constructor; ``rules`` rhs may be callables of the generator map."""
    alphabet = Alphabet(name, letters)
    gens = {g: NCExpr.gen(alphabet, g) for g in letters}
    built = []
    for lhs, rhs in rules:
        if callable(rhs):
            rhs = rhs(gens)
        if isinstance(rhs, (int, Scalar)):
            rhs = NCExpr.scalar(alphabet, rhs)
        built.append(RewriteRule(tuple(lhs), rhs))
    inv = dict(inverses or {})
    for g, ginv in list(inv.items()):
        inv[ginv] = g
    return Presentation(name, alphabet, tuple(built), inv)

