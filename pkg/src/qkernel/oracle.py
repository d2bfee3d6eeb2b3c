"""Random expressions and the normal-form versus matrix-image cross-check."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .ncalg import NCExpr
from .presentations import get_presentation
from .reps import finite_matrix
from .rewrite import Presentation, normal_form
from .scalars import Scalar, s


def random_word(rng: random.Random, letters, max_len: int) -> tuple[str, ...]:
    return tuple(rng.choice(letters) for _ in range(rng.randint(0, max_len)))


def random_coefficient(rng: random.Random) -> Scalar:
    c = Scalar(rng.choice([-3, -2, -1, 1, 2, 3]))
    k = rng.randint(-2, 2)
    return c * s ** k if k else c


def random_expression(rng: random.Random, p: Presentation, max_len: int = 6,
                      max_terms: int = 3) -> NCExpr:
    letters = list(p.alphabet)
    x = NCExpr.zero(p.alphabet)
    for _ in range(rng.randint(1, max_terms)):
        x = x + NCExpr.word(p.alphabet, random_word(rng, letters, max_len), random_coefficient(rng))
    return x


def random_equal_partner(rng: random.Random, x: NCExpr, p: Presentation, max_len: int = 6) -> NCExpr:
    """x plus u*(lhs - rhs)*v for a random rule; equal to x in the algebra."""
    rule = rng.choice(p.rules)
    room = max(max_len - len(rule.lhs), 0)
    u = random_word(rng, list(p.alphabet), room)
    v = random_word(rng, list(p.alphabet), room - len(u))
    A = p.alphabet
    return x + NCExpr.word(A, u) * rule.relation() * NCExpr.word(A, v) * random_coefficient(rng)


@dataclass(frozen=True)
class CrossCheckCase:
    index: int
    nf_equal: bool
    matrix_equal: bool

    @property
    def agrees(self) -> bool:
        return self.nf_equal == self.matrix_equal


def _images_equal(d: NCExpr, N: int, s_value) -> bool:
    return all(all(v == 0 for row in finite_matrix(d, N, e).evaluate(s_value) for v in row)
               for e in (1, -1))


def cross_check(count: int = 100, seed: int = 20240601, N: int = 4,
                s_value: int | Fraction = 2, max_len: int = 6) -> list[CrossCheckCase]:
    """Compare normal-form equality with equality of finite matrix images.

    Half the pairs are equal by construction, half are independent draws.
    """
    p = get_presentation("ospq")
    rng = random.Random(seed)
    cases = []
    for i in range(count):
        x = random_expression(rng, p, max_len)
        if i % 2 == 0:
            y = random_equal_partner(rng, x, p, max_len)
        else:
            y = random_expression(rng, p, max_len)
        d = x - y
        cases.append(CrossCheckCase(i, normal_form(d, p).is_zero(), _images_equal(d, N, s_value)))
    return cases
