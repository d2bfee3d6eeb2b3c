"""Expression language: tokenizer, Pratt-style parser, evaluator and printers.

Grammar (``^`` binds tightest, juxtaposition is not multiplication)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := "-" unary | power
    power  := atom ("^" ["-"] INT)?
    atom   := INT | NAME | "(" expr ")" | "[" expr "," expr "]"
            | "{" expr "," expr "}" ["_q"]

Names resolve, in order, to generators of the alphabet, catalog elements of
the presentation, and scalar symbols (``q`` is sugar for ``s^2``).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Union

from .ncalg import Alphabet, NCExpr, TensorExpr, bracket
from .scalars import SYMBOLS, Scalar, format_scalar, has_top_level, is_sum_text

Value = Union[Scalar, NCExpr]


class DSLSyntaxError(SyntaxError):
    def __init__(self, message: str, text: str = "", pos: int = 0):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{message} (line {line}, column {col})")
        self.line, self.column = line, col


class UnknownGenerator(KeyError):
    pass


SCALAR_NAMES = frozenset(SYMBOLS) | {"q", "i"}


# ---- parse tree ----

@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Name:
    name: str
    pos: int


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object
    pos: int


@dataclass(frozen=True)
class Neg:
    operand: object


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int
    pos: int


@dataclass(frozen=True)
class Bracket:
    kind: str  # commutator | anticommutator | q_anticommutator
    left: object
    right: object


_TOKEN = re.compile(r"\s*(?:(\d+)|(_q(?![A-Za-z0-9_]))|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def tokenize(text: str, signed_names: frozenset[str] = frozenset()) -> list[tuple[str, str, int]]:
    """Split into (kind, value, pos).  ``A+``-style names are merged when known."""
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        start = m.start(m.lastindex)
        num, qsub, name, other = m.groups()
        pos = m.end()
        if num is not None:
            tokens.append(("num", num, start))
        elif name is not None:
            if pos < n and text[pos] in "+-" and name + text[pos] in signed_names:
                name += text[pos]
                pos += 1
            tokens.append(("name", name, start))
        elif qsub is not None:
            tokens.append(("op", "_q", start))
        elif other is not None and not other.isspace():
            if other not in "+-*/^()[]{},":
                raise DSLSyntaxError(f"unexpected character {other!r}", text, start)
            tokens.append(("op", other, start))
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str, signed_names: frozenset[str]):
        self.text = text
        self.tokens = tokenize(text, signed_names)
        self.k = 0

    def peek(self):
        return self.tokens[self.k]

    def advance(self):
        tok = self.tokens[self.k]
        self.k += 1
        return tok

    def expect(self, value: str):
        tok = self.advance()
        if tok[1] != value:
            self.fail(f"expected {value!r}, found {tok[1] or 'end of input'!r}", tok[2])
        return tok

    def fail(self, message: str, pos: int):
        raise DSLSyntaxError(message, self.text, pos)

    def parse(self):
        node = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            self.fail(f"unexpected {tok[1]!r}", tok[2])
        return node

    def expr(self):
        node = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op, pos = self.advance()[1:]
            node = BinOp(op, node, self.term(), pos)
        return node

    def term(self):
        node = self.unary()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            op, pos = self.advance()[1:]
            node = BinOp(op, node, self.unary(), pos)
        return node

    def unary(self):
        if self.peek()[:2] == ("op", "-"):
            self.advance()
            return Neg(self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            pos = self.advance()[2]
            sign = 1
            paren = False
            if self.peek()[:2] == ("op", "("):
                self.advance()
                paren = True
            if self.peek()[:2] == ("op", "-"):
                self.advance()
                sign = -1
            tok = self.advance()
            if tok[0] != "num":
                self.fail("exponent must be an integer", tok[2])
            if paren:
                self.expect(")")
            return Pow(base, sign * int(tok[1]), pos)
        return base

    def atom(self):
        kind, value, pos = self.advance()
        if kind == "num":
            return Num(int(value))
        if kind == "name":
            return Name(value, pos)
        if value == "(":
            node = self.expr()
            self.expect(")")
            return node
        if value == "[":
            left = self.expr()
            self.expect(",")
            right = self.expr()
            self.expect("]")
            return Bracket("commutator", left, right)
        if value == "{":
            left = self.expr()
            self.expect(",")
            right = self.expr()
            self.expect("}")
            if self.peek()[:2] == ("op", "_q"):
                self.advance()
                return Bracket("q_anticommutator", left, right)
            return Bracket("anticommutator", left, right)
        self.fail(f"unexpected {value or 'end of input'!r}", pos)


def parse_tree(text: str, signed_names: frozenset[str] = frozenset()):
    return _Parser(text, signed_names).parse()


# ---- evaluation ----

class _Env:
    def __init__(self, alphabet: Alphabet, elements: Mapping[str, Callable[[], NCExpr]],
                 inverses: Mapping[str, str]):
        self.alphabet = alphabet
        self.elements = elements
        self.inverses = inverses

    def signed_names(self) -> frozenset[str]:
        names = set(self.alphabet.letters) | set(self.elements)
        return frozenset(n for n in names if n[-1] in "+-")


def _as_scalar(v: Value) -> Scalar | None:
    if isinstance(v, Scalar):
        return v
    if all(len(w) == 0 for w, _ in v.items()):
        return v.coefficient(())
    return None


def _to_expr(v: Value, alphabet: Alphabet) -> NCExpr:
    return v if isinstance(v, NCExpr) else NCExpr.scalar(alphabet, v)


def _evaluate(node, env: _Env, text: str) -> Value:
    if isinstance(node, Num):
        return Scalar(node.value)
    if isinstance(node, Name):
        name = node.name
        if name in env.alphabet:
            return NCExpr.gen(env.alphabet, name)
        if name in env.elements:
            return env.elements[name]()
        if name in SCALAR_NAMES:
            return Scalar.symbol(name)
        raise UnknownGenerator(f"unknown name {name!r} in {env.alphabet.name} "
                               f"(line/col at offset {node.pos})")
    if isinstance(node, Neg):
        return -_evaluate(node.operand, env, text)
    if isinstance(node, BinOp):
        left = _evaluate(node.left, env, text)
        right = _evaluate(node.right, env, text)
        if node.op == "+":
            if isinstance(left, Scalar) and isinstance(right, Scalar):
                return left + right
            return _to_expr(left, env.alphabet) + _to_expr(right, env.alphabet)
        if node.op == "-":
            if isinstance(left, Scalar) and isinstance(right, Scalar):
                return left - right
            return _to_expr(left, env.alphabet) - _to_expr(right, env.alphabet)
        if node.op == "*":
            if isinstance(left, Scalar) and isinstance(right, Scalar):
                return left * right
            return _to_expr(left, env.alphabet) * _to_expr(right, env.alphabet)
        if node.op == "/":
            divisor = _as_scalar(right)
            if divisor is None:
                raise DSLSyntaxError("division by a noncommutative expression", text, node.pos)
            if divisor.is_zero():
                raise DSLSyntaxError("division by zero", text, node.pos)
            return left / divisor
    if isinstance(node, Pow):
        base = _evaluate(node.base, env, text)
        n = node.exponent
        if isinstance(base, Scalar):
            return base ** n
        if n >= 0:
            return base ** n
        if isinstance(node.base, Name) and node.base.name in env.inverses:
            inv = Name(env.inverses[node.base.name], node.base.pos)
            return _evaluate(inv, env, text) ** (-n)
        sc = _as_scalar(base)
        if sc is not None:
            return sc ** n
        raise DSLSyntaxError("negative power of an element without a registered inverse",
                             text, node.pos)
    if isinstance(node, Bracket):
        left = _to_expr(_evaluate(node.left, env, text), env.alphabet)
        right = _to_expr(_evaluate(node.right, env, text), env.alphabet)
        return bracket(node.kind, left, right)
    raise TypeError(f"unknown node {node!r}")


def parse_with_alphabet(text: str, alphabet: Alphabet, inverses: Mapping[str, str] | None = None,
                        elements: Mapping[str, Callable[[], NCExpr]] | None = None) -> NCExpr:
    env = _Env(alphabet, elements or {}, inverses or {})
    tree = parse_tree(text, env.signed_names())
    return _to_expr(_evaluate(tree, env, text), alphabet)


def parse(text: str, presentation: str = "ospq") -> NCExpr:
    """Parse DSL text into an element of the named presentation's free algebra."""
    from .catalog import element_resolvers
    from .presentations import get_presentation

    p = get_presentation(presentation)
    elements = element_resolvers(p.name)
    inverses = dict(p.inverses)
    if p.name == "ospq":
        inverses.update({"Y": "Yinv", "Yinv": "Y"})
    elif p.name == "slq":
        inverses.update({"y": "yinv", "yinv": "y"})
    return parse_with_alphabet(text, p.alphabet, inverses, elements)


# ---- printing ----

def _coeff_prefix(c: Scalar) -> tuple[bool, str]:
    """(negative, magnitude text) for use as a factor in front of a word."""
    text = format_scalar(c)
    if text.startswith("-") and not has_top_level(text, "+-"):
        return True, text[1:]
    return False, text


def format_word(word) -> str:
    return "*".join(word) if word else "1"


def format_expr(x: NCExpr, style: str = "canonical") -> str:
    if style == "latex":
        return format_latex(x)
    if style != "canonical":
        raise ValueError(f"unknown style {style!r}")
    if x.is_zero():
        return "0"
    items = x.sorted_items()
    parts = []
    for word, c in items:
        negative, mag = _coeff_prefix(c)
        if not word:
            body = mag
            if is_sum_text(mag) and len(items) > 1:
                body = f"({mag})"
        elif mag == "1":
            body = format_word(word)
        else:
            factor = f"({mag})" if is_sum_text(mag) else mag
            body = f"{factor}*{format_word(word)}"
        if not parts:
            parts.append(("-" if negative else "") + body)
        else:
            parts.append((" - " if negative else " + ") + body)
    return "".join(parts)


def format_tensor(t: TensorExpr) -> str:
    if t.is_zero():
        return "0"
    key = t.alphabet.word_key
    items = sorted(t.items(), key=lambda kv: tuple(key(w) for w in kv[0]))
    parts = []
    for words, c in items:
        negative, mag = _coeff_prefix(c)
        body = " (x) ".join(format_word(w) for w in words)
        if mag != "1":
            factor = f"({mag})" if is_sum_text(mag) else mag
            body = f"{factor}*{body}"
        if not parts:
            parts.append(("-" if negative else "") + body)
        else:
            parts.append((" - " if negative else " + ") + body)
    return "".join(parts)


# ---- LaTeX ----

_LATEX_GEN = {
    "A+": "A_{+}", "A-": "A_{-}", "Kinv": "K^{-1}", "J+": "J_{+}", "J-": "J_{-}",
    "kappa": "\\kappa", "kappainv": "\\kappa^{-1}", "wy": "\\omega_y",
    "Yinv": "Y^{-1}", "yinv": "y^{-1}",
    "I1": "I_1", "I2": "I_2", "I3": "I_3", "K1": "K_1", "K2": "K_2", "K3": "K_3",
}
_LATEX_SYM = {
    "w": "q^{\\nu}", "iota1": "\\iota_1", "iota2": "\\iota_2", "iota3": "\\iota_3",
    "alpha1": "\\alpha_1", "alpha2": "\\alpha_2", "alpha3": "\\alpha_3",
}


def _latex_monomial(exp) -> str:
    out = []
    for k, e in enumerate(exp):
        if not e:
            continue
        name = SYMBOLS[k]
        if name == "s":
            half = Fraction(e, 2)
            out.append("q" if half == 1 else f"q^{{{half}}}")
        elif name == "w":
            out.append("q^{\\nu}" if e == 1 else f"q^{{{e}\\nu}}")
        else:
            base = _LATEX_SYM.get(name, name)
            out.append(base if e == 1 else f"{base}^{{{e}}}")
    return " ".join(out)


def _latex_laurent(poly) -> str:
    if not poly:
        return "0"
    parts = []
    for exp in sorted(poly, reverse=True):
        c = poly[exp]
        mono = _latex_monomial(exp)
        negative = (c.im == 0 and c.re < 0) or (c.re == 0 and c.im < 0)
        mag = -c if negative else c
        if mag.im == 0:
            ctext = "" if (mag.re == 1 and mono) else (
                f"\\frac{{{mag.re.numerator}}}{{{mag.re.denominator}}}" if mag.re.denominator != 1 else str(mag.re))
        else:
            ctext = f"({mag})".replace("*", "")
        body = f"{ctext}{mono}" if ctext else mono
        parts.append(("-" if negative else ("+" if parts else "")) + body)
    return "".join(parts)


def _latex_signed(c: Scalar) -> tuple[bool, str]:
    """(negative, text) with a lone leading minus pulled out of fractions."""
    if c.is_laurent():
        text = _latex_laurent(c.laurent())
        if text.startswith("-") and not has_top_level(text[1:], "+-"):
            return True, text[1:]
        return False, text
    num, den = c.numerator_denominator()
    neg, top = _latex_signed(num)
    if neg and has_top_level(top, "+-"):
        neg, top = False, "-" + top
    return neg, f"\\frac{{{top}}}{{{_latex_laurent(den.laurent())}}}"


def latex_scalar(c: Scalar) -> str:
    neg, text = _latex_signed(c)
    return "-" + text if neg else text


def _latex_word(word) -> str:
    out = []
    k = 0
    while k < len(word):
        g = word[k]
        j = k
        while j < len(word) and word[j] == g:
            j += 1
        base = _LATEX_GEN.get(g, g)
        n = j - k
        if n == 1:
            out.append(base)
        elif "^" in base:
            out.append(f"{{{base}}}^{{{n}}}")
        else:
            out.append(f"{base}^{{{n}}}")
        k = j
    return " ".join(out)


def format_latex(x: NCExpr) -> str:
    if x.is_zero():
        return "0"
    parts = []
    for word, c in x.sorted_items():
        negative, text = _latex_signed(c)
        if word:
            if text == "1":
                body = _latex_word(word)
            elif is_sum_text(text) and not text.startswith("\\frac"):
                body = f"\\left({text}\\right){_latex_word(word)}"
            else:
                body = f"{text}\\,{_latex_word(word)}"
        else:
            body = text
        parts.append(("-" if negative else ("+" if parts else "")) + body)
    return " ".join(parts)
