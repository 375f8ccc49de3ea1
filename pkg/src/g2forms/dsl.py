"""Text syntax for coefficients, polynomials, forms, vectors and algebras.

Coefficients are written ``rational ["r" radicand]`` with an optional
trailing ``/den``: ``1/5r5`` and ``1r5/5`` both denote sqrt(5)/5.  A term of
a form is a product of factors whose last factor is a bare digit string,
the index word: ``-1r2/2*246``, ``(c1247-c2357)*3456``, ``c2356*4``.
Parenthesized subexpressions and identifiers build polynomial coefficients.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .exterior import Form, Vector, word_of
from .polys import PolyK, RatFunK, var_key
from .scalars import RADICANDS, ScalarK


class DSLSyntaxError(SyntaxError):
    def __init__(self, message: str, position: int, expected: str = ""):
        self.position = position
        self.expected = expected
        detail = f" (expected {expected})" if expected else ""
        super().__init__(f"{message} at position {position}{detail}")


class IndexOutOfRange(ValueError):
    pass


class DuplicateIndex(ValueError):
    pass


_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>\d+(?:/\d+)?(?:r\d+(?:/\d+)?)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[-+*^()/,=])
""", re.VERBOSE)


@dataclass
class Token:
    kind: str
    text: str
    pos: int

    @property
    def bare(self) -> bool:
        return self.kind == "num" and self.text.isdigit()


def tokenize(text: str) -> list:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise DSLSyntaxError(f"unexpected character {text[pos]!r}", pos, "number, name or operator")
        if m.lastgroup != "ws":
            out.append(Token(m.lastgroup, m.group(), pos))
        pos = m.end()
    out.append(Token("end", "", len(text)))
    return out


def scalar_from_literal(text: str, pos: int = 0) -> ScalarK:
    m = re.fullmatch(r"(\d+)(?:/(\d+))?(?:r(\d+)(?:/(\d+))?)?", text)
    if not m:
        raise DSLSyntaxError(f"bad number {text!r}", pos, "coefficient")
    num, den, rad, den2 = m.groups()
    q = Fraction(int(num), int(den) if den else 1)
    if den2:
        q /= int(den2)
    if rad is None:
        return ScalarK(q)
    r = int(rad)
    if r not in RADICANDS or r == 1:
        raise DSLSyntaxError(f"radicand {r} not allowed", pos, "radicand in 2,3,5,6,10,15,30")
    return ScalarK(q, r)


def parse_scalar(text: str) -> ScalarK:
    p = parse_poly(text)
    if not isinstance(p, PolyK) or not p.is_constant():
        raise DSLSyntaxError("expected a constant", 0, "constant coefficient")
    return p.constant_value()


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def take(self, text: str | None = None, kind: str | None = None) -> Token:
        t = self.tok
        if (text is not None and t.text != text) or (kind is not None and t.kind != kind):
            raise DSLSyntaxError(f"unexpected {t.text or 'end of input'!r}", t.pos, repr(text) if text else kind)
        self.i += 1
        return t

    def at(self, text: str) -> bool:
        return self.tok.kind == "op" and self.tok.text == text

    def expect_end(self):
        if self.tok.kind != "end":
            raise DSLSyntaxError(f"unexpected {self.tok.text!r}", self.tok.pos, "end of input")

    # -- polynomial expressions ---------------------------------------
    def expr(self):
        sign = 1
        if self.at("+") or self.at("-"):
            sign = -1 if self.take().text == "-" else 1
        out = self.product()
        if sign < 0:
            out = -out
        while self.at("+") or self.at("-"):
            op = self.take().text
            t = self.product()
            out = out + t if op == "+" else out - t
        return out

    def product(self):
        out = self.power()
        while True:
            if self.at("*"):
                self.take()
                out = out * self.power()
            elif self.at("/"):
                self.take()
                out = out / self.power()
            elif self.tok.kind in ("num", "ident") or self.at("("):
                out = out * self.power()
            else:
                return out

    def power(self):
        base = self.atom()
        if self.at("^"):
            self.take()
            e = self.take(kind="num")
            if not e.bare:
                raise DSLSyntaxError("exponent must be a nonnegative integer", e.pos, "integer")
            base = base ** int(e.text)
        return base

    def atom(self):
        t = self.tok
        if t.kind == "num":
            self.i += 1
            return PolyK.const(scalar_from_literal(t.text, t.pos))
        if t.kind == "ident":
            self.i += 1
            return PolyK.var(t.text)
        if self.at("("):
            self.take()
            e = self.expr()
            self.take(")")
            return e
        raise DSLSyntaxError(f"unexpected {t.text or 'end of input'!r}", t.pos, "number, name or '('")

    # -- form expressions ---------------------------------------------
    def form_sum(self, dim: int, word_len: tuple):
        terms = []
        first = True
        while True:
            sign = 1
            if self.at("+") or self.at("-"):
                sign = -1 if self.take().text == "-" else 1
            elif not first:
                break
            coef, word, pos = self.form_term()
            terms.append((coef if sign > 0 else -coef, word, pos))
            first = False
            if not (self.at("+") or self.at("-")):
                break
        out = Form(dim)
        for coef, word, pos in terms:
            idx = [int(ch) for ch in word]
            if len(set(idx)) != len(idx):
                raise DuplicateIndex(f"repeated index in {word!r} at position {pos}")
            bad = [i for i in idx if not 1 <= i <= dim]
            if bad:
                raise IndexOutOfRange(f"index {bad[0]} in {word!r} exceeds dimension {dim} (position {pos})")
            if word_len and len(idx) not in word_len:
                raise DSLSyntaxError(f"index word {word!r} has wrong length", pos,
                                     f"word of length {' or '.join(map(str, word_len))}")
            out = out + Form.blade(dim, idx, coef)
        return out

    def form_term(self):
        """Factors ending in a bare digit string; returns (coefficient, word, pos)."""
        factors = []
        while True:
            t = self.tok
            if t.bare and not self.peek().text == "^" and not (self.peek().text == "/"):
                nxt = self.peek()
                ends = nxt.kind in ("end",) or (nxt.kind == "op" and nxt.text in "+-,)")
                if ends:
                    self.i += 1
                    coef = PolyK.const(1)
                    for f in factors:
                        coef = coef * f
                    return coef, t.text, t.pos
            factors.append(self.power())
            if self.at("*"):
                self.take()
            elif self.at("/"):
                self.take()
                d = self.power()
                factors[-1] = factors[-1] / d
                if self.at("*"):
                    self.take()
            elif not (self.tok.kind in ("num", "ident") or self.at("(")):
                raise DSLSyntaxError(f"unexpected {self.tok.text or 'end of input'!r}", self.tok.pos,
                                     "index word")


def _simplify(x):
    """Constant polynomials become ScalarK, polynomial fractions become PolyK."""
    if isinstance(x, RatFunK):
        if x.is_polynomial():
            x = x.as_poly()
        else:
            return x
    if isinstance(x, PolyK) and x.is_constant():
        return x.constant_value()
    return x


def _simplify_form(f: Form) -> Form:
    return Form(f.dim, {m: _simplify(c) for m, c in f.terms.items()})


def parse_poly(text: str):
    p = _Parser(text)
    e = p.expr()
    p.expect_end()
    if isinstance(e, RatFunK) and e.is_polynomial():
        return e.as_poly()
    return e


def parse_form(text: str, dim: int) -> Form:
    p = _Parser(text)
    if p.tok.bare and p.tok.text == "0" and p.peek().kind == "end":
        return Form(dim)
    f = p.form_sum(dim, ())
    p.expect_end()
    return _simplify_form(f)


def parse_vector(text: str, dim: int) -> Vector:
    f = parse_form(text, dim)
    if f.degrees() - {1}:
        raise DSLSyntaxError("vector terms must have single-digit index words", 0, "single digit")
    return Vector([f.terms.get(1 << j, ScalarK(0)) for j in range(dim)])


def parse_equations(text: str) -> list:
    """The list of 2-forms d e^1, ..., d e^n of a structure-equation string."""
    p = _Parser(text)
    p.take("(")
    entries = []
    starts = []
    # the dimension is the number of entries; count commas at depth one first
    depth = 0
    n = 1
    for t in p.toks:
        if t.text == "(":
            depth += 1
        elif t.text == ")":
            depth -= 1
        elif t.text == "," and depth == 1:
            n += 1
    while True:
        starts.append(p.tok.pos)
        if p.tok.bare and p.tok.text == "0" and p.peek().text in (",", ")"):
            p.i += 1
            entries.append(Form(n))
        else:
            entries.append(_simplify_form(p.form_sum(n, (2,))))
        if p.at(","):
            p.take()
            continue
        p.take(")")
        break
    p.expect_end()
    return entries


# -- printing -----------------------------------------------------------

def format_scalar(c: ScalarK) -> str:
    if c.is_monomial():
        return str(c)
    return f"({c})"


def _coef_prefix(c) -> str:
    """Text placed before the index word, including the joining '*'."""
    if isinstance(c, ScalarK):
        if c == 1:
            return ""
        if c == -1:
            return "-"
        return format_scalar(c) + "*"
    if isinstance(c, PolyK):
        if len(c.terms) == 1:
            return str(c) + "*"
        return f"({c})*"
    if isinstance(c, RatFunK):
        if c.is_polynomial():
            return _coef_prefix(c.as_poly())
        return f"({c})*"
    return f"({c})*"


def format_form(f: Form, compact: bool = False) -> str:
    if not f.terms:
        return "0"
    pieces = []
    for m, c in f.items():
        w = word_of(m) if m else ""
        pre = _coef_prefix(c)
        if not w:
            pieces.append(pre[:-1] if pre.endswith("*") else (pre + "1"))
        else:
            pieces.append(pre + w)
    sep_plus, sep_minus = ("+", "-") if compact else (" + ", " - ")
    out = pieces[0]
    for p in pieces[1:]:
        out += sep_minus + p[1:] if p.startswith("-") else sep_plus + p
    return out


def format_vector(v: Vector) -> str:
    return format_form(Form(v.dim, {1 << j: c for j, c in enumerate(v.coords)}))


def format_equations(diff: list) -> str:
    return "(" + ",".join(format_form(f, compact=True) for f in diff) + ")"


def basis_word_form(dim: int, word: str) -> Form:
    return Form.blade(dim, [int(ch) for ch in word])


def sorted_names(names) -> list:
    return sorted(names, key=var_key)

