"""Sparse multivariate polynomials and rational functions over K.

Variables are plain strings such as ``c2356``, ``alpha3``, ``a`` or ``C5``.
A monomial is a tuple of ``(name, exponent)`` pairs sorted by a natural
ordering of names (``c99`` before ``c100``).
"""
from __future__ import annotations

import re
from functools import cmp_to_key, lru_cache

from .scalars import ONE, ZERO, DivisionByZero, ScalarK, as_scalar


class DenominatorVanishes(ZeroDivisionError):
    pass


_SPLIT = re.compile(r"(\d+)")


@lru_cache(maxsize=None)
def var_key(name: str) -> tuple:
    return tuple(int(p) if i % 2 else p for i, p in enumerate(_SPLIT.split(name)))


@lru_cache(maxsize=200000)
def mono_mul(m1: tuple, m2: tuple) -> tuple:
    if not m1:
        return m2
    if not m2:
        return m1
    d = dict(m1)
    for v, e in m2:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items(), key=lambda kv: var_key(kv[0])))


def _mono_div(m1: tuple, m2: tuple):
    """m1 / m2 if m2 divides m1, else None."""
    d = dict(m1)
    for v, e in m2:
        r = d.get(v, 0) - e
        if r < 0:
            return None
        if r:
            d[v] = r
        else:
            del d[v]
    return tuple(sorted(d.items(), key=lambda kv: var_key(kv[0])))


def _mono_cmp(m1: tuple, m2: tuple) -> int:
    """Lexicographic order; variables earlier in natural order weigh more."""
    for (v1, e1), (v2, e2) in zip(m1, m2):
        if v1 != v2:
            return 1 if var_key(v1) < var_key(v2) else -1
        if e1 != e2:
            return 1 if e1 > e2 else -1
    return (len(m1) > len(m2)) - (len(m1) < len(m2))


mono_order_key = cmp_to_key(_mono_cmp)


def mono_str(m: tuple) -> str:
    return "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)


class PolyK:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        # terms: monomial -> ScalarK, no zeros
        self.terms = terms if terms is not None else {}

    @classmethod
    def const(cls, c) -> PolyK:
        c = as_scalar(c)
        return cls({(): c} if c else {})

    @classmethod
    def var(cls, name: str) -> PolyK:
        return cls({((name, 1),): ONE})

    # -- structure ----------------------------------------------------
    def variables(self) -> list:
        vs = {v for m in self.terms for v, _ in m}
        return sorted(vs, key=var_key)

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def constant_value(self) -> ScalarK:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms.get((), ZERO)

    def degree(self, var: str | None = None) -> int:
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e for _, e in m) for m in self.terms)
        return max(dict(m).get(var, 0) for m in self.terms)

    def leading(self):
        m = max(self.terms, key=mono_order_key)
        return m, self.terms[m]

    def coefficient_in(self, var: str, power: int) -> PolyK:
        """Coefficient of var**power, as a polynomial in the other variables."""
        out = {}
        for m, c in self.terms.items():
            d = dict(m)
            if d.get(var, 0) == power:
                d.pop(var, None)
                out[tuple(sorted(d.items(), key=lambda kv: var_key(kv[0])))] = c
        return PolyK(out)

    # -- arithmetic ---------------------------------------------------
    @staticmethod
    def _coerce(other):
        if isinstance(other, PolyK):
            return other
        if isinstance(other, RatFunK):
            return None
        try:
            return PolyK.const(other)
        except (TypeError, ValueError):
            return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        t = dict(self.terms)
        for m, c in o.terms.items():
            s = t[m] + c if m in t else c
            if s:
                t[m] = s
            else:
                t.pop(m, None)
        return PolyK(t)

    __radd__ = __add__

    def __neg__(self):
        return PolyK({m: -c for m, c in self.terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, ScalarK):
            if not other:
                return PolyK()
            return PolyK({m: c * other for m, c in self.terms.items()})
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        t = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                m = mono_mul(m1, m2)
                v = t[m] + c1 * c2 if m in t else c1 * c2
                if v:
                    t[m] = v
                else:
                    t.pop(m, None)
        return PolyK(t)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out, base = PolyK.const(1), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __truediv__(self, other):
        if isinstance(other, (PolyK, RatFunK)):
            return RatFunK(self) / other
        c = as_scalar(other)
        if not c:
            raise DivisionByZero("polynomial divided by 0")
        return self * c.inverse()

    def __rtruediv__(self, other):
        return RatFunK(PolyK.const(other)) / self

    def __eq__(self, other):
        if isinstance(other, RatFunK):
            return other == self
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def exact_div(self, q: PolyK):
        """self / q if q divides self exactly, else None."""
        if not q:
            raise DivisionByZero("division by zero polynomial")
        lm, lc = q.leading()
        inv = lc.inverse()
        rem = self
        quot = {}
        while rem.terms:
            m, c = rem.leading()
            md = _mono_div(m, lm)
            if md is None:
                return None
            f = c * inv
            quot[md] = f
            rem = rem - PolyK({md: f}) * q
        return PolyK(quot)

    def monomial_content(self) -> tuple:
        """Largest monomial dividing every term."""
        it = iter(self.terms)
        try:
            g = dict(next(it))
        except StopIteration:
            return ()
        for m in it:
            d = dict(m)
            g = {v: min(e, d[v]) for v, e in g.items() if v in d}
            if not g:
                break
        return tuple(sorted(g.items(), key=lambda kv: var_key(kv[0])))

    # -- evaluation ---------------------------------------------------
    def substitute(self, bindings: dict) -> "RatFunK":
        """Replace variables by polynomials or rational functions."""
        vals = {}
        for v, b in bindings.items():
            if isinstance(b, RatFunK):
                if not b.den:
                    raise DenominatorVanishes(f"binding for {v} has zero denominator")
                vals[v] = b
            else:
                vals[v] = RatFunK(b)
        out = RatFunK(PolyK())
        for m, c in self.terms.items():
            rest = []
            term = RatFunK(PolyK.const(c))
            for v, e in m:
                if v in vals:
                    term = term * vals[v] ** e
                else:
                    rest.append((v, e))
            if rest:
                term = term * PolyK({tuple(rest): ONE})
            out = out + term
        return out

    def subs(self, bindings: dict) -> PolyK:
        """Polynomial substitution (all bindings polynomial or scalar)."""
        vals = {v: (b if isinstance(b, PolyK) else PolyK.const(b)) for v, b in bindings.items()}
        cache = {}
        out = PolyK()
        for m, c in self.terms.items():
            term = PolyK.const(c)
            rest = []
            for v, e in m:
                if v in vals:
                    key = (v, e)
                    if key not in cache:
                        cache[key] = vals[v] ** e
                    term = term * cache[key]
                else:
                    rest.append((v, e))
            if rest:
                term = term * PolyK({tuple(rest): ONE})
            out = out + term
        return out

    def eval(self, point: dict) -> ScalarK:
        out = ZERO
        for m, c in self.terms.items():
            t = c
            for v, e in m:
                t = t * as_scalar(point[v]) ** e
            out = out + t
        return out

    # -- text ---------------------------------------------------------
    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: mono_order_key(mc[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for m, c in self.sorted_terms():
            pieces.append(_term_str(c, m))
        out = pieces[0]
        for p in pieces[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self):
        return f"PolyK({self})"


def _term_str(c: ScalarK, m: tuple) -> str:
    ms = mono_str(m)
    if not ms:
        return str(c) if c.is_monomial() else f"({c})"
    if c == ONE:
        return ms
    if c == -ONE:
        return "-" + ms
    cs = str(c)
    if not c.is_monomial():
        cs = f"({cs})"
    return f"{cs}*{ms}"


class RatFunK:
    """Quotient num/den of polynomials; den is monic for the lex order."""
    __slots__ = ("num", "den")
    __hash__ = None

    def __init__(self, num, den=None, _normalized=False):
        if not isinstance(num, PolyK):
            num = PolyK.const(num)
        if den is None:
            den = PolyK.const(1)
            _normalized = True
        elif not isinstance(den, PolyK):
            den = PolyK.const(den)
        if not den:
            raise DenominatorVanishes("zero denominator")
        if _normalized:
            self.num, self.den = num, den
        else:
            self.num, self.den = _normalize(num, den)

    def normalize(self) -> RatFunK:
        return RatFunK(self.num, self.den)

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def as_poly(self) -> PolyK:
        if not self.is_polynomial():
            raise ValueError(f"{self} is not a polynomial")
        return self.num * self.den.constant_value().inverse()

    def __bool__(self):
        return bool(self.num)

    @staticmethod
    def _coerce(other):
        if isinstance(other, RatFunK):
            return other
        if isinstance(other, PolyK):
            return RatFunK(other)
        try:
            return RatFunK(PolyK.const(other))
        except (TypeError, ValueError):
            return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RatFunK(self.num + o.num, self.den)
        return RatFunK(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunK(-self.num, self.den, _normalized=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatFunK(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.num:
            raise DenominatorVanishes("division by zero rational function")
        return RatFunK(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n: int):
        if n < 0:
            return RatFunK(1) / self ** (-n)
        return RatFunK(self.num ** n, self.den ** n, _normalized=(n <= 1) or self.den.is_constant())

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num * o.den == o.num * self.den

    def substitute(self, bindings: dict) -> RatFunK:
        n = self.num.substitute(bindings)
        d = self.den.substitute(bindings)
        if not d:
            raise DenominatorVanishes(f"denominator {self.den} vanishes under substitution")
        return n / d

    def eval(self, point: dict) -> ScalarK:
        d = self.den.eval(point)
        if not d:
            raise DenominatorVanishes(f"denominator {self.den} vanishes at {point}")
        return self.num.eval(point) / d

    def __str__(self):
        if self.den == PolyK.const(1):
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RatFunK({self})"


def _normalize(num: PolyK, den: PolyK):
    if not num:
        return PolyK(), PolyK.const(1)
    if den.is_constant():
        return num * den.constant_value().inverse(), PolyK.const(1)
    # cancel the common monomial factor
    g = dict(num.monomial_content())
    dg = dict(den.monomial_content())
    common = tuple(sorted(((v, min(e, dg[v])) for v, e in g.items() if v in dg),
                          key=lambda kv: var_key(kv[0])))
    if common:
        num = PolyK({_mono_div(m, common): c for m, c in num.terms.items()})
        den = PolyK({_mono_div(m, common): c for m, c in den.terms.items()})
    q = num.exact_div(den)
    if q is not None:
        return q, PolyK.const(1)
    q = den.exact_div(num)
    if q is not None:
        num, den = PolyK.const(1), q
    _, lc = den.leading()
    inv = lc.inverse()
    return num * inv, den * inv


def to_ratfun(x) -> RatFunK:
    if isinstance(x, RatFunK):
        return x
    if isinstance(x, PolyK):
        return RatFunK(x)
    return RatFunK(PolyK.const(x))


def to_poly(x) -> PolyK:
    if isinstance(x, PolyK):
        return x
    if isinstance(x, RatFunK):
        return x.as_poly()
    return PolyK.const(x)
