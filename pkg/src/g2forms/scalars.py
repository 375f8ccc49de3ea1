"""Exact arithmetic in the real field K = Q(sqrt2, sqrt3, sqrt5).

An element is stored by its rational coordinates over the squarefree
radicals 1, sqrt2, sqrt3, sqrt5, sqrt6, sqrt10, sqrt15, sqrt30.  Internally a
radical is addressed by a 3-bit mask over the primes (2, 3, 5), so that the
product of two radicals is a mask XOR times the primes they share.
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

from gmpy2 import iroot, mpq, mpz

PRIMES = (2, 3, 5)
RADICANDS = (1, 2, 3, 5, 6, 10, 15, 30)

# coordinate order exposed by ScalarK.coords
_COORD_MASKS = (0, 1, 2, 4, 3, 5, 6, 7)


def _mask_value(mask: int) -> int:
    out = 1
    for bit, p in enumerate(PRIMES):
        if mask >> bit & 1:
            out *= p
    return out


_RADICAND_OF_MASK = tuple(_mask_value(m) for m in range(8))
_MASK_OF_RADICAND = {r: m for m, r in enumerate(_RADICAND_OF_MASK)}
_SHARED = tuple(tuple(_mask_value(a & b) for b in range(8)) for a in range(8))


class DivisionByZero(ZeroDivisionError):
    pass


class NotInField(ValueError):
    """A requested root does not lie in K."""


def _to_mpq(x) -> mpq:
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


class ScalarK:
    __slots__ = ("_t",)

    def __init__(self, value=0, radicand: int = 1):
        if isinstance(value, ScalarK):
            self._t = value._t
            return
        if radicand not in _MASK_OF_RADICAND:
            raise ValueError(f"radicand {radicand} not in {RADICANDS}")
        q = _to_mpq(value)
        self._t = {_MASK_OF_RADICAND[radicand]: q} if q else {}

    @classmethod
    def _raw(cls, terms: dict) -> ScalarK:
        obj = object.__new__(cls)
        obj._t = terms
        return obj

    @classmethod
    def from_coords(cls, coords) -> ScalarK:
        """Build from 8 rationals over (1, r2, r3, r5, r6, r10, r15, r30)."""
        coords = list(coords)
        if len(coords) != 8:
            raise ValueError("expected 8 coordinates")
        t = {}
        for m, c in zip(_COORD_MASKS, coords):
            q = _to_mpq(c)
            if q:
                t[m] = q
        return cls._raw(t)

    @classmethod
    def sqrt_of(cls, radicand: int) -> ScalarK:
        return cls(1, radicand)

    @property
    def coords(self) -> tuple:
        return tuple(Fraction(int(q.numerator), int(q.denominator))
                     for q in (self._t.get(m, mpq(0)) for m in _COORD_MASKS))

    def items(self):
        """(radicand, rational) pairs for the nonzero coordinates."""
        return [(_RADICAND_OF_MASK[m], q) for m, q in sorted(self._t.items(),
                key=lambda kv: _RADICAND_OF_MASK[kv[0]])]

    # -- predicates ---------------------------------------------------
    def __bool__(self):
        return bool(self._t)

    def is_rational(self) -> bool:
        return not self._t or (len(self._t) == 1 and 0 in self._t)

    def is_monomial(self) -> bool:
        return len(self._t) <= 1

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        q = self._t.get(0, mpq(0))
        return Fraction(int(q.numerator), int(q.denominator))

    # -- ring operations ----------------------------------------------
    @staticmethod
    def _coerce(other):
        if isinstance(other, ScalarK):
            return other
        if isinstance(other, (int, Rational)) or type(other).__name__ in ("mpz", "mpq"):
            return ScalarK(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        t = dict(self._t)
        for m, q in o._t.items():
            s = t.get(m, 0) + q
            if s:
                t[m] = s
            else:
                t.pop(m, None)
        return ScalarK._raw(t)

    __radd__ = __add__

    def __neg__(self):
        return ScalarK._raw({m: -q for m, q in self._t.items()})

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
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        t = {}
        for a, p in self._t.items():
            row = _SHARED[a]
            for b, q in o._t.items():
                m = a ^ b
                v = t.get(m, 0) + p * q * row[b]
                if v:
                    t[m] = v
                else:
                    t.pop(m, None)
        return ScalarK._raw(t)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out, base = ScalarK(1), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate(self, prime: int) -> ScalarK:
        """Galois conjugate sending sqrt(prime) to -sqrt(prime)."""
        bit = 1 << PRIMES.index(prime)
        return ScalarK._raw({m: (-q if m & bit else q) for m, q in self._t.items()})

    def inverse(self) -> ScalarK:
        if not self._t:
            raise DivisionByZero("inverse of 0 in K")
        if self.is_rational():
            return ScalarK._raw({0: 1 / self._t[0]})
        # multiply through by conjugates, descending the tower Q(r2,r3,r5) > Q(r2,r3) > Q(r2) > Q
        num = ScalarK(1)
        x = self
        for p in (5, 3, 2):
            c = x.conjugate(p)
            num = num * c
            x = x * c
        return num * ScalarK._raw({0: 1 / x._t[0]})

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    # -- comparison ---------------------------------------------------
    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._t == o._t

    def __hash__(self):
        if self.is_rational():
            return hash(self.to_rational())
        return hash(frozenset(self._t.items()))

    def sign(self) -> int:
        """Exact sign, by refining rational enclosures of the radicals."""
        if not self._t:
            return 0
        if self.is_rational():
            return 1 if self._t[0] > 0 else -1
        bits = 16
        while True:
            lo, hi = self._enclose(bits)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            bits *= 2

    def _enclose(self, bits: int):
        scale = mpz(1) << bits
        roots = {}
        for p in PRIMES:
            r = mpz(math.isqrt(p * (1 << (2 * bits))))
            roots[p] = (mpq(r, scale), mpq(r + 1, scale))
        lo = hi = mpq(0)
        for m, q in self._t.items():
            rlo = rhi = mpq(1)
            for bit, p in enumerate(PRIMES):
                if m >> bit & 1:
                    rlo *= roots[p][0]
                    rhi *= roots[p][1]
            if q > 0:
                lo += q * rlo
                hi += q * rhi
            else:
                lo += q * rhi
                hi += q * rlo
        return lo, hi

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __float__(self):
        return float(sum(float(q) * math.sqrt(_RADICAND_OF_MASK[m])
                         for m, q in self._t.items()))

    # -- text ---------------------------------------------------------
    def __repr__(self):
        return f"ScalarK({self})"

    def __str__(self):
        if not self._t:
            return "0"
        parts = []
        for r, q in self.items():
            parts.append(format_monomial_scalar(q, r))
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out


def format_monomial_scalar(q, radicand: int) -> str:
    q = Fraction(int(mpq(q).numerator), int(mpq(q).denominator))
    if radicand == 1:
        return str(q)
    return f"{q}r{radicand}"


def as_scalar(x) -> ScalarK:
    if isinstance(x, ScalarK):
        return x
    return ScalarK(x)


ZERO = ScalarK(0)
ONE = ScalarK(1)


def _rational_root(q: mpq, n: int):
    if q < 0:
        if n % 2 == 0:
            return None
        r = _rational_root(-q, n)
        return None if r is None else -r
    a, ok1 = iroot(mpz(q.numerator), n)
    b, ok2 = iroot(mpz(q.denominator), n)
    if ok1 and ok2:
        return mpq(a, b)
    return None


def _split(x: ScalarK, prime: int):
    """Write x = a + b*sqrt(prime) with a, b free of sqrt(prime)."""
    bit = 1 << PRIMES.index(prime)
    a, b = {}, {}
    for m, q in x._t.items():
        if m & bit:
            # sqrt(m) = sqrt(m ^ bit) * sqrt(prime)
            b[m ^ bit] = q
        else:
            a[m] = q
    return ScalarK._raw(a), ScalarK._raw(b)


def _sqrt_in(x: ScalarK, primes: tuple):
    if not x:
        return ZERO
    if not primes:
        if not x.is_rational():
            return None
        r = _rational_root(x._t[0], 2)
        return None if r is None else ScalarK._raw({0: r})
    p = primes[-1]
    rest = primes[:-1]
    a, b = _split(x, p)
    root_p = ScalarK.sqrt_of(p)
    if not b:
        r = _sqrt_in(a, rest)
        if r is not None:
            return r
        r = _sqrt_in(a / p, rest)
        return None if r is None else r * root_p
    # (c + d sqrt p)^2 = c^2 + p d^2 + 2cd sqrt p
    s = _sqrt_in(a * a - b * b * p, rest)
    if s is None:
        return None
    for cand in ((a + s) / 2, (a - s) / 2):
        c = _sqrt_in(cand, rest)
        if c:
            d = b / (2 * c)
            return c + d * root_p
    return None


def sqrt_k(x) -> ScalarK:
    """Nonnegative square root in K; raises NotInField if it does not exist."""
    x = as_scalar(x)
    if x.sign() < 0:
        raise NotInField(f"sqrt of negative {x}")
    r = _sqrt_in(x, PRIMES)
    if r is None or r * r != x:
        raise NotInField(f"sqrt({x}) is not in K")
    return r if r.sign() >= 0 else -r


def root_k(x, n: int) -> ScalarK:
    """Real n-th root in K.

    Squares are handled in general; odd roots only for elements of the
    form q*sqrt(m), which covers every determinant met in the catalog.
    """
    x = as_scalar(x)
    if n == 1:
        return x
    if n == 2:
        return sqrt_k(x)
    if n % 2 == 0:
        return sqrt_k(root_k(x, n // 2))
    if not x:
        return ZERO
    if not x.is_monomial():
        raise NotInField(f"{n}-th root of {x} not available")
    (m, q), = x._t.items()
    rad = _RADICAND_OF_MASK[m]
    # (p sqrt m)^n = p^n m^((n-1)/2) sqrt m
    p = _rational_root(q / mpz(rad) ** ((n - 1) // 2), n)
    if p is None:
        raise NotInField(f"{n}-th root of {x} is not in K")
    out = ScalarK._raw({m: p})
    assert out ** n == x
    return out
