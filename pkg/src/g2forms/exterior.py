"""Exterior algebra of an oriented real vector space of dimension <= 7.

A basis blade e^{i1 ... ik} (i1 < ... < ik) is keyed by the bitmask with bit
i-1 set for each index i.  Coefficients may be ScalarK, PolyK or RatFunK.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from . import linalg
from .scalars import ONE, ZERO, NotInField, ScalarK, as_scalar, sqrt_k


class DimMismatch(ValueError):
    pass


class WrongDegree(ValueError):
    pass


class IrrationalVolume(ArithmeticError):
    pass


def mask_of(indices) -> int:
    m = 0
    for i in indices:
        m |= 1 << (i - 1)
    return m


@lru_cache(maxsize=None)
def indices_of(mask: int) -> tuple:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@lru_cache(maxsize=None)
def wedge_sign(a: int, b: int) -> int:
    """Sign of e^A ^ e^B relative to e^{A u B}; 0 if A and B meet."""
    if a & b:
        return 0
    inv = 0
    for i in indices_of(b):
        # elements of a greater than i must move past e^i
        inv += popcount(a >> i)
    return -1 if inv & 1 else 1


@lru_cache(maxsize=None)
def contract_sign(i: int, mask: int) -> int:
    """Sign of iota_{e_i} e^mask, which is +-e^{mask minus i}."""
    return -1 if popcount(mask & ((1 << (i - 1)) - 1)) & 1 else 1


def blades(dim: int, k: int) -> list:
    """Masks of degree k in lexicographic order of their index words."""
    return [mask_of(c) for c in combinations(range(1, dim + 1), k)]


def word_of(mask: int) -> str:
    return "".join(str(i) for i in indices_of(mask))


def _add_into(terms: dict, key, value):
    if not value:
        return
    if key in terms:
        s = terms[key] + value
        if s:
            terms[key] = s
        else:
            del terms[key]
    else:
        terms[key] = value


class Form:
    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: dict | None = None):
        if not 1 <= dim <= 9:
            raise ValueError(f"dimension {dim} out of range")
        self.dim = dim
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    @classmethod
    def blade(cls, dim: int, indices, coef=ONE) -> Form:
        idx = list(indices)
        m = mask_of(idx)
        if popcount(m) != len(idx) or any(not 1 <= i <= dim for i in idx):
            raise ValueError(f"bad index word {idx} in dimension {dim}")
        # sign of the permutation sorting idx
        sign = 1
        for x in range(len(idx)):
            for y in range(x + 1, len(idx)):
                if idx[x] > idx[y]:
                    sign = -sign
        c = coef if sign == 1 else -coef
        return cls(dim, {m: c})

    @classmethod
    def scalar(cls, dim: int, c) -> Form:
        return cls(dim, {0: c})

    @classmethod
    def volume(cls, dim: int) -> Form:
        return cls(dim, {(1 << dim) - 1: ONE})

    # -- structure ----------------------------------------------------
    def degrees(self) -> set:
        return {popcount(m) for m in self.terms}

    def degree(self) -> int:
        ds = self.degrees()
        if len(ds) > 1:
            raise WrongDegree(f"form is not homogeneous: degrees {sorted(ds)}")
        return ds.pop() if ds else 0

    def coefficient(self, indices) -> object:
        """Coefficient of the blade e^{indices}, indices in any order."""
        idx = list(indices) if not isinstance(indices, str) else [int(ch) for ch in indices]
        probe = Form.blade(self.dim, idx)
        (m, s), = probe.terms.items()
        c = self.terms.get(m, ZERO)
        return c if s == ONE else -c

    def items(self):
        """(mask, coefficient) pairs ordered by index word."""
        return sorted(self.terms.items(), key=lambda mc: (popcount(mc[0]), indices_of(mc[0])))

    def __bool__(self):
        return bool(self.terms)

    def map_coeffs(self, f) -> Form:
        return Form(self.dim, {m: f(c) for m, c in self.terms.items()})

    def component(self, k: int) -> Form:
        return Form(self.dim, {m: c for m, c in self.terms.items() if popcount(m) == k})

    # -- vector space -------------------------------------------------
    def _check(self, other: Form):
        if not isinstance(other, Form):
            raise TypeError(f"expected Form, got {type(other).__name__}")
        if other.dim != self.dim:
            raise DimMismatch(f"dimensions {self.dim} and {other.dim}")

    def __add__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        self._check(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            _add_into(t, m, c)
        return Form(self.dim, t)

    def __neg__(self):
        return Form(self.dim, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return self + (-other)

    def __mul__(self, c):
        if isinstance(c, (Form, Vector)):
            return NotImplemented
        return Form(self.dim, {m: v * c for m, v in self.terms.items()})

    def __rmul__(self, c):
        if isinstance(c, (Form, Vector)):
            return NotImplemented
        return Form(self.dim, {m: c * v for m, v in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        if self.dim != other.dim:
            return False
        return not (self - other).terms

    __hash__ = None

    # -- products -----------------------------------------------------
    def wedge(self, other: Form) -> Form:
        self._check(other)
        t = {}
        for a, x in self.terms.items():
            for b, y in other.terms.items():
                s = wedge_sign(a, b)
                if s:
                    v = x * y
                    _add_into(t, a | b, v if s > 0 else -v)
        return Form(self.dim, t)

    def __xor__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return self.wedge(other)

    def contract(self, x: Vector) -> Form:
        return contract(x, self)

    def __str__(self):
        from .dsl import format_form
        return format_form(self)

    def __repr__(self):
        return f"Form({self.dim}, {self})"


def wedge(*forms: Form) -> Form:
    out = forms[0]
    for f in forms[1:]:
        out = out.wedge(f)
    return out


def contract(x: Vector, a: Form) -> Form:
    """Interior product iota_x a."""
    if x.dim != a.dim:
        raise DimMismatch(f"vector dim {x.dim} vs form dim {a.dim}")
    t = {}
    for i, xi in enumerate(x.coords, start=1):
        if not xi:
            continue
        bit = 1 << (i - 1)
        for m, c in a.terms.items():
            if m & bit:
                v = xi * c
                _add_into(t, m ^ bit, v if contract_sign(i, m) > 0 else -v)
    return Form(a.dim, t)


class Vector:
    __slots__ = ("dim", "coords")

    def __init__(self, coords):
        self.coords = tuple(coords)
        self.dim = len(self.coords)

    @classmethod
    def basis(cls, dim: int, i: int, coef=ONE) -> Vector:
        return cls([coef if j == i else ZERO for j in range(1, dim + 1)])

    def __getitem__(self, i):
        return self.coords[i]

    def __bool__(self):
        return any(bool(c) for c in self.coords)

    def __add__(self, other):
        return Vector([a + b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return Vector([-a for a in self.coords])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        return Vector([a * c for a in self.coords])

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Vector):
            return NotImplemented
        return self.dim == other.dim and all(not (a - b) for a, b in zip(self.coords, other.coords))

    __hash__ = None

    def map_coeffs(self, f) -> Vector:
        return Vector([f(c) for c in self.coords])

    def __str__(self):
        from .dsl import format_vector
        return format_vector(self)

    def __repr__(self):
        return f"Vector({self})"


class Metric:
    """Constant symmetric bilinear form with an orientation sign."""

    __slots__ = ("dim", "matrix", "orientation", "_inv")

    def __init__(self, matrix, orientation: int = 1):
        self.matrix = [[as_scalar(x) for x in r] for r in matrix]
        self.dim = len(self.matrix)
        if not linalg.is_symmetric(self.matrix):
            raise ValueError("metric matrix is not symmetric")
        if orientation not in (1, -1):
            raise ValueError("orientation must be +1 or -1")
        self.orientation = orientation
        self._inv = None

    @classmethod
    def identity(cls, dim: int, orientation: int = 1) -> Metric:
        return cls(linalg.identity(dim), orientation)

    def is_identity(self) -> bool:
        return self.matrix == linalg.identity(self.dim)

    def determinant(self) -> ScalarK:
        return linalg.det(self.matrix)

    def inverse_matrix(self) -> list:
        if self._inv is None:
            self._inv = linalg.inverse(self.matrix)
        return self._inv

    def __call__(self, x: Vector, y: Vector):
        out = ZERO
        for i, xi in enumerate(x.coords):
            if not xi:
                continue
            for j, yj in enumerate(y.coords):
                if yj and self.matrix[i][j]:
                    out = out + xi * self.matrix[i][j] * yj
        return out

    def flat(self, x: Vector) -> Form:
        """The covector g(x, .)."""
        t = {}
        for j in range(self.dim):
            s = ZERO
            for i, xi in enumerate(x.coords):
                if xi and self.matrix[i][j]:
                    s = s + xi * self.matrix[i][j]
            if s:
                t[1 << j] = s
        return Form(self.dim, t)

    def __eq__(self, other):
        if not isinstance(other, Metric):
            return NotImplemented
        return self.matrix == other.matrix and self.orientation == other.orientation

    __hash__ = None


def _minor(mat: list, rows: tuple, cols: tuple):
    if not rows:
        return ONE
    return linalg.det([[mat[r - 1][c - 1] for c in cols] for r in rows])


def hodge_star(a: Form, g: Metric | None = None) -> Form:
    """Hodge dual: b ^ *a = g(b, a) vol_g with vol_g = orientation sqrt|det g| e^{1..n}."""
    n = a.dim
    if g is None:
        g = Metric.identity(n)
    if g.dim != n:
        raise DimMismatch(f"metric dim {g.dim} vs form dim {n}")
    full = (1 << n) - 1
    if g.is_identity():
        t = {}
        for m, c in a.terms.items():
            s = wedge_sign(m, full ^ m) * g.orientation
            t[full ^ m] = c if s > 0 else -c
        return Form(n, t)
    det = g.determinant()
    try:
        vol = sqrt_k(abs(det)) * g.orientation
    except NotInField as exc:
        raise IrrationalVolume(f"sqrt(|det g|) = sqrt({abs(det)}) is not in K") from exc
    ginv = g.inverse_matrix()
    raised = {}
    for m, c in a.terms.items():
        idx = indices_of(m)
        k = len(idx)
        for j in blades(n, k):
            gj = _minor(ginv, indices_of(j), idx)
            if gj:
                _add_into(raised, j, gj * c)
    t = {}
    for j, c in raised.items():
        s = wedge_sign(j, full ^ j)
        v = c * vol
        _add_into(t, full ^ j, v if s > 0 else -v)
    return Form(n, t)


def pullback(a: Form, M: list) -> Form:
    """Substitute covectors: the i-th basis covector of a's space becomes
    sum_j M[i][j] e^j in a space of dimension len(M[0])."""
    if len(M) != a.dim:
        raise DimMismatch(f"matrix has {len(M)} rows, form has dim {a.dim}")
    m_dim = len(M[0])
    t = {}
    cache = {}
    for mask, c in a.terms.items():
        rows = indices_of(mask)
        k = len(rows)
        if k not in cache:
            cache[k] = blades(m_dim, k)
        for j in cache[k]:
            d = _minor(M, rows, indices_of(j))
            if d:
                _add_into(t, j, d * c)
    return Form(m_dim, t)


def coframe_matrix(coframe: list, dim: int | None = None) -> list:
    """Rows of coefficients of a list of 1-forms."""
    n = dim if dim is not None else coframe[0].dim
    rows = []
    for f in coframe:
        if f.degrees() - {1}:
            raise WrongDegree("coframe entries must be 1-forms")
        rows.append([f.terms.get(1 << j, ZERO) for j in range(n)])
    return rows
