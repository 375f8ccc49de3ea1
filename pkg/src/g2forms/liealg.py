"""Lie algebras given by Chevalley-Eilenberg structure equations.

Convention: an entry ``23`` in position k means d e^k = e^{23}.  Brackets
follow from d e^k(x, y) = -e^k([x, y]), so d e^k = sum a^k_ij e^{ij} gives
[e_i, e_j] = -sum_k a^k_ij e_k.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import linalg
from .dsl import format_equations, parse_equations
from .exterior import DimMismatch, Form, Vector, blades, indices_of, mask_of, pullback, wedge_sign
from .polys import PolyK, var_key
from .scalars import ONE, ZERO, as_scalar


class NotNilpotent(ValueError):
    pass


class NotCentral(ValueError):
    pass


class ZeroVector(ValueError):
    pass


def _add(t: dict, k, v):
    if not v:
        return
    s = t[k] + v if k in t else v
    if s:
        t[k] = s
    else:
        t.pop(k, None)


class LieAlgebra:
    def __init__(self, diff: list, name: str = ""):
        self.dim = len(diff)
        for f in diff:
            if f.dim != self.dim:
                raise DimMismatch(f"generator differential has dim {f.dim}, expected {self.dim}")
            if f.terms and f.degrees() != {2}:
                raise ValueError("generator differentials must be 2-forms")
        self.diff = list(diff)
        self.name = name
        self._dcache = {}
        self._brackets = None

    @classmethod
    def parse(cls, text: str, name: str = "") -> LieAlgebra:
        return cls(parse_equations(text), name)

    @classmethod
    def abelian(cls, dim: int) -> LieAlgebra:
        return cls([Form(dim) for _ in range(dim)], f"R{dim}")

    def equations(self) -> str:
        return format_equations(self.diff)

    def __str__(self):
        return self.equations()

    def __eq__(self, other):
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return self.dim == other.dim and all(a == b for a, b in zip(self.diff, other.diff))

    __hash__ = None

    # -- differential -------------------------------------------------
    def d_blade(self, mask: int) -> dict:
        if mask in self._dcache:
            return self._dcache[mask]
        idx = indices_of(mask)
        out = {}
        for p, i in enumerate(idx):
            rest = mask ^ (1 << (i - 1))
            for m2, c in self.diff[i - 1].terms.items():
                # e^{i1..} with e^{ip} replaced by d e^{ip}: move e^{ip} to front first
                if m2 & rest:
                    continue
                s = wedge_sign(m2, rest) * (-1 if p & 1 else 1)
                _add(out, m2 | rest, c if s > 0 else -c)
        self._dcache[mask] = out
        return out

    def d(self, a: Form) -> Form:
        if a.dim != self.dim:
            raise DimMismatch(f"form dim {a.dim} vs algebra dim {self.dim}")
        t = {}
        for m, c in a.terms.items():
            for m2, s in self.d_blade(m).items():
                _add(t, m2, s * c)
        return Form(self.dim, t)

    def jacobi_failures(self) -> list:
        """Generators i with d(d e^i) != 0."""
        return [i + 1 for i, f in enumerate(self.diff) if self.d(f)]

    def is_jacobi(self) -> bool:
        return not self.jacobi_failures()

    # -- brackets -----------------------------------------------------
    def bracket_table(self) -> dict:
        """(i, j) -> list of coordinates of [e_i, e_j], for i < j (1-based)."""
        if self._brackets is None:
            tab = {}
            for i in range(1, self.dim + 1):
                for j in range(i + 1, self.dim + 1):
                    m = mask_of((i, j))
                    tab[(i, j)] = [-as_scalar(self.diff[k].terms.get(m, ZERO)) for k in range(self.dim)]
            self._brackets = tab
        return self._brackets

    def bracket_basis(self, i: int, j: int) -> list:
        if i == j:
            return [ZERO] * self.dim
        if i < j:
            return self.bracket_table()[(i, j)]
        return [-x for x in self.bracket_table()[(j, i)]]

    def bracket(self, x: Vector, y: Vector) -> Vector:
        out = [ZERO] * self.dim
        for i, xi in enumerate(x.coords, 1):
            if not xi:
                continue
            for j, yj in enumerate(y.coords, 1):
                if not yj or i == j:
                    continue
                b = self.bracket_basis(i, j)
                for k in range(self.dim):
                    if b[k]:
                        out[k] = out[k] + xi * yj * b[k]
        return Vector(out)

    def ad_matrix(self, i: int) -> list:
        """Matrix of ad_{e_i}: column j holds [e_i, e_j]."""
        cols = [self.bracket_basis(i, j) for j in range(1, self.dim + 1)]
        return linalg.transpose(cols)

    def is_abelian(self) -> bool:
        return all(not f for f in self.diff)

    # -- structure ----------------------------------------------------
    def center(self) -> list:
        n = self.dim
        rows = []
        for j in range(1, n + 1):
            for k in range(n):
                rows.append([self.bracket_basis(i, j)[k] for i in range(1, n + 1)])
        rows = [r for r in rows if any(r)]
        return [Vector(v) for v in linalg.nullspace(rows, ncols=n)]

    def is_central(self, x: Vector) -> bool:
        return all(not self.bracket(x, Vector.basis(self.dim, j)) for j in range(1, self.dim + 1))

    def _span_basis(self, vectors: list) -> list:
        rows = [list(v) for v in vectors if any(v)]
        if not rows:
            return []
        red, _ = linalg.rref(rows)
        return red

    def lower_central_series(self) -> list:
        """Bases of C^1 = [g, g], C^2 = [g, C^1], ... until zero."""
        n = self.dim
        cur = self._span_basis([self.bracket_basis(i, j) for i in range(1, n + 1)
                                for j in range(i + 1, n + 1)])
        series = [cur]
        for _ in range(n + 1):
            if not cur:
                return series
            nxt = []
            for i in range(1, n + 1):
                for v in cur:
                    nxt.append(self.bracket(Vector.basis(n, i), Vector(v)).coords)
            new = self._span_basis(nxt)
            if len(new) == len(cur):
                raise NotNilpotent(f"lower central series stabilizes at dimension {len(cur)}")
            cur = new
            series.append(cur)
        raise NotNilpotent("lower central series does not terminate")

    def nilpotency_step(self) -> int:
        # the series ends with its first zero term C^s, and s is the step
        return len(self.lower_central_series())

    # -- constructions ------------------------------------------------
    def direct_sum_with_line(self) -> LieAlgebra:
        n = self.dim + 1
        diff = [Form(n, f.terms) for f in self.diff] + [Form(n)]
        return LieAlgebra(diff, f"{self.name}+R" if self.name else "")

    def change_basis(self, M: list) -> LieAlgebra:
        """Algebra written in the coframe f^i = sum_j M[i][j] e^j."""
        Minv = linalg.inverse(M)
        diff = []
        for row in M:
            de = Form(self.dim)
            for j, c in enumerate(row):
                if c:
                    de = de + self.diff[j] * c
            diff.append(pullback(de, Minv))
        return LieAlgebra(diff)

    def quotient_by_central(self, x: Vector) -> tuple:
        if not x:
            raise ZeroVector("cannot quotient by the zero vector")
        if not self.is_central(x):
            raise NotCentral(f"{x} is not central")
        return Quotient.build(self, x)


@dataclass
class Quotient:
    """g / span(X) for central X.

    The basis of h is the image of e_i (i != p), where p is the last
    coordinate with x_p != 0.  pi^* f^i = e^i - (x_i / x_p) e^p.
    """
    g: LieAlgebra
    x: Vector
    pivot: int
    keep: list
    lift_matrix: list
    h: LieAlgebra = field(default=None)

    @classmethod
    def build(cls, g: LieAlgebra, x: Vector) -> Quotient:
        n = g.dim
        p = max(i for i in range(1, n + 1) if x.coords[i - 1])
        keep = [i for i in range(1, n + 1) if i != p]
        xp = x.coords[p - 1]
        rows = []
        for i in keep:
            row = [ZERO] * n
            row[i - 1] = ONE
            if x.coords[i - 1]:
                row[p - 1] = -(x.coords[i - 1] / xp)
            rows.append(row)
        q = cls(g, x, p, keep, rows)
        diff = [q.push(g.d(Form(n, {1 << (j - 1): r[j - 1] for j in range(1, n + 1) if r[j - 1]})))
                for r in rows]
        q.h = LieAlgebra(diff)
        return q

    def pull(self, a: Form) -> Form:
        """pi^* from forms on h to forms on g."""
        return pullback(a, self.lift_matrix)

    def push(self, a: Form) -> Form:
        """pi_* of a form on g annihilated by X."""
        from .exterior import contract
        if contract(self.x, a):
            raise ValueError("form is not basic: iota_X does not vanish")
        p_bit = 1 << (self.pivot - 1)
        t = {}
        for m, c in a.terms.items():
            if m & p_bit:
                continue
            nm = 0
            for new, old in enumerate(self.keep):
                if m >> (old - 1) & 1:
                    nm |= 1 << new
            t[nm] = c
        return Form(self.g.dim - 1, t)

    def push_vector(self, v: Vector) -> Vector:
        """Image in h of a vector of g, in the basis of images of e_i (i != p)."""
        return Vector([sum((r[j] * v.coords[j] for j in range(self.g.dim) if r[j] and v.coords[j]), ZERO)
                       for r in self.lift_matrix])


@dataclass
class GenericClosedForm:
    algebra: LieAlgebra
    degree: int
    names: list
    basis: list

    @property
    def parameters(self) -> list:
        return list(self.names)

    def assembled(self) -> Form:
        out = Form(self.algebra.dim)
        for name, b in zip(self.names, self.basis):
            out = out + b.map_coeffs(lambda c, v=PolyK.var(name): v * c)
        return out

    def __len__(self):
        return len(self.basis)


def differential_matrix(g: LieAlgebra, k: int) -> tuple:
    src = blades(g.dim, k)
    dst = blades(g.dim, k + 1)
    pos = {m: r for r, m in enumerate(dst)}
    mat = [[ZERO] * len(src) for _ in dst]
    for c, m in enumerate(src):
        for m2, v in g.d_blade(m).items():
            mat[pos[m2]][c] = as_scalar(v)
    return mat, src, dst


def closed_forms(g: LieAlgebra, k: int, prefix: str = "c") -> GenericClosedForm:
    """Echelonized basis of closed k-forms.

    The kernel is solved with the largest index words as dependent
    coordinates, so each basis element is labelled by a free word I and has
    coefficient 1 on e^I and 0 on every other free word.
    """
    if not 0 <= k <= g.dim:
        raise ValueError(f"degree {k} out of range")
    mat, src, _ = differential_matrix(g, k)
    rows = [r for r in mat if any(r)]
    order = list(range(len(src)))[::-1]
    if rows:
        red, pivots = linalg.rref(rows, order)
    else:
        red, pivots = [], []
    items = []
    for f in order:
        if f in pivots:
            continue
        t = {src[f]: ONE}
        for row, p in zip(red, pivots):
            if row[f]:
                t[src[p]] = -row[f]
        items.append((src[f], Form(g.dim, t)))
    items.sort(key=lambda it: indices_of(it[0]))
    names = [prefix + "".join(str(i) for i in indices_of(m)) for m, _ in items]
    return GenericClosedForm(g, k, names, [f for _, f in items])


def form_differential(g: LieAlgebra, a: Form) -> Form:
    return g.d(a)


def parametric_basis(form: Form) -> tuple:
    """Split a form whose coefficients are linear forms in parameters into
    (names, forms) with form = sum name * forms[name]."""
    pieces = {}
    for m, c in form.terms.items():
        p = c if isinstance(c, PolyK) else PolyK.const(c)
        for mono, coef in p.terms.items():
            if len(mono) != 1 or mono[0][1] != 1:
                raise ValueError(f"coefficient {p} is not linear homogeneous in the parameters")
            name = mono[0][0]
            pieces.setdefault(name, {})[m] = coef
    names = sorted(pieces, key=var_key)
    return names, [Form(form.dim, pieces[n]) for n in names]


def echelonize_span(g: LieAlgebra, degree: int, forms: list, prefix: str = "c") -> GenericClosedForm:
    """Canonical basis of span(forms): reduced echelon form with index words in
    increasing order, each element named after its pivot word.  For a space of
    closed forms this reproduces the basis returned by ``closed_forms``."""
    cols = blades(g.dim, degree)
    rows = [[f.terms.get(m, ZERO) for m in cols] for f in forms]
    rows = [r for r in rows if any(r)]
    if not rows:
        return GenericClosedForm(g, degree, [], [])
    red, pivots = linalg.rref(rows)
    basis = []
    names = []
    for row, p in zip(red, pivots):
        basis.append(Form(g.dim, {m: c for m, c in zip(cols, row) if c}))
        names.append(prefix + "".join(str(i) for i in indices_of(cols[p])))
    return GenericClosedForm(g, degree, names, basis)
