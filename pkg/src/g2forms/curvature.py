"""Left-invariant Riemannian geometry of nilpotent Lie algebras.

All curvature is computed in a metric-orthonormal basis u_1..u_n.  With
c_ijk = <[u_i, u_j], u_k> the Ricci form of a nilpotent algebra is
Ric_ab = -1/2 sum_ij c_aij c_bij + 1/4 sum_ij c_ija c_ijb.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import linalg
from .dsl import parse_poly
from .exterior import Form, Metric, Vector
from .liealg import LieAlgebra
from .polys import PolyK, RatFunK, to_ratfun
from .scalars import ONE, ZERO, NotInField, ScalarK, as_scalar, sqrt_k


class IrrationalGramSchmidt(ArithmeticError):
    pass


class NotUnit(ValueError):
    pass


class StepNotLinear(ValueError):
    pass


class DenominatorVanishesOnConstraint(ArithmeticError):
    pass


# -- orthonormal frames ---------------------------------------------------

def orthonormal_basis(metric: Metric) -> list:
    """Exact Gram-Schmidt on e_1..e_n; returns the matrix P whose columns are u_a."""
    n = metric.dim
    us = []
    for i in range(1, n + 1):
        v = Vector.basis(n, i)
        for u in us:
            c = metric(v, u)
            if c:
                v = v - u * c
        n2 = metric(v, v)
        if n2.sign() <= 0:
            raise ValueError("metric is not positive definite")
        try:
            s = sqrt_k(n2)
        except NotInField as exc:
            raise IrrationalGramSchmidt(f"|v|^2 = {n2} has no square root in K") from exc
        us.append(v * s.inverse())
    return linalg.transpose([list(u.coords) for u in us])


def orthonormal_algebra(g: LieAlgebra, metric: Metric | None) -> tuple:
    """(algebra written in an orthonormal basis, P with columns u_a)."""
    if metric is None or metric.is_identity():
        return g, linalg.identity(g.dim)
    P = orthonormal_basis(metric)
    # the dual coframe of the columns of P is given by the rows of P^-1
    return g.change_basis(linalg.inverse(P)), P


def structure_constants(g: LieAlgebra) -> list:
    """c[i][j][k] = k-th coordinate of [e_i, e_j] (0-based)."""
    n = g.dim
    return [[g.bracket_basis(i, j) for j in range(1, n + 1)] for i in range(1, n + 1)]


def _ricci_orthonormal(h: LieAlgebra) -> list:
    n = h.dim
    c = structure_constants(h)
    quarter = ScalarK(1) / 4
    half = ScalarK(1) / 2
    R = [[ZERO] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            s1 = ZERO
            s2 = ZERO
            for i in range(n):
                for j in range(n):
                    x, y = c[a][i][j], c[b][i][j]
                    if x and y:
                        s1 = s1 + x * y
                    x, y = c[i][j][a], c[i][j][b]
                    if x and y:
                        s2 = s2 + x * y
            R[a][b] = R[b][a] = s2 * quarter - s1 * half
    return R


def ricci(g: LieAlgebra, metric: Metric | None = None) -> list:
    """Ricci operator in the orthonormal basis of ``orthonormal_basis``."""
    g.nilpotency_step()
    h, _ = orthonormal_algebra(g, metric)
    return _ricci_orthonormal(h)


def derivation_defect(g: LieAlgebra, D: list) -> dict:
    """(i, j) -> D[e_i, e_j] - [D e_i, e_j] - [e_i, D e_j], nonzero entries only."""
    n = g.dim
    cols = [Vector([as_scalar(D[r][j]) for r in range(n)]) for j in range(n)]
    out = {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            br = Vector(g.bracket_basis(i, j))
            lhs = Vector(linalg.matvec(D, list(br.coords)))
            rhs = g.bracket(cols[i - 1], Vector.basis(n, j)) + g.bracket(Vector.basis(n, i), cols[j - 1])
            diff = lhs - rhs
            if diff:
                out[(i, j)] = diff
    return out


def is_derivation(g: LieAlgebra, D: list) -> tuple:
    defect = derivation_defect(g, D)
    return not defect, defect


@dataclass
class NilsolitonReport:
    Ric: list
    lam: ScalarK | None
    D: list | None
    residual: dict = field(default_factory=dict)
    basis: list | None = None

    @property
    def is_nilsoliton(self) -> bool:
        return self.lam is not None and not self.residual


def nilsoliton_check(g: LieAlgebra, metric: Metric | None = None) -> NilsolitonReport:
    g.nilpotency_step()
    h, P = orthonormal_algebra(g, metric)
    R = _ricci_orthonormal(h)
    n = h.dim
    # defect(Ric - lam I) = defect(Ric) + lam [e_i, e_j], affine in lam
    base = derivation_defect(h, R)
    lam = None
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            br = h.bracket_basis(i, j)
            for k in range(n):
                if br[k]:
                    r = base[(i, j)].coords[k] if (i, j) in base else ZERO
                    lam = -(r / br[k])
                    break
            if lam is not None:
                break
        if lam is not None:
            break
    if lam is None:
        # abelian: every lam works as long as Ric is itself a derivation
        lam = ZERO if not base else None
    if lam is None:
        return NilsolitonReport(R, None, None, base, P)
    D = [[R[a][b] - lam if a == b else R[a][b] for b in range(n)] for a in range(n)]
    residual = derivation_defect(h, D)
    if residual:
        return NilsolitonReport(R, None, None, residual, P)
    return NilsolitonReport(R, lam, D, {}, P)


# -- contact geometry -----------------------------------------------------

@dataclass
class ContactReport:
    eta: Form
    xi: Vector
    volume: Form
    endomorphism: list
    contact: bool
    contact_metric: bool
    # s with phi^2 = s (-I + xi eta^T), when phi^2 has that shape
    scale: ScalarK | None
    k_contact: bool


def levi_civita(g: LieAlgebra, metric: Metric, X: Vector, Y: Vector, Z: Vector):
    """g(nabla_Y X, Z) from the Koszul formula for left-invariant fields."""
    half = ScalarK(1) / 2
    return (metric(g.bracket(Y, X), Z) - metric(g.bracket(X, Z), Y) + metric(g.bracket(Z, Y), X)) * half


def contact_check(g: LieAlgebra, metric: Metric, xi: Vector) -> ContactReport:
    n = g.dim
    if metric(xi, xi) != 1:
        raise NotUnit(f"g(xi, xi) = {metric(xi, xi)}")
    eta = metric.flat(xi)
    deta = g.d(eta)
    vol = eta
    for _ in range((n - 1) // 2):
        vol = vol.wedge(deta)
    # Omega_ij = 1/2 d eta(e_i, e_j); g(phi e_i, e_j) = Omega_ij gives phi = -G^-1 Omega
    half = ScalarK(1) / 2
    omega = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            c = as_scalar(deta.coefficient((i + 1, j + 1))) * half
            omega[i][j], omega[j][i] = c, -c
    ginv = metric.inverse_matrix()
    phi = [[-x for x in row] for row in linalg.matmul(ginv, omega)]
    phi2 = linalg.matmul(phi, phi)
    eta_row = [as_scalar(eta.terms.get(1 << j, ZERO)) for j in range(n)]
    target = [[(xi.coords[a] * eta_row[b]) - (ONE if a == b else ZERO) for b in range(n)] for a in range(n)]
    scale = _proportionality(phi2, target)
    contact_metric = phi2 == target
    S = [[levi_civita(g, metric, xi, Vector.basis(n, a), Vector.basis(n, b)) for b in range(1, n + 1)]
         for a in range(1, n + 1)]
    k_contact = all(S[a][b] == -S[b][a] for a in range(n) for b in range(n))
    return ContactReport(eta, xi, vol, phi, bool(vol), contact_metric, scale, k_contact)


def _proportionality(A: list, B: list) -> ScalarK | None:
    s = None
    for ra, rb in zip(A, B):
        for x, y in zip(ra, rb):
            if not y:
                if x:
                    return None
                continue
            q = x / y
            if s is None:
                s = q
            elif q != s:
                return None
    return s


# -- elimination ----------------------------------------------------------

@dataclass
class NormalizeVariable:
    var: str
    value: ScalarK


@dataclass
class SolveLinear:
    equation: str
    var: str


@dataclass
class Substitute:
    var: str
    expr: object


def step_from_data(d: dict):
    kind = d["step"]
    if kind == "normalize":
        return NormalizeVariable(d["var"], as_scalar(parse_poly(str(d["value"])).constant_value()))
    if kind == "solve":
        return SolveLinear(str(d["equation"]), d["var"])
    if kind == "substitute":
        return Substitute(d["var"], parse_poly(str(d["expr"])))
    raise ValueError(f"unknown elimination step {kind!r}")


@dataclass
class EliminationResult:
    status: str
    equations: list
    history: list = field(default_factory=list)
    witness: str = ""


def _numerator(x) -> PolyK:
    r = to_ratfun(x)
    return r.num


def _coefficients_in(p: PolyK, var: str) -> dict:
    """degree -> coefficient polynomial, treating p as a polynomial in var."""
    out = {}
    for m, c in p.terms.items():
        e = 0
        rest = []
        for name, k in m:
            if name == var:
                e = k
            else:
                rest.append((name, k))
        piece = PolyK({tuple(rest): c})
        out[e] = out[e] + piece if e in out else piece
    return out


def _forced_zero(den: PolyK, equations: list) -> bool:
    """True when den is a constant multiple of a current equation."""
    if den.is_constant():
        return not den
    for _, eq in equations:
        if not eq or eq.is_constant():
            continue
        q = eq.exact_div(den)
        if q is not None and q.is_constant():
            return True
    return False


def _square_plus_positive(p: PolyK) -> str | None:
    """'u^2 + c' with u a monomial and c a positive rational, up to a constant factor."""
    if len(p.terms) != 2:
        return None
    items = sorted(p.terms.items(), key=lambda it: len(it[0]))
    (m0, c0), (m1, c1) = items
    if m0 != () or not m1 or any(k % 2 for _, k in m1):
        return None
    c = c0 / c1
    if not c.is_rational() or c.sign() <= 0:
        return None
    u = PolyK({tuple((name, k // 2) for name, k in m1): ONE})
    return f"({u})^2 + {c} = 0"


def elimination_check(system: list, script: list) -> EliminationResult:
    """Apply the script to [(tag, PolyK), ...] and look for the pattern u^2 + c = 0, c > 0."""
    eqs = [(str(t), p if isinstance(p, PolyK) else PolyK.const(p)) for t, p in system]
    history = [("start", [(t, str(p)) for t, p in eqs])]

    dens = []

    def apply(var: str, value):
        nonlocal eqs
        out = []
        for t, p in eqs:
            q = _numerator(p.substitute({var: to_ratfun(value)}))
            # clearing a denominator assumed nonzero leaves powers of it behind
            for d in dens:
                while q:
                    r = q.exact_div(d)
                    if r is None:
                        break
                    q = r
            out.append((t, q))
        eqs = out

    for step in script:
        if isinstance(step, NormalizeVariable):
            apply(step.var, PolyK.const(step.value))
            history.append((f"normalize {step.var} = {step.value}", [(t, str(p)) for t, p in eqs]))
        elif isinstance(step, SolveLinear):
            tags = [t for t, _ in eqs]
            if step.equation not in tags:
                raise KeyError(f"no equation tagged {step.equation!r}")
            k = tags.index(step.equation)
            coeffs = _coefficients_in(eqs[k][1], step.var)
            if set(coeffs) - {0, 1} or 1 not in coeffs:
                raise StepNotLinear(f"{step.var} does not appear linearly in equation {step.equation}")
            A = coeffs[1]
            B = coeffs.get(0, PolyK())
            if _forced_zero(A, [e for j, e in enumerate(eqs) if j != k]):
                raise DenominatorVanishesOnConstraint(f"solving for {step.var} divides by {A}")
            value = RatFunK(-B, A)
            if not A.is_constant():
                dens.append(A)
            apply(step.var, value)
            history.append((f"solve {step.equation} for {step.var} = {value}", [(t, str(p)) for t, p in eqs]))
        elif isinstance(step, Substitute):
            apply(step.var, step.expr)
            history.append((f"substitute {step.var} = {step.expr}", [(t, str(p)) for t, p in eqs]))
        else:
            raise TypeError(f"unknown step {step!r}")
    for t, p in eqs:
        if p.is_constant() and p:
            return EliminationResult("NoRealSolution", eqs, history, f"equation {t} reduces to {p} = 0")
        w = _square_plus_positive(p)
        if w:
            return EliminationResult("NoRealSolution", eqs, history, f"equation {t} reduces to {w}")
    if all(not p for _, p in eqs):
        return EliminationResult("SolutionFound", eqs, history)
    return EliminationResult("Inconclusive", eqs, history)
