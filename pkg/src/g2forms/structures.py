"""G2- and SU(3)-structures on Lie algebras.

A G2-structure is a positive 3-form phi; its 4-form is Phi = *phi for the
induced metric.  Reducing along a central unit vector X gives the SU(3)
pair omega = pi_*(iota_X phi), psi_- = pi_*(-iota_X Phi) on g / span(X).
Conversely a half-flat pair (omega, psi_-) on h gives the coclosed
structure Phi = omega^2 / 2 + psi_- ^ dt on h + R.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import linalg
from .exterior import Form, Metric, Vector, contract, hodge_star, pullback
from .liealg import LieAlgebra, NotCentral, Quotient
from .polys import PolyK
from .scalars import ONE, ZERO, NotInField, ScalarK, sqrt_k
from .stability import (FormType, IrrationalNinthRoot, NotPositive, classify_3form_7d,
                        induced_metric, k_matrix, lambda_invariant)


# standard positive 3-form and its dual for the identity metric
PHI0 = "127 + 347 + 567 + 135 - 146 - 236 - 245"
PSI0 = "1234 + 1256 + 1367 + 1457 + 2357 - 2467 + 3456"


class NotUnit(ValueError):
    pass


class NotHalfFlat(ValueError):
    pass


class NonIdentityMetric(ValueError):
    pass


@dataclass
class G2Structure:
    algebra: LieAlgebra
    phi: Form
    metric: Metric
    Phi: Form

    @classmethod
    def from_phi(cls, algebra: LieAlgebra, phi: Form) -> G2Structure:
        g = induced_metric(phi)
        return cls(algebra, phi, g, hodge_star(phi, g))


@dataclass
class G2Report:
    positive: bool
    closed: bool | None = None
    coclosed: bool | None = None
    metric: Metric | None = None
    Phi: Form | None = None
    dPhi: Form | None = None
    note: str = ""

    def metric_is_identity(self) -> bool:
        return self.metric is not None and self.metric.is_identity()


def verify_g2(algebra: LieAlgebra, phi: Form) -> G2Report:
    kind = classify_3form_7d(phi)
    if kind is not FormType.POSITIVE:
        return G2Report(positive=False, note=kind.value)
    closed = not algebra.d(phi)
    try:
        g = induced_metric(phi)
    except IrrationalNinthRoot as exc:
        return G2Report(positive=True, closed=closed, note=f"metric not exact: det B = {exc.det}")
    Phi = hodge_star(phi, g)
    dPhi = algebra.d(Phi)
    return G2Report(True, closed, not dPhi, g, Phi, dPhi)


@dataclass
class SU3Structure:
    algebra: LieAlgebra | None
    omega: Form
    psi_minus: Form
    metric: Metric | None = None
    psi_plus: Form | None = None

    def __post_init__(self):
        if self.metric is None:
            self.metric = hermitian_metric(self.omega, self.psi_minus)
        if self.metric is not None and self.metric.orientation != su3_orientation(self.omega):
            self.metric = Metric(self.metric.matrix, su3_orientation(self.omega))
        if self.psi_plus is None and self.metric is not None:
            self.psi_plus = hodge_star(self.psi_minus, self.metric)

    @property
    def sigma(self) -> Form:
        return self.omega.wedge(self.omega) * _HALF


_HALF = ScalarK(1) / 2


def su3_orientation(omega: Form) -> int:
    """Orientation sign for *_h on SU(3) pairs.

    psi_+ = *_h psi_- together with psi_+ ^ psi_- = (2/3) omega^3 forces the
    volume form of h to be a negative multiple of omega^3 (the normal form
    omega = f12 + f34 + f56 needs orientation -f^{123456}).
    """
    w3 = omega.wedge(omega).wedge(omega)
    c = w3.terms.get((1 << omega.dim) - 1)
    if c is None:
        return 1
    return -c.sign()


def complex_structure(psi_minus: Form) -> list | None:
    """J = K / sqrt(-lambda) as a matrix acting on column vectors, when exact."""
    lam = lambda_invariant(psi_minus)
    if not isinstance(lam, ScalarK) or lam.sign() >= 0:
        return None
    try:
        s = sqrt_k(-lam)
    except NotInField:
        return None
    inv = s.inverse()
    return [[x * inv for x in row] for row in k_matrix(psi_minus)]


def hermitian_metric(omega: Form, psi_minus: Form) -> Metric | None:
    """h(x, y) = omega(x, J y), or None if J is not exact or h not symmetric."""
    J = complex_structure(psi_minus)
    if J is None:
        return None
    n = omega.dim
    W = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            c = omega.coefficient((i + 1, j + 1))
            W[i][j], W[j][i] = c, -c
    h = linalg.matmul(W, J)
    if not linalg.is_symmetric(h):
        return None
    return Metric(h)


@dataclass
class SU3Report:
    stable_pair: bool
    orthogonal: bool
    normalized: bool
    h_definite: bool
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.stable_pair and self.orthogonal and self.normalized and self.h_definite


def verify_su3(S: SU3Structure) -> SU3Report:
    w3 = S.omega.wedge(S.omega).wedge(S.omega)
    lam = lambda_invariant(S.psi_minus)
    stable = bool(w3) and lam.sign() < 0
    orth = not S.omega.wedge(S.psi_minus)
    h_def = False
    normalized = False
    if S.metric is not None:
        h_def = all(s > 0 for s in linalg.leading_minors_signs(S.metric.matrix))
        if S.psi_plus is not None:
            normalized = S.psi_plus.wedge(S.psi_minus) == w3 * (ScalarK(2) / 3)
    return SU3Report(stable, orth, normalized, h_def, {"lambda": lam})


def is_half_flat(S: SU3Structure) -> bool:
    if S.algebra is None:
        raise ValueError("half-flatness needs an algebra")
    return not S.algebra.d(S.omega.wedge(S.omega)) and not S.algebra.d(S.psi_minus)


@dataclass
class Reduction:
    su3: SU3Structure
    quotient: Quotient
    unit_x: Vector
    eta: Form
    # set when the 4-form is closed: the two identities that then must hold
    dpsi_closed: bool | None = None
    sigma_identity: bool | None = None
    # phi = pi^* psi_+ + pi^* omega ^ eta
    recovers_phi: bool | None = None


def su3_reduce(G: G2Structure, x: Vector) -> Reduction:
    g = G.algebra
    if not g.is_central(x):
        raise NotCentral(f"{x} is not central")
    n2 = G.metric(x, x)
    try:
        norm = sqrt_k(n2)
    except NotInField as exc:
        raise NotUnit(f"g(X, X) = {n2} is not a square in K") from exc
    x = x * norm.inverse()
    q = g.quotient_by_central(x)
    eta = G.metric.flat(x)
    omega = q.push(contract(x, G.phi))
    psi_minus = q.push(-contract(x, G.Phi))
    # metric on the orthogonal complement of X, in the basis of images of e_i (i != p)
    gm = G.metric.matrix
    gx = [G.metric(Vector.basis(g.dim, i), x) for i in q.keep]
    hmat = [[gm[i - 1][j - 1] - gx[a] * gx[b] for b, j in enumerate(q.keep)]
            for a, i in enumerate(q.keep)]
    h = Metric(hmat, orientation=su3_orientation(omega))
    S = SU3Structure(q.h, omega, psi_minus, h, hodge_star(psi_minus, h))
    red = Reduction(S, q, x, eta)
    red.recovers_phi = q.pull(S.psi_plus) + q.pull(omega).wedge(eta) == G.phi
    if not g.d(G.Phi):
        red.dpsi_closed = not q.h.d(psi_minus)
        sigma = omega.wedge(omega) * _HALF
        red.sigma_identity = g.d(q.pull(sigma)) == q.pull(psi_minus).wedge(g.d(eta))
    return red


def coclosed_from_half_flat(S: SU3Structure) -> G2Structure:
    """G2-structure on h + R with Phi = omega^2/2 + psi_- ^ dt, phi = psi_+ + omega ^ dt."""
    if not is_half_flat(S):
        raise NotHalfFlat("d(omega^2) or d(psi_-) is nonzero")
    h = S.algebra
    g = h.direct_sum_with_line()
    n = g.dim
    inc = [[ONE if i == j else ZERO for j in range(n)] for i in range(n - 1)]
    dt = Form(n, {1 << (n - 1): ONE})
    omega = pullback(S.omega, inc)
    Phi = omega.wedge(omega) * _HALF + pullback(S.psi_minus, inc).wedge(dt)
    if g.d(Phi):
        raise AssertionError("lifted 4-form is not closed")
    if S.psi_plus is None:
        raise NotPositive("psi_+ is not available (no exact Hermitian metric)")
    phi = pullback(S.psi_plus, inc) + omega.wedge(dt)
    if classify_3form_7d(phi) is not FormType.POSITIVE:
        raise NotPositive("reconstructed 3-form is not positive")
    G = G2Structure.from_phi(g, phi)
    return G2Structure(g, phi, G.metric, Phi)


def bryant_family(phi0: Form, metric: Metric, a, alpha: list) -> Form:
    """*phi for phi = (a^2 - |alpha|^2) phi0 + 2a *(alpha ^ phi0) + i(alpha o alpha).

    Here i(alpha o alpha) = sum_jk alpha_j alpha_k e^j ^ iota_{e_k} phi0 and all
    stars use the identity metric of phi0, so
    *phi = (a^2 - |alpha|^2) *phi0 + 2a alpha ^ phi0 + *i(alpha o alpha).
    """
    if not metric.is_identity():
        raise NonIdentityMetric("the family is defined for an orthonormal coframe")
    n = phi0.dim
    a = a if isinstance(a, PolyK) else PolyK.const(a)
    alpha = [x if isinstance(x, PolyK) else PolyK.const(x) for x in alpha]
    norm2 = PolyK()
    for x in alpha:
        norm2 = norm2 + x * x
    alpha_form = Form(n, {1 << j: x for j, x in enumerate(alpha) if x})
    star_phi0 = hodge_star(phi0, metric)
    iaa = Form(n)
    for k in range(n):
        if not alpha[k]:
            continue
        ik = contract(Vector.basis(n, k + 1), phi0)
        inner = Form(n)
        for j in range(n):
            if alpha[j]:
                inner = inner + Form(n, {1 << j: alpha[j] * alpha[k]}).wedge(ik)
        iaa = iaa + inner
    two_a = a * 2
    return (star_phi0.map_coeffs(lambda c: c * (a * a - norm2))
            + alpha_form.wedge(phi0).map_coeffs(lambda c: c * two_a)
            + hodge_star(iaa, metric))
