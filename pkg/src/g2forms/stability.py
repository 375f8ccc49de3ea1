"""Invariants of stable 3-forms in dimensions 6 and 7.

Dimension 6: K[a][b] e^{1..6} = (iota_{e_b} rho) ^ rho ^ e^a and
lambda(rho) = trace(K^2) / 6.  Dimension 7: B[i][j] e^{1..7} = b_phi(e_i, e_j)
with 6 b_phi(x, y) = iota_x phi ^ iota_y phi ^ phi.
"""
from __future__ import annotations

from enum import Enum

from . import linalg
from .exterior import DimMismatch, Form, Metric, Vector, WrongDegree, contract, wedge_sign
from .scalars import ZERO, NotInField, ScalarK, root_k


class IrrationalNinthRoot(ArithmeticError):
    def __init__(self, det):
        self.det = det
        super().__init__(f"det B = {det} has no 9th root in K")


class NotPositive(ValueError):
    pass


class FormType(str, Enum):
    POSITIVE = "Positive"
    SPLIT = "Split"
    DEGENERATE = "Degenerate"


def _check(form: Form, dim: int, degree: int):
    if form.dim != dim:
        raise DimMismatch(f"expected dimension {dim}, got {form.dim}")
    if form.terms and form.degrees() != {degree}:
        raise WrongDegree(f"expected a {degree}-form")


def _top_coefficient(a: Form, b: Form):
    """Coefficient of the top blade in a ^ b, for complementary degrees."""
    full = (1 << a.dim) - 1
    out = ZERO
    for m, x in a.terms.items():
        y = b.terms.get(full ^ m)
        if y is None:
            continue
        v = x * y
        out = out + v if wedge_sign(m, full ^ m) > 0 else out - v
    return out


def k_matrix(rho: Form) -> list:
    _check(rho, 6, 3)
    K = [[ZERO] * 6 for _ in range(6)]
    for b in range(6):
        five = contract(Vector.basis(6, b + 1), rho).wedge(rho)
        for a in range(6):
            K[a][b] = _top_coefficient(five, Form(6, {1 << a: ScalarK(1)}))
    return K


def lambda_invariant(rho: Form):
    K = k_matrix(rho)
    tr = ZERO
    for i in range(6):
        for j in range(6):
            if K[i][j] and K[j][i]:
                tr = tr + K[i][j] * K[j][i]
    return tr / 6


def stable_sign(rho: Form) -> int:
    """Sign of lambda(rho) for ScalarK coefficients."""
    return lambda_invariant(rho).sign()


def is_invariant_subspace(K: list, W: list) -> bool:
    """True iff K maps span(W) into itself."""
    rows = [list(w.coords) for w in W]
    r = linalg.rank(rows)
    if r != len(W):
        raise ValueError("W is not linearly independent")
    for w in W:
        kw = linalg.matvec(K, list(w.coords))
        if linalg.rank(rows + [kw]) != r:
            return False
    return True


def b_matrix(phi: Form) -> list:
    _check(phi, 7, 3)
    iotas = [contract(Vector.basis(7, i + 1), phi) for i in range(7)]
    B = [[ZERO] * 7 for _ in range(7)]
    for i in range(7):
        left = iotas[i].wedge(phi)
        for j in range(i, 7):
            # iota_i ^ phi ^ iota_j equals iota_i ^ iota_j ^ phi (phi moves past a 2-form)
            v = _top_coefficient(left, iotas[j]) / 6 if iotas[j] and left else ZERO
            B[i][j] = B[j][i] = v
    return B


def classify_3form_7d(phi: Form) -> FormType:
    B = b_matrix(phi)
    if not linalg.det(B):
        return FormType.DEGENERATE
    signs = linalg.leading_minors_signs(B)
    if all(s > 0 for s in signs):
        return FormType.POSITIVE
    if all(s == (-1) ** (k + 1) for k, s in enumerate(signs)):
        return FormType.POSITIVE
    return FormType.SPLIT


def volume_factor(phi: Form) -> ScalarK:
    """epsilon(phi) = (det B)^(1/9), exact in K when it exists."""
    d = linalg.det(b_matrix(phi))
    try:
        return root_k(d, 9)
    except NotInField as exc:
        raise IrrationalNinthRoot(d) from exc


def induced_metric(phi: Form) -> Metric:
    if classify_3form_7d(phi) is not FormType.POSITIVE:
        raise NotPositive("3-form is not positive")
    B = b_matrix(phi)
    d = linalg.det(B)
    try:
        eps = root_k(d, 9)
    except NotInField as exc:
        raise IrrationalNinthRoot(d) from exc
    inv = eps.inverse()
    g = [[x * inv for x in row] for row in B]
    return Metric(g, orientation=eps.sign())
