import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from g2forms import linalg
from g2forms.dsl import parse_form
from g2forms.exterior import DimMismatch, WrongDegree, hodge_star, pullback
from g2forms.scalars import ScalarK
from g2forms.stability import (FormType, NotPositive, b_matrix, classify_3form_7d, induced_metric,
                               k_matrix, lambda_invariant, volume_factor)

from .strategies import integer_3forms

PHI0 = "127 + 347 + 567 + 135 - 146 - 236 - 245"

int_matrices = st.lists(st.lists(st.integers(-2, 2), min_size=6, max_size=6), min_size=6, max_size=6)


def _scalar_matrix(rows):
    return [[ScalarK(x) for x in r] for r in rows]


def test_lambda_of_normal_forms():
    # Re(dz1 dz2 dz3) is negative, e123 + e456 is positive
    rho = parse_form("135 - 146 - 236 - 245", 6)
    assert lambda_invariant(rho) == -4
    assert lambda_invariant(parse_form("123 + 456", 6)) == 1
    assert lambda_invariant(parse_form("123", 6)) == 0


@given(integer_3forms(6))
def test_lambda_is_even(rho):
    assert lambda_invariant(rho) == lambda_invariant(-rho)


@given(integer_3forms(6))
def test_k_squared_is_lambda(rho):
    K = k_matrix(rho)
    lam = lambda_invariant(rho)
    assert linalg.matmul(K, K) == [[lam if i == j else ScalarK(0) for j in range(6)] for i in range(6)]


@given(integer_3forms(6), int_matrices)
def test_lambda_transforms_with_det_squared(rho, rows):
    M = _scalar_matrix(rows)
    d = linalg.det(M)
    assert lambda_invariant(pullback(rho, M)) == lambda_invariant(rho) * d * d


def test_dimension_and_degree_checks():
    with pytest.raises(DimMismatch):
        lambda_invariant(parse_form("123", 7))
    with pytest.raises(WrongDegree):
        k_matrix(parse_form("12", 6))


def test_classify_examples():
    assert classify_3form_7d(parse_form(PHI0, 7)) is FormType.POSITIVE
    assert classify_3form_7d(-parse_form(PHI0, 7)) is FormType.POSITIVE
    # one flipped term gives signature (3, 4)
    split = parse_form("127 + 347 + 567 - 135 - 146 - 236 - 245", 7)
    assert classify_3form_7d(split) is FormType.SPLIT
    assert classify_3form_7d(parse_form("123 + 456", 7)) is FormType.DEGENERATE


@given(integer_3forms(7))
def test_classification_matches_float_signature(phi):
    B = np.array([[float(x) for x in r] for r in b_matrix(phi)])
    ev = np.linalg.eigvalsh(B)
    kind = classify_3form_7d(phi)
    if kind is FormType.DEGENERATE:
        assert abs(np.linalg.det(B)) < 1e-6
    elif kind is FormType.POSITIVE:
        assert (ev > 0).all() or (ev < 0).all()
    else:
        assert (ev > 0).any() and (ev < 0).any()


def test_induced_metric_of_standard_form():
    g = induced_metric(parse_form(PHI0, 7))
    assert g.is_identity() and g.orientation == 1
    assert volume_factor(parse_form(PHI0, 7)) == 1
    assert induced_metric(-parse_form(PHI0, 7)).orientation == -1


def test_induced_metric_scales():
    # (c^3 phi) has metric c^2 g
    g = induced_metric(parse_form(PHI0, 7) * 8)
    assert g.matrix == [[ScalarK(4) if i == j else ScalarK(0) for j in range(7)] for i in range(7)]


def test_not_positive():
    with pytest.raises(NotPositive):
        induced_metric(parse_form("123 + 456", 7))


@given(st.lists(st.integers(1, 3), min_size=7, max_size=7))
def test_diagonal_pullback_metric(scales):
    # phi = M^* phi0 for diagonal M has metric M^T M when the volume is exact
    M = [[ScalarK(scales[i]) if i == j else ScalarK(0) for j in range(7)] for i in range(7)]
    phi = pullback(parse_form(PHI0, 7), M)
    g = induced_metric(phi)
    assert g.matrix == [[ScalarK(scales[i] ** 2) if i == j else ScalarK(0) for j in range(7)]
                        for i in range(7)]
    assert hodge_star(phi, g) == pullback(parse_form("1234 + 1256 + 1367 + 1457 + 2357 - 2467 + 3456", 7), M)
