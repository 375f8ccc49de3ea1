from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from g2forms import linalg
from g2forms.dsl import parse_form
from g2forms.exterior import (DimMismatch, Form, Metric, Vector, blades, contract, coframe_matrix,
                              hodge_star, indices_of, pullback, wedge)
from g2forms.scalars import ScalarK

from .strategies import forms, rational_scalars

PHI0 = "127 + 347 + 567 + 135 - 146 - 236 - 245"
PSI0 = "1234 + 1256 + 1367 + 1457 + 2357 - 2467 + 3456"

vectors7 = st.lists(rational_scalars(), min_size=7, max_size=7).map(Vector)


def test_blade_sign_from_permutation():
    assert Form.blade(4, (2, 1)) == -Form.blade(4, (1, 2))
    assert Form.blade(4, (3, 1, 2)) == Form.blade(4, (1, 2, 3))
    with pytest.raises(ValueError):
        Form.blade(4, (1, 1))


def test_wedge_of_one_forms():
    e = [Form.blade(5, (i,)) for i in range(1, 6)]
    assert wedge(e[0], e[1]) == Form.blade(5, (1, 2))
    assert wedge(e[1], e[0]) == -Form.blade(5, (1, 2))
    assert wedge(e[0], e[0]).terms == {}


def test_dim_mismatch():
    with pytest.raises(DimMismatch):
        Form.blade(4, (1,)).wedge(Form.blade(5, (1,)))


@given(forms(6, 2), forms(6, 3), forms(6, 1))
def test_graded_commutativity(a, b, c):
    assert a.wedge(b) == b.wedge(a)
    assert b.wedge(c) == -c.wedge(b)
    assert c.wedge(c).terms == {}


@given(forms(6, 1), forms(6, 2), forms(6, 2))
def test_wedge_associative(a, b, c):
    assert a.wedge(b).wedge(c) == a.wedge(b.wedge(c))


@given(vectors7, forms(7, 2), forms(7, 3))
def test_contraction_is_an_antiderivation(x, a, b):
    lhs = contract(x, a.wedge(b))
    rhs = contract(x, a).wedge(b) + a.wedge(contract(x, b))
    assert lhs == rhs


@given(vectors7, forms(7, 3))
def test_double_contraction_vanishes(x, a):
    assert not contract(x, contract(x, a))


@pytest.mark.parametrize("n", [6, 7])
def test_star_star_sign_on_blades(n):
    g = Metric.identity(n)
    for k in range(n + 1):
        for m in blades(n, k):
            a = Form(n, {m: ScalarK(1)})
            assert hodge_star(hodge_star(a, g), g) == a * (-1) ** (k * (n - k))


@pytest.mark.parametrize("n", [6, 7])
def test_star_star_sign_with_negative_orientation(n):
    g = Metric.identity(n, orientation=-1)
    for k in range(n + 1):
        for m in blades(n, k)[:5]:
            a = Form(n, {m: ScalarK(1)})
            assert hodge_star(hodge_star(a, g), g) == a * (-1) ** (k * (n - k))


def test_star_defining_identity_general_metric():
    # b ^ *a = g(b, a) vol_g with vol_g = sqrt(det g) e^1234 = 6 e^1234
    g = Metric([[4, 0, 0, 0], [0, 1, 0, 0], [0, 0, 9, 0], [0, 0, 0, 1]])
    ginv = [Fraction(1, 4), 1, Fraction(1, 9), 1]
    for ma in blades(4, 2):
        a = Form(4, {ma: ScalarK(1)})
        star = hodge_star(a, g)
        for mb in blades(4, 2):
            b = Form(4, {mb: ScalarK(1)})
            i, j = indices_of(ma)
            expected = ginv[i - 1] * ginv[j - 1] * 6 if ma == mb else 0
            assert b.wedge(star) == Form.volume(4) * ScalarK(expected)
    assert hodge_star(Form.blade(4, (1, 3)), g) == -Form.blade(4, (2, 4)) * ScalarK(Fraction(1, 6))


def test_star_of_phi0_is_psi0():
    phi = parse_form(PHI0, 7)
    assert hodge_star(phi) == parse_form(PSI0, 7)
    assert phi.wedge(hodge_star(phi)) == Form.volume(7) * 7


def test_pullback_of_blade_is_minor():
    M = [[1, 2, 0], [0, 1, 3], [1, 0, 1]]
    M = [[ScalarK(x) for x in r] for r in M]
    vol = pullback(Form.volume(3), M)
    assert vol == Form.volume(3) * linalg.det(M)


@given(forms(5, 1), forms(5, 2), st.lists(st.lists(st.integers(-2, 2), min_size=5, max_size=5),
                                          min_size=5, max_size=5))
def test_pullback_is_an_algebra_map(a, b, rows):
    M = [[ScalarK(x) for x in r] for r in rows]
    assert pullback(a.wedge(b), M) == pullback(a, M).wedge(pullback(b, M))


def test_star_commutes_with_orthogonal_pullback():
    # a signed permutation in SO(7) preserving phi0 preserves psi0
    phi = parse_form(PHI0, 7)
    psi = parse_form(PSI0, 7)
    for perm in permutations(range(7)):
        if perm[6] != 6:
            continue
        M = [[ScalarK(1) if j == perm[i] else ScalarK(0) for j in range(7)] for i in range(7)]
        if pullback(phi, M) == phi:
            assert pullback(psi, M) == psi


def test_coframe_matrix():
    cf = [parse_form(t, 3) for t in ("1 + 2", "2", "3")]
    M = coframe_matrix(cf)
    assert M[0] == [ScalarK(1), ScalarK(1), ScalarK(0)]
    assert indices_of(0b101) == (1, 3)
