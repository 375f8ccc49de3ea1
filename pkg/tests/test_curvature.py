from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from g2forms import linalg
from g2forms.catalog.verify import corrected_triple
from g2forms.curvature import (DenominatorVanishesOnConstraint, IrrationalGramSchmidt, NormalizeVariable,
                               NotUnit, SolveLinear, StepNotLinear, Substitute, contact_check,
                               elimination_check, is_derivation, nilsoliton_check, ricci)
from g2forms.dsl import parse_form, parse_poly
from g2forms.exterior import Metric, Vector
from g2forms.liealg import LieAlgebra, NotNilpotent
from g2forms.scalars import ScalarK
from g2forms.structures import verify_g2

N17 = "(0,0,0,0,0,0,1r6/6*12+1r6/6*34+1r6/6*56)"

# lambda of each nilsoliton triple, computed exactly and cross-checked below
LAMBDA = {
    "17": Fraction(-5, 12), "37A": Fraction(-5, 12), "37B": Fraction(-7, 20), "37B1": Fraction(-7, 20),
    "37C": Fraction(-3, 8), "37D": Fraction(-1, 3), "37D1": Fraction(-1, 3),
    "n2": Fraction(-3, 2), "n3": Fraction(-2), "n4": Fraction(-2), "n5": Fraction(-3, 2),
    "n6": Fraction(-3), "n7": Fraction(-5, 2), "n10": Fraction(-5, 2),
}


def _constants(g: LieAlgebra) -> np.ndarray:
    n = g.dim
    C = np.zeros((n, n, n))
    for i in range(n):
        for j in range(n):
            C[i, j] = [float(c) for c in g.bracket_basis(i + 1, j + 1)]
    return C


def float_ricci(g: LieAlgebra, G: np.ndarray) -> np.ndarray:
    """Ricci tensor in the basis e_i from Christoffel symbols of the Koszul formula."""
    n = g.dim
    C = _constants(g)
    CG = np.einsum("ijk,km->ijm", C, G)  # g([e_i, e_j], e_m)
    # 2 g(nabla_i e_j, e_m) = g([e_i,e_j],e_m) - g([e_j,e_m],e_i) + g([e_m,e_i],e_j)
    low = 0.5 * (CG - np.einsum("jmi->ijm", CG) + np.einsum("mij->ijm", CG))
    Gam = np.einsum("ijm,mk->ijk", low, np.linalg.inv(G))  # nabla_i e_j = Gam[i,j,k] e_k

    def nabla(i, v):
        return np.einsum("j,jk->k", v, Gam[i])

    R = np.zeros((n, n))
    for j in range(n):
        for l in range(n):
            el = np.eye(n)[l]
            tr = 0.0
            for i in range(n):
                # R(e_i, e_j) e_l = nabla_i nabla_j e_l - nabla_j nabla_i e_l - nabla_[e_i,e_j] e_l
                a = _nabla_vec(Gam, np.eye(n)[i], Gam[j, l])
                b = _nabla_vec(Gam, np.eye(n)[j], Gam[i, l])
                c = _nabla_vec(Gam, C[i, j], el)
                tr += (a - b - c)[i]
            R[j, l] = tr
    return R


def _nabla_vec(Gam, x, v):
    """nabla_x v for constant-coefficient fields x, v."""
    return np.einsum("i,j,ijk->k", x, v, Gam)


def nilsoliton_triples(catalog):
    out = {}
    for e in catalog:
        if "nilsoliton" not in e.data:
            continue
        block = e.data["nilsoliton"]
        alg = LieAlgebra.parse(str(block["equations"])) if "equations" in block else e.algebra
        phi = parse_form(str(block["phi"]), 7)
        r = verify_g2(alg, phi)
        if not (r.positive and r.coclosed and r.metric_is_identity()
                and nilsoliton_check(alg, r.metric).is_nilsoliton):
            fixed = corrected_triple(e)
            alg, phi = fixed["algebra"], fixed["phi"]
            r = verify_g2(alg, phi)
        out[e.id] = (alg, r)
    return out


def test_ricci_of_abelian_is_zero():
    R = ricci(LieAlgebra.abelian(7))
    assert all(not x for row in R for x in row)


def test_ricci_of_17_nilsoliton_basis():
    R = ricci(LieAlgebra.parse(N17))
    q = Fraction(-1, 12)
    assert R == [[ScalarK(q if i < 6 else Fraction(1, 4)) if i == j else ScalarK(0) for j in range(7)]
                 for i in range(7)]


def test_ricci_matches_christoffel_oracle(catalog):
    for e in catalog:
        g = e.algebra
        exact = np.array([[float(x) for x in r] for r in ricci(g)])
        assert np.allclose(exact, float_ricci(g, np.eye(g.dim)), atol=1e-9), e.id


def test_ricci_with_a_general_metric_matches_oracle(entries):
    g = entries["n8"].algebra
    M = [[4, 2, 0, 0, 0, 0, 0], [2, 2, 0, 0, 0, 0, 0]] + [[1 if i == j else 0 for j in range(7)] for i in range(2, 7)]
    metric = Metric(M)
    exact = ricci(g, metric)
    from g2forms.curvature import orthonormal_basis
    P = np.array([[float(x) for x in r] for r in orthonormal_basis(metric)])
    tensor = float_ricci(g, np.array(M, dtype=float))
    assert np.allclose(np.array([[float(x) for x in r] for r in exact]), P.T @ tensor @ P, atol=1e-9)


def test_trace_identity(catalog):
    for e in catalog:
        R = ricci(e.algebra)
        C = _constants(e.algebra)
        exact_sum = ScalarK(0)
        for i in range(1, 8):
            for j in range(1, 8):
                for c in e.algebra.bracket_basis(i, j):
                    exact_sum = exact_sum + c * c
        assert sum((R[i][i] for i in range(7)), ScalarK(0)) == -exact_sum / 4, e.id
        assert abs(float(-exact_sum / 4) + 0.25 * (C ** 2).sum()) < 1e-9


def test_irrational_gram_schmidt():
    g = LieAlgebra.parse("(0,0,12)")
    with pytest.raises(IrrationalGramSchmidt):
        ricci(g, Metric([[7, 0, 0], [0, 1, 0], [0, 0, 1]]))
    with pytest.raises(NotNilpotent):
        ricci(LieAlgebra.parse("(0,12,13)"))


def _cayley(entries):
    A = [[Fraction(0)] * 7 for _ in range(7)]
    for k, (i, j) in enumerate(entries):
        A[i][j] = Fraction(k + 1, 2)
        A[j][i] = -A[i][j]
    A = [[ScalarK(x) for x in r] for r in A]
    I = linalg.identity(7)
    minus = [[I[i][j] - A[i][j] for j in range(7)] for i in range(7)]
    plus = [[I[i][j] + A[i][j] for j in range(7)] for i in range(7)]
    return linalg.matmul(minus, linalg.inverse(plus))


pairs = st.lists(st.tuples(st.integers(0, 6), st.integers(0, 6)).filter(lambda p: p[0] < p[1]),
                 min_size=1, max_size=3, unique=True)


@given(st.sampled_from(["17", "37A", "37C", "n5", "g2"]), pairs)
def test_ricci_is_basis_covariant(entries, eid, ps):
    g = entries[eid].algebra
    Q = _cayley(ps)
    assert linalg.matmul(Q, linalg.transpose(Q)) == linalg.identity(7)
    R = ricci(g)
    R2 = ricci(g.change_basis(Q))
    assert R2 == linalg.matmul(linalg.matmul(Q, R), linalg.transpose(Q))


@pytest.mark.parametrize("t", [2, 3, Fraction(1, 2), Fraction(2, 3)])
def test_lambda_scales_inversely(t):
    g = LieAlgebra.parse(N17)
    t = ScalarK(t)
    metric = Metric([[t * t if i == j else ScalarK(0) for j in range(7)] for i in range(7)])
    assert nilsoliton_check(g, metric).lam == nilsoliton_check(g).lam / (t * t)


def test_nilsoliton_17():
    rep = nilsoliton_check(LieAlgebra.parse(N17))
    assert rep.lam == ScalarK(Fraction(-5, 12))
    third = Fraction(1, 3)
    assert rep.D == [[ScalarK(third if i < 6 else 2 * third) if i == j else ScalarK(0) for j in range(7)]
                     for i in range(7)]


def test_catalog_triples_are_coclosed_nilsolitons(catalog):
    triples = nilsoliton_triples(catalog)
    assert set(LAMBDA) <= set(triples)
    for eid, (alg, r) in triples.items():
        assert r.coclosed and r.metric_is_identity(), eid
        rep = nilsoliton_check(alg, r.metric)
        assert rep.is_nilsoliton, eid
        if eid in LAMBDA:
            assert rep.lam == ScalarK(LAMBDA[eid]), eid


def test_lambda_matches_christoffel_oracle(catalog):
    # for a derivation D of a nilpotent algebra tr(Ric D) = 0, so lambda = tr Ric^2 / tr Ric
    for eid, (alg, r) in nilsoliton_triples(catalog).items():
        if eid not in LAMBDA:
            continue
        R = float_ricci(alg, np.eye(7))
        lam = np.trace(R @ R) / np.trace(R)
        assert abs(lam - float(LAMBDA[eid])) < 1e-9, eid
        D = R - lam * np.eye(7)
        C = _constants(alg)
        defect = (np.einsum("ijk,lk->ijl", C, D) - np.einsum("ai,ajk->ijk", D, C)
                  - np.einsum("aj,iak->ijk", D, C))
        assert np.abs(defect).max() < 1e-9, eid


def test_derivations(entries):
    g = LieAlgebra.parse(N17)
    zero = [[ScalarK(0)] * 7 for _ in range(7)]
    assert is_derivation(g, zero)[0]
    ok, defect = is_derivation(g, linalg.identity(7))
    assert not ok and defect
    third = Fraction(1, 3)
    D = [[ScalarK(third if i < 6 else 2 * third) if i == j else ScalarK(0) for j in range(7)] for i in range(7)]
    assert is_derivation(g, D)[0]
    for eid in ("37A", "n8", "g5"):
        h = entries[eid].algebra
        for i in range(1, 8):
            assert is_derivation(h, h.ad_matrix(i))[0], (eid, i)


def test_contact_abelian():
    r = contact_check(LieAlgebra.abelian(7), Metric.identity(7), Vector.basis(7, 7))
    assert not r.contact


def test_contact_17_nilsoliton_basis():
    # d f7 = (r6/6)(f12 + f34 + f56) gives phi^2 = (1/24)(-I + xi eta) by hand
    r = contact_check(LieAlgebra.parse(N17), Metric.identity(7), Vector.basis(7, 7))
    assert r.contact and r.k_contact
    assert not r.contact_metric and r.scale == ScalarK(Fraction(1, 24))


def test_contact_homothety(entries):
    # metric t^2 I with xi = e7 / t turns the scale s into s / t^2
    for eid in ("17", "ex2"):
        g = entries[eid].algebra
        base = contact_check(g, Metric.identity(7), Vector.basis(7, 7))
        assert base.scale == ScalarK(Fraction(1, 4)), eid
        half = ScalarK(Fraction(1, 2))
        r = contact_check(g, Metric([[half * half if i == j else ScalarK(0) for j in range(7)] for i in range(7)]),
                          Vector.basis(7, 7, ScalarK(2)))
        assert r.contact_metric and r.k_contact and r.scale == 1, eid


def test_contact_needs_unit_xi(entries):
    with pytest.raises(NotUnit):
        contact_check(entries["17"].algebra, Metric.identity(7), Vector.basis(7, 7, ScalarK(2)))


def _sys(*texts):
    return [(str(k + 1), parse_poly(t)) for k, t in enumerate(texts)]


def test_elimination_trivial_cases():
    assert elimination_check(_sys("x - 1"), [SolveLinear("1", "x")]).status == "SolutionFound"
    assert elimination_check(_sys("x^2 + y^2"), []).status == "Inconclusive"
    res = elimination_check(_sys("y - x", "x*y + 1"), [SolveLinear("1", "y")])
    assert res.status == "NoRealSolution" and "x" in res.witness


def test_elimination_records_history():
    script = [NormalizeVariable("a", ScalarK(Fraction(1, 2))), Substitute("b", parse_poly("2*c"))]
    res = elimination_check(_sys("2*a - 1", "a*b - b^2 - 2"), script)
    assert len(res.history) == 3
    # c - 4 c^2 - 2 has no real root but is outside the narrow pattern
    assert res.status == "Inconclusive"
    res = elimination_check(_sys("2*a - 1", "4*a*b^2 + 3"), script[:1])
    assert res.status == "NoRealSolution" and "3/2" in res.witness


def test_elimination_errors():
    with pytest.raises(StepNotLinear):
        elimination_check(_sys("x^2 - 1"), [SolveLinear("1", "x")])
    with pytest.raises(DenominatorVanishesOnConstraint):
        elimination_check(_sys("y*x - 1", "2*y"), [SolveLinear("1", "x")])
    with pytest.raises(KeyError):
        elimination_check(_sys("x"), [SolveLinear("9", "x")])


def test_elimination_with_a_denominator():
    # x (1 + t^2) = 1 then (1 + t^2) y = x  =>  y (1 + t^2)^2 = 1, and y^2 + 1 has no real root
    res = elimination_check(_sys("x*(1 + t^2) - 1", "y^2 + 1"), [SolveLinear("1", "x")])
    assert res.status == "NoRealSolution"
