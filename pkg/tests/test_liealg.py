from itertools import combinations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from g2forms.dsl import format_form, parse_form, parse_vector
from g2forms.exterior import Form, Vector, blades
from g2forms.liealg import (LieAlgebra, NotCentral, NotNilpotent, ZeroVector, closed_forms,
                            echelonize_span, parametric_basis)
from g2forms.scalars import ScalarK

from .strategies import forms


def _float_d(g: LieAlgebra, k: int) -> np.ndarray:
    """Matrix of d on k-forms by the Leibniz rule on words, in floats."""
    n = g.dim
    de = [{tuple(sorted(w)): float(c) for w, c in _words(f)} for f in g.diff]
    src = list(combinations(range(1, n + 1), k))
    dst = {w: r for r, w in enumerate(combinations(range(1, n + 1), k + 1))}
    D = np.zeros((len(dst), len(src)))
    for col, word in enumerate(src):
        for p, i in enumerate(word):
            rest = word[:p] + word[p + 1:]
            for pair, c in de[i - 1].items():
                if set(pair) & set(rest):
                    continue
                full = list(pair) + list(rest)
                sign = (-1) ** p * _perm_sign(full)
                D[dst[tuple(sorted(full))], col] += sign * c
    return D


def _words(f: Form):
    for m, c in f.terms.items():
        yield tuple(i + 1 for i in range(f.dim) if m >> i & 1), c


def _perm_sign(seq) -> int:
    s = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                s = -s
    return s


def _float_step(g: LieAlgebra) -> int:
    n = g.dim
    br = np.zeros((n, n, n))
    for i in range(n):
        for j in range(n):
            for k, f in enumerate(g.diff):
                c = f.terms.get((1 << i) | (1 << j)) if i != j else None
                if c is not None:
                    # d e^k (e_i, e_j) = -e^k([e_i, e_j]) with the word sorted ascending
                    br[i, j, k] = -float(c) if i < j else float(c)
    cur = np.eye(n)
    step = 0
    while np.linalg.matrix_rank(cur) > 0:
        nxt = np.einsum("ijk,aj->aik", br, cur).reshape(-1, n) if step else br.reshape(-1, n)
        if np.linalg.matrix_rank(nxt, tol=1e-9) == 0:
            return step + 1 if step else 1
        u, s, vt = np.linalg.svd(nxt)
        cur = vt[: int((s > 1e-9).sum())]
        step += 1
        if step > n:
            raise AssertionError("not nilpotent")
    return step


def test_jacobi_rejects_bad_equations():
    g = LieAlgebra.parse("(0,0,12,13,24)")
    assert not g.is_jacobi()
    assert g.jacobi_failures() == [5]


def test_catalog_algebras_satisfy_jacobi(catalog):
    for e in catalog:
        assert e.algebra.is_jacobi(), e.id


def test_d_squared_vanishes(catalog):
    for e in catalog:
        g = e.algebra
        for k in (1, 2, 3, 4):
            for m in blades(g.dim, k):
                assert not g.d(g.d(Form(g.dim, {m: ScalarK(1)}))), (e.id, m)


algebra_ids = st.sampled_from(["17", "37A", "37B", "37D", "n8", "n24", "g6", "l2", "ex2"])


@given(algebra_ids, forms(7, 1), forms(7, 2), forms(7, 3))
def test_leibniz(entries, eid, a, b, c):
    g = entries[eid].algebra
    if g.dim != 7:
        return
    assert g.d(a.wedge(b)) == g.d(a).wedge(b) - a.wedge(g.d(b))
    assert g.d(b.wedge(c)) == g.d(b).wedge(c) + b.wedge(g.d(c))


def test_closed_form_dimensions_match_float_rank(catalog):
    for e in catalog:
        g = e.algebra
        for k in (3, 4):
            D = _float_d(g, k)
            nullity = D.shape[1] - np.linalg.matrix_rank(D, tol=1e-9)
            assert len(closed_forms(g, k)) == nullity, (e.id, k)


def test_closed_forms_are_closed_and_normalized(catalog):
    for e in catalog:
        kappa = closed_forms(e.algebra, 4)
        free = {n[1:] for n in kappa.names}
        for name, b in zip(kappa.names, kappa.basis):
            assert not e.algebra.d(b)
            word = tuple(int(ch) for ch in name[1:])
            assert b.coefficient(word) == 1
            for other in free - {name[1:]}:
                assert not b.coefficient(tuple(int(ch) for ch in other))


@given(algebra_ids, st.lists(st.lists(st.integers(-2, 2), min_size=40, max_size=40), min_size=1,
                             max_size=4))
def test_reechelonization_is_invariant(entries, eid, mixes):
    # any spanning set of the closed forms echelonizes to the same canonical basis
    g = entries[eid].algebra
    kappa = closed_forms(g, 4)
    base = echelonize_span(g, 4, kappa.basis)
    extra = []
    for mix in mixes:
        f = Form(g.dim)
        for c, b in zip(mix, kappa.basis):
            if c:
                f = f + b * ScalarK(c)
        extra.append(f)
    again = echelonize_span(g, 4, extra + kappa.basis)
    assert [format_form(b) for b in again.basis] == [format_form(b) for b in base.basis]


def test_parametric_basis_round_trip(entries):
    g = entries["37A"].algebra
    kappa = closed_forms(g, 4)
    names, pieces = parametric_basis(kappa.assembled())
    assert names == kappa.names
    assert all(p == b for p, b in zip(pieces, kappa.basis))


def test_steps_match_float_series(catalog):
    for e in catalog:
        assert e.algebra.nilpotency_step() == _float_step(e.algebra), e.id
        if "step" in e.tags:
            assert e.algebra.nilpotency_step() == e.tags["step"], e.id


def test_not_nilpotent():
    with pytest.raises(NotNilpotent):
        LieAlgebra.parse("(0,12,13)").nilpotency_step()


def test_center_and_quotient(entries):
    g = entries["17"].algebra
    x = Vector.basis(7, 7)
    assert g.is_central(x)
    q = g.quotient_by_central(x)
    assert q.h.dim == 6 and q.h.is_jacobi()
    with pytest.raises(NotCentral):
        g.quotient_by_central(Vector.basis(7, 1))
    with pytest.raises(ZeroVector):
        g.quotient_by_central(Vector([ScalarK(0)] * 7))


def test_quotient_pull_push(entries):
    g = entries["37A"].algebra
    x = parse_vector("7", 7)
    q = g.quotient_by_central(x)
    a = parse_form("123 + 456", 6)
    assert q.push(q.pull(a)) == a
    # pi^* commutes with d
    assert g.d(q.pull(a)) == q.pull(q.h.d(a))


def test_change_basis_preserves_d_squared(entries):
    g = entries["n8"].algebra
    M = [[ScalarK(1) if i == j else ScalarK(0) for j in range(7)] for i in range(7)]
    M[0][1] = ScalarK(2)
    h = g.change_basis(M)
    assert h.is_jacobi()
    assert h.nilpotency_step() == g.nilpotency_step()
