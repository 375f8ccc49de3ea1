"""Exact dense linear algebra over K or over rational functions.

Matrices are lists of rows.  Entries must support + - * / and truthiness
as a zero test, which ScalarK and RatFunK both do.
"""
from __future__ import annotations

from .scalars import ONE, ZERO, as_scalar


class SingularMatrix(ArithmeticError):
    pass


def identity(n: int) -> list:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def zeros(n: int, m: int | None = None) -> list:
    return [[ZERO] * (n if m is None else m) for _ in range(n)]


def transpose(a: list) -> list:
    return [list(r) for r in zip(*a)] if a else []


def matmul(a: list, b: list) -> list:
    bt = transpose(b)
    out = []
    for r in a:
        row = []
        for c in bt:
            s = ZERO
            for x, y in zip(r, c):
                if x and y:
                    s = s + x * y
            row.append(s)
        out.append(row)
    return out


def matvec(a: list, v: list) -> list:
    out = []
    for r in a:
        s = ZERO
        for x, y in zip(r, v):
            if x and y:
                s = s + x * y
        out.append(s)
    return out


def rref(a: list, columns: list | None = None):
    """Reduced row echelon form.

    ``columns`` optionally gives the order in which columns are scanned for
    pivots.  Returns (reduced rows, pivot columns) with zero rows dropped.
    """
    rows = [list(r) for r in a]
    if not rows:
        return [], []
    ncols = len(rows[0])
    order = list(range(ncols)) if columns is None else list(columns)
    pivots = []
    r = 0
    for c in order:
        if r >= len(rows):
            break
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = ONE / rows[r][c]
        rows[r] = [x * inv if x else x for x in rows[r]]
        piv = rows[r]
        nz = [j for j in range(ncols) if piv[j]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                row = rows[i]
                for j in nz:
                    row[j] = row[j] - f * piv[j]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rank(a: list) -> int:
    return len(rref(a)[1])


def nullspace(a: list, ncols: int | None = None, columns: list | None = None) -> list:
    """Basis of {x : a x = 0}; one vector per free column, free entry 1."""
    if not a:
        n = ncols or 0
        return [[ONE if i == j else ZERO for i in range(n)] for j in range(n)]
    n = len(a[0])
    red, pivots = rref(a, columns)
    order = list(range(n)) if columns is None else list(columns)
    free = [c for c in order if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * n
        v[f] = ONE
        for row, p in zip(red, pivots):
            if row[f]:
                v[p] = -row[f]
        basis.append(v)
    return basis


def det(a: list):
    n = len(a)
    rows = [list(r) for r in a]
    out = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c]), None)
        if p is None:
            return ZERO
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            out = -out
        piv = rows[c][c]
        out = out * piv
        inv = ONE / piv
        for i in range(c + 1, n):
            if rows[i][c]:
                f = rows[i][c] * inv
                rows[i] = [x - f * y if y else x for x, y in zip(rows[i], rows[c])]
    return out


def inverse(a: list) -> list:
    n = len(a)
    aug = [list(r) + [ONE if i == j else ZERO for j in range(n)] for i, r in enumerate(a)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise SingularMatrix("matrix is not invertible")
    return [row[n:] for row in red]


def solve(a: list, b: list):
    """One solution x of a x = b, or None if inconsistent."""
    n = len(a[0])
    aug = [list(r) + [y] for r, y in zip(a, b)]
    red, pivots = rref(aug)
    if n in pivots:
        return None
    x = [ZERO] * n
    for row, p in zip(red, pivots):
        x[p] = row[n]
    return x


def leading_minors_signs(a: list) -> list:
    """Signs of the leading principal minors of a ScalarK matrix."""
    return [det([r[:k] for r in a[:k]]).sign() for k in range(1, len(a) + 1)]


def is_symmetric(a: list) -> bool:
    n = len(a)
    return all(a[i][j] == a[j][i] for i in range(n) for j in range(i + 1, n))


def scalar_matrix(rows) -> list:
    return [[as_scalar(x) for x in r] for r in rows]


def mat_str(a: list) -> str:
    return "\n".join("[" + ", ".join(str(x) for x in r) + "]" for r in a)

