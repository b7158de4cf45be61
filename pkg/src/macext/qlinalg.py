"""Exact linear algebra over the rationals (rank, kernel, determinant)."""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm


def _as_fractions(rows):
    return [[Fraction(x) for x in row] for row in rows]


def rref(rows):
    """Reduced row echelon form over Q; returns (matrix, pivot columns)."""
    a = _as_fractions(rows)
    if not a:
        return a, []
    n_rows, n_cols = len(a), len(a[0])
    pivots = []
    r = 0
    for c in range(n_cols):
        piv = next((i for i in range(r, n_rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        lead = a[r][c]
        a[r] = [x / lead for x in a[r]]
        for i in range(n_rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return a, pivots


def rank(rows) -> int:
    """Rank via fraction-free (Bareiss) elimination on an integer matrix."""
    a = [list(row) for row in rows]
    if not a:
        return 0
    if any(isinstance(x, Fraction) and x.denominator != 1 for row in a for x in row):
        return len(rref(a)[1])
    a = [[int(x) for x in row] for row in a]
    n_rows, n_cols = len(a), len(a[0])
    r, prev = 0, 1
    for c in range(n_cols):
        piv = next((i for i in range(r, n_rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, n_rows):
            a[i] = [(a[r][c] * a[i][j] - a[i][c] * a[r][j]) // prev for j in range(n_cols)]
        prev = a[r][c]
        r += 1
        if r == n_rows:
            break
    return r


def nullspace(rows, n_cols: int | None = None):
    """Basis of {v : A v = 0}, one vector per free column, from the rref."""
    if not rows:
        return [[Fraction(int(i == j)) for j in range(n_cols)] for i in range(n_cols or 0)]
    red, pivots = rref(rows)
    n = len(red[0])
    basis = []
    for f in (j for j in range(n) if j not in pivots):
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -red[i][f]
        basis.append(v)
    return basis


def primitive_integer(v):
    """Scale a rational vector to coprime integers with positive first nonzero entry."""
    den = lcm(*(Fraction(x).denominator for x in v)) if v else 1
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return ints
    ints = [x // g for x in ints]
    first = next(x for x in ints if x)
    return [-x for x in ints] if first < 0 else ints


def det(rows):
    """Exact determinant of a square integer matrix (Bareiss)."""
    a = [[int(x) for x in row] for row in rows]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def mat_vec(rows, v):
    return [sum(Fraction(x) * y for x, y in zip(row, v)) for row in rows]


def solve(rows, b):
    """Unique solution of A x = b for square invertible A, else None."""
    aug = [list(row) + [y] for row, y in zip(rows, b)]
    red, pivots = rref(aug)
    n = len(rows[0])
    if pivots != list(range(n)):
        return None
    return [red[i][n] for i in range(n)]
