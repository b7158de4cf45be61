import itertools

import numpy as np
import pytest

from macext.bogart import (MonomialMatrix, line_distribution, lines, mu, orthogonal_to_both, recover_monomial,
                           t_matrix)
from macext.errors import EnumerationCapExceeded, NotIsometry, RankDeficient
from macext.gf import field_of_order
from macext.linalg import FqMatrix, array_rank, matmul

GRID = [(k, q) for k in range(1, 5) for q in (2, 3)]


def _reduce(F, a, b):
    acc = 0
    for x, y in zip(a, b):
        acc = F.add(acc, F.mul(x, y))
    return acc


def random_monomial(F, n, rng):
    perm = [int(i) for i in rng.permutation(n)]
    scalars = [int(rng.integers(1, F.q)) for _ in range(n)]
    return MonomialMatrix(perm, scalars)


def random_full_rank(F, k, n, rng):
    while True:
        X = rng.integers(0, F.q, size=(k, n))
        if array_rank(F, X) == k:
            return FqMatrix(F, X)


def test_t_matrix_2_2():
    T = t_matrix(2, field_of_order(2))
    assert T.lines == [(1, 0), (0, 1), (1, 1)]
    assert T.entries == [[1, 0, 1], [0, 1, 1], [1, 1, 0]]
    assert T.det == -2


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_t_matrix_k1(q):
    T = t_matrix(1, field_of_order(q))
    assert T.entries == [[1]] and T.det == 1


def test_t_matrix_2_3_row_sums():
    T = t_matrix(2, field_of_order(3))
    assert len(T.lines) == 4 and all(sum(row) == 3 for row in T.entries)


@pytest.mark.parametrize("k,q", GRID)
def test_t_structure(k, q):
    F = field_of_order(q)
    T = t_matrix(k, F)
    n = mu(k, q)
    assert len(T.lines) == len(set(T.lines)) == n
    assert T.entries == [list(r) for r in zip(*T.entries)]
    assert all(sum(row) == mu(k, q) - mu(k - 1, q) for row in T.entries)
    assert T.invertible
    # independent exact determinant
    assert int(round(np.linalg.det(np.array(T.entries, dtype=float)))) == T.det or n > 12
    # entries from a direct dot product
    for i, a in enumerate(T.lines):
        for j, b in enumerate(T.lines):
            assert T.entries[i][j] == int(_reduce(F, a, b) != 0)


@pytest.mark.parametrize("k,q", [g for g in GRID if g[0] >= 2])
def test_orthogonal_to_two_lines(k, q):
    T = t_matrix(k, field_of_order(q))
    for i, j in itertools.combinations(range(len(T.lines)), 2):
        assert orthogonal_to_both(T, i, j) == mu(k - 2, q)


def test_lines_cover_every_nonzero_vector_once_up_to_scalar():
    F = field_of_order(3)
    ls = lines(3, F)
    seen = {}
    for v in itertools.product(range(3), repeat=3):
        if any(v):
            hits = [L for L in ls for a in (1, 2) if tuple(F.mul(a, x) for x in L) == v]
            assert len(hits) == 1
            seen[hits[0]] = seen.get(hits[0], 0) + 1
    assert set(seen.values()) == {2}


def test_line_cap():
    with pytest.raises(EnumerationCapExceeded):
        lines(5, field_of_order(3), cap=100)


@pytest.mark.parametrize("k,q", [(k, q) for k in (1, 2, 3) for q in (2, 3)])
def test_t_times_r_is_weight(k, q):
    F = field_of_order(q)
    rng = np.random.default_rng(k * 10 + q)
    T = t_matrix(k, F)
    for _ in range(10):
        X = random_full_rank(F, k, k + 3, rng)
        r = line_distribution(X, T.lines)
        for i, u in enumerate(T.lines):
            wt = int(np.count_nonzero(matmul(F, np.array([u]), X.data)))
            assert sum(t * x for t, x in zip(T.entries[i], r)) == wt


def test_identity():
    F = field_of_order(2)
    X = FqMatrix(F, [[1, 0, 1, 1], [0, 1, 1, 0]])
    lam, _ = recover_monomial(X, X)
    assert lam.matrix(F) == FqMatrix(F, np.eye(4, dtype=np.int64))


def test_repetition_swap():
    F = field_of_order(2)
    X = FqMatrix(F, [[1, 1, 1]])
    # columns are all equal, so any permutation is a valid answer; X Lambda = Y is what matters
    lam, _ = recover_monomial(X, X)
    P = FqMatrix(F, [[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    assert X @ lam.matrix(F) == X @ P
    X = FqMatrix(F, [[1, 1, 1], [0, 1, 0]])
    Y = X @ P
    lam, _ = recover_monomial(X, Y)
    assert lam.matrix(F) == P


def test_random_gf3_code():
    F = field_of_order(3)
    rng = np.random.default_rng(5)
    X = random_full_rank(F, 2, 5, rng)
    L = random_monomial(F, 5, rng).matrix(F)
    Y = X @ L
    lam, info = recover_monomial(X, Y)
    assert X @ lam.matrix(F) == Y
    for u in itertools.product(range(3), repeat=2):
        u = np.array([u])
        assert (matmul(F, u, Y.data) == matmul(F, matmul(F, u, X.data), lam.matrix(F).data)).all()
    assert info["T_det"] != 0


def test_not_isometry():
    F = field_of_order(2)
    X = FqMatrix(F, [[1, 0, 0], [0, 1, 0]])
    Y = FqMatrix(F, [[1, 1, 0], [0, 1, 0]])
    with pytest.raises(NotIsometry) as exc:
        recover_monomial(X, Y)
    u = np.array([exc.value.witness])
    assert np.count_nonzero(matmul(F, u, X.data)) != np.count_nonzero(matmul(F, u, Y.data))


def test_rank_deficient():
    F = field_of_order(2)
    X = FqMatrix(F, [[1, 1, 0], [1, 1, 0]])
    with pytest.raises(RankDeficient):
        recover_monomial(X, X)


def test_zero_columns_are_matched():
    F = field_of_order(3)
    X = FqMatrix(F, [[1, 0, 2, 0], [0, 0, 1, 1]])
    L = MonomialMatrix([3, 1, 0, 2], [2, 1, 1, 2]).matrix(F)
    lam, _ = recover_monomial(X, X @ L)
    assert X @ lam.matrix(F) == X @ L
