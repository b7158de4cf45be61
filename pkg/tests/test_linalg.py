import itertools

import pytest
from hypothesis import given, strategies as st

from macext.errors import EnumerationCapExceeded, FieldMismatch
from macext.gf import field_of_order
from macext.linalg import (FqMatrix, all_matrix_array, cauchy_identity_check, cre, enumerate_cre,
                           enumerate_gl, enumerate_rre, gaussian, gl_order, index_of_arrays, nullspace,
                           rank, rre)

GF2, GF3, GF4 = field_of_order(2), field_of_order(3), field_of_order(4)


def row_space(M: FqMatrix) -> frozenset:
    """Brute-force oracle: every F-combination of the rows."""
    F, out = M.field, set()
    for coeffs in itertools.product(range(F.q), repeat=M.rows):
        acc = [0] * M.cols
        for c, row in zip(coeffs, M.data.tolist()):
            acc = [F.add(a, F.mul(c, x)) for a, x in zip(acc, row)]
        out.add(tuple(acc))
    return frozenset(out)


def is_rre(M: FqMatrix) -> bool:
    last = -1
    seen_zero = False
    for row in M.data.tolist():
        nz = [j for j, x in enumerate(row) if x]
        if not nz:
            seen_zero = True
            continue
        lead = nz[0]
        if seen_zero or lead <= last or row[lead] != 1:
            return False
        if any(M.data[i, lead] for i in range(M.rows) if M.data[i].tolist() != row):
            return False
        last = lead
    return True


def matrices(F, rows, cols):
    return [FqMatrix(F, a) for a in all_matrix_array(F, rows, cols)]


def test_rre_examples():
    Z = FqMatrix.zeros(GF2, 2, 3)
    assert rre(Z) == Z and rank(Z) == 0
    I = FqMatrix.identity(GF2, 2)
    assert cre(I) == I and rank(I) == 2
    assert rre(FqMatrix(GF2, [[0, 1], [1, 1]])) == I


def test_mixed_fields_rejected():
    with pytest.raises(FieldMismatch):
        FqMatrix.identity(GF2, 2) @ FqMatrix.identity(GF3, 2)


@pytest.mark.parametrize("F,shape", [(GF2, (2, 3)), (GF2, (3, 3)), (GF3, (2, 3)), (GF4, (2, 2))])
def test_rre_against_row_space_oracle(F, shape):
    by_space = {}
    for M in matrices(F, *shape):
        R = rre(M)
        assert is_rre(R)
        assert rre(R) == R
        space = row_space(M)
        assert row_space(R) == space
        assert F.q ** rank(M) == len(space)
        by_space.setdefault(space, set()).add(R.key())
    # equal rre iff equal row space
    assert all(len(v) == 1 for v in by_space.values())


def test_cre_is_transpose_of_rre():
    for M in matrices(GF3, 2, 2):
        assert cre(M) == rre(M.T).T


def test_enumerate_examples():
    got = enumerate_cre(2, 2, 1, GF2)
    assert [m.tolist() for m in got] == [[[0, 0], [1, 0]], [[1, 0], [0, 0]], [[1, 0], [1, 0]]]
    assert len([m for r in range(2) for m in enumerate_rre(1, 2, r, GF2)]) == 4
    assert [m.tolist() for m in enumerate_cre(2, 2, 0, GF2)] == [[[0, 0], [0, 0]]]


@pytest.mark.parametrize("F", [GF2, GF3])
@pytest.mark.parametrize("rows,cols", [(1, 2), (2, 2), (2, 3), (3, 2)])
def test_enumeration_matches_brute_force(F, rows, cols):
    for r in range(min(rows, cols) + 1):
        brute = sorted({rre(M).key() for M in matrices(F, rows, cols) if rank(M) == r})
        got = [m.key() for m in enumerate_rre(rows, cols, r, F)]
        assert got == brute  # exactly once each, lexicographic
        brute_c = sorted({cre(M).key() for M in matrices(F, rows, cols) if rank(M) == r})
        assert [m.key() for m in enumerate_cre(rows, cols, r, F)] == brute_c


def test_gaussian_examples():
    assert gaussian(5, 0, 3) == 1
    assert gaussian(2, 1, 2) == 3
    assert gaussian(4, 2, 2) == 35
    assert gaussian(2, 3, 2) == 0


def test_gaussian_symmetry_and_counts():
    for q in (2, 3, 4, 5):
        for k in range(9):
            for l in range(k + 1):
                assert gaussian(k, l, q) == gaussian(k, k - l, q)
    for q, F in ((2, GF2), (3, GF3)):
        for k in range(1, 5):
            for l in range(k + 1):
                assert gaussian(k, l, q) == len(enumerate_rre(l, k, l, F))


def test_gaussian_is_big_int():
    v = gaussian(40, 20, 7)
    assert v > 2 ** 64 and isinstance(v, int)


def test_cauchy_examples():
    assert cauchy_identity_check(2, 2)
    assert cauchy_identity_check(1, 5)
    assert cauchy_identity_check(6, 3)
    assert all(cauchy_identity_check(k, q) for k in range(13) for q in range(2, 17))


def test_gl_counts_and_order():
    assert len(enumerate_gl(1, GF2)) == 1
    assert len(enumerate_gl(2, GF2)) == 6
    g = enumerate_gl(2, GF3)
    assert len(g) == 48 == gl_order(2, 3)
    assert [m.key() for m in g] == sorted(m.key() for m in g)
    brute = [M.key() for M in matrices(GF3, 2, 2) if rank(M) == 2]
    assert sorted(brute) == [m.key() for m in g]
    assert len(enumerate_gl(3, GF2)) == 168


def test_caps():
    with pytest.raises(EnumerationCapExceeded):
        enumerate_gl(3, GF3, cap=100)
    with pytest.raises(EnumerationCapExceeded):
        enumerate_rre(3, 6, 3, GF2, cap=10)


@given(st.sampled_from([GF2, GF3, GF4, field_of_order(5)]), st.integers(1, 4), st.integers(1, 5), st.data())
def test_nullspace_property(F, rows, cols, data):
    entries = data.draw(st.lists(st.integers(0, F.q - 1), min_size=rows * cols, max_size=rows * cols))
    M = FqMatrix(F, entries, rows, cols)
    N = nullspace(M)
    assert N.rows == cols - rank(M)
    if N.rows:
        assert (M @ N.T).is_zero()
        assert rank(N) == N.rows


@given(st.sampled_from([GF2, GF3, GF4]), st.data())
def test_rank_invariant_under_invertible_maps(F, data):
    n = 2
    g = enumerate_gl(n, F)
    P = g[data.draw(st.integers(0, len(g) - 1))]
    Q = g[data.draw(st.integers(0, len(g) - 1))]
    M = FqMatrix(F, data.draw(st.lists(st.integers(0, F.q - 1), min_size=4, max_size=4)), 2, 2)
    assert rank(P @ M @ Q) == rank(M)
    assert rre(P @ M) == rre(M)


def test_packing_round_trip():
    arrs = all_matrix_array(GF3, 2, 2)
    assert index_of_arrays(GF3, arrs).tolist() == list(range(81))
    M = FqMatrix.from_index(GF3, 2, 2, 47)
    assert M.to_index() == 47
    assert FqMatrix.from_json(M.to_json()) == M


def test_matrix_algebra():
    A = FqMatrix(GF4, [[1, 2], [3, 0]])
    B = FqMatrix(GF4, [[2, 2], [1, 3]])
    assert (A + B) - B == A
    assert A @ FqMatrix.identity(GF4, 2) == A
    assert A.scale(0).is_zero()
    lhs = (A @ B).tolist()
    rhs = [[0, 0], [0, 0]]
    for i in range(2):
        for j in range(2):
            for t in range(2):
                rhs[i][j] = GF4.add(rhs[i][j], GF4.mul(A.tolist()[i][t], B.tolist()[t][j]))
    assert lhs == rhs
