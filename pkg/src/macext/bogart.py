"""Recover a monomial matrix from a Hamming isometry between field codes.

Lines of F_q^k are indexed by normalized representatives (first nonzero
coordinate 1), sorted by their integer packing sum(v_j q^j). For a generator
X, r_i counts the nonzero columns of X on line i, and (T r)_i is the weight of
u_i X where T records non-orthogonality of lines. T is invertible, so the
weights pin down r, and matching columns line by line yields the monomial map.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import qlinalg
from .errors import ColumnMatchFailure, EnumerationCapExceeded, NotIsometry, RankDeficient
from .gf import GF
from .linalg import FqMatrix, array_rank, matmul

LINE_CAP = 4096


def mu(k: int, q: int) -> int:
    return (q ** k - 1) // (q - 1) if k > 0 else 0


def normalize(F: GF, v) -> tuple | None:
    v = [int(x) for x in v]
    lead = next((x for x in v if x), None)
    if lead is None:
        return None
    inv = F.inv(lead)
    return tuple(F.mul(inv, x) for x in v)


def lines(k: int, F: GF, cap: int | None = LINE_CAP) -> list[tuple]:
    if cap is not None and mu(k, F.q) > cap:
        raise EnumerationCapExceeded(f"{mu(k, F.q)} lines exceed cap {cap}")
    reps = {normalize(F, v) for v in itertools.product(range(F.q), repeat=k)} - {None}
    return sorted(reps, key=lambda v: sum(x * F.q ** j for j, x in enumerate(v)))


def _dot(F, a, b):
    acc = 0
    for x, y in zip(a, b):
        acc = F.add(acc, F.mul(x, y))
    return acc


@dataclass
class TMatrix:
    lines: list
    entries: list
    det: int

    @property
    def invertible(self) -> bool:
        return self.det != 0


def t_matrix(k: int, F: GF, cap: int | None = LINE_CAP) -> TMatrix:
    ls = lines(k, F, cap)
    T = [[0 if _dot(F, a, b) == 0 else 1 for b in ls] for a in ls]
    return TMatrix(ls, T, qlinalg.det(T))


def line_distribution(X: FqMatrix, ls) -> list[int]:
    index = {v: i for i, v in enumerate(ls)}
    r = [0] * len(ls)
    for col in X.data.T:
        key = normalize(X.field, col)
        if key is not None:
            r[index[key]] += 1
    return r


@dataclass
class MonomialMatrix:
    """Column j of X Lambda is scalars[j] times column perm[j] of X."""
    perm: list
    scalars: list

    def matrix(self, F: GF) -> FqMatrix:
        n = len(self.perm)
        L = np.zeros((n, n), dtype=np.int64)
        for j, (i, a) in enumerate(zip(self.perm, self.scalars)):
            L[i, j] = a
        return FqMatrix(F, L)

    def to_json(self) -> dict:
        return {"perm": list(self.perm), "scalars": list(self.scalars)}


def _weights(F, U, M):
    return np.sum(matmul(F, U, M.data) != 0, axis=1)


def recover_monomial(X: FqMatrix, Y: FqMatrix, T: TMatrix | None = None) -> tuple[MonomialMatrix, dict]:
    """Find Lambda with X Lambda = Y, where row i of Y is the image of row i of X."""
    F = X.field
    k, n = X.shape
    if Y.shape != X.shape:
        raise ColumnMatchFailure("X and Y have different shapes")
    if array_rank(F, X.data) != k:
        raise RankDeficient("generator does not have full row rank")
    msgs = np.array(list(itertools.product(range(F.q), repeat=k)), dtype=np.int64).reshape(-1, k)
    wx, wy = _weights(F, msgs, X), _weights(F, msgs, Y)
    bad = np.nonzero(wx != wy)[0]
    if bad.size:
        raise NotIsometry(msgs[bad[0]].tolist())
    T = T or t_matrix(k, F)
    r, r2 = line_distribution(X, T.lines), line_distribution(Y, T.lines)
    w = _weights(F, np.array(T.lines, dtype=np.int64).reshape(-1, k), Y).tolist()
    tr = [sum(a * b for a, b in zip(row, r)) for row in T.entries]
    if tr != w:
        raise ColumnMatchFailure("T r differs from the line weights")
    solved = qlinalg.solve(T.entries, w)
    if solved is None or [int(x) for x in solved] != r or r != r2:
        raise ColumnMatchFailure("line distributions of X and Y differ")
    used = set()
    perm, scalars = [], []
    for j in range(n):
        ycol = Y.data[:, j]
        ykey = normalize(F, ycol)
        for i in range(n):
            if i in used:
                continue
            xcol = X.data[:, i]
            if normalize(F, xcol) == ykey:
                if ykey is None:
                    a = 1
                else:
                    t = int(np.nonzero(xcol)[0][0])
                    a = F.div(int(ycol[t]), int(xcol[t]))
                used.add(i)
                perm.append(i)
                scalars.append(a)
                break
        else:
            raise ColumnMatchFailure(f"no column of X matches column {j} of Y")
    lam = MonomialMatrix(perm, scalars)
    if X @ lam.matrix(F) != Y:
        raise ColumnMatchFailure("X Lambda != Y")
    info = {"r": r, "T_det": T.det, "line_weights": w}
    return lam, info


def orthogonal_to_both(T: TMatrix, i: int, j: int) -> int:
    return sum(1 for t in range(len(T.lines)) if T.entries[t][i] == 0 and T.entries[t][j] == 0)
