"""Dense matrices over GF(q): echelon forms, echelon enumeration, GL(n, q),
q-binomial coefficients.

A matrix can also be packed into a single integer, sum(entry_i * q^i) over
the row-major entries. Module and ring tables index matrices this way.
"""
from __future__ import annotations

import itertools
import math

import numpy as np

from .errors import EnumerationCapExceeded, FieldMismatch, ValidationError
from .gf import GF, parse_field

DEFAULT_CAP = 10 ** 6


class FqMatrix:
    """An immutable rows x cols matrix over a field."""

    __slots__ = ("field", "data")

    def __init__(self, field: GF, entries, rows: int | None = None, cols: int | None = None):
        arr = np.array(entries, dtype=np.int64)
        if rows is not None and cols is not None:
            arr = arr.reshape(rows, cols)
        elif arr.ndim != 2:
            raise ValidationError("entries must be a 2-d array")
        if arr.size and (arr.min() < 0 or arr.max() >= field.q):
            raise FieldMismatch(f"entries outside GF({field.q})")
        arr.setflags(write=False)
        self.field = field
        self.data = arr

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self):
        return self.data.shape

    @property
    def T(self) -> "FqMatrix":
        return FqMatrix(self.field, self.data.T.copy())

    def key(self) -> tuple:
        return tuple(int(x) for x in self.data.ravel())

    def tolist(self):
        return self.data.tolist()

    def __eq__(self, other):
        return (isinstance(other, FqMatrix) and self.field == other.field
                and self.data.shape == other.data.shape and bool(np.array_equal(self.data, other.data)))

    def __hash__(self):
        return hash((self.field, self.data.shape, self.key()))

    def __repr__(self):
        return f"FqMatrix({self.field.spec}, {self.data.tolist()})"

    def _same_field(self, other):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __add__(self, other):
        self._same_field(other)
        return FqMatrix(self.field, self.field.add_arr(self.data, other.data))

    def __neg__(self):
        return FqMatrix(self.field, self.field.neg_arr(self.data))

    def __sub__(self, other):
        return self + (-other)

    def __matmul__(self, other):
        self._same_field(other)
        return FqMatrix(self.field, matmul(self.field, self.data, other.data))

    def scale(self, c: int) -> "FqMatrix":
        return FqMatrix(self.field, self.field.mul_arr(c, self.data))

    def is_zero(self) -> bool:
        return not self.data.any()

    def to_index(self) -> int:
        q = self.field.q
        return sum(int(x) * q ** i for i, x in enumerate(self.data.ravel()))

    @classmethod
    def from_index(cls, field: GF, rows: int, cols: int, idx: int) -> "FqMatrix":
        q = field.q
        return cls(field, [(idx // q ** i) % q for i in range(rows * cols)], rows, cols)

    @classmethod
    def zeros(cls, field, rows, cols):
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, field, n):
        return cls(field, np.eye(n, dtype=np.int64))

    def to_json(self) -> dict:
        return {"field": self.field.spec, "rows": self.rows, "cols": self.cols, "entries": self.tolist()}

    @classmethod
    def from_json(cls, doc: dict) -> "FqMatrix":
        field = parse_field(doc["field"])
        rows, cols = int(doc["rows"]), int(doc["cols"])
        entries = doc["entries"]
        if rows * cols == 0:
            return cls(field, np.zeros((rows, cols), dtype=np.int64))
        return cls(field, entries, rows, cols)


def matmul(field: GF, a, b):
    """Product of two integer arrays interpreted over ``field``."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if a.shape[-1] != b.shape[0]:
        raise ValidationError(f"shape mismatch {a.shape} @ {b.shape}")
    if field.m == 1:
        return (a @ b) % field.p
    out = np.zeros(a.shape[:-1] + b.shape[1:], dtype=np.int64)
    for t in range(a.shape[-1]):
        out = field.add_arr(out, field.mul_arr(a[..., t][..., None], b[t]))
    return out


def rre_array(field: GF, arr):
    """Gauss-Jordan on an integer array; returns (reduced array, pivot columns)."""
    a = np.array(arr, dtype=np.int64, copy=True)
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = field.inv(int(a[r, c]))
        a[r] = field.mul_arr(inv, a[r])
        for i in range(rows):
            if i != r and a[i, c]:
                a[i] = field.add_arr(a[i], field.mul_arr(field.neg(int(a[i, c])), a[r]))
        pivots.append(c)
        r += 1
    return a, pivots


def rre(M: FqMatrix) -> FqMatrix:
    """Row reduced echelon form."""
    return FqMatrix(M.field, rre_array(M.field, M.data)[0])


def cre(M: FqMatrix) -> FqMatrix:
    """Column reduced echelon form, the transpose of rre of the transpose."""
    return FqMatrix(M.field, rre_array(M.field, M.data.T)[0].T.copy())


def rank(M: FqMatrix) -> int:
    return len(rre_array(M.field, M.data)[1])


def array_rank(field: GF, arr) -> int:
    return len(rre_array(field, arr)[1])


def nullspace(M: FqMatrix) -> FqMatrix:
    """Basis (as rows) of {x : M x^T = 0}."""
    field = M.field
    red, pivots = rre_array(field, M.data)
    n = M.cols
    free = [j for j in range(n) if j not in pivots]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for t, j in enumerate(free):
        basis[t, j] = 1
        for i, pc in enumerate(pivots):
            basis[t, pc] = field.neg(int(red[i, j]))
    return FqMatrix(field, basis.reshape(len(free), n))


def gaussian(k: int, l: int, q: int) -> int:
    """The q-binomial coefficient [k choose l]_q."""
    if l < 0 or l > k:
        return 0
    num = den = 1
    for i in range(l):
        num *= q ** (k - i) - 1
        den *= q ** (l - i) - 1
    return num // den


def cauchy_identity_check(k: int, q: int) -> bool:
    """Compare prod_{i<k} (1 + x q^i) with sum_j [k j]_q q^C(j,2) x^j."""
    left = [1]
    for i in range(k):
        c = q ** i
        left = [a + c * b for a, b in zip(left + [0], [0] + left)]
    right = [gaussian(k, j, q) * q ** math.comb(j, 2) for j in range(k + 1)]
    return left == right


def _check_cap(count, cap, what):
    if cap is not None and count > cap:
        raise EnumerationCapExceeded(f"{what}: {count} exceeds cap {cap}")


def enumerate_rre(rows: int, cols: int, r: int, field: GF, cap: int | None = DEFAULT_CAP) -> list[FqMatrix]:
    """Every rows x cols RRE matrix of rank r, sorted by entry sequence."""
    if r > min(rows, cols) or r < 0:
        return []
    _check_cap(gaussian(cols, r, field.q), cap, "RRE enumeration")
    out = []
    for pivots in itertools.combinations(range(cols), r):
        pset = set(pivots)
        free = [(i, j) for i, c in enumerate(pivots) for j in range(c + 1, cols) if j not in pset]
        base = np.zeros((rows, cols), dtype=np.int64)
        for i, c in enumerate(pivots):
            base[i, c] = 1
        for vals in itertools.product(range(field.q), repeat=len(free)):
            m = base.copy()
            for (i, j), v in zip(free, vals):
                m[i, j] = v
            out.append(m)
    out.sort(key=lambda m: tuple(m.ravel()))
    return [FqMatrix(field, m) for m in out]


def enumerate_cre(rows: int, cols: int, r: int, field: GF, cap: int | None = DEFAULT_CAP) -> list[FqMatrix]:
    """Every rows x cols CRE matrix of rank r, sorted by entry sequence."""
    mats = [m.T for m in enumerate_rre(cols, rows, r, field, cap)]
    mats.sort(key=FqMatrix.key)
    return mats


def all_rre(rows, cols, field, cap=DEFAULT_CAP):
    return [m for r in range(min(rows, cols) + 1) for m in enumerate_rre(rows, cols, r, field, cap)]


def all_cre(rows, cols, field, cap=DEFAULT_CAP):
    return [m for r in range(min(rows, cols) + 1) for m in enumerate_cre(rows, cols, r, field, cap)]


def gl_order(n: int, q: int) -> int:
    return math.prod(q ** n - q ** i for i in range(n))


def enumerate_gl(n: int, field: GF, cap: int | None = DEFAULT_CAP) -> list[FqMatrix]:
    """All invertible n x n matrices in lexicographic order of entries."""
    _check_cap(gl_order(n, field.q), cap, "GL enumeration")
    q = field.q
    vectors = [np.array(v, dtype=np.int64) for v in itertools.product(range(q), repeat=n)]
    out = []

    def span_keys(rows_):
        keys = set()
        for coeffs in itertools.product(range(q), repeat=len(rows_)):
            acc = np.zeros(n, dtype=np.int64)
            for c, row in zip(coeffs, rows_):
                acc = field.add_arr(acc, field.mul_arr(c, row))
            keys.add(tuple(acc))
        return keys

    def extend(rows_):
        if len(rows_) == n:
            out.append(FqMatrix(field, np.array(rows_, dtype=np.int64).reshape(n, n)))
            return
        taken = span_keys(rows_)
        for v in vectors:
            if tuple(v) not in taken:
                extend(rows_ + [v])

    extend([])
    return out


def all_matrix_array(field: GF, rows: int, cols: int):
    """Every rows x cols matrix as an array of shape (q^(rows*cols), rows, cols),
    ordered by integer index."""
    q, size = field.q, rows * cols
    idx = np.arange(q ** size, dtype=np.int64)
    digits = (idx[:, None] // (q ** np.arange(size, dtype=np.int64))[None, :]) % q
    return digits.reshape(-1, rows, cols)


def index_of_arrays(field: GF, arrs):
    """Inverse of ``all_matrix_array`` for a stack of matrices (..., rows, cols)."""
    arrs = np.asarray(arrs, dtype=np.int64)
    size = arrs.shape[-1] * arrs.shape[-2]
    flat = arrs.reshape(arrs.shape[:-2] + (size,))
    return flat @ (field.q ** np.arange(size, dtype=np.int64))
