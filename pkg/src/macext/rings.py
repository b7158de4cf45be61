"""Finite unital rings given by operation tables.

Every ring, whatever its origin (Z/n, a finite field, a full matrix ring, a
product, a JSON table), is presented the same way: elements 0..n-1 and numpy
tables for addition and multiplication. Structural queries are cached on the
instance; they are deterministic, so concurrent first calls at worst repeat
work.
"""
from __future__ import annotations

import json
from functools import cached_property
from pathlib import Path

import numpy as np

from . import _lattice
from .errors import AxiomViolation, MacextError, OrderCapExceeded, SpecParse
from .gf import GF, parse_field, field_of_order
from .linalg import all_matrix_array, index_of_arrays

TABLE_CAP = 256
STRUCTURED_CAP = 1024
IDEAL_CAP = 64


class Ideal:
    """A one-sided ideal, stored as a sorted tuple of element indices."""

    def __init__(self, ring, members, side="left"):
        self.ring = ring
        self.members = tuple(sorted(members))
        self.side = side

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, x):
        return x in self.members

    def __eq__(self, other):
        if isinstance(other, Ideal):
            return self.members == other.members
        return set(self.members) == set(other)

    def __hash__(self):
        return hash(self.members)

    def as_set(self) -> frozenset:
        return frozenset(self.members)

    def __repr__(self):
        return f"Ideal({list(self.members)})"


class FiniteRing:
    def __init__(self, add, mul, zero: int = 0, one: int = 1, spec: str = "table",
                 labels=None, verify: bool = False):
        self.add = np.asarray(add, dtype=np.int64)
        self.mul = np.asarray(mul, dtype=np.int64)
        n = self.add.shape[0]
        if self.add.shape != (n, n) or self.mul.shape != (n, n):
            raise AxiomViolation("square tables", [self.add.shape, self.mul.shape])
        if self.add.min() < 0 or self.add.max() >= n or self.mul.min() < 0 or self.mul.max() >= n:
            raise AxiomViolation("closure", [])
        self.order = n
        self.zero = int(zero)
        self.one = int(one)
        self.spec = spec
        self._labels = labels
        if verify:
            verify_ring_axioms(self)
        negs = np.argmax(self.add == self.zero, axis=1)
        self.neg = negs.astype(np.int64)

    def __repr__(self):
        return f"FiniteRing({self.spec}, order={self.order})"

    def label(self, x: int):
        return self._labels(x) if self._labels else int(x)

    def elements(self):
        return range(self.order)

    def sub(self, a, b):
        return int(self.add[a, self.neg[b]])

    @cached_property
    def unit_mask(self) -> np.ndarray:
        hits = self.mul == self.one
        return np.any(hits & hits.T, axis=1)

    @cached_property
    def units(self) -> frozenset:
        return frozenset(np.nonzero(self.unit_mask)[0].tolist())

    def inverse(self, u: int) -> int:
        cands = np.nonzero((self.mul[u] == self.one) & (self.mul[:, u] == self.one))[0]
        if cands.size == 0:
            raise ValueError(f"{u} is not a unit")
        return int(cands[0])

    @cached_property
    def radical(self) -> Ideal:
        # y is radical iff 1 - x*y is a unit for every x
        one_minus = self.add[self.one][self.neg[self.mul]]
        ok = np.all(self.unit_mask[one_minus], axis=0)
        return Ideal(self, np.nonzero(ok)[0].tolist(), "two-sided")

    def ann_l(self, subset) -> Ideal:
        """{r : r*s = 0 for all s in subset}."""
        return Ideal(self, _lattice.annihilator(self.mul, subset, self.zero), "left")

    def ann_r(self, subset) -> Ideal:
        """{r : s*r = 0 for all s in subset}."""
        return Ideal(self, _lattice.annihilator(self.mul.T, subset, self.zero), "right")

    @cached_property
    def socle_left(self) -> Ideal:
        return Ideal(self, _lattice.killed_by(self.mul, self.radical, self.zero), "left")

    def cyclic_left(self, r) -> frozenset:
        return _lattice.cyclic(self.mul, r)

    def left_ideals(self, cap: int | None = IDEAL_CAP) -> list[Ideal]:
        key = ("left", cap)
        return self._ideals(self.mul, key, cap, "left")

    def right_ideals(self, cap: int | None = IDEAL_CAP) -> list[Ideal]:
        return self._ideals(self.mul.T, ("right", cap), cap, "right")

    def _ideals(self, act, key, cap, side):
        if cap is not None and self.order > cap:
            raise OrderCapExceeded(f"ideal enumeration: order {self.order} exceeds cap {cap}")
        cache = self.__dict__.setdefault("_ideal_cache", {})
        if key[0] not in cache:
            subs = _lattice.all_submodules(self.add, act, self.zero)
            cache[key[0]] = [Ideal(self, s, side) for s in subs]
        return cache[key[0]]

    def is_left_principal(self, cap: int | None = IDEAL_CAP) -> bool:
        cyclics = {self.cyclic_left(r) for r in self.elements()}
        return all(i.as_set() in cyclics for i in self.left_ideals(cap))


def verify_ring_axioms(R: FiniteRing):
    """Exhaustive check of the ring axioms; raises AxiomViolation with a witness."""
    n = R.order
    if n > TABLE_CAP:
        raise OrderCapExceeded(f"axiom check on {n} elements exceeds cap {TABLE_CAP}")
    add, mul, z, o = R.add, R.mul, R.zero, R.one
    idx = np.arange(n)

    def fail(name, mask):
        w = np.argwhere(mask)[0].tolist()
        raise AxiomViolation(name, w)

    if not np.array_equal(add, add.T):
        fail("additive commutativity", add != add.T)
    if not np.array_equal(add[z], idx):
        fail("additive identity", add[z] != idx)
    if not np.all(np.any(add == z, axis=1)):
        fail("additive inverse", ~np.any(add == z, axis=1))
    if not (np.array_equal(mul[o], idx) and np.array_equal(mul[:, o], idx)):
        fail("multiplicative identity", (mul[o] != idx) | (mul[:, o] != idx))
    for name, table in (("additive associativity", add), ("multiplicative associativity", mul)):
        lhs = table[table[:, :, None], idx[None, None, :]]
        rhs = table[idx[:, None, None], table[None, :, :]]
        if not np.array_equal(lhs, rhs):
            fail(name, lhs != rhs)
    # a(b+c) = ab+ac and (a+b)c = ac+bc
    lhs = mul[idx[:, None, None], add[None, :, :]]
    rhs = add[mul[:, :, None], mul[:, None, :]]
    if not np.array_equal(lhs, rhs):
        fail("left distributivity", lhs != rhs)
    lhs = mul[add[:, :, None], idx[None, None, :]]
    rhs = add[mul[:, None, :], mul[None, :, :]]
    if not np.array_equal(lhs, rhs):
        fail("right distributivity", lhs != rhs)


# builders

def zmod(n: int) -> FiniteRing:
    if n < 1:
        raise SpecParse(f"zmod needs n >= 1, got {n}")
    if n > STRUCTURED_CAP:
        raise OrderCapExceeded(n)
    i = np.arange(n)
    return FiniteRing((i[:, None] + i[None, :]) % n, (i[:, None] * i[None, :]) % n,
                      0, 1 % n, spec=f"zmod:{n}")


def field_ring(F: GF) -> FiniteRing:
    if not F.has_tables or F.q > STRUCTURED_CAP:
        raise OrderCapExceeded(F.q)
    return FiniteRing(F.add_table, F.mul_table, 0, 1, spec=F.spec)


def matrix_ring(q: int, n: int, field: GF | None = None) -> FiniteRing:
    """M_n(F_q); element index = integer packing of the row-major entries."""
    F = field or field_of_order(q)
    size = F.q ** (n * n)
    if size > STRUCTURED_CAP:
        raise OrderCapExceeded(f"M_{n}(F_{F.q}) has {size} elements, cap {STRUCTURED_CAP}")
    E = all_matrix_array(F, n, n)
    add = index_of_arrays(F, F.add_arr(E[:, None], E[None, :]))
    prod = np.zeros((size, size, n, n), dtype=np.int64)
    for t in range(n):
        prod = F.add_arr(prod, F.mul_arr(E[:, None, :, t, None], E[None, :, t, None, :]))
    mul = index_of_arrays(F, prod)
    one = int(index_of_arrays(F, np.eye(n, dtype=np.int64)))

    def label(x, E=E):
        return E[x].tolist()

    return FiniteRing(add, mul, 0, one, spec=f"mat:{F.q}:{n}", labels=label)


def product_ring(R: FiniteRing, S: FiniteRing) -> FiniteRing:
    n, m = R.order, S.order
    if n * m > STRUCTURED_CAP:
        raise OrderCapExceeded(n * m)
    i = np.arange(n * m)
    a, b = i // m, i % m
    add = R.add[a[:, None], a[None, :]] * m + S.add[b[:, None], b[None, :]]
    mul = R.mul[a[:, None], a[None, :]] * m + S.mul[b[:, None], b[None, :]]

    def label(x):
        return [R.label(x // m), S.label(x % m)]

    return FiniteRing(add, mul, R.zero * m + S.zero, R.one * m + S.one,
                      spec=f"prod:{R.spec};{S.spec}", labels=label)


def f2xy() -> FiniteRing:
    """F_2[x,y]/(x,y)^2 with index c0 + 2*c1 + 4*c2 for c0 + c1*x + c2*y."""
    add = np.zeros((8, 8), dtype=np.int64)
    mul = np.zeros((8, 8), dtype=np.int64)
    for a in range(8):
        for b in range(8):
            add[a, b] = a ^ b
            a0, a1, a2 = a & 1, (a >> 1) & 1, (a >> 2) & 1
            b0, b1, b2 = b & 1, (b >> 1) & 1, (b >> 2) & 1
            mul[a, b] = (a0 & b0) | (((a0 & b1) ^ (a1 & b0)) << 1) | (((a0 & b2) ^ (a2 & b0)) << 2)
    names = ["1", "x", "y"]

    def label(v):
        terms = [names[j] for j in range(3) if v >> j & 1]
        return "+".join(terms) if terms else "0"

    return FiniteRing(add, mul, 0, 1, spec="ex:f2xy", labels=label, verify=True)


def upper_triangular_f2() -> FiniteRing:
    """2x2 upper triangular matrices over F_2; index a + 2b + 4c for [[a, b], [0, c]]."""
    add = np.zeros((8, 8), dtype=np.int64)
    mul = np.zeros((8, 8), dtype=np.int64)
    for x in range(8):
        a, b, c = x & 1, x >> 1 & 1, x >> 2 & 1
        for y in range(8):
            a2, b2, c2 = y & 1, y >> 1 & 1, y >> 2 & 1
            add[x, y] = x ^ y
            mul[x, y] = (a & a2) | (((a & b2) ^ (b & c2)) << 1) | ((c & c2) << 2)
    return FiniteRing(add, mul, 0, 1 | 4, spec="ex:ut2", verify=True)


def truncated_poly_f2(n: int) -> FiniteRing:
    """F_2[x]/(x^n); index = bit mask of coefficients."""
    size = 2 ** n
    add = np.zeros((size, size), dtype=np.int64)
    mul = np.zeros((size, size), dtype=np.int64)
    for a in range(size):
        for b in range(size):
            add[a, b] = a ^ b
            acc = 0
            for i in range(n):
                if a >> i & 1:
                    acc ^= b << i
            mul[a, b] = acc & (size - 1)
    return FiniteRing(add, mul, 0, 1, spec=f"ex:f2x{n}", verify=True)


def ring_from_table(doc: dict, spec: str = "table") -> FiniteRing:
    try:
        n = int(doc["order"])
        add = np.array(doc["add"], dtype=np.int64)
        mul = np.array(doc["mul"], dtype=np.int64)
        one = int(doc["one"])
    except (KeyError, TypeError, ValueError) as exc:
        raise SpecParse(f"bad table ring document: {exc}") from exc
    if n > TABLE_CAP:
        raise OrderCapExceeded(f"table ring of order {n} exceeds {TABLE_CAP}")
    if add.shape != (n, n) or mul.shape != (n, n):
        raise SpecParse("table shapes do not match order")
    zeros = [z for z in range(n) if np.array_equal(add[z], np.arange(n))]
    if not zeros:
        raise AxiomViolation("additive identity", [])
    zero = int(doc.get("zero", zeros[0]))
    return FiniteRing(add, mul, zero, one, spec=spec, verify=True)


def ring_to_table(R: FiniteRing) -> dict:
    return {"order": R.order, "add": R.add.tolist(), "mul": R.mul.tolist(), "one": R.one, "zero": R.zero}


def ring_build(spec: str) -> FiniteRing:
    """Build a ring from its spec string (see README for the grammar)."""
    spec = spec.strip()
    kind, _, rest = spec.partition(":")
    try:
        if kind == "zmod":
            return zmod(int(rest))
        if kind == "gf":
            return field_ring(parse_field(spec))
        if kind == "mat":
            q, n = rest.split(":")
            return matrix_ring(int(q), int(n))
        if kind == "prod":
            left, sep, right = rest.partition(";")
            if not sep:
                raise SpecParse(f"prod needs two factors: {spec!r}")
            return product_ring(ring_build(left), ring_build(right))
        if kind == "table":
            return ring_from_table(json.loads(Path(rest).read_text()), spec=spec)
        if kind == "ex" and rest == "f2xy":
            return f2xy()
        if kind == "ex" and rest == "ut2":
            return upper_triangular_f2()
        if kind == "ex" and rest.startswith("f2x"):
            return truncated_poly_f2(int(rest[3:]))
    except (ValueError, OSError) as exc:
        if isinstance(exc, MacextError):
            raise
        raise SpecParse(f"cannot parse ring spec {spec!r}: {exc}") from exc
    raise SpecParse(f"unknown ring spec {spec!r}")
