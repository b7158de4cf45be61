"""Finite left modules over finite rings.

Two backends share one table representation:

* matrix modules ``matmod:q:m:k``, i.e. M_{m x k}(F_q) over M_m(F_q), where
  homomorphisms and automorphisms have closed forms (right multiplication by
  l x k matrices, resp. GL_k);
* explicit tables, where homomorphisms are found by enumerating images of a
  greedy generating set and checking every relation at once with numpy.
"""
from __future__ import annotations

import json
from functools import cached_property
from pathlib import Path

import numpy as np

from . import _lattice
from .errors import (AxiomViolation, EnumerationCapExceeded, InternalInconsistency, MacextError, NotASubgroup,
                     OrderCapExceeded, SpecParse)
from .gf import field_of_order
from .linalg import all_matrix_array, enumerate_gl, index_of_arrays
from .rings import FiniteRing, field_ring, matrix_ring, ring_build

TABLE_CAP = 256
HOM_CAP = 10 ** 6
EXHAUSTIVE_CAP = 64


class LeftModule:
    def __init__(self, ring: FiniteRing, add, act, zero: int = 0, spec: str = "table",
                 backend=("table",), labels=None, parse=None, verify: bool = False):
        self.ring = ring
        self.add = np.asarray(add, dtype=np.int64)
        self.act = np.asarray(act, dtype=np.int64)
        self.order = self.add.shape[0]
        if self.act.shape != (ring.order, self.order):
            raise AxiomViolation("action table shape", [self.act.shape])
        self.zero = int(zero)
        self.spec = spec
        self.backend = tuple(backend)
        self._labels = labels
        self._parse = parse
        if verify:
            verify_module_axioms(self)
        self.neg = np.argmax(self.add == self.zero, axis=1).astype(np.int64)

    def __repr__(self):
        return f"LeftModule({self.spec}, order={self.order})"

    @property
    def is_matrix(self) -> bool:
        return self.backend[0] == "matrix"

    def label(self, a: int):
        return self._labels(a) if self._labels else int(a)

    def parse_element(self, x) -> int:
        if isinstance(x, (int, np.integer)):
            v = int(x)
        elif self._parse is not None:
            v = self._parse(x)
        else:
            raise SpecParse(f"cannot read module element {x!r}")
        if not 0 <= v < self.order:
            raise SpecParse(f"element {x!r} outside module of order {self.order}")
        return v

    def elements(self):
        return range(self.order)

    def cyclic(self, a) -> frozenset:
        return _lattice.cyclic(self.act, a)

    def span(self, gens) -> frozenset:
        return _lattice.span(self.add, self.act, gens, self.zero)

    def submodules(self, cap: int | None = TABLE_CAP) -> list[frozenset]:
        if "_subs" not in self.__dict__:
            self._subs = _lattice.all_submodules(self.add, self.act, self.zero, cap=cap)
        return self._subs

    def annihilator(self, a) -> frozenset:
        return _lattice.annihilator(self.act, [a], self.zero)

    @cached_property
    def socle(self) -> frozenset:
        return _lattice.killed_by(self.act, self.ring.radical, self.zero)

    def generators(self, within=None) -> list[int]:
        """Greedy generating set of ``within`` (default: the whole module)."""
        target = frozenset(self.elements()) if within is None else frozenset(within)
        gens, cur = [], frozenset([self.zero])
        for a in sorted(target):
            if a not in cur:
                gens.append(a)
                cur = _lattice.set_sum(self.add, cur, self.cyclic(a))
            if cur == target:
                break
        return gens


class ModuleMap:
    """An R-linear map stored by the image of every domain element."""

    __slots__ = ("domain", "codomain", "values")

    def __init__(self, domain: LeftModule, codomain: LeftModule, values):
        self.domain = domain
        self.codomain = codomain
        self.values = tuple(int(v) for v in values)

    def __call__(self, a: int) -> int:
        return self.values[a]

    def __eq__(self, other):
        return isinstance(other, ModuleMap) and self.values == other.values

    def __hash__(self):
        return hash(self.values)

    def __repr__(self):
        return f"ModuleMap({list(self.values)})"

    def is_injective(self) -> bool:
        return len(set(self.values)) == len(self.values)

    def then(self, other: "ModuleMap") -> "ModuleMap":
        """Apply self first, then other (right-action composition)."""
        return ModuleMap(self.domain, other.codomain, [other.values[v] for v in self.values])

    def kernel(self) -> frozenset:
        z = self.codomain.zero
        return frozenset(i for i, v in enumerate(self.values) if v == z)

    def image(self) -> frozenset:
        return frozenset(self.values)


def verify_module_axioms(A: LeftModule):
    n = A.order
    if n > TABLE_CAP:
        raise OrderCapExceeded(f"module axiom check on {n} elements exceeds cap {TABLE_CAP}")
    R = A.ring
    add, act, z = A.add, A.act, A.zero
    idx = np.arange(n)

    def fail(name, mask):
        raise AxiomViolation(name, np.argwhere(mask)[0].tolist())

    if not np.array_equal(add, add.T):
        fail("additive commutativity", add != add.T)
    if not np.array_equal(add[z], idx):
        fail("additive identity", add[z] != idx)
    if not np.all(np.any(add == z, axis=1)):
        fail("additive inverse", ~np.any(add == z, axis=1)[:, None])
    lhs = add[add[:, :, None], idx[None, None, :]]
    rhs = add[idx[:, None, None], add[None, :, :]]
    if not np.array_equal(lhs, rhs):
        fail("additive associativity", lhs != rhs)
    if not np.array_equal(act[R.one], idx):
        fail("unital action", (act[R.one] != idx)[None, :])
    # r(a+b) = ra + rb
    lhs = act[:, add]
    rhs = add[act[:, :, None], act[:, None, :]]
    if not np.array_equal(lhs, rhs):
        fail("r(a+b) = ra+rb", lhs != rhs)
    # (r+s)a = ra + sa
    lhs = act[R.add]
    rhs = add[act[:, None, :], act[None, :, :]]
    if not np.array_equal(lhs, rhs):
        fail("(r+s)a = ra+sa", lhs != rhs)
    # (rs)a = r(sa)
    lhs = act[R.mul]
    rhs = act[np.arange(R.order)[:, None, None], act[None, :, :]]
    if not np.array_equal(lhs, rhs):
        fail("(rs)a = r(sa)", lhs != rhs)


# builders

def matrix_module(q: int, m: int, k: int) -> LeftModule:
    """A = M_{m x k}(F_q) as a left M_m(F_q)-module."""
    F = field_of_order(q)
    R = matrix_ring(q, m, F)
    EA = all_matrix_array(F, m, k)
    ER = all_matrix_array(F, m, m)
    if len(EA) > 4096:
        raise OrderCapExceeded(f"matmod:{q}:{m}:{k} has {len(EA)} elements")
    add = index_of_arrays(F, F.add_arr(EA[:, None], EA[None, :]))
    prod = np.zeros((len(ER), len(EA), m, k), dtype=np.int64)
    for t in range(m):
        prod = F.add_arr(prod, F.mul_arr(ER[:, None, :, t, None], EA[None, :, t, None, :]))
    act = index_of_arrays(F, prod)

    def label(a):
        return EA[a].tolist()

    def parse(x):
        arr = np.array(x, dtype=np.int64).reshape(m, k)
        if arr.min() < 0 or arr.max() >= F.q:
            raise SpecParse(f"entry outside GF({F.q})")
        return int(index_of_arrays(F, arr))

    return LeftModule(R, add, act, 0, spec=f"matmod:{F.q}:{m}:{k}", backend=("matrix", F.q, m, k),
                      labels=label, parse=parse)


def ring_self(R: FiniteRing) -> LeftModule:
    return LeftModule(R, R.add, R.mul, R.zero, spec=f"ringself:{R.spec}", labels=R.label)


def subfield_module(q_big: int, q_small: int) -> LeftModule:
    """GF(q_big) as a module over its subfield GF(q_small)."""
    L, K = field_of_order(q_big), field_of_order(q_small)
    if L.p != K.p or L.m % K.m:
        raise SpecParse(f"GF({q_small}) is not a subfield of GF({q_big})")
    if K.m == 1:
        emb = list(range(K.q))
    else:
        # a root of K's modulus inside L gives the embedding
        beta = next(b for b in range(L.q)
                    if _eval_poly(L, [c for c in K.modulus], b) == 0)
        emb = []
        for c in range(K.q):
            acc = 0
            for j, d in enumerate(K.digits(c)):
                acc = L.add(acc, L.mul(d, L.pow(beta, j)))
            emb.append(acc)
    R = field_ring(K)
    act = L.mul_table[np.array(emb)][:, :]
    return LeftModule(R, L.add_table, act, 0, spec=f"subfield:{L.q}:{K.q}")


def _eval_poly(F, coeffs, x):
    acc = 0
    for c in reversed(coeffs):
        acc = F.add(F.mul(acc, x), c % F.p)
    return acc


def module_from_table(doc: dict, spec="table") -> LeftModule:
    try:
        R = ring_build(doc["ring"])
        n = int(doc["order"])
        add = np.array(doc["add"], dtype=np.int64)
        act = np.array(doc["action"], dtype=np.int64)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, MacextError):
            raise
        raise SpecParse(f"bad table module document: {exc}") from exc
    if n > TABLE_CAP:
        raise OrderCapExceeded(n)
    if add.shape != (n, n) or act.shape != (R.order, n):
        raise SpecParse("table shapes do not match")
    zero = int(doc.get("zero", 0))
    return LeftModule(R, add, act, zero, spec=spec, verify=True)


def module_make(spec: str) -> LeftModule:
    spec = spec.strip()
    kind, _, rest = spec.partition(":")
    try:
        if kind == "matmod":
            q, m, k = (int(x) for x in rest.split(":"))
            return matrix_module(q, m, k)
        if kind == "ringself":
            return ring_self(ring_build(rest))
        if kind == "subfield":
            a, b = (int(x) for x in rest.split(":"))
            return subfield_module(a, b)
        if kind == "table":
            return module_from_table(json.loads(Path(rest).read_text()), spec=spec)
    except (ValueError, OSError) as exc:
        if isinstance(exc, MacextError):
            raise
        raise SpecParse(f"cannot parse module spec {spec!r}: {exc}") from exc
    raise SpecParse(f"unknown module spec {spec!r}")


# derived modules

def submodule(A: LeftModule, members) -> tuple[LeftModule, list[int]]:
    """The submodule on ``members`` re-indexed 0..|B|-1, plus the inclusion list."""
    elems = sorted(members)
    pos = np.full(A.order, -1, dtype=np.int64)
    pos[elems] = np.arange(len(elems))
    sub = np.array(elems, dtype=np.int64)
    add = pos[A.add[np.ix_(sub, sub)]]
    act = pos[A.act[:, sub]]
    if (add < 0).any() or (act < 0).any():
        raise AxiomViolation("submodule closure", [])
    labels = (lambda b, A=A, elems=elems: A.label(elems[b]))
    B = LeftModule(A.ring, add, act, int(pos[A.zero]), spec=f"sub({A.spec})", labels=labels)
    return B, elems


def quotient(A: LeftModule, members) -> tuple[LeftModule, np.ndarray]:
    """A / S with cosets indexed by their least element; also returns a -> coset index."""
    S = np.array(sorted(members), dtype=np.int64)
    coset_min = A.add[:, S].min(axis=1)
    reps = np.unique(coset_min)
    pos = np.full(A.order, -1, dtype=np.int64)
    pos[reps] = np.arange(len(reps))
    proj = pos[coset_min]
    add = proj[A.add[np.ix_(reps, reps)]]
    act = proj[A.act[:, reps]]
    return LeftModule(A.ring, add, act, int(proj[A.zero]), spec=f"quot({A.spec})"), proj


# socle structure

def socle(A: LeftModule) -> frozenset:
    """soc(A) = {a : (rad R) a = 0}."""
    return A.socle


def cyclic_socle(A: LeftModule):
    """(True, a) for the first a with Ra = soc(A), else (False, None)."""
    soc = A.socle
    for a in sorted(soc):
        if A.cyclic(a) == soc:
            return True, a
    return False, None


def socle_components(A: LeftModule) -> list[dict]:
    return _lattice.homogeneous_components(A.add, A.act, A.zero, A.socle)


def top_components(R: FiniteRing) -> list[dict]:
    """Homogeneous components of R/rad R; multiplicity mu_i and field size q_i."""
    Q, _ = quotient(ring_self(R), R.radical)
    comps = _lattice.homogeneous_components(Q.add, Q.act, Q.zero, range(Q.order))
    for c in comps:
        mu = c["multiplicity"]
        q = round(c["simple_order"] ** (1.0 / mu))
        while q ** mu < c["simple_order"]:
            q += 1
        while q ** mu > c["simple_order"]:
            q -= 1
        if q ** mu != c["simple_order"]:
            raise InternalInconsistency("simple module order is not a mu-th power")
        c["field_order"] = q
    return comps


def socle_profile(A: LeftModule) -> list[dict]:
    """Pair each homogeneous socle component (s_i) with the matching mu_i."""
    tops = {c["annihilator"]: c for c in top_components(A.ring)}
    out = []
    for c in socle_components(A):
        t = tops.get(c["annihilator"])
        if t is None:
            raise InternalInconsistency("socle simple missing from the radical quotient")
        out.append({"annihilator": c["annihilator"], "s": c["multiplicity"], "mu": t["multiplicity"],
                    "q": t["field_order"], "simple_order": c["simple_order"], "members": c["members"]})
    return out


# homomorphisms

def _enumerate_homs(D: LeftModule, A: LeftModule, cap: int | None, chunk: int = 2048):
    if D.ring is not A.ring and D.ring.spec != A.ring.spec:
        raise SpecParse("modules over different rings")
    gens = D.generators()
    t = len(gens)
    total = A.order ** t
    if cap is not None and total > cap:
        raise EnumerationCapExceeded(f"{total} candidate homomorphisms exceed cap {cap}")
    # spanning tree of D: each d = parent + r*g_i
    parent = {D.zero: None}
    order = [D.zero]
    steps = []
    for d in order:
        for i, g in enumerate(gens):
            for r in range(D.ring.order):
                d2 = int(D.add[d, D.act[r, g]])
                if d2 not in parent:
                    parent[d2] = (d, i, r)
                    order.append(d2)
    for d in order[1:]:
        steps.append((d,) + parent[d])
    nD = D.order
    results = []
    rr = np.arange(D.ring.order)
    targets = [D.add[np.arange(nD)[:, None], D.act[:, g][None, :]] for g in gens]  # (nD, |R|)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        H = np.stack([(idx // A.order ** i) % A.order for i in range(t)], axis=1) if t else np.zeros((len(idx), 0), dtype=np.int64)
        F = np.full((len(idx), nD), -1, dtype=np.int64)
        F[:, D.zero] = A.zero
        for d, p, i, r in steps:
            F[:, d] = A.add[F[:, p], A.act[r, H[:, i]]]
        ok = np.ones(len(idx), dtype=bool)
        for i in range(t):
            lhs = F[:, targets[i]]  # (C, nD, |R|)
            img = A.act[rr[:, None], H[:, i][None, :]].T  # (C, |R|)
            rhs = A.add[F[:, :, None], img[:, None, :]]
            ok &= np.all(lhs == rhs, axis=(1, 2))
        results.extend(ModuleMap(D, A, row) for row in F[ok])
    return results


def hom_set(M: LeftModule, A: LeftModule, cap: int | None = HOM_CAP) -> list[ModuleMap]:
    """All R-linear maps M -> A."""
    if M.is_matrix and A.is_matrix and M.backend[1:3] == A.backend[1:3]:
        return _matrix_homs(M, A, cap)
    return _enumerate_homs(M, A, cap)


def _matrix_homs(M, A, cap, mats=None):
    _, q, m, l = M.backend
    k = A.backend[3]
    F = field_of_order(q)
    if mats is None:
        if cap is not None and q ** (l * k) > cap:
            raise EnumerationCapExceeded(q ** (l * k))
        mats = all_matrix_array(F, l, k)
    EM = all_matrix_array(F, m, l)
    out = []
    for lam in mats:
        lam = np.asarray(lam.data if hasattr(lam, "data") else lam)
        prod = np.zeros((len(EM), m, k), dtype=np.int64)
        for t in range(l):
            prod = F.add_arr(prod, F.mul_arr(EM[:, :, t, None], lam[t][None, None, :]))
        out.append(ModuleMap(M, A, index_of_arrays(F, prod)))
    return out


def endomorphisms(A: LeftModule, cap: int | None = HOM_CAP) -> list[ModuleMap]:
    if "_end" not in A.__dict__:
        A._end = hom_set(A, A, cap)
    return A._end


def aut_group(A: LeftModule, cap: int | None = HOM_CAP) -> list[ModuleMap]:
    if "_aut" not in A.__dict__:
        if A.is_matrix:
            _, q, m, k = A.backend
            A._aut = _matrix_homs(A, A, cap, enumerate_gl(k, field_of_order(q), cap))
        else:
            A._aut = [f for f in endomorphisms(A, cap) if f.is_injective()]
    return A._aut


# partitions

def _partition(classes) -> list[tuple[int, ...]]:
    return sorted((tuple(sorted(c)) for c in classes), key=lambda c: c[0])


def annihilator_classes(A: LeftModule) -> list[tuple[int, ...]]:
    groups = {}
    for a in A.elements():
        groups.setdefault(A.annihilator(a), []).append(a)
    return _partition(groups.values())


def _as_perms(G) -> list[tuple[int, ...]]:
    return [tuple(int(x) for x in (g.values if isinstance(g, ModuleMap) else g)) for g in G]


def check_subgroup(G, order: int, A: LeftModule | None = None):
    """G (maps or value tuples) must contain the identity and be closed under
    composition; with ``A`` given, every member must also be an automorphism."""
    perms = _as_perms(G)
    vals = set(perms)
    if tuple(range(order)) not in vals:
        raise NotASubgroup("missing identity")
    if A is not None:
        arr = np.array(perms, dtype=np.int64)
        if any(sorted(p) != list(range(order)) for p in perms):
            raise NotASubgroup("member is not a bijection")
        additive = np.all(arr[:, A.add] == A.add[arr[:, :, None], arr[:, None, :]])
        linear = np.all(arr[:, A.act] == A.act[:, arr].transpose(1, 0, 2))
        if not (additive and linear):
            raise NotASubgroup("member is not a module automorphism")
    for g in perms:
        for h in perms:
            if tuple(h[v] for v in g) not in vals:
                raise NotASubgroup("not closed under composition")


def orbit_space(A: LeftModule, G, check: bool = True) -> list[tuple[int, ...]]:
    """Orbits of A under a group G of automorphisms; canonical rep = least index."""
    G = _as_perms(G)
    if check:
        check_subgroup(G, A.order, A)
    seen = set()
    orbits = []
    for a in A.elements():
        if a in seen:
            continue
        orb = {g[a] for g in G}
        seen |= orb
        orbits.append(orb)
    return _partition(orbits)


def class_index(partition, order: int) -> np.ndarray:
    """Map each element to the representative (least element) of its block."""
    out = np.zeros(order, dtype=np.int64)
    for block in partition:
        out[list(block)] = block[0]
    return out


# extension tests

def _restriction_sets(A, maps, members):
    cols = list(members)
    return {tuple(f.values[c] for c in cols) for f in maps}


def is_pseudo_injective(A: LeftModule, cap: int | None = EXHAUSTIVE_CAP, upgrade: bool = True) -> bool:
    """Every mono from a submodule into A extends to an endomorphism of A.

    With ``upgrade`` the automorphism form is also checked. The two may differ
    map by map on modules that are not pseudo-injective (Z/2 + Z/4 over Z/4,
    (1,0) -> (0,2)), but when every mono extends to an endomorphism every mono
    must also extend to an automorphism.
    """
    return _extension_test(A, A.submodules(), cap, upgrade)


def socle_condition(A: LeftModule, cap: int | None = EXHAUSTIVE_CAP, upgrade: bool = True) -> bool:
    """The same test restricted to cyclic submodules Ra with a in soc(A)."""
    subs = {A.cyclic(a) for a in A.socle}
    return _extension_test(A, _lattice.canonical(subs), cap, upgrade)


def _extension_test(A, subs, cap, upgrade):
    if cap is not None and A.order > cap:
        raise OrderCapExceeded(f"exhaustive extension test on {A.order} elements exceeds cap {cap}")
    ends = endomorphisms(A)
    auts = aut_group(A) if upgrade else None
    by_end_all, by_aut_all = True, True
    for S in subs:
        B, incl = submodule(A, S)
        monos = {f.values for f in hom_set(B, A) if f.is_injective()}
        if not monos <= _restriction_sets(A, ends, incl):
            by_end_all = False
            if not upgrade:
                break
        if upgrade and not monos <= _restriction_sets(A, auts, incl):
            by_aut_all = False
    if upgrade and by_end_all != by_aut_all:
        raise InternalInconsistency("endomorphism and automorphism extension verdicts disagree")
    return by_end_all
