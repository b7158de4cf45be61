"""Submodule lattice helpers on explicit tables.

A module is given by an addition table ``add`` (N x N) and an action table
``act`` (|R| x N) with ``act[r, a] = r*a``. Submodules are frozensets of
element indices. Left ideals of a ring are the submodules of the ring acting
on itself, so ring and module code share these routines.
"""
from __future__ import annotations

import math

import numpy as np

from .errors import InternalInconsistency, OrderCapExceeded


def cyclic(act, a) -> frozenset:
    return frozenset(np.unique(act[:, a]).tolist())


def set_sum(add, x, y) -> frozenset:
    xs = np.fromiter(x, dtype=np.int64)
    ys = np.fromiter(y, dtype=np.int64)
    return frozenset(np.unique(add[np.ix_(xs, ys)]).tolist())


def span(add, act, gens, zero) -> frozenset:
    out = frozenset([zero])
    for g in gens:
        out = set_sum(add, out, cyclic(act, g))
    return out


def canonical(subs):
    return sorted(subs, key=lambda s: (len(s), sorted(s)))


def all_submodules(add, act, zero, within=None, cap: int | None = None):
    """Every submodule (of ``within`` if given) as the join-closure of cyclic ones."""
    elems = range(add.shape[0]) if within is None else sorted(within)
    if cap is not None and len(elems) > cap:
        raise OrderCapExceeded(f"submodule enumeration on {len(elems)} elements exceeds cap {cap}")
    cyclics = set(cyclic(act, a) for a in elems)
    seen = {frozenset([zero])} | cyclics
    frontier = list(seen)
    while frontier:
        nxt = []
        for x in frontier:
            for c in cyclics:
                if c <= x:
                    continue
                s = set_sum(add, x, c)
                if s not in seen:
                    seen.add(s)
                    nxt.append(s)
        frontier = nxt
    return canonical(seen)


def annihilator(act, subset, zero) -> frozenset:
    """{r : r*s = 0 for all s in subset}."""
    cols = np.fromiter(subset, dtype=np.int64)
    if cols.size == 0:
        return frozenset(range(act.shape[0]))
    hit = np.all(act[:, cols] == zero, axis=1)
    return frozenset(np.nonzero(hit)[0].tolist())


def killed_by(act, ring_subset, zero) -> frozenset:
    """{a : r*a = 0 for all r in ring_subset}."""
    rows = np.fromiter(ring_subset, dtype=np.int64)
    hit = np.all(act[rows, :] == zero, axis=0)
    return frozenset(np.nonzero(hit)[0].tolist())


def simple_submodules(act, zero, within) -> list[frozenset]:
    """Minimal nonzero submodules inside ``within`` (each is Ra for any of its nonzero a)."""
    found = {}
    for a in sorted(within):
        if a == zero:
            continue
        c = cyclic(act, a)
        if c in found:
            continue
        if all(cyclic(act, b) == c for b in c if b != zero):
            found[c] = True
    return canonical(found)


def homogeneous_components(add, act, zero, semisimple):
    """Split a semisimple submodule into homogeneous components.

    Simples are fingerprinted by (order, annihilator ideal). For a finite ring
    two simple modules with the same annihilator are isomorphic, so the
    fingerprint is exact. Returns a list of dicts sorted by annihilator.
    """
    groups = {}
    for s in simple_submodules(act, zero, semisimple):
        key = (len(s), annihilator(act, s, zero))
        groups.setdefault(key, []).append(s)
    comps = []
    for (size, ann), simples in groups.items():
        total = frozenset([zero])
        for s in simples:
            total = set_sum(add, total, s)
        mult = round(math.log(len(total), size))
        if size ** mult != len(total):
            raise InternalInconsistency("homogeneous component order is not a power of the simple order")
        comps.append({"simple_order": size, "annihilator": ann, "members": total,
                      "multiplicity": mult, "simple": simples[0]})
    comps.sort(key=lambda c: (sorted(c["annihilator"]), c["simple_order"]))
    return comps
