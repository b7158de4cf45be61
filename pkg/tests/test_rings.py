import json
from math import gcd

import numpy as np
import pytest
from sympy import divisors

from macext.corpus import corpus_rings
from macext.errors import AxiomViolation, NonPrime, OrderCapExceeded, SpecParse
from macext.gf import field_of_order
from macext.linalg import FqMatrix, all_matrix_array, rank
from macext.rings import FiniteRing, ring_build, ring_to_table

SMALL = ["zmod:4", "zmod:6", "zmod:8", "zmod:12", "gf:4", "ex:f2xy", "ex:ut2", "ex:f2x3",
         "prod:zmod:2;zmod:4", "mat:2:2"]


def brute_left_ideals(R):
    """Oracle: every subset closed under + and left multiplication (order <= 16)."""
    out = []
    others = [x for x in range(R.order) if x != R.zero]
    for bits in range(2 ** len(others)):
        S = {R.zero} | {x for i, x in enumerate(others) if bits >> i & 1}
        if all(R.add[a, b] in S for a in S for b in S) and all(R.mul[r, a] in S for r in range(R.order) for a in S):
            out.append(frozenset(S))
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def brute_radical(R, ideals):
    """Oracle: intersection of the maximal left ideals."""
    proper = [I for I in ideals if len(I) < R.order]
    maximal = [I for I in proper if not any(I < J for J in proper)]
    return frozenset.intersection(*maximal) if maximal else frozenset(range(R.order))


def test_builders_examples():
    assert ring_build("zmod:4").order == 4
    M = ring_build("mat:2:2")
    assert M.order == 16 and len(M.units) == 6
    R = ring_build("ex:f2xy")
    assert R.order == 8
    x, y = 2, 4
    assert R.mul[x, x] == R.mul[y, y] == R.mul[x, y] == R.zero
    assert R.label(1 | 2) == "1+x"


def test_units_examples():
    assert sorted(ring_build("zmod:12").units) == [1, 5, 7, 11]
    assert len(ring_build("gf:5").units) == 4
    R = ring_build("ex:f2xy")
    assert sorted(R.label(u) for u in R.units) == sorted(["1", "1+x", "1+y", "1+x+y"])


@pytest.mark.parametrize("n", range(1, 33))
def test_zmod_against_number_theory(n):
    R = ring_build(f"zmod:{n}")
    assert R.units == frozenset(u for u in range(n) if gcd(u, n) == 1) or n == 1
    ideals = R.left_ideals(None)
    assert len(ideals) == len(divisors(n))
    rad_n = 1
    for p in {p for p in range(2, n + 1) if n % p == 0 and all(p % d for d in range(2, p))}:
        rad_n *= p
    assert R.radical.as_set() == frozenset(range(0, n, rad_n))
    for I in ideals:
        assert len(I) * len(R.ann_r(I)) == n


def test_matrix_ring_units_are_invertible_matrices():
    F = field_of_order(3)
    R = ring_build("mat:3:2")
    mats = all_matrix_array(F, 2, 2)
    assert R.units == frozenset(i for i, m in enumerate(mats) if rank(FqMatrix(F, m)) == 2)


def test_radical_examples():
    assert ring_build("zmod:4").radical.as_set() == {0, 2}
    assert ring_build("mat:2:2").radical.as_set() == {0}
    assert ring_build("zmod:12").radical.as_set() == {0, 6}


@pytest.mark.parametrize("spec", [s for s in SMALL if s != "mat:2:2"] + ["zmod:16"])
def test_ideals_and_radical_against_brute_force(spec):
    R = ring_build(spec)
    brute = brute_left_ideals(R)
    assert [I.as_set() for I in R.left_ideals()] == brute
    assert R.radical.as_set() == brute_radical(R, brute)


def test_ideal_examples():
    assert [list(I) for I in ring_build("zmod:4").left_ideals()] == [[0], [0, 2], [0, 1, 2, 3]]
    assert len(ring_build("gf:3").left_ideals()) == 2
    assert len(ring_build("ex:f2xy").left_ideals()) == 6


def test_matrix_ring_ideals():
    R = ring_build("mat:2:2")
    # left ideals of M_2(F_2): 0, R, and one per line in F_2^2 (matrices with prescribed kernel)
    assert len(R.left_ideals()) == 5
    assert len(R.right_ideals()) == 5
    assert R.is_left_principal()


def test_socle_examples():
    assert ring_build("zmod:4").socle_left.as_set() == {0, 2}
    assert len(ring_build("mat:2:2").socle_left) == 16
    R = ring_build("ex:f2xy")
    assert sorted(R.label(s) for s in R.socle_left) == sorted(["0", "x", "y", "x+y"])


@pytest.mark.parametrize("spec", SMALL)
def test_structural_invariants(spec):
    R = ring_build(spec)
    # units form a group
    U = R.units
    assert all(R.mul[a, b] in U for a in U for b in U)
    assert all(R.inverse(u) in U for u in U)
    # radical is a nilpotent two-sided ideal
    rad = R.radical.as_set()
    power = set(rad)
    for _ in range(R.order):
        if power == {R.zero}:
            break
        power = {R.mul[a, b] for a in power for b in rad}
    assert power == {R.zero}
    assert all(R.mul[r, y] in rad and R.mul[y, r] in rad for r in range(R.order) for y in rad)
    # socle = sum of minimal left ideals
    ideals = [I.as_set() for I in R.left_ideals()]
    minimal = [I for I in ideals if len(I) > 1 and not any(len(J) > 1 and J < I for J in ideals)]
    total = frozenset([R.zero])
    for I in minimal:
        total = frozenset(R.add[a, b] for a in total for b in I)
    assert R.socle_left.as_set() == total


@pytest.mark.parametrize("name,R", corpus_rings())
def test_left_right_annihilator_symmetry(name, R):
    if R.order > 16:
        return
    for s in range(R.order):
        assert R.ann_l([s]).as_set() == frozenset(r for r in range(R.order) if R.mul[r, s] == R.zero)
        assert R.ann_r([s]).as_set() == frozenset(r for r in range(R.order) if R.mul[s, r] == R.zero)


def test_caps_and_errors(tmp_path):
    with pytest.raises(OrderCapExceeded):
        ring_build("mat:3:2").left_ideals()
    assert len(ring_build("mat:3:2").left_ideals(cap=81)) == 6
    for bad in ["zmod:0", "zmod:x", "mat:4", "prod:zmod:2", "foo:1"]:
        with pytest.raises(SpecParse):
            ring_build(bad)
    with pytest.raises(NonPrime):
        ring_build("gf:6")
    add = np.array([[0, 1], [1, 0]])
    mul = np.array([[0, 0], [0, 0]])  # no identity
    with pytest.raises(AxiomViolation):
        FiniteRing(add, mul, 0, 1, verify=True)
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"order": 2, "add": add.tolist(), "mul": [[0, 1], [1, 0]], "one": 1}))
    with pytest.raises(AxiomViolation) as info:
        ring_build(f"table:{bad}")
    assert info.value.witnesses


def test_table_round_trip(tmp_path):
    R = ring_build("ex:f2xy")
    path = tmp_path / "r.json"
    path.write_text(json.dumps(ring_to_table(R)))
    T = ring_build(f"table:{path}")
    assert T.order == 8
    assert np.array_equal(T.mul, R.mul)
    assert len(T.left_ideals()) == 6


def test_product_ring():
    R = ring_build("prod:zmod:2;zmod:4")
    assert R.order == 8 and len(R.units) == 2
    assert len(R.left_ideals()) == 2 * 3


def test_exhaustive_axioms_on_builtin_tables():
    for spec in ["ex:f2xy", "ex:ut2", "ex:f2x3"]:
        R = ring_build(spec)
        FiniteRing(R.add, R.mul, R.zero, R.one, verify=True)
    # the upper-triangular ring is not commutative
    R = ring_build("ex:ut2")
    assert not np.array_equal(R.mul, R.mul.T)
    assert len(R.units) == 2  # [[1, b], [0, 1]]
