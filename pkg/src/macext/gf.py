"""Finite fields GF(p^m).

Elements are plain integers: the element sum(c_j * alpha^j) is encoded as
sum(c_j * p^j), so 0 and 1 are the additive and multiplicative identities.
Fields up to ``TABLE_LIMIT`` elements carry full operation tables as numpy
arrays, which the matrix code indexes directly.
"""
from __future__ import annotations

import itertools
import re
from functools import lru_cache

import numpy as np

from .errors import DegreeMismatch, DivisionByZero, FieldMismatch, NonPrime, ReducibleModulus, SpecParse

TABLE_LIMIT = 4096


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, m) with q = p^m, or raise NonPrime."""
    if q < 2:
        raise NonPrime(q)
    p = next(d for d in range(2, q + 1) if q % d == 0)
    m, r = 0, q
    while r % p == 0:
        r //= p
        m += 1
    if r != 1:
        raise NonPrime(f"{q} is not a prime power")
    return p, m


# dense little-endian polynomials over Z/p, no trailing zeros

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, b, p):
    a = _trim(a)
    b = _trim(b)
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        a = _trim(a)
    return a


def _poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _monic_polys(p, d):
    for low in itertools.product(range(p), repeat=d):
        yield list(low) + [1]


def is_irreducible(coeffs, p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    f = _trim(coeffs)
    deg = len(f) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for g in _monic_polys(p, d):
            if not _poly_mod(f, g, p):
                return False
    return True


def default_modulus(p: int, m: int) -> tuple[int, ...]:
    """Least monic irreducible of degree m, ordered by integer encoding.

    Iterating the lower coefficients with the highest one varying slowest is
    the same as counting up through sum(c_j p^j).
    """
    for low in range(p ** m):
        coeffs = [(low // p ** j) % p for j in range(m)] + [1]
        if is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise ReducibleModulus(f"no irreducible of degree {m} over GF({p})")  # unreachable


class GF:
    """The field GF(p^m) with a fixed monic irreducible modulus."""

    def __init__(self, p: int, m: int = 1, modulus=None):
        if not is_prime(p):
            raise NonPrime(p)
        if m < 1:
            raise DegreeMismatch(f"degree must be positive, got {m}")
        if modulus is None:
            modulus = (0, 1) if m == 1 else default_modulus(p, m)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != m + 1:
            raise DegreeMismatch(f"modulus has {len(modulus)} coefficients, expected {m + 1}")
        if modulus[-1] != 1:
            raise DegreeMismatch("modulus must be monic")
        if m > 1 and not is_irreducible(modulus, p):
            raise ReducibleModulus(modulus)
        self.p = p
        self.m = m
        self.q = p ** m
        self.modulus = modulus
        self.has_tables = self.q <= TABLE_LIMIT
        if self.has_tables:
            self._build_tables()

    # encoding helpers
    def digits(self, a: int) -> list[int]:
        return [(a // self.p ** j) % self.p for j in range(self.m)]

    def from_digits(self, ds) -> int:
        return sum((int(d) % self.p) * self.p ** j for j, d in enumerate(ds))

    def _check(self, a):
        if not 0 <= a < self.q:
            raise FieldMismatch(f"{a} is not an element of GF({self.q})")

    def _build_tables(self):
        q, p = self.q, self.p
        digs = np.array([self.digits(a) for a in range(q)], dtype=np.int64).reshape(q, self.m)
        weights = p ** np.arange(self.m, dtype=np.int64)
        sums = (digs[:, None, :] + digs[None, :, :]) % p
        self.add_table = (sums @ weights).astype(np.int64)
        self.neg_table = ((-digs) % p) @ weights
        if self.m == 1:
            self.mul_table = np.outer(np.arange(q), np.arange(q)) % p
        else:
            mul = np.zeros((q, q), dtype=np.int64)
            for a in range(q):
                for b in range(a, q):
                    mul[a, b] = mul[b, a] = self._poly_mul_enc(a, b)
            self.mul_table = mul
        inv = np.zeros(q, dtype=np.int64)
        rows, cols = np.nonzero(self.mul_table == 1)
        inv[rows] = cols
        self.inv_table = inv

    def _poly_mul_enc(self, a, b):
        prod = _poly_mul(_trim(self.digits(a)), _trim(self.digits(b)), self.p)
        if len(prod) > self.m:
            prod = _poly_mod(prod, list(self.modulus), self.p)
        return self.from_digits(prod)

    # arithmetic
    def add(self, a: int, b: int) -> int:
        if self.has_tables:
            return int(self.add_table[a, b])
        if self.m == 1:
            return (a + b) % self.p
        return self.from_digits(x + y for x, y in zip(self.digits(a), self.digits(b)))

    def neg(self, a: int) -> int:
        if self.has_tables:
            return int(self.neg_table[a])
        return self.from_digits(-x for x in self.digits(a))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.has_tables:
            return int(self.mul_table[a, b])
        if self.m == 1:
            return a * b % self.p
        return self._poly_mul_enc(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        if self.has_tables:
            return int(self.inv_table[a])
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    # elementwise numpy versions, used by the matrix code
    def add_arr(self, a, b):
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self.m == 1:
            return (a + b) % self.p
        if self.has_tables:
            return self.add_table[a, b]
        return np.frompyfunc(self.add, 2, 1)(a, b).astype(np.int64)

    def mul_arr(self, a, b):
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self.m == 1:
            return (a * b) % self.p
        if self.has_tables:
            return self.mul_table[a, b]
        return np.frompyfunc(self.mul, 2, 1)(a, b).astype(np.int64)

    def neg_arr(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self.m == 1:
            return (-a) % self.p
        if self.has_tables:
            return self.neg_table[a]
        return np.frompyfunc(self.neg, 1, 1)(a).astype(np.int64)

    def elements(self):
        return range(self.q)

    @property
    def spec(self) -> str:
        if self.m == 1:
            return f"gf:{self.p}"
        if self.modulus == default_modulus(self.p, self.m):
            return f"gf:{self.p}^{self.m}"
        return f"gf:{self.p}^{self.m}:" + ",".join(map(str, self.modulus))

    def __eq__(self, other):
        return isinstance(other, GF) and (self.p, self.m, self.modulus) == (other.p, other.m, other.modulus)

    def __hash__(self):
        return hash((self.p, self.m, self.modulus))

    def __repr__(self):
        return f"GF({self.spec})"


@lru_cache(maxsize=None)
def _cached_field(p, m, modulus):
    return GF(p, m, modulus)


def field_make(p: int, m: int = 1, modulus=None) -> GF:
    """Validated (and memoised) field constructor."""
    if not is_prime(p):
        raise NonPrime(p)
    if modulus is None:
        if m < 1:
            raise DegreeMismatch(m)
        modulus = (0, 1) if m == 1 else default_modulus(p, m)
    return _cached_field(p, m, tuple(int(c) for c in modulus))


def field_of_order(q: int) -> GF:
    p, m = prime_power(q)
    return field_make(p, m)


_SPEC = re.compile(r"^gf:(\d+)(?:\^(\d+))?(?::([\d,\s]+))?$")


def parse_field(spec: str) -> GF:
    """Parse ``gf:p``, ``gf:q``, ``gf:p^m`` or ``gf:p^m:c0,...,cm``."""
    mt = _SPEC.match(spec.strip())
    if not mt:
        raise SpecParse(f"bad field spec {spec!r}")
    base, exp, coeffs = mt.groups()
    base = int(base)
    if exp is None:
        p, m = prime_power(base)
    else:
        p, m = base, int(exp)
    modulus = None
    if coeffs is not None:
        modulus = [int(c) for c in coeffs.split(",")]
    return field_make(p, m, modulus)
