"""Arithmetic in GF(p^e).

Elements are integers in [0, q) under the encoding n = sum(c[i] * p**i) of the
coefficient vector c (low-order first) of the residue polynomial.  The element
enumeration 0, 1, 2, ... therefore starts with the additive and multiplicative
identities, and every constructed array downstream is reproducible because the
modulus is itself chosen canonically.
"""

from __future__ import annotations

import itertools
from functools import cached_property, lru_cache

import numpy as np

MAX_DEGREE = 8
MAX_ORDER = 4096


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Factor q as p^e with p prime, or raise ValueError."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    for p in range(2, q + 1):
        if q % p == 0:
            e = 0
            m = q
            while m % p == 0:
                m //= p
                e += 1
            if m != 1:
                raise ValueError(f"{q} is not a prime power")
            return p, e
    raise ValueError(f"{q} is not a prime power")


def parse_order(text: str) -> tuple[int, int]:
    """Parse a field order given as 'p^e' or as a plain prime power."""
    if "^" in text:
        base, _, exp = text.partition("^")
        p, e = int(base), int(exp)
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if e < 1:
            raise ValueError("exponent must be >= 1")
        return p, e
    return prime_power(int(text))


# -- polynomial helpers over Z_p; coefficient tuples, low-order first, trimmed


def _trim(c: tuple[int, ...]) -> tuple[int, ...]:
    while c and c[-1] == 0:
        c = c[:-1]
    return c


def _poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(tuple(out))


def _poly_mod(a, m, p):
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)  # m is monic here, but stay general
    while len(a) - 1 >= dm and _trim(tuple(a)):
        a = list(_trim(tuple(a)))
        if len(a) - 1 < dm:
            break
        shift = len(a) - 1 - dm
        factor = (a[-1] * inv_lead) % p
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - factor * c) % p
    return _trim(tuple(a))


def _monic_polys(p: int, deg: int):
    for low in itertools.product(range(p), repeat=deg):
        yield tuple(low) + (1,)


def _is_irreducible(coeffs: tuple[int, ...], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg//2."""
    deg = len(coeffs) - 1
    if deg == 1:
        return True
    if coeffs[0] == 0:  # divisible by x
        return False
    for d in range(1, deg // 2 + 1):
        for m in _monic_polys(p, d):
            if not _poly_mod(coeffs, m, p):
                return False
    return True


def find_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Lexicographically smallest (by ascending encoding of the low-order
    coefficients) monic irreducible polynomial of degree e over Z_p."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if not 1 <= e <= MAX_DEGREE:
        raise ValueError(f"degree must be in [1, {MAX_DEGREE}], got {e}")
    if e == 1:
        return (0, 1)  # x itself; GF(p) needs no reduction
    for n in range(p**e):
        low = tuple((n // p**i) % p for i in range(e))
        cand = low + (1,)
        if _is_irreducible(cand, p):
            return cand
    raise AssertionError("no irreducible polynomial found")  # unreachable


class Field:
    """GF(p^e) with the canonical modulus from find_irreducible.

    Immutable; all operations are pure functions of integer encodings.
    """

    def __init__(self, p: int, e: int = 1):
        self.modulus = find_irreducible(p, e)
        self.p = p
        self.e = e
        self.q = p**e
        if self.q > MAX_ORDER:
            raise ValueError(f"field order {self.q} exceeds cap {MAX_ORDER}")
        # x^j mod modulus for j = e .. 2e-2, as coefficient tuples padded to e
        self._red = []
        for j in range(e, 2 * e - 1):
            r = _poly_mod((0,) * j + (1,), self.modulus, p)
            self._red.append(tuple(r) + (0,) * (e - len(r)))

    def __repr__(self):
        return f"Field(p={self.p}, e={self.e})"

    def elements(self) -> range:
        """All q elements in ascending encoding; starts 0, 1."""
        return range(self.q)

    def coeffs(self, a: int) -> tuple[int, ...]:
        self._check(a)
        return tuple((a // self.p**i) % self.p for i in range(self.e))

    def encode(self, coeffs) -> int:
        if len(coeffs) != self.e:
            raise ValueError(f"expected {self.e} coefficients")
        if any(not 0 <= c < self.p for c in coeffs):
            raise ValueError("coefficient out of range")
        return sum(c * self.p**i for i, c in enumerate(coeffs))

    def _check(self, a: int):
        if not 0 <= a < self.q:
            raise ValueError(f"element {a} out of range [0, {self.q})")

    def add(self, a: int, b: int) -> int:
        ca, cb = self.coeffs(a), self.coeffs(b)
        return self.encode(tuple((x + y) % self.p for x, y in zip(ca, cb)))

    def neg(self, a: int) -> int:
        return self.encode(tuple((-x) % self.p for x in self.coeffs(a)))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        self._check(a)
        self._check(b)
        if self.e == 1:
            return (a * b) % self.p
        prod = _poly_mul(self.coeffs(a), self.coeffs(b), self.p)
        acc = [0] * self.e
        for j, c in enumerate(prod):
            if not c:
                continue
            if j < self.e:
                acc[j] = (acc[j] + c) % self.p
            else:
                for i, r in enumerate(self._red[j - self.e]):
                    acc[i] = (acc[i] + c * r) % self.p
        return self.encode(tuple(acc))

    def pow(self, a: int, n: int) -> int:
        self._check(a)
        if n < 0:
            return self.pow(self.inv(a), -n)
        result = 1
        base = a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def inv(self, a: int) -> int:
        self._check(a)
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in a finite field")
        return self.pow(a, self.q - 2)

    @property
    def minus_one(self) -> int:
        return self.neg(1)

    # -- lookup tables for vectorized row generation

    @cached_property
    def add_table(self) -> np.ndarray:
        t = np.empty((self.q, self.q), dtype=np.int32)
        for a in range(self.q):
            for b in range(a, self.q):
                t[a, b] = t[b, a] = self.add(a, b)
        return t

    @cached_property
    def mul_table(self) -> np.ndarray:
        t = np.empty((self.q, self.q), dtype=np.int32)
        for a in range(self.q):
            for b in range(a, self.q):
                t[a, b] = t[b, a] = self.mul(a, b)
        return t

    @cached_property
    def neg_table(self) -> np.ndarray:
        return np.array([self.neg(a) for a in range(self.q)], dtype=np.int32)


@lru_cache(maxsize=None)
def make_field(p: int, e: int = 1) -> Field:
    """Shared immutable Field instances; same (p, e) always compares equal."""
    return Field(p, e)


def field_of_order(q: int) -> Field:
    return make_field(*prime_power(q))
