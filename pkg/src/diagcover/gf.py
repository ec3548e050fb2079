"""Small finite fields GF(r^f) as lookup tables.

An element is encoded as the integer ``c0 + c1*r + ... + c_{f-1}*r^(f-1)``
of its coefficients over GF(r). The defining polynomial is the monic
irreducible of degree f whose coefficient encoding is least.
"""

from __future__ import annotations

from functools import cached_property

from .group import is_prime


def prime_power(q: int) -> tuple[int, int]:
    """(r, f) with q == r**f and r prime; ValueError otherwise."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    r = next(d for d in range(2, q + 1) if q % d == 0)
    f, m = 0, q
    while m % r == 0:
        m //= r
        f += 1
    if m != 1 or not is_prime(r):
        raise ValueError(f"{q} is not a prime power")
    return r, f


def _digits(a: int, r: int, n: int) -> list[int]:
    out = []
    for _ in range(n):
        a, d = divmod(a, r)
        out.append(d)
    return out


def _poly_mod(num: list[int], den: list[int], r: int) -> list[int]:
    num = num[:]
    inv_lead = pow(den[-1], r - 2, r)
    for shift in range(len(num) - len(den), -1, -1):
        c = num[shift + len(den) - 1] * inv_lead % r
        if c:
            for i, d in enumerate(den):
                num[shift + i] = (num[shift + i] - c * d) % r
    return num[: len(den) - 1]


def _is_irreducible(poly: list[int], r: int) -> bool:
    deg = len(poly) - 1
    for d in range(1, deg // 2 + 1):
        for low in range(r ** d):
            div = _digits(low, r, d) + [1]
            if not any(_poly_mod(poly, div, r)):
                return False
    return True


class GF:
    def __init__(self, q: int):
        self.q = q
        self.r, self.f = prime_power(q)
        r, f = self.r, self.f
        if f == 1:
            self.modulus = [0, 1]
        else:
            for low in range(r ** f):
                poly = _digits(low, r, f) + [1]
                if poly[0] and _is_irreducible(poly, r):
                    self.modulus = poly
                    break
        self._digits = [_digits(a, r, f) for a in range(q)]
        self.add_table = [[self._encode([(x + y) % r for x, y in zip(self._digits[a], self._digits[b])])
                           for b in range(q)] for a in range(q)]
        self.mul_table = [[self._mul_slow(a, b) for b in range(q)] for a in range(q)]

    def _encode(self, digits: list[int]) -> int:
        out = 0
        for d in reversed(digits):
            out = out * self.r + d
        return out

    def _mul_slow(self, a: int, b: int) -> int:
        r, f = self.r, self.f
        if f == 1:
            return a * b % r
        da, db = self._digits[a], self._digits[b]
        prod = [0] * (2 * f - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % r
        return self._encode(_poly_mod(prod, self.modulus, r))

    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def neg(self, a: int) -> int:
        return self._encode([(-d) % self.r for d in self._digits[a]])

    def pow(self, a: int, k: int) -> int:
        out = 1
        for _ in range(k):
            out = self.mul(out, a)
        return out

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self._inverses[a]

    @cached_property
    def _inverses(self) -> dict[int, int]:
        return {a: b for a in range(1, self.q) for b in range(1, self.q) if self.mul(a, b) == 1}

    @cached_property
    def primitive_element(self) -> int:
        for a in range(2 if self.q > 2 else 1, self.q):
            x, n = a, 1
            while x != 1:
                x = self.mul(x, a)
                n += 1
            if n == self.q - 1:
                return a
        raise RuntimeError("no primitive element")  # pragma: no cover

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.r)
