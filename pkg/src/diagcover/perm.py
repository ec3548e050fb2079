"""Permutations of {0, ..., n-1} stored as image tuples.

Permutations act on the right of points: ``p * q`` first applies ``p`` and
then ``q``, so ``(p * q)[x] == q[p[x]]``. Conjugation follows the same
convention, ``g ** z == ~z * g * z``.
"""

from __future__ import annotations

from math import gcd
from typing import Iterable, Sequence


class Permutation(tuple):
    """A bijection of ``range(n)``; entry ``i`` is the image of point ``i``."""

    __slots__ = ()

    def __new__(cls, images: Iterable[int] = ()):
        images = tuple(int(x) for x in images)
        n = len(images)
        if sorted(images) != list(range(n)):
            raise ValueError(f"not a permutation of range({n}): {images}")
        return tuple.__new__(cls, images)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return _make(range(n))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> Permutation:
        images = list(range(degree))
        seen: set[int] = set()
        for cyc in cycles:
            for x in cyc:
                if not 0 <= x < degree:
                    raise ValueError(f"point {x} out of range for degree {degree}")
                if x in seen:
                    raise ValueError(f"point {x} repeated")
                seen.add(x)
            for a, b in zip(cyc, tuple(cyc[1:]) + tuple(cyc[:1])):
                images[a] = b
        return _make(images)

    @property
    def degree(self) -> int:
        return len(self)

    def __mul__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        if len(self) != len(other):
            raise ValueError(f"degree mismatch: {len(self)} vs {len(other)}")
        return _make(map(other.__getitem__, self))

    __rmul__ = None  # tuple repetition is never meant

    def __invert__(self) -> Permutation:
        inv = [0] * len(self)
        for i, x in enumerate(self):
            inv[x] = i
        return _make(inv)

    def inverse(self) -> Permutation:
        return ~self

    def __pow__(self, k):
        if isinstance(k, Permutation):
            return ~k * self * k
        k = int(k)
        base = self if k >= 0 else ~self
        k = abs(k)
        result = Permutation.identity(len(self))
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, x: int) -> int:
        return self[x]

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self))

    def cycles(self) -> list[tuple[int, ...]]:
        return cycle_decomposition(self)

    def order(self) -> int:
        return order_of(self)

    def __repr__(self) -> str:
        return f"Permutation({list(self)})"

    def __str__(self) -> str:
        return "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles()) or "()"


def _make(images: Iterable[int]) -> Permutation:
    # unchecked constructor for hot paths
    return tuple.__new__(Permutation, images)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Apply ``p`` first, then ``q``."""
    return p * q


def inverse(p: Permutation) -> Permutation:
    return ~p


def identity(n: int) -> Permutation:
    return Permutation.identity(n)


def cycle_decomposition(p: Sequence[int]) -> list[tuple[int, ...]]:
    """Nontrivial cycles, each starting at its least point, sorted by that point."""
    seen = [False] * len(p)
    out = []
    for start in range(len(p)):
        if seen[start]:
            continue
        cyc = [start]
        seen[start] = True
        x = p[start]
        while x != start:
            cyc.append(x)
            seen[x] = True
            x = p[x]
        if len(cyc) > 1:
            out.append(tuple(cyc))
    return out


def order_of(p: Sequence[int]) -> int:
    n = 1
    for c in cycle_decomposition(p):
        n = n * len(c) // gcd(n, len(c))
    return n


def is_full_cycle(p: Sequence[int]) -> bool:
    if len(p) == 1:
        return True
    cycles = cycle_decomposition(p)
    return len(cycles) == 1 and len(cycles[0]) == len(p)


def cycle_type(p: Sequence[int]) -> tuple[int, ...]:
    """Cycle lengths in decreasing order, fixed points included."""
    lengths = [len(c) for c in cycle_decomposition(p)]
    lengths += [1] * (len(p) - sum(lengths))
    return tuple(sorted(lengths, reverse=True))
