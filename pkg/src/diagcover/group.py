"""Permutation groups with explicitly materialized element sets.

Everything here is exhaustive: groups are closed by breadth-first search
over their generators and all structure is read off the element set. That
is the right trade-off for the desk-scale groups this package targets
(a few hundred thousand elements at most).
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .perm import Permutation, _make, order_of

DEFAULT_CAP = int(os.environ.get("DIAGCOVER_CAP", "200000"))
LATTICE_CAP = 2000


class CapExceededError(RuntimeError):
    """A closure or search grew past its configured size limit."""


class NotMaterializedError(RuntimeError):
    pass


def closure(generators: Sequence[Permutation], degree: int, cap: int | None = None) -> set[Permutation]:
    """Element set of the group generated by ``generators``."""
    cap = DEFAULT_CAP if cap is None else cap
    e = Permutation.identity(degree)
    seen = {e}
    frontier = [e]
    gens = [g for g in dict.fromkeys(generators) if not g.is_identity()]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = _make(map(g.__getitem__, x))
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        if len(seen) > cap:
            raise CapExceededError(f"order exceeds cap ({cap})")
        frontier = nxt
    return seen


class PermGroup:
    """A permutation group of a given degree, generated by ``generators``.

    The element set is computed on demand by :meth:`materialize` and is kept
    sorted by image sequence, so element indices are reproducible.
    """

    def __init__(self, degree: int, generators: Iterable[Sequence[int]] = (), *,
                 name: str | None = None, elements: Iterable[Permutation] | None = None):
        self.degree = int(degree)
        gens = []
        for g in generators:
            g = g if isinstance(g, Permutation) else Permutation(g)
            if len(g) != self.degree:
                raise ValueError(f"generator {g} has degree {len(g)}, expected {self.degree}")
            gens.append(g)
        self.generators: tuple[Permutation, ...] = tuple(gens)
        self.name = name
        self._elements: tuple[Permutation, ...] | None = None
        self._index: dict[Permutation, int] | None = None
        self._cache: dict = {}
        if elements is not None:
            self._set_elements(elements)

    def _set_elements(self, elements: Iterable[Permutation]) -> None:
        els = tuple(sorted(elements))
        self._elements = els
        self._index = {g: i for i, g in enumerate(els)}

    def materialize(self, cap: int | None = None) -> tuple[Permutation, ...]:
        if self._elements is None:
            self._set_elements(closure(self.generators, self.degree, cap))
        return self._elements

    @property
    def is_materialized(self) -> bool:
        return self._elements is not None

    @property
    def elements(self) -> tuple[Permutation, ...]:
        if self._elements is None:
            raise NotMaterializedError(f"{self} is not materialized")
        return self._elements

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def index(self, g: Permutation) -> int:
        return self._index[g]  # type: ignore[index]

    def __contains__(self, g) -> bool:
        if self._index is None:
            raise NotMaterializedError(f"{self} is not materialized")
        return g in self._index

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(a * b == b * a for a in gens for b in gens)

    def is_cyclic(self) -> bool:
        n = self.order
        return any(order_of(g) == n for g in self.elements)

    def __repr__(self) -> str:
        label = self.name or f"<{len(self.generators)} generators>"
        return f"PermGroup({label}, degree={self.degree})"


@dataclass(eq=False)
class SubgroupRecord:
    """A subgroup given by generators together with its full element set."""

    generators: tuple[Permutation, ...]
    elements: frozenset[Permutation]
    is_maximal: bool = False
    is_normal: bool = False

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g) -> bool:
        return g in self.elements

    def __eq__(self, other) -> bool:
        return isinstance(other, SubgroupRecord) and self.elements == other.elements

    def __hash__(self) -> int:
        return hash(self.elements)

    def as_group(self, degree: int, name: str | None = None) -> PermGroup:
        return PermGroup(degree, self.generators, name=name, elements=self.elements)

    def __repr__(self) -> str:
        flags = "".join(f" {f}" for f, v in (("maximal", self.is_maximal), ("normal", self.is_normal)) if v)
        return f"SubgroupRecord(order={self.order}{flags})"


def subgroup(G: PermGroup, generators: Iterable[Permutation]) -> SubgroupRecord:
    gens = tuple(generators)
    for g in gens:
        if g not in G:
            raise ValueError(f"{g} is not an element of {G}")
    els = frozenset(closure(gens, G.degree))
    return SubgroupRecord(gens, els, is_normal=_is_normal_set(G, els))


def small_generating_set(elements: Iterable[Permutation], degree: int) -> tuple[Permutation, ...]:
    """Greedy generating set: scan in sorted order, keep what is not yet generated."""
    target = set(elements)
    gens: list[Permutation] = []
    current = {Permutation.identity(degree)}
    for g in sorted(target):
        if len(current) == len(target):
            break
        if g not in current:
            gens.append(g)
            current = closure(gens, degree, cap=len(target))
    return tuple(gens)


def record_from_elements(elements: Iterable[Permutation], degree: int, **flags) -> SubgroupRecord:
    els = frozenset(elements)
    return SubgroupRecord(small_generating_set(els, degree), els, **flags)


def _is_normal_set(G: PermGroup, els: frozenset[Permutation]) -> bool:
    return all(x ** g in els for g in G.generators for x in els)


def is_normal(G: PermGroup, H: SubgroupRecord) -> bool:
    return _is_normal_set(G, H.elements)


def trivial_subgroup(G: PermGroup) -> SubgroupRecord:
    return SubgroupRecord((), frozenset([G.identity]), is_normal=True)


def whole_group(G: PermGroup) -> SubgroupRecord:
    return SubgroupRecord(G.generators, frozenset(G.elements), is_normal=True)


# ---------------------------------------------------------------------------
# conjugacy

@dataclass
class ConjugacyClass:
    representative: Permutation
    size: int
    members: frozenset[Permutation]
    element_order: int

    def __contains__(self, g) -> bool:
        return g in self.members


@dataclass
class ConjugacyClassTable:
    classes: list[ConjugacyClass]
    _lookup: dict[Permutation, int] = field(repr=False, default_factory=dict)

    def class_of(self, g: Permutation) -> int:
        return self._lookup[g]

    def __len__(self) -> int:
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    def __getitem__(self, i: int) -> ConjugacyClass:
        return self.classes[i]


def _conjugation_orbit(gens: Sequence[Permutation], x: Permutation) -> dict[Permutation, Permutation]:
    """Orbit of ``x`` under conjugation, mapping each member y to some z with x**z == y."""
    e = Permutation.identity(len(x))
    conj = {x: e}
    frontier = [x]
    while frontier:
        nxt = []
        for y in frontier:
            zy = conj[y]
            for s in gens:
                w = y ** s
                if w not in conj:
                    conj[w] = zy * s
                    nxt.append(w)
        frontier = nxt
    return conj


def conjugacy_classes(G: PermGroup) -> ConjugacyClassTable:
    """Classes ordered by (element order, representative); representatives are lex-least."""
    if "classes" in G._cache:
        return G._cache["classes"]
    els = G.elements
    assigned: set[Permutation] = set()
    found = []
    for x in els:
        if x in assigned:
            continue
        orbit = frozenset(_conjugation_orbit(G.generators, x))
        assigned |= orbit
        found.append(ConjugacyClass(x, len(orbit), orbit, order_of(x)))
    # scanning in sorted order makes x the least member of its orbit
    found.sort(key=lambda c: (c.element_order, c.representative))
    lookup = {g: i for i, c in enumerate(found) for g in c.members}
    table = ConjugacyClassTable(found, lookup)
    G._cache["classes"] = table
    return table


def centralizer(G: PermGroup, g: Permutation) -> SubgroupRecord:
    if g not in G:
        raise ValueError(f"{g} is not an element of {G}")
    els = frozenset(x for x in G.elements if x * g == g * x)
    return record_from_elements(els, G.degree)


def is_conjugate(G: PermGroup, g: Permutation, h: Permutation) -> Permutation | None:
    """Some z in G with g**z == h, or None."""
    for x in (g, h):
        if x not in G:
            raise ValueError(f"{x} is not an element of {G}")
    if g == h:
        return G.identity
    if order_of(g) != order_of(h):
        return None
    return _conjugation_orbit(G.generators, g).get(h)


def conjugator_into(G: PermGroup, g: Permutation, target) -> Permutation | None:
    """Some z with g**z in ``target`` (anything supporting ``in``), or None."""
    if g in target:
        return G.identity
    for y, z in _conjugation_orbit(G.generators, g).items():
        if y in target:
            return z
    return None


# ---------------------------------------------------------------------------
# Sylow subgroups

def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_part(n: int, p: int) -> int:
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


def sylow(G: PermGroup, p: int) -> SubgroupRecord:
    """A Sylow p-subgroup, grown one factor of p at a time inside normalizers."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    target = prime_part(G.order, p)
    gens: list[Permutation] = []
    P = {G.identity}
    while len(P) < target:
        for x in G.elements:
            if x in P or x ** p not in P:
                continue
            if all(y ** x in P for y in gens):
                gens.append(x)
                P = closure(gens, G.degree)
                break
        else:  # pragma: no cover - Sylow's theorem forbids this
            raise RuntimeError("no p-element normalizes the current p-subgroup")
    return SubgroupRecord(tuple(gens), frozenset(P), is_normal=_is_normal_set(G, frozenset(P)))


# ---------------------------------------------------------------------------
# normal subgroups and quotients

def normal_subgroups(G: PermGroup) -> list[SubgroupRecord]:
    """All normal subgroups, as joins of normal closures of single classes."""
    if "normals" in G._cache:
        return G._cache["normals"]
    table = conjugacy_classes(G)
    found: dict[frozenset, tuple[Permutation, ...]] = {frozenset([G.identity]): ()}
    for c in table:
        if c.representative.is_identity():
            continue
        gens = tuple(sorted(c.members))
        els = frozenset(closure(gens, G.degree))
        found.setdefault(els, gens)
    changed = True
    while changed:
        changed = False
        items = list(found.items())
        for i, (a, ga) in enumerate(items):
            for b, gb in items[i + 1:]:
                if a <= b or b <= a:
                    continue
                joined = frozenset(closure(ga + gb, G.degree))
                if joined not in found:
                    found[joined] = ga + gb
                    changed = True
    out = [record_from_elements(els, G.degree, is_normal=True) for els in found]
    out.sort(key=lambda r: (r.order, min(r.elements - {G.identity}, default=())))
    G._cache["normals"] = out
    return out


def right_cosets(G: PermGroup, N: SubgroupRecord) -> tuple[list[Permutation], dict[Permutation, int]]:
    """Coset representatives (least member of each coset) and element -> coset index."""
    label: dict[Permutation, int] = {}
    reps: list[Permutation] = []
    for x in G.elements:
        if x in label:
            continue
        for n in N.elements:
            label[n * x] = len(reps)
        reps.append(x)
    return reps, label


def coset_action(G: PermGroup, N: SubgroupRecord):
    """Action of G on the right cosets of normal N: returns (quotient, projection map)."""
    if not is_normal(G, N):
        raise ValueError("subgroup is not normal")
    reps, label = right_cosets(G, N)

    def project(g: Permutation) -> Permutation:
        return _make(label[r * g] for r in reps)

    Q = PermGroup(len(reps), [project(g) for g in G.generators],
                  name=f"{G.name or 'G'}/N" if len(reps) > 1 else None)
    return Q, project


def quotient(G: PermGroup, N: SubgroupRecord) -> PermGroup:
    Q, _ = coset_action(G, N)
    Q.materialize()
    return Q


# ---------------------------------------------------------------------------
# small permutation-group utilities

def orbit(generators: Sequence[Permutation], point: int) -> set[int]:
    seen = {point}
    frontier = [point]
    while frontier:
        nxt = []
        for x in frontier:
            for g in generators:
                y = g[x]
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def minimal_block(generators: Sequence[Permutation], degree: int, a: int, b: int) -> set[int]:
    """Smallest block of imprimitivity containing points ``a`` and ``b``."""
    parent = list(range(degree))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    queue = [(a, b)]
    parent[find(b)] = find(a)
    while queue:
        x, y = queue.pop()
        for g in generators:
            u, v = find(g[x]), find(g[y])
            if u != v:
                parent[v] = u
                queue.append((g[x], g[y]))
    root = find(a)
    return {x for x in range(degree) if find(x) == root}


def is_primitive(generators: Sequence[Permutation], degree: int) -> bool:
    if degree == 1:
        return True
    if len(orbit(generators, 0)) != degree:
        return False
    return all(len(minimal_block(generators, degree, 0, j)) == degree for j in range(1, degree))
