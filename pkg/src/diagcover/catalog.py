"""Named permutation groups and automorphism groups realized as permutations."""

from __future__ import annotations

import re
from functools import lru_cache
from dataclasses import dataclass, field
from itertools import product
from math import factorial

from .gf import GF, prime_power
from .group import (
    CapExceededError,
    PermGroup,
    SubgroupRecord,
    closure,
    conjugacy_classes,
    is_prime,
    small_generating_set,
)
from .perm import Permutation, _make, order_of

AUT_CAP = 360

FAMILIES = ("symmetric", "alternating", "cyclic", "dihedral", "agl1",
            "psl2", "pgl2", "pgammal2", "direct_product")


@dataclass(frozen=True)
class GroupSpecifier:
    family: str
    parameters: tuple = ()
    factors: tuple["GroupSpecifier", ...] = field(default=())

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown group family {self.family!r}")


def _cycle(points, degree: int) -> Permutation:
    return Permutation.from_cycles([list(points)], degree)


def _symmetric(n: int) -> PermGroup:
    if n < 1:
        raise ValueError("symmetric group needs n >= 1")
    gens = [] if n == 1 else [_cycle((0, 1), n)] + ([_cycle(range(n), n)] if n > 2 else [])
    return PermGroup(n, gens, name=f"S{n}")


def _alternating(n: int) -> PermGroup:
    if n < 1:
        raise ValueError("alternating group needs n >= 1")
    if n < 3:
        return PermGroup(n, [], name=f"A{n}")
    long_cycle = range(n) if n % 2 else range(1, n)
    gens = [_cycle((0, 1, 2), n)]
    if n > 3:
        gens.append(_cycle(long_cycle, n))
    return PermGroup(n, gens, name=f"A{n}")


def _cyclic(n: int) -> PermGroup:
    if n < 1:
        raise ValueError("cyclic group needs n >= 1")
    return PermGroup(n, [] if n == 1 else [_cycle(range(n), n)], name=f"C{n}")


def _dihedral(n: int) -> PermGroup:
    if n < 3:
        raise ValueError("dihedral group needs n >= 3 points")
    reflection = _make((-i) % n for i in range(n))
    return PermGroup(n, [_cycle(range(n), n), reflection], name=f"D{n}")


def _agl1(p: int) -> PermGroup:
    if not is_prime(p):
        raise ValueError(f"AGL1 needs a prime, got {p}")
    F = GF(p)
    w = F.primitive_element
    gens = [_make((x + 1) % p for x in range(p))]
    if p > 2:
        gens.append(_make(x * w % p for x in range(p)))
    return PermGroup(p, gens, name=f"AGL1({p})")


def mobius(F: GF, a: int, b: int, c: int, d: int) -> Permutation:
    """x -> (a x + b) / (c x + d) on field labels 0..q-1 plus infinity = q."""
    q = F.q
    images = []
    for x in range(q):
        num = F.add(F.mul(a, x), b)
        den = F.add(F.mul(c, x), d)
        images.append(q if den == 0 else F.mul(num, F.inv(den)))
    images.append(q if c == 0 else F.mul(a, F.inv(c)))
    return Permutation(images)


def frobenius_map(F: GF) -> Permutation:
    return Permutation([F.frobenius(x) for x in range(F.q)] + [F.q])


def _projective(family: str, q: int) -> PermGroup:
    prime_power(q)
    if q < 4:
        raise ValueError(f"{family} needs q >= 4, got {q}")
    F = GF(q)
    w = F.primitive_element
    one = 1
    translation = mobius(F, one, one, 0, one)
    inversion = mobius(F, 0, F.neg(one), one, 0)
    if family == "psl2":
        gens = [translation, mobius(F, F.mul(w, w), 0, 0, one), inversion]
        name = f"PSL2({q})"
    else:
        gens = [translation, mobius(F, w, 0, 0, one), inversion]
        name = f"PGL2({q})"
        if family == "pgammal2":
            if F.f > 1:
                gens.append(frobenius_map(F))
            name = f"PGammaL2({q})"
    return PermGroup(q + 1, gens, name=name)


def _direct_product(factors: list[PermGroup]) -> PermGroup:
    degree = sum(f.degree for f in factors)
    gens = []
    offset = 0
    for f in factors:
        for g in f.generators:
            images = list(range(degree))
            for i, x in enumerate(g):
                images[offset + i] = offset + x
            gens.append(_make(images))
        offset += f.degree
    name = "x".join(f.name or "?" for f in factors)
    return PermGroup(degree, gens, name=name)


def make(spec: GroupSpecifier | str) -> PermGroup:
    """Build the named group in its natural action (unmaterialized)."""
    if isinstance(spec, str):
        spec = parse_specifier(spec)
    fam, params = spec.family, spec.parameters
    if fam == "direct_product":
        if not spec.factors:
            raise ValueError("direct product needs at least one factor")
        return _direct_product([make(f) for f in spec.factors])
    if len(params) != 1:
        raise ValueError(f"{fam} takes exactly one parameter")
    n = int(params[0])
    if fam == "symmetric":
        return _symmetric(n)
    if fam == "alternating":
        return _alternating(n)
    if fam == "cyclic":
        return _cyclic(n)
    if fam == "dihedral":
        return _dihedral(n)
    if fam == "agl1":
        return _agl1(n)
    return _projective(fam, n)


_SPEC_RE = re.compile(r"^(S|A|C|D|AGL1:|PSL2:|PGL2:|PGammaL2:)(\d+)$", re.IGNORECASE)
_PREFIX = {"s": "symmetric", "a": "alternating", "c": "cyclic", "d": "dihedral",
           "agl1:": "agl1", "psl2:": "psl2", "pgl2:": "pgl2", "pgammal2:": "pgammal2"}


def parse_specifier(text: str) -> GroupSpecifier:
    """Parse ``A5``, ``S6``, ``C6``, ``D5``, ``V4``, ``AGL1:7``, ``PSL2:11``,
    ``PGL2:9``, ``PGammaL2:32`` or an ``x``-separated product such as ``C2xC2``."""
    text = text.strip()
    if text.upper() == "V4":
        return GroupSpecifier("direct_product", factors=(GroupSpecifier("cyclic", (2,)),) * 2)
    parts = text.split("x")
    if len(parts) > 1:
        return GroupSpecifier("direct_product", factors=tuple(parse_specifier(p) for p in parts))
    m = _SPEC_RE.match(text)
    if not m:
        raise ValueError(f"unrecognized group specifier {text!r}")
    return GroupSpecifier(_PREFIX[m.group(1).lower()], (int(m.group(2)),))


def expected_order(spec: GroupSpecifier | str) -> int:
    if isinstance(spec, str):
        spec = parse_specifier(spec)
    fam = spec.family
    if fam == "direct_product":
        out = 1
        for f in spec.factors:
            out *= expected_order(f)
        return out
    n = spec.parameters[0]
    if fam == "symmetric":
        return factorial(n)
    if fam == "alternating":
        return max(factorial(n) // 2, 1)
    if fam == "cyclic":
        return n
    if fam == "dihedral":
        return 2 * n
    if fam == "agl1":
        return n * (n - 1)
    r, f = prime_power(n)
    pgl = n * (n * n - 1)
    if fam == "psl2":
        return pgl // (2 if r % 2 else 1)
    if fam == "pgl2":
        return pgl
    return pgl * f


# ---------------------------------------------------------------------------
# automorphisms

@dataclass
class AutAction:
    """Aut(T) as permutations of T's sorted element list.

    ``carrier`` elements are index permutations: automorphism ``phi`` sends
    ``elements[i]`` to ``elements[phi[i]]``. Composition is left to right,
    matching the right action ``x -> x^phi``.
    """

    base_group: PermGroup
    elements: tuple[Permutation, ...]
    index: dict[Permutation, int]
    carrier: PermGroup
    inner_image: SubgroupRecord
    _inner_of: dict[Permutation, Permutation] = field(repr=False, default_factory=dict)

    def apply(self, phi: Permutation, x: Permutation) -> Permutation:
        return self.elements[phi[self.index[x]]]

    def inner(self, t: Permutation) -> Permutation:
        """Conjugation x -> t^-1 x t as a carrier element."""
        ti = ~t
        return _make(self.index[ti * x * t] for x in self.elements)

    def inner_element(self, phi: Permutation) -> Permutation | None:
        """The t in T inducing ``phi``, or None if ``phi`` is outer."""
        if not self._inner_of:
            for t in self.elements:
                self._inner_of[self.inner(t)] = t
        return self._inner_of.get(phi)

    def is_inner(self, phi: Permutation) -> bool:
        return phi in self.inner_image

    @property
    def out_order(self) -> int:
        return self.carrier.order // self.inner_image.order

    def outer_label(self, phi: Permutation) -> Permutation:
        """Least member of the coset Inn(T) phi."""
        return min(i * phi for i in self.inner_image.elements)

    def is_automorphism(self, phi: Permutation) -> bool:
        els, idx = self.elements, self.index
        return all(els[phi[idx[x * y]]] == els[phi[idx[x]]] * els[phi[idx[y]]]
                   for x in els for y in els)


def _generating_pair(T: PermGroup) -> tuple[Permutation, ...]:
    gens = T.generators
    if len(gens) <= 2:
        return gens
    reps = [c.representative for c in conjugacy_classes(T)]
    for x in reps:
        for y in T.elements:
            if len(closure([x, y], T.degree, cap=T.order)) == T.order:
                return (x, y)
    return gens


def automorphism_action(T: PermGroup, cap: int = AUT_CAP) -> AutAction:
    """Aut(T) by exhaustive search over images of a generating tuple.

    Candidate images of each generator are restricted to elements with the
    same order and class size; each surviving assignment is extended along a
    spanning tree of the Cayley graph and kept only if it is a bijective
    homomorphism.
    """
    T.materialize()
    if T.order == 1:
        raise ValueError("trivial group has no automorphism action of interest")
    if T.order > cap:
        raise CapExceededError(f"|T| = {T.order} exceeds automorphism-search cap ({cap})")
    els = T.elements
    idx = {g: i for i, g in enumerate(els)}
    n = len(els)
    gens = _generating_pair(T)

    # spanning tree: element i = parent[i] * gens[label[i]]
    parent = [-1] * n
    label = [-1] * n
    e = idx[T.identity]
    order_bfs = [e]
    seen = {e}
    for x in order_bfs:
        for k, g in enumerate(gens):
            y = idx[els[x] * g]
            if y not in seen:
                seen.add(y)
                parent[y], label[y] = x, k
                order_bfs.append(y)
    edges = [(x, k, idx[els[x] * g]) for x in range(n) for k, g in enumerate(gens)]

    table = conjugacy_classes(T)
    sizes = {g: table[table.class_of(g)].size for g in els}
    candidates = [[h for h in els if order_of(h) == order_of(g) and sizes[h] == sizes[g]] for g in gens]
    pair_orders = {(a, b): order_of(gens[a] * gens[b]) for a in range(len(gens)) for b in range(len(gens)) if a < b}

    autos = []
    for images in product(*candidates):
        if any(order_of(images[a] * images[b]) != o for (a, b), o in pair_orders.items()):
            continue
        img = [None] * n
        img[e] = T.identity
        for y in order_bfs[1:]:
            img[y] = img[parent[y]] * images[label[y]]
        if any(img[z] != img[x] * images[k] for x, k, z in edges):
            continue
        pi = _make(idx[img[i]] for i in range(n))
        if len(set(pi)) == n:
            autos.append(pi)

    carrier = PermGroup(n, small_generating_set(autos, n), name=f"Aut({T.name})", elements=autos)
    action = AutAction(T, els, idx, carrier, SubgroupRecord((), frozenset()))
    inner_gens = tuple(action.inner(g) for g in gens)
    inner_els = frozenset(action.inner(t) for t in els)
    action.inner_image = SubgroupRecord(inner_gens, inner_els, is_normal=True)
    return action


@lru_cache(maxsize=8)
def cached_automorphism_action(spec: str) -> AutAction:
    return automorphism_action(make(spec))


def field_automorphism(q: int) -> tuple[PermGroup, Permutation, SubgroupRecord]:
    """PGammaL2(q), its Frobenius x -> x^r (fixing infinity), and PSL2(q) inside it."""
    r, f = prime_power(q)
    if f == 1:
        raise ValueError(f"q = {q} is prime: no nontrivial field automorphism")
    G = _projective("pgammal2", q)
    F = GF(q)
    phi = frobenius_map(F)
    T = _projective("psl2", q)
    T_elements = frozenset(closure(T.generators, T.degree))
    return G, phi, SubgroupRecord(T.generators, T_elements, is_normal=True)
