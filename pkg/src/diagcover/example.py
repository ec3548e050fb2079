"""The groups G = H x| <sigma> built from T <= U <= Aut(T) and a prime p.

H is the set of p-tuples over U whose entries are pairwise congruent modulo
Inn(T); sigma shifts coordinates, ``(x_1, ..., x_p)^sigma = (x_2, ..., x_p, x_1)``.
An element is stored as ``(coords, k)`` meaning ``coords * sigma**k``.
These groups are far too large to enumerate, so covering by the conjugates
of H and K = diag(U) x <sigma> is checked element by element with explicit
conjugators.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

from .catalog import AutAction, cached_automorphism_action
from .group import SubgroupRecord, is_prime, normal_subgroups, whole_group
from .perm import Permutation, is_full_cycle, order_of


class CertificateError(RuntimeError):
    """A constructed conjugator failed re-verification."""


@dataclass(frozen=True)
class GElement:
    coords: tuple[Permutation, ...]
    k: int


@dataclass(frozen=True)
class ExampleSpec:
    aut: AutAction
    U: SubgroupRecord
    p: int
    u_label: str = "U"

    @property
    def T(self):
        return self.aut.base_group


def validate(aut: AutAction, U: SubgroupRecord, p: int, u_label: str = "U") -> ExampleSpec:
    """Check the defining hypotheses and return the spec."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    T = aut.base_group
    T.materialize()
    if T.order == 1 or T.is_abelian() or any(1 < N.order < T.order for N in normal_subgroups(T)):
        raise ValueError("T not simple (or abelian)")
    if not U.elements <= set(aut.carrier.elements):
        raise ValueError("U is not a subgroup of Aut(T)")
    if not aut.inner_image.elements <= U.elements:
        raise ValueError("U does not contain Inn(T)")
    if U.order % p == 0:
        raise ValueError(f"p divides |U| ({p} | {U.order})")
    return ExampleSpec(aut, U, p, u_label)


def build_spec(T_spec: str, U_kind: str, p: int) -> ExampleSpec:
    """Spec from a catalog specifier for T and ``U_kind`` in {"inn", "aut"}."""
    aut = cached_automorphism_action(T_spec)
    if U_kind == "inn":
        U = aut.inner_image
    elif U_kind == "aut":
        U = whole_group(aut.carrier)
    else:
        raise ValueError(f"U must be 'inn' or 'aut', got {U_kind!r}")
    return validate(aut, U, p, U_kind)


class ExampleGroup:
    """Arithmetic in G = H x| <sigma> for a validated spec."""

    def __init__(self, spec: ExampleSpec):
        self.spec = spec
        self.p = spec.p
        self.aut = spec.aut
        self.e = spec.aut.carrier.identity
        self.inner = spec.aut.inner_image.elements
        self.U_elements = tuple(sorted(spec.U.elements))
        self.U_index = {u: i for i, u in enumerate(self.U_elements)}
        self.inner_elements = tuple(sorted(self.inner))

    # -- basic arithmetic -------------------------------------------------
    def identity(self) -> GElement:
        return GElement((self.e,) * self.p, 0)

    def sigma(self, k: int = 1) -> GElement:
        return GElement((self.e,) * self.p, k % self.p)

    def shift(self, coords, i: int) -> tuple[Permutation, ...]:
        """coords^(sigma^i): position c receives the entry from position c + i."""
        p = self.p
        return tuple(coords[(c + i) % p] for c in range(p))

    def multiply(self, a: GElement, b: GElement) -> GElement:
        # (m s^i)(n s^j) = m (s^i n s^-i) s^(i+j) and s^i n s^-i = n^(s^-i)
        moved = self.shift(b.coords, -a.k)
        return GElement(tuple(x * y for x, y in zip(a.coords, moved)), (a.k + b.k) % self.p)

    def inverse(self, a: GElement) -> GElement:
        return GElement(self.shift(tuple(~x for x in a.coords), a.k), (-a.k) % self.p)

    def power(self, a: GElement, n: int) -> GElement:
        if n < 0:
            a, n = self.inverse(a), -n
        result = self.identity()
        while n:
            if n & 1:
                result = self.multiply(result, a)
            a = self.multiply(a, a)
            n >>= 1
        return result

    def conjugate(self, g: GElement, z: GElement) -> GElement:
        """g^z = z^-1 g z."""
        return self.multiply(self.multiply(self.inverse(z), g), z)

    def order(self, g: GElement) -> int:
        """Element order: lcm of coordinate orders on H, times p off H."""
        if g.k:
            return self.p * self.order(self.power(g, self.p))
        n = 1
        for x in g.coords:
            o = order_of(x)
            n = n * o // gcd(n, o)
        return n

    def order_by_iteration(self, g: GElement) -> int:
        x, n = g, 1
        bound = self.spec.U.order * self.p
        ident = self.identity()
        while x != ident:
            x = self.multiply(x, g)
            n += 1
            if n > bound:  # pragma: no cover
                raise RuntimeError("order exceeds |U| p")
        return n

    # -- membership -------------------------------------------------------
    def is_element(self, g: GElement) -> bool:
        if len(g.coords) != self.p or not all(x in self.spec.U.elements for x in g.coords):
            return False
        first_inv = ~g.coords[0]
        return all(x * first_inv in self.inner for x in g.coords[1:])

    def in_H(self, g: GElement) -> bool:
        return g.k == 0

    def in_K(self, g: GElement) -> bool:
        return all(x == g.coords[0] for x in g.coords[1:])

    def commutes_with_sigma_iff_in_K(self, g: GElement) -> tuple[bool, bool]:
        s = self.sigma()
        return self.multiply(g, s) == self.multiply(s, g), self.in_K(g)

    def sigma_part(self, g: GElement) -> Permutation:
        """The permutation of coordinate positions induced by sigma^k."""
        return Permutation((c - g.k) % self.p for c in range(self.p))

    # -- covering ---------------------------------------------------------
    def conjugate_into_component(self, g: GElement) -> tuple[str, GElement]:
        """("H", 1) for g in H; otherwise ("K", b) with b in H and g^b in K.

        The p-part e = g^(q/p) = (c, j) is conjugated onto sigma^j by a base
        element b with b_0 = 1 and b_x = c_x b_(x-j), walking the single cycle
        x -> x + j of Z/p. Closing the cycle needs the twisted product of c
        to vanish, which is exactly e^p = 1.
        """
        if g.k == 0:
            return "H", self.identity()
        p = self.p
        q = self.order(g)
        e = self.power(g, q // p)
        c, j = e.coords, e.k
        b = [None] * p
        b[0] = self.e
        x = 0
        for _ in range(p - 1):
            nxt = (x + j) % p
            b[nxt] = c[nxt] * b[x]
            x = nxt
        if c[0] * b[(-j) % p] != b[0]:
            raise CertificateError("coordinate recursion does not close")
        bel = GElement(tuple(b), 0)
        if not all(y in self.inner for y in bel.coords):
            raise CertificateError("conjugator leaves Inn(T)^p")
        if self.conjugate(e, bel) != self.sigma(j):
            raise CertificateError("p-part not conjugated onto <sigma>")
        if not self.in_K(self.conjugate(g, bel)):
            raise CertificateError("verification failed: g^b not in K")
        return "K", bel

    # -- sampling ---------------------------------------------------------
    def sample(self, seed: int, index: int) -> GElement:
        """Element number ``index`` of the stream for ``seed``: (t_1 u, ..., t_p u) sigma^k."""
        rng = np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, index])))
        u = self.U_elements[int(rng.integers(len(self.U_elements)))]
        ts = [self.inner_elements[int(i)] for i in rng.integers(len(self.inner_elements), size=self.p)]
        k = int(rng.integers(self.p))
        return GElement(tuple(t * u for t in ts), k)

    def encode(self, g: GElement) -> dict:
        return {"coords": [self.U_index[x] for x in g.coords], "k": g.k}

    def decode(self, data: dict) -> GElement:
        return GElement(tuple(self.U_elements[i] for i in data["coords"]), int(data["k"]) % self.p)


@dataclass
class SampleRecord:
    index: int
    element: GElement
    order: int
    tag: str
    conjugator: GElement
    commutes_with_sigma: bool
    in_K: bool


@dataclass
class ExampleCertificate:
    group: ExampleGroup
    seed: int
    records: list[SampleRecord]

    def recheck(self) -> bool:
        G = self.group
        for r in self.records:
            if r.tag == "H":
                if not G.in_H(r.element):
                    return False
            elif not (G.in_H(r.conjugator) and G.in_K(G.conjugate(r.element, r.conjugator))):
                return False
        return True

    def to_body(self) -> dict:
        G = self.group
        return {
            "samples": [
                {
                    "index": r.index,
                    "element": G.encode(r.element),
                    "order": r.order,
                    "tag": r.tag,
                    "conjugator": G.encode(r.conjugator),
                    "commutes_with_sigma": r.commutes_with_sigma,
                    "in_K": r.in_K,
                }
                for r in self.records
            ],
            "summary": {
                "total": len(self.records),
                "tag_H": sum(r.tag == "H" for r in self.records),
                "tag_K": sum(r.tag == "K" for r in self.records),
            },
        }


def covering_certificate(spec: ExampleSpec, samples: int, seed: int) -> ExampleCertificate:
    G = ExampleGroup(spec)
    records = []
    for i in range(samples):
        g = G.sample(seed, i)
        if not G.is_element(g):  # pragma: no cover
            raise CertificateError("sampled element is not in G")
        tag, z = G.conjugate_into_component(g)
        commutes, in_k = G.commutes_with_sigma_iff_in_K(g)
        records.append(SampleRecord(i, g, G.order(g), tag, z, commutes, in_k))
    return ExampleCertificate(G, seed, records)


def sigma_parts_are_full_cycles(cert: ExampleCertificate) -> bool:
    """Every sample outside H has a full p-cycle as its coordinate permutation."""
    G = cert.group
    return all(is_full_cycle(G.sigma_part(r.element)) for r in cert.records if r.tag == "K")
