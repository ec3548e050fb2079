"""Diagonal-type machinery: W = T^(l+1).(Out(T) x Sym(l+1)) acting on N/D.

A point of Omega is stored as its distinguished representative, the tuple
(alpha_1, ..., alpha_l) of T-elements standing for D(1, alpha_1, ..., alpha_l).
A W-element is kept in canonical form n.phi.sigma with n = (t_0, ..., t_l),
t_0 = 1, phi an automorphism (carrier element of an ``AutAction``) and
sigma a permutation of {0, ..., l}. Everything acts on the right and is
applied in that order: first n, then phi, then sigma.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from math import factorial

from .catalog import AutAction, _symmetric
from .group import (
    DEFAULT_CAP,
    CapExceededError,
    PermGroup,
    SubgroupRecord,
    is_primitive,
)
from .perm import Permutation, _make

DiagonalPoint = tuple  # tuple[Permutation, ...] of length l


@dataclass(frozen=True)
class WElement:
    base: tuple[Permutation, ...]
    phi: Permutation
    sigma: Permutation


class WGroup:
    def __init__(self, aut: AutAction, ell: int):
        if ell < 1:
            raise ValueError("ell must be at least 1")
        self.aut = aut
        self.T = aut.base_group
        self.ell = ell
        self.one = self.T.identity
        self._omega: list[DiagonalPoint] | None = None
        self._point_index: dict[DiagonalPoint, int] | None = None

    # -- sizes ------------------------------------------------------------
    @property
    def omega_size(self) -> int:
        return self.T.order ** self.ell

    @property
    def predicted_order(self) -> int:
        return self.T.order ** (self.ell + 1) * self.aut.out_order * factorial(self.ell + 1)

    @property
    def base_point(self) -> DiagonalPoint:
        return (self.one,) * self.ell

    @property
    def omega(self) -> list[DiagonalPoint]:
        """All points, lexicographic in the element indices of T."""
        if self._omega is None:
            self._omega = [tuple(p) for p in product(self.aut.elements, repeat=self.ell)]
            self._point_index = {p: i for i, p in enumerate(self._omega)}
        return self._omega

    def point_index(self, point: DiagonalPoint) -> int:
        self.omega
        return self._point_index[point]  # type: ignore[index]

    # -- actions on points ------------------------------------------------
    @staticmethod
    def _normalize(full) -> DiagonalPoint:
        h = ~full[0]
        return tuple(h * x for x in full[1:])

    def act_phi(self, point: DiagonalPoint, phi: Permutation) -> DiagonalPoint:
        return tuple(self.aut.apply(phi, a) for a in point)

    def act_base(self, point: DiagonalPoint, n) -> DiagonalPoint:
        full = (self.one,) + tuple(point)
        return self._normalize([a * t for a, t in zip(full, n)])

    def act_sigma(self, point: DiagonalPoint, sigma: Permutation) -> DiagonalPoint:
        full = (self.one,) + tuple(point)
        moved = [None] * len(full)
        for i, a in enumerate(full):
            moved[sigma[i]] = a
        return self._normalize(moved)

    def act_w(self, point: DiagonalPoint, w: WElement) -> DiagonalPoint:
        return self.act_sigma(self.act_phi(self.act_base(point, w.base), w.phi), w.sigma)

    # -- W arithmetic -----------------------------------------------------
    def identity_element(self) -> WElement:
        return WElement((self.one,) * (self.ell + 1), self.aut.carrier.identity,
                        Permutation.identity(self.ell + 1))

    def canonical(self, n, phi: Permutation, sigma: Permutation) -> WElement:
        """Canonical form of the W-element n.phi.sigma for an arbitrary base tuple n.

        n = u.(t_0, ..., t_0) with u_i = t_i t_0^-1, and the diagonal factor is
        the inner automorphism induced by t_0, which is folded into phi.
        """
        n = tuple(n)
        if len(n) != self.ell + 1 or len(sigma) != self.ell + 1:
            raise ValueError("base tuple and sigma must have length ell + 1")
        t0 = n[0]
        t0i = ~t0
        base = tuple(t * t0i for t in n)
        return WElement(base, self.aut.inner(t0) * phi, sigma)

    def w_compose(self, v: WElement, w: WElement) -> WElement:
        """Canonical form of v.w (v acts first)."""
        # sigma n' sigma^-1 has base n'[sigma(j)] at position j
        moved = [w.base[v.sigma[j]] for j in range(self.ell + 1)]
        phi_inv = ~v.phi
        # phi m phi^-1 is m with phi^-1 applied coordinatewise
        twisted = [self.aut.apply(phi_inv, t) for t in moved]
        n = [a * b for a, b in zip(v.base, twisted)]
        return self.canonical(n, v.phi * w.phi, v.sigma * w.sigma)

    def w_inverse(self, w: WElement) -> WElement:
        one_base = (self.one,) * (self.ell + 1)
        e_phi = self.aut.carrier.identity
        e_sigma = Permutation.identity(self.ell + 1)
        x = WElement(one_base, e_phi, ~w.sigma)
        x = self.w_compose(x, WElement(one_base, ~w.phi, e_sigma))
        return self.w_compose(x, self.canonical([~t for t in w.base], e_phi, e_sigma))

    def random_element(self, rng: random.Random) -> WElement:
        els = self.aut.elements
        base = (self.one,) + tuple(rng.choice(els) for _ in range(self.ell))
        phi = rng.choice(self.aut.carrier.elements)
        sigma = Permutation(rng.sample(range(self.ell + 1), self.ell + 1))
        return WElement(base, phi, sigma)

    def random_point(self, rng: random.Random) -> DiagonalPoint:
        return tuple(rng.choice(self.aut.elements) for _ in range(self.ell))

    # -- permutation representation ----------------------------------------
    def as_permutation(self, w: WElement) -> Permutation:
        idx = self.point_index
        return _make(idx(self.act_w(p, w)) for p in self.omega)

    def generators(self) -> dict[str, list[WElement]]:
        """W-elements for the three generator families: N, Aut(T), Sym(l+1)."""
        e = self.identity_element()
        base_gens = []
        for i in range(self.ell + 1):
            for g in self.T.generators:
                n = [self.one] * (self.ell + 1)
                n[i] = g
                base_gens.append(self.canonical(n, e.phi, e.sigma))
        aut_gens = [WElement(e.base, phi, e.sigma) for phi in self.aut.carrier.generators]
        sym_gens = [WElement(e.base, e.phi, s) for s in _symmetric(self.ell + 1).generators]
        return {"N": base_gens, "Aut": aut_gens, "Sym": sym_gens}

    def build(self, cap: int | None = None) -> tuple[PermGroup, SubgroupRecord]:
        """W as a permutation group on Omega and the stabilizer of the base point."""
        cap = DEFAULT_CAP if cap is None else cap
        if self.omega_size > cap:
            raise CapExceededError(f"|Omega| = {self.omega_size} exceeds cap ({cap})")
        fam = self.generators()
        gens = [self.as_permutation(w) for ws in fam.values() for w in ws]
        W = PermGroup(self.omega_size, gens, name=f"W({self.T.name}, {self.ell})")
        W.materialize(cap)
        o = self.point_index(self.base_point)
        stab = frozenset(g for g in W.elements if g[o] == o)
        stab_gens = tuple(self.as_permutation(w) for w in fam["Aut"] + fam["Sym"])
        return W, SubgroupRecord(stab_gens, stab)

    # -- projections --------------------------------------------------------
    def projections(self, w: WElement) -> tuple[Permutation, Permutation]:
        """(label of phi modulo Inn(T), sigma)."""
        return self.aut.outer_label(w.phi), w.sigma


def build_w(aut: AutAction, ell: int, cap: int | None = None) -> tuple[WGroup, PermGroup, SubgroupRecord]:
    wg = WGroup(aut, ell)
    W, stab = wg.build(cap)
    return wg, W, stab


def is_diagonal_primitive(ell: int, generators: list[WElement]) -> bool:
    """Primitive on Omega given N is contained: l = 1, or the sigma-parts act primitively."""
    if ell == 1:
        return True
    return is_primitive([w.sigma for w in generators], ell + 1)
