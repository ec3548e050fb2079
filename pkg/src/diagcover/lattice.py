"""Exhaustive subgroup lattice for small groups.

Subgroups are handled as integer bitmasks over element indices. The lattice
is built from the cyclic subgroups by repeatedly joining every known
subgroup with every cyclic subgroup until nothing new appears; every
subgroup is a join of cyclic subgroups, so this reaches all of them.
"""

from __future__ import annotations

from .group import (
    LATTICE_CAP,
    CapExceededError,
    PermGroup,
    SubgroupRecord,
)


class _Lattice:
    def __init__(self, G: PermGroup):
        self.G = G
        self.els = G.elements
        self.idx = {g: i for i, g in enumerate(self.els)}
        self.e = self.idx[G.identity]
        self._cols: dict[int, list[int]] = {}

    def col(self, g: int) -> list[int]:
        """col(g)[x] is the index of els[x] * els[g]."""
        c = self._cols.get(g)
        if c is None:
            h = self.els[g]
            idx = self.idx
            c = [idx[x * h] for x in self.els]
            self._cols[g] = c
        return c

    def close(self, gens: list[int]) -> int:
        cols = [self.col(g) for g in gens]
        mask = 1 << self.e
        frontier = [self.e]
        while frontier:
            nxt = []
            for x in frontier:
                for c in cols:
                    y = c[x]
                    if not mask >> y & 1:
                        mask |= 1 << y
                        nxt.append(y)
            frontier = nxt
        return mask

    def members(self, mask: int) -> list[int]:
        out = []
        i = 0
        while mask:
            if mask & 1:
                out.append(i)
            mask >>= 1
            i += 1
        return out

    def record(self, mask: int, gens: list[int], **flags) -> SubgroupRecord:
        return SubgroupRecord(
            tuple(self.els[g] for g in gens),
            frozenset(self.els[i] for i in self.members(mask)),
            **flags,
        )

    def subgroups(self) -> dict[int, list[int]]:
        cyclic: dict[int, list[int]] = {}
        for i in range(len(self.els)):
            m = self.close([i])
            cyclic.setdefault(m, [i] if i != self.e else [])
        found = dict(cyclic)
        queue = list(found)
        while queue:
            s = queue.pop()
            gs = found[s]
            for c, cg in cyclic.items():
                if c & s == c:
                    continue
                j = self.close(gs + cg)
                if j not in found:
                    found[j] = gs + cg
                    queue.append(j)
        return found

    def conjugation_maps(self) -> list[list[int]]:
        return [[self.idx[x ** g] for x in self.els] for g in self.G.generators]

    def conjugate_mask(self, mask: int, cmap: list[int]) -> int:
        out = 0
        for i in self.members(mask):
            out |= 1 << cmap[i]
        return out


def _lattice(G: PermGroup, cap: int) -> _Lattice:
    if G.order > cap:
        raise CapExceededError(f"group order {G.order} exceeds subgroup-lattice cap ({cap})")
    lat = G._cache.get("lattice")
    if lat is None:
        lat = _Lattice(G)
        lat.found = lat.subgroups()
        G._cache["lattice"] = lat
    return lat


def _sort_key(rec: SubgroupRecord):
    return (rec.order, tuple(sorted(rec.elements)))


def all_subgroups(G: PermGroup, cap: int = LATTICE_CAP) -> list[SubgroupRecord]:
    lat = _lattice(G, cap)
    full = (1 << len(lat.els)) - 1
    maximal = set(_maximal_masks(lat))
    cmaps = lat.conjugation_maps()
    out = []
    for mask, gens in lat.found.items():
        normal = all(lat.conjugate_mask(mask, m) == mask for m in cmaps)
        out.append(lat.record(mask, gens, is_maximal=mask in maximal and mask != full, is_normal=normal))
    out.sort(key=_sort_key)
    return out


def _maximal_masks(lat: _Lattice) -> list[int]:
    full = (1 << len(lat.els)) - 1
    proper = [m for m in lat.found if m != full]
    return [m for m in proper if not any(o != m and o & m == m for o in proper)]


def maximal_subgroup_classes(G: PermGroup, cap: int = LATTICE_CAP) -> list[tuple[SubgroupRecord, int]]:
    """One representative per conjugacy class of maximal subgroups, with the class size.

    Ordered by decreasing order; within an order, by the sorted element list of
    the representative, which is itself the least member of its class.
    """
    lat = _lattice(G, cap)
    cmaps = lat.conjugation_maps()
    pending = set(_maximal_masks(lat))
    out = []
    while pending:
        start = pending.pop()
        orbit = {start}
        frontier = [start]
        while frontier:
            nxt = []
            for m in frontier:
                for cm in cmaps:
                    c = lat.conjugate_mask(m, cm)
                    if c not in orbit:
                        orbit.add(c)
                        nxt.append(c)
            frontier = nxt
        pending -= orbit
        recs = [lat.record(m, lat.found[m], is_maximal=True, is_normal=len(orbit) == 1) for m in orbit]
        out.append((min(recs, key=_sort_key), len(orbit)))
    out.sort(key=lambda rc: (-rc[0].order, _sort_key(rc[0])))
    return out


def maximal_subgroups(G: PermGroup, cap: int = LATTICE_CAP) -> list[SubgroupRecord]:
    return [rec for rec, _ in maximal_subgroup_classes(G, cap)]
