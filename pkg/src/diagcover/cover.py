"""Normal coverings, the normal covering number and the basic-group test."""

from __future__ import annotations

from dataclasses import dataclass, field

from .group import (
    LATTICE_CAP,
    PermGroup,
    SubgroupRecord,
    conjugacy_classes,
    conjugator_into,
    normal_subgroups,
    quotient,
)
from .lattice import maximal_subgroups
from .perm import Permutation


class CyclicGroupError(ValueError):
    def __init__(self, msg: str = "cyclic group: no normal covering exists"):
        super().__init__(msg)


@dataclass(frozen=True)
class Assignment:
    representative: Permutation
    component: int
    conjugator: Permutation


@dataclass
class CoverCertificate:
    """Per-class witnesses that ``components`` form a normal covering of ``group``.

    When the covering fails, ``uncovered`` lists the representatives of the
    classes meeting no component and ``ok`` is False.
    """

    group: PermGroup
    components: list[SubgroupRecord]
    assignments: list[Assignment]
    uncovered: list[Permutation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.uncovered

    def recheck(self) -> bool:
        table = conjugacy_classes(self.group)
        if len(self.assignments) + len(self.uncovered) != len(table):
            return False
        return all(a.representative ** a.conjugator in self.components[a.component]
                   for a in self.assignments)


@dataclass
class GammaResult:
    value: int
    witness: CoverCertificate


def _check_components(G: PermGroup, components: list[SubgroupRecord]) -> None:
    for i, H in enumerate(components):
        if not H.elements <= set(G.elements):
            raise ValueError(f"component {i} is not a subgroup of the group")
        if H.order == G.order:
            raise ValueError(f"component {i} is not proper")
        if G.order % H.order or any(a * b not in H.elements for a in H.generators for b in H.elements):
            raise ValueError(f"component {i} is not closed under multiplication")


def verify_normal_covering(G: PermGroup, components: list[SubgroupRecord]) -> CoverCertificate:
    """Assign every conjugacy class of G to a component it meets, with an explicit conjugator."""
    _check_components(G, components)
    table = conjugacy_classes(G)
    assignments = []
    uncovered = []
    for c in table:
        for i, H in enumerate(components):
            if c.members.isdisjoint(H.elements):
                continue
            z = conjugator_into(G, c.representative, H.elements)
            assignments.append(Assignment(c.representative, i, z))
            break
        else:
            uncovered.append(c.representative)
    return CoverCertificate(G, list(components), assignments, uncovered)


def class_coverage(G: PermGroup, H: SubgroupRecord) -> int:
    """Bitmask of the conjugacy classes of G that meet H."""
    table = conjugacy_classes(G)
    mask = 0
    for h in H.elements:
        mask |= 1 << table.class_of(h)
    return mask


def min_cover(masks: list[int], full: int, k: int) -> tuple[int, ...] | None:
    """Lexicographically least k-subset of ``masks`` whose union is ``full``."""
    n = len(masks)
    suffix = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1] | masks[i]

    def search(start: int, chosen: tuple[int, ...], covered: int):
        if covered == full:
            return chosen
        if len(chosen) == k or (covered | suffix[start]) != full:
            return None
        for i in range(start, n - (k - len(chosen)) + 1):
            if masks[i] | covered == covered:
                continue
            found = search(i + 1, chosen + (i,), covered | masks[i])
            if found is not None:
                return found
        return None

    return search(0, (), 0)


def gamma(G: PermGroup, cap: int = LATTICE_CAP) -> GammaResult:
    """Exact normal covering number, searched over classes of maximal subgroups.

    Candidates are ordered by decreasing order (ties by representative), and
    the search returns the lexicographically least minimal cover in that
    order, so the witness is deterministic.
    """
    if G.is_cyclic():
        raise CyclicGroupError()
    maximals = maximal_subgroups(G, cap)
    table = conjugacy_classes(G)
    full = (1 << len(table)) - 1
    masks = [class_coverage(G, M) for M in maximals]
    if any(m == full for m in masks):  # pragma: no cover - Jordan's theorem
        raise RuntimeError("a single proper subgroup covers the group")
    for k in range(2, len(maximals) + 1):
        chosen = min_cover(masks, full, k)
        if chosen is not None:
            cert = verify_normal_covering(G, [maximals[i] for i in chosen])
            if not cert.ok:  # pragma: no cover
                raise RuntimeError("cover search and verification disagree")
            return GammaResult(k, cert)
    raise RuntimeError("maximal subgroups fail to cover a noncyclic group")  # pragma: no cover


@dataclass
class QuotientEvidence:
    normal_subgroup: SubgroupRecord
    quotient_order: int
    quotient_gamma: int | None  # None: cyclic quotient, gamma is infinite

    @property
    def exceeds_two(self) -> bool:
        return self.quotient_gamma is None or self.quotient_gamma > 2


@dataclass
class BasicEvidence:
    gamma: int | None
    quotients: list[QuotientEvidence]
    reason: str = ""


def is_basic(G: PermGroup, cap: int = LATTICE_CAP) -> tuple[bool, BasicEvidence]:
    """gamma(G) == 2 and gamma(G/N) > 2 for every nontrivial proper normal N."""
    try:
        g = gamma(G, cap).value
    except CyclicGroupError:
        return False, BasicEvidence(None, [], "cyclic group: gamma undefined")
    if g != 2:
        return False, BasicEvidence(g, [], f"gamma = {g}")
    evidence = []
    for N in normal_subgroups(G):
        if N.order in (1, G.order):
            continue
        Q = quotient(G, N)
        try:
            qg = gamma(Q, cap).value
        except CyclicGroupError:
            qg = None
        evidence.append(QuotientEvidence(N, Q.order, qg))
    basic = all(q.exceeds_two for q in evidence)
    reason = "" if basic else "a proper quotient has gamma = 2"
    return basic, BasicEvidence(g, evidence, reason)
