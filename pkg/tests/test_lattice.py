from __future__ import annotations

import pytest

from diagcover.catalog import make
from diagcover.group import CapExceededError
from diagcover.lattice import all_subgroups, maximal_subgroup_classes, maximal_subgroups


# Subgroup counts of small groups, from standard tables.
@pytest.mark.parametrize("spec,count", [("S3", 6), ("V4", 5), ("D4", 10), ("S4", 30), ("A5", 59), ("C12", 6)])
def test_subgroup_counts(spec, count):
    G = make(spec)
    G.materialize()
    subs = all_subgroups(G)
    assert len(subs) == count
    assert len({H.elements for H in subs}) == count
    for H in subs:
        assert all(x * y in H.elements for x in H.elements for y in H.generators)


@pytest.mark.parametrize("spec,classes", [
    ("S3", [(3, 1), (2, 3)]),
    ("S4", [(12, 1), (8, 3), (6, 4)]),
    ("A5", [(12, 5), (10, 6), (6, 10)]),
    ("V4", [(2, 1), (2, 1), (2, 1)]),
    ("AGL1:5", [(10, 1), (4, 5)]),
])
def test_maximal_classes(spec, classes):
    G = make(spec)
    G.materialize()
    found = maximal_subgroup_classes(G)
    assert [(H.order, n) for H, n in found] == classes
    reps = maximal_subgroups(G)
    assert [H.order for H in reps] == [o for o, _ in classes]
    assert all(H.is_maximal for H in reps)
    assert sum(H.is_maximal for H in all_subgroups(G)) == sum(n for _, n in classes)


def test_maximality_flags():
    G = make("S4")
    G.materialize()
    subs = all_subgroups(G)
    maxs = [H for H in subs if H.is_maximal]
    for H in maxs:
        assert not any(H.elements < K.elements < frozenset(G.elements) for K in subs)


def test_lattice_cap():
    G = make("S5")
    G.materialize()
    with pytest.raises(CapExceededError):
        all_subgroups(G, cap=100)


@pytest.mark.parametrize("spec", ["S3", "V4", "D4", "S4", "A5", "AGL1:5"])
def test_lattice_matches_brute_force(spec):
    from oracles import every_subgroup

    G = make(spec)
    G.materialize()
    assert {H.elements for H in all_subgroups(G)} == every_subgroup(G.elements, G.degree)
