from __future__ import annotations

import random

import pytest

from diagcover.catalog import make
from diagcover.group import centralizer, subgroup, sylow
from diagcover.lemmas import (
    centralizer_tower_check,
    cyclic_regular_check,
    exponent_gcd_bijective,
    fixed_cell_contradiction_probe,
    twist_sweep,
    power_twist_map,
    power_twist_report,
    recursion_replay,
    run_named,
    twist_map_report,
    two_cycle_replay,
)
from diagcover.perm import Permutation, order_of


def outer_involution(aut):
    return next(phi for phi in aut.carrier.elements if not aut.is_inner(phi) and order_of(phi) == 2)


def test_twist_identity_is_constant(aut_a5):
    rep = twist_map_report(aut_a5, aut_a5.carrier.identity)
    assert rep.image_size == 1 and rep.fixed_point_count == 60 and not rep.is_bijective


def test_twist_inner_counts_centralizer(aut_a5):
    T = aut_a5.base_group
    for t in aut_a5.elements[::5]:
        rep = twist_map_report(aut_a5, aut_a5.inner(t))
        assert rep.fixed_point_count == centralizer(T, t).order


def test_twist_sweep_a5(aut_a5):
    reps = twist_sweep(aut_a5)
    assert len(reps) == 120
    for r in reps:
        assert not r.is_bijective and r.fixed_point_count >= 2
        assert r.is_bijective == (r.image_size == r.domain_size)
        # the map y -> y^-1 y^phi is constant on left cosets of the centralizer
        assert r.image_size * r.fixed_point_count == r.domain_size


def test_twist_rejects_foreign_phi(aut_a5):
    with pytest.raises(ValueError):
        twist_map_report(aut_a5, Permutation(list(range(1, 60)) + [0]))


def test_fixed_point_free_exists_for_abelian():
    # C5 has fixed-point-free automorphisms, so the twist map can be bijective there
    from diagcover.catalog import automorphism_action

    C5 = make("C5")
    C5.materialize()
    aut = automorphism_action(C5)
    assert any(r.is_bijective for r in twist_sweep(aut))


def test_power_twist(aut_a5):
    phi = outer_involution(aut_a5)
    assert power_twist_report(aut_a5, phi, 1).is_bijective
    m = power_twist_map(aut_a5, aut_a5.carrier.identity, 7)
    assert all(m[y] == y ** 7 for y in aut_a5.elements)
    for a in (2, 3, 5, 7, 30, 31):
        assert power_twist_report(aut_a5, aut_a5.carrier.identity, a).is_bijective == exponent_gcd_bijective(aut_a5, a)
    assert power_twist_report(aut_a5, phi, 7).domain_size == 60


def test_probe_matches_twist(aut_a5):
    phi = outer_involution(aut_a5)
    rep = fixed_cell_contradiction_probe(aut_a5, phi, 2)
    assert rep == twist_map_report(aut_a5, phi ** 2)
    assert rep.image_size == 1  # phi^2 is trivial
    for phi in aut_a5.carrier.elements[::9]:
        assert not fixed_cell_contradiction_probe(aut_a5, phi, 3).is_bijective


def test_tower_q32():
    rep = centralizer_tower_check(32, 5)
    assert rep.group_order == 163680 and rep.t_order == 32736 and rep.phi_order == 5
    assert rep.holds
    lv = rep.levels[0]
    assert lv.exponent == 1 and lv.centralizer == 6 and lv.centralizer_p == 32736


def test_tower_rejects_bad_hypotheses():
    with pytest.raises(ValueError, match="divides"):
        centralizer_tower_check(32, 3)
    with pytest.raises(ValueError):
        centralizer_tower_check(7, 5)


@pytest.mark.parametrize("spec,cycle,count", [
    ("S4", [(0, 1, 2, 3)], 6),
    ("A5", [(0, 1, 2, 3, 4)], 24),
    ("S5", [(0, 1, 2, 3, 4)], 24),
    ("S6", [(0, 1, 2, 3, 4, 5)], 120),
    ("AGL1:5", [(0, 1, 2, 3, 4)], 4),
    ("AGL1:7", [(0, 1, 2, 3, 4, 5, 6)], 6),
])
def test_cyclic_regular(spec, cycle, count):
    L = make(spec)
    L.materialize()
    C = subgroup(L, [Permutation.from_cycles(cycle, L.degree)])
    rep = cyclic_regular_check(L, C)
    assert rep.ok and rep.n_cycles == count == rep.conjugated
    for x, z in rep.conjugators.items():
        assert z in L and x ** z in C


def test_cyclic_regular_sylow():
    L = make("AGL1:7")
    L.materialize()
    assert cyclic_regular_check(L, sylow(L, 7)).ok


def test_cyclic_regular_dihedral():
    # the two 6-cycles of D6 are already in the rotation subgroup
    L = make("D6")
    L.materialize()
    C = subgroup(L, [Permutation.from_cycles([(0, 1, 2, 3, 4, 5)], 6)])
    assert cyclic_regular_check(L, C).ok


def test_cyclic_regular_input_checks():
    L = make("S4")
    L.materialize()
    with pytest.raises(ValueError, match="regular"):
        cyclic_regular_check(L, subgroup(L, [Permutation.from_cycles([(0, 1, 2)], 4)]))
    with pytest.raises(ValueError, match="cyclic"):
        cyclic_regular_check(L, subgroup(L, [Permutation.from_cycles([(0, 1), (2, 3)], 4),
                                             Permutation.from_cycles([(0, 2), (1, 3)], 4)]))


def test_recursion_trivial(aut_a5):
    e = aut_a5.base_group.identity
    rep = recursion_replay(aut_a5, aut_a5.carrier.identity, 4, e)
    assert all(t == e for t in rep.t_sequence) and rep.t_value == e


def test_recursion_a2_identity_phi(aut_a5):
    for t in aut_a5.elements[::7]:
        rep = recursion_replay(aut_a5, aut_a5.carrier.identity, 2, t)
        assert rep.t_sequence == [t]
        assert rep.t_value == ~t * ~t


def test_recursion_random(aut_a5):
    rng = random.Random(4)
    for _ in range(200):
        phi = rng.choice(aut_a5.carrier.elements)
        a = rng.randint(2, 7)
        t = rng.choice(aut_a5.elements)
        rep = recursion_replay(aut_a5, phi, a, t)
        assert rep.k_form and rep.closed_form_ok
        assert len(rep.t_sequence) == a - 1


def test_two_cycle_replay(aut_a5):
    rng = random.Random(9)
    for _ in range(200):
        phi = rng.choice(aut_a5.carrier.elements)
        b = rng.randint(2, 6)
        ta, te = rng.choice(aut_a5.elements), rng.choice(aut_a5.elements)
        rep = two_cycle_replay(aut_a5, phi, b, ta, te)
        assert rep.closed_form_ok
        assert rep.cycle_conditions_hold == rep.closing_identity
        if power_twist_report(aut_a5, phi, b).is_bijective:
            assert rep.closing_identity == (ta == te)


def test_run_named(aut_a5):
    assert run_named("twist", {"T": "A5"})["holds"]
    assert run_named("cyclic-regular", {"L": "S4"})["holds"]
    assert run_named("recursion", {"T": "A5", "phi": 5, "a": 3, "t": 2})["holds"]
    assert run_named("probe", {"T": "A5", "phi": 3, "a": 2})["holds"]
    with pytest.raises(ValueError):
        run_named("nonsense", {"T": "A5"})
    with pytest.raises(ValueError):
        run_named("twist", {"T": "A5", "phi": 500})
