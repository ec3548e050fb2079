from __future__ import annotations

import random

import pytest

from diagcover.diagonal import WElement, WGroup, build_w, is_diagonal_primitive
from diagcover.group import CapExceededError
from diagcover.perm import Permutation


@pytest.fixture(scope="module")
def w1(aut_a5):
    return WGroup(aut_a5, 1)


@pytest.fixture(scope="module")
def w2():
    from diagcover.catalog import cached_automorphism_action

    return WGroup(cached_automorphism_action("S3"), 2)


def test_sizes(w1, w2):
    assert w1.omega_size == 60 == len(w1.omega)
    assert w1.predicted_order == 14400
    assert w2.omega_size == 36
    assert w2.predicted_order == 6 ** 3 * 1 * 6


def test_act_phi_identity_and_inner(w1, aut_a5):
    e = aut_a5.carrier.identity
    x = Permutation.from_cycles([(0, 1, 2)], 5)
    assert w1.act_phi((x,), e) == (x,)
    z = Permutation.from_cycles([(0, 1), (2, 3)], 5)
    assert w1.act_phi((x,), aut_a5.inner(z)) == (x ** z,)


def test_act_base_formula(w1):
    rng = random.Random(3)
    for _ in range(50):
        x, a, b = (rng.choice(w1.aut.elements) for _ in range(3))
        assert w1.act_base((x,), (a, b)) == (~a * x * b,)


def test_act_sigma_swap(w1):
    x = Permutation.from_cycles([(0, 1, 2, 3, 4)], 5)
    assert w1.act_sigma((x,), Permutation([1, 0])) == (~x,)
    assert w1.act_sigma((x,), Permutation([0, 1])) == (x,)


def test_sigma_fixing_zero_is_pure_permutation(w2):
    a, b = w2.aut.elements[2], w2.aut.elements[4]
    assert w2.act_sigma((a, b), Permutation([0, 2, 1])) == (b, a)


def test_constant_base_is_inner_automorphism(w1):
    for t in w1.aut.elements:
        for pt in w1.omega[:12]:
            assert w1.act_base(pt, (t, t)) == w1.act_phi(pt, w1.aut.inner(t))


def test_well_defined_on_cosets(w2):
    # shifting the full tuple by a diagonal element d gives the same coset
    rng = random.Random(5)
    for _ in range(100):
        full = [rng.choice(w2.aut.elements) for _ in range(3)]
        d = rng.choice(w2.aut.elements)
        assert w2._normalize(full) == w2._normalize([d * x for x in full])


@pytest.mark.parametrize("which", ["w1", "w2"])
def test_homomorphism_and_inverse(which, request):
    wg = request.getfixturevalue(which)
    rng = random.Random(11)
    e = wg.identity_element()
    for _ in range(300):
        v, w, u = wg.random_element(rng), wg.random_element(rng), wg.random_element(rng)
        x = wg.random_point(rng)
        assert wg.act_w(x, wg.w_compose(v, w)) == wg.act_w(wg.act_w(x, v), w)
        assert wg.w_compose(wg.w_compose(v, w), u) == wg.w_compose(v, wg.w_compose(w, u))
        assert wg.w_compose(v, wg.w_inverse(v)) == e
        assert wg.w_compose(v, e) == v == wg.w_compose(e, v)
        assert v.base[0] == wg.one


def test_canonical_form(w1):
    t = w1.aut.elements[7]
    c = w1.canonical((t, t), w1.aut.carrier.identity, Permutation([0, 1]))
    assert c.base == (w1.one, w1.one)
    assert c.phi == w1.aut.inner(t)


def test_transitive(w1):
    rng = random.Random(1)
    seen = {w1.act_w(w1.base_point, w1.random_element(rng)) for _ in range(2000)}
    assert len(seen) == 60


def test_build_a5(w1):
    W, stab = w1.build()
    assert W.degree == 60 and W.order == 14400
    assert stab.order == 240
    # faithful: only the identity fixes every point
    assert sum(1 for g in W.elements if g.is_identity()) == 1
    assert w1.as_permutation(w1.identity_element()).is_identity()


def test_n_orbit_and_stabilizer(w1):
    fam = w1.generators()
    from diagcover.group import PermGroup, orbit

    gens = [w1.as_permutation(w) for w in fam["N"]]
    o = w1.point_index(w1.base_point)
    assert len(orbit(gens, o)) == 60
    N = PermGroup(60, gens)
    N.materialize()
    assert N.order == 3600
    assert sum(1 for g in N.elements if g[o] == o) == 60


def test_build_s3_ell2(w2):
    W, stab = w2.build()
    assert W.order == w2.predicted_order == 1296
    assert stab.order == 6 * 6


def test_build_cap(w1):
    with pytest.raises(CapExceededError):
        w1.build(cap=10)


def test_build_w_wrapper(aut_a5):
    wg, W, stab = build_w(aut_a5, 1)
    assert W.order == wg.predicted_order


def test_projections(w1):
    rng = random.Random(2)
    for _ in range(50):
        w = w1.random_element(rng)
        label, sigma = w1.projections(w)
        assert sigma == w.sigma
        assert (label == w1.aut.outer_label(w1.aut.carrier.identity)) == w1.aut.is_inner(w.phi)


def test_kernel_of_sigma_projection(w1):
    # sigma-part trivial exactly on N.Aut(T): these fix the partition into factors
    rng = random.Random(8)
    for _ in range(50):
        v = w1.random_element(rng)
        w = w1.random_element(rng)
        assert w1.w_compose(v, w).sigma == v.sigma * w.sigma


def test_primitivity_rule():
    e = Permutation.identity(4)
    mk = lambda s: WElement((), e, s)
    assert is_diagonal_primitive(1, [])
    assert is_diagonal_primitive(4, [WElement((), e, Permutation.from_cycles([(0, 1, 2, 3, 4)], 5))])
    assert not is_diagonal_primitive(3, [mk(Permutation.from_cycles([(0, 1), (2, 3)], 4)),
                                         mk(Permutation.from_cycles([(0, 2), (1, 3)], 4))])
    assert is_diagonal_primitive(3, [mk(Permutation.from_cycles([(0, 1)], 4)),
                                     mk(Permutation.from_cycles([(0, 1, 2, 3)], 4))])


def test_ell_must_be_positive(aut_a5):
    with pytest.raises(ValueError):
        WGroup(aut_a5, 0)
