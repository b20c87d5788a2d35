import math
import random

import pytest

from hatlab.group import PermutationGroup, closure_elements
from hatlab.perm import Permutation

from oracles import closure_order


def g(s, n=None):
    return Permutation.parse(s, n)


def test_chain_order_small_derived_from_closure():
    gens = [g("(0 1 2)", 4), g("(1 2 3)", 4)]
    G = PermutationGroup(gens)
    assert closure_order(gens, 4) == 12
    assert G.order() == 12


def test_chain_order_s5():
    gens = [g("(0 1 2 3 4)"), g("(0 1)", 5)]
    assert closure_order(gens, 5) == 120
    assert PermutationGroup(gens).order() == 120


def test_trivial_group_on_5_points():
    G = PermutationGroup([], degree=5)
    assert G.order() == 1
    assert G.is_trivial()
    assert list(G.orbit(2).points) == [2]


def test_membership():
    G = PermutationGroup([g("(0 1 2 3 4)"), g("(0 1)", 5)])
    assert g("(0 4)(1 3)", 5) in G
    A = PermutationGroup([g("(0 1 2)", 4), g("(1 2 3)", 4)])
    assert g("(0 1)", 4) not in A
    assert g("(0 1)(2 3)", 4) in A


def test_elements_enumeration_matches_closure():
    gens = [g("(0 1 2)", 4), g("(0 1)(2 3)", 4)]
    G = PermutationGroup(gens)
    elems = {p.key() for p in G.elements()}
    assert elems == set(closure_elements(gens, 4).keys())


def test_orbit_cyclic():
    G = PermutationGroup([g("(0 1 2 3)")])
    orb = G.orbit(0)
    assert sorted(orb.points) == [0, 1, 2, 3]
    for a in orb.points:
        t = orb.transversal(a)
        assert t(0) == a
        assert t in G


def test_orbit_of_identity_group():
    G = PermutationGroup([], degree=5)
    assert list(G.orbit(2).points) == [2]


def test_transitivity_profile_cycle():
    G = PermutationGroup([g("(0 1 2 3 4)")])
    prof = G.transitivity_profile()
    assert prof == {"transitive": True, "semiregular": True, "regular": True}


def test_transitivity_profile_s3():
    G = PermutationGroup([g("(0 1 2)"), g("(0 1)", 3)])
    prof = G.transitivity_profile()
    assert prof["transitive"] is True
    assert prof["semiregular"] is False
    assert prof["regular"] is False


def test_point_stabilizer_s4():
    G = PermutationGroup([g("(0 1 2 3)"), g("(0 1)", 4)])
    S = G.point_stabilizer(3)
    assert S.order() == 6
    assert all(p(3) == 3 for p in S.gens)
    # orbit-stabilizer
    assert len(G.orbit(3)) * S.order() == G.order()


def test_point_stabilizer_regular_group_is_trivial():
    G = PermutationGroup([g("(0 1 2 3 4)")])
    assert G.point_stabilizer(2).order() == 1


def test_big_alternating_order():
    G = PermutationGroup([g("(0 1 2)", 72), Permutation.from_cycles(72, [tuple(range(1, 72))])])
    assert G.order() == math.factorial(72) // 2


def test_big_alternating_point_stabilizer():
    G = PermutationGroup([g("(0 1 2)", 72), Permutation.from_cycles(72, [tuple(range(1, 72))])])
    S = G.point_stabilizer(0)
    assert S.order() == math.factorial(71) // 2
    assert all(p(0) == 0 for p in S.gens)


def test_known_order_build():
    gens = [g("(0 1 2 3 4)"), g("(0 1)", 5)]
    G = PermutationGroup(gens, order=120)
    assert G.order() == 120
    assert g("(2 3 4)", 5) in G
    # an unreachable claimed order is detected
    with pytest.raises(ValueError):
        PermutationGroup(gens, order=240).order()


def test_subgroup_membership_verified():
    G = PermutationGroup([g("(0 1 2)", 4), g("(1 2 3)", 4)])
    with pytest.raises(ValueError):
        G.subgroup([g("(0 1)", 4)])
    S = G.subgroup([g("(0 1)(2 3)", 4)])
    assert S.order() == 2
    assert S.parent is G


def test_orbit_stabilizer_randomized():
    rng = random.Random(7)
    for _ in range(20):
        n = rng.randrange(4, 9)
        gens = []
        for _ in range(2):
            imgs = list(range(n))
            rng.shuffle(imgs)
            gens.append(Permutation(imgs))
        G = PermutationGroup(gens)
        assert G.order() == closure_order(gens, n)
        v = rng.randrange(n)
        assert len(G.orbit(v)) * G.point_stabilizer(v).order() == G.order()


def test_random_element_is_member():
    G = PermutationGroup([g("(0 1 2 3 4)"), g("(0 1)", 5)])
    rng = random.Random(3)
    for _ in range(10):
        assert G.random_element(rng) in G
