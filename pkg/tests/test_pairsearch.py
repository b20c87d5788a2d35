import pytest

from hatlab.fpgroups import amalgam_by_name
from hatlab.pairsearch import (
    candidate_stabilizers,
    conjugacy_class_representatives,
    maximal_half_arc_pairs,
    realize_amalgam,
    search_amalgam,
    verify_pair_result,
)


@pytest.fixture(scope="module")
def a4_realized():
    return realize_amalgam(amalgam_by_name("A4s"))


def test_candidate_stabilizers_a4(a4_realized):
    cands = candidate_stabilizers(a4_realized)
    assert len(cands) == 3
    for X in cands:
        assert X.order() == 2
        # each acts as a double transposition on the 4 cosets
        img = a4_realized.delta.space.action_of(X.gens[0])
        assert img.cycle_type() == (2, 2)
    reps = conjugacy_class_representatives(a4_realized.Hu, cands)
    assert len(reps) == 1


def test_trivial_subgroup_never_a_candidate(a4_realized):
    # the trivial subgroup fixes all four cosets: not two 2-orbits
    cands = candidate_stabilizers(a4_realized)
    assert all(X.order() > 1 for X in cands)


def test_core_free_filter(a4_realized):
    # every candidate is core-free by construction
    from hatlab.cosets import core

    for X in candidate_stabilizers(a4_realized):
        assert core(a4_realized.Hu, X).order() == 1


def test_a4_search_finds_two_results(a4_realized):
    out = maximal_half_arc_pairs(a4_realized)
    assert out.complete
    assert len(out.results) == 2
    for res in out.results:
        assert res.quadruple == ("S5", "F5", "A4", "C2")
        assert res.n == 6
        res.verify_invariants(full=True)


def test_a4_search_deterministic():
    out1 = search_amalgam("A4s")
    out2 = search_amalgam("A4s")
    key = lambda out: [(r.n, r.h.key(), r.m.key(), r.quadruple) for r in out.results]
    assert key(out1) == key(out2)


def test_verify_pair_result_builds_graph():
    out = search_amalgam("A4s")
    rep = verify_pair_result(out.results[0])
    assert rep["graphChecked"]
    assert rep["vertices"] == 10
    assert rep["valency"] == 4
    assert rep["H_sDegree"] == 2
    assert rep["M_halfArcTransitive"] is True
    assert rep["M_vertexStabilizerOrder"] == 2
    assert rep["arcOrbitEquivalence"] is True
    # the quotient graph is the complete bipartite minus a matching
    from hatlab.cosets import double_coset
    from hatlab.graphauto import is_isomorphic
    from hatlab.graphs import complete_bipartite_minus_matching, coset_graph

    res = out.results[0]
    D = double_coset(res.Hu_image, res.h, res.Hu_image)
    graph, _ = coset_graph(res.H, res.Hu_image, D)
    assert is_isomorphic(graph, complete_bipartite_minus_matching(5)) is not None


def test_deep_gate():
    out = search_amalgam("S3xS4", deep=False)
    assert not out.complete
    assert out.results == []


def test_s4_amalgam_is_empty():
    out = search_amalgam("S4")
    assert out.complete
    assert out.results == []
