import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import all_set_types, mixed_cycle_exists, ordered_partitions, refine as oracle_refine
from tropmat.comparability import (
    CycleWitness,
    comparability_graph,
    find_cycle,
    is_acyclic,
    is_refinement,
    refinement_witness,
)
from tropmat.errors import NotSubset, ParameterMismatch
from tropmat.ndtype import DisjointSet, NdType, OrderedPartition, leq, make_type, parse_type, refine

SIX_A = parse_type("(123,1,3,4,56)", 6)
SIX_B = parse_type("(123,16,34,456,56)", 6)


def _sets(A):
    return tuple(frozenset(e) for e in A.entries)


def test_equal_types_give_only_undirected_edges():
    A = parse_type("(12,23,123)", 3)
    G = comparability_graph(A, A)
    assert not G.directed
    assert set(G.undirected) == {(1, 2), (2, 3), (1, 3)}
    # one per unordered pair per position: {1,2} from positions 1 and 3
    assert G.undirected[(1, 2)] == 2
    assert is_acyclic(G) == (True, None)


def test_three_cycle():
    G = comparability_graph(parse_type("(12,23,13)", 3), parse_type("(1,2,3)", 3))
    assert not G.undirected
    assert set(G.directed) == {(2, 1), (3, 2), (1, 3)}
    ok, cyc = is_acyclic(G)
    assert not ok
    assert str(cyc) == "1->3->2->1"
    assert cyc.replays_on(G)


def test_mixed_cycle_through_undirected_edge():
    G = comparability_graph(parse_type("(12,12)", 2), parse_type("(12,1)", 2))
    assert G.has_undirected(1, 2) and G.has_directed(2, 1)
    ok, cyc = is_acyclic(G)
    assert not ok and cyc.replays_on(G)
    kinds = {k for _, _, k in cyc.steps}
    assert kinds == {"undirected", "directed"}


def test_six_letter_example_graph_and_witness():
    G = comparability_graph(SIX_A, SIX_B)
    ds = DisjointSet(7)
    for j, k in G.undirected:
        ds.union(j, k)
    classes = {frozenset(x for x in range(1, 7) if ds.find(x) == ds.find(r)) for r in range(1, 7)}
    assert classes == {frozenset({1, 2, 3}), frozenset({4}), frozenset({5, 6})}
    assert is_acyclic(G)[0]
    P = refinement_witness(SIX_A, SIX_B)
    assert P == OrderedPartition.from_sets(6, [{1, 2, 3}, {4}, {5, 6}])
    assert str(P) == "123,4,56"
    assert refine(SIX_B, P) == SIX_A


def test_six_letter_example_witness_is_unique():
    hits = [P for P in ordered_partitions(range(1, 7)) if oracle_refine(_sets(SIX_B), P) == _sets(SIX_A)]
    assert hits == [(frozenset({1, 2, 3}), frozenset({4}), frozenset({5, 6}))]


def test_witness_for_equal_types_is_single_part():
    A = parse_type("(12,23)", 3)
    assert refinement_witness(A, A) == OrderedPartition.from_sets(3, [{1, 2, 3}])
    B = parse_type("(12,12)", 3)
    # letter 3 is unused: it goes in a final extra part
    assert refinement_witness(B, B) == OrderedPartition.from_sets(3, [{1, 2}, {3}])


def test_two_cycle_witness():
    res = refinement_witness(parse_type("(1,2)", 2), parse_type("(12,12)", 2))
    assert isinstance(res, CycleWitness)
    assert set(res.steps) == {(1, 2, "directed"), (2, 1, "directed")}


def test_witness_requires_subset():
    with pytest.raises(NotSubset):
        refinement_witness(parse_type("(12,2)", 2), parse_type("(1,2)", 2))
    assert not is_refinement(parse_type("(12,2)", 2), parse_type("(1,2)", 2))


def test_parameter_mismatch():
    with pytest.raises(ParameterMismatch):
        comparability_graph(parse_type("(1,2)", 2), parse_type("(1,2)", 3))


def test_multiplicity_bookkeeping():
    G = comparability_graph(parse_type("(12,12,1)", 2), parse_type("(1,1,1)", 2))
    assert G.directed[(2, 1)] == 2
    assert G.undirected == {}
    assert "2 -> 1\n2 -> 1" in G.to_mixed_text()
    assert G.to_dot().count("2 -> 1;") == 2


def _check_pair(A, B, parts):
    brute = any(oracle_refine(_sets(B), P) == _sets(A) for P in parts)
    res = refinement_witness(A, B)
    acyc, cyc = is_acyclic(comparability_graph(A, B))
    if isinstance(res, OrderedPartition):
        assert refine(B, res) == A
    else:
        assert res.replays_on(comparability_graph(A, B))
    assert isinstance(res, OrderedPartition) == brute == acyc
    if not acyc:
        assert cyc.replays_on(comparability_graph(A, B))


@pytest.mark.parametrize("n, d", [(2, 3), (2, 4), (3, 3)])
def test_three_way_agreement_exhaustive(n, d):
    parts = ordered_partitions(range(1, d + 1))
    types = [make_type(n, d, s) for s in all_set_types(n, d)]
    for B in types:
        for A in types:
            if leq(A, B):
                _check_pair(A, B, parts)


@pytest.mark.parametrize("n, d", [(2, 3), (3, 3)])
def test_cycle_detection_matches_reachability_oracle(n, d):
    types = [make_type(n, d, s) for s in all_set_types(n, d)]
    rng = random.Random(11)
    pairs = [(A, B) for A in types for B in types]
    if len(pairs) > 40000:
        pairs = rng.sample(pairs, 40000)
    for A, B in pairs:
        G = comparability_graph(A, B)
        cyc = find_cycle(G)
        assert (cyc is None) == (not mixed_cycle_exists(_sets(A), _sets(B)))
        if cyc is not None:
            assert cyc.replays_on(G)


def test_reversal_symmetry_exhaustive():
    types = [make_type(2, 3, s) for s in all_set_types(2, 3)]
    for A in types:
        for B in types:
            G = comparability_graph(A, B)
            assert G.reversed() == comparability_graph(B, A)
            assert is_acyclic(G)[0] == is_acyclic(comparability_graph(B, A))[0]


pair_strategy = st.integers(2, 5).flatmap(
    lambda d: st.integers(1, 4).flatmap(
        lambda n: st.tuples(
            st.lists(st.integers(1, (1 << d) - 1), min_size=n, max_size=n),
            st.lists(st.integers(0, (1 << d) - 1), min_size=n, max_size=n),
        ).map(lambda t: (NdType(d, tuple(t[0])), NdType(d, tuple(a | b for a, b in zip(t[0], t[1])))))
    )
)


@settings(max_examples=400, deadline=None)
@given(pair_strategy)
def test_witness_sound_random(pair):
    A, B = pair
    res = refinement_witness(A, B)
    G = comparability_graph(A, B)
    if isinstance(res, OrderedPartition):
        assert refine(B, res) == A
        assert find_cycle(G) is None
    else:
        assert res.replays_on(G)
        assert mixed_cycle_exists(_sets(A), _sets(B))
