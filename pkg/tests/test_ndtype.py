import itertools
import random

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import all_set_types, ordered_partitions, refine as oracle_refine, sets_of
from tropmat.errors import EmptyEntry, LengthMismatch, LimitExceeded, OutOfRange
from tropmat.ndtype import (
    EmptyPosition,
    NdType,
    OrderedPartition,
    arrangement_dim,
    is_bounded,
    is_forest,
    join,
    leq,
    make_type,
    meet,
    minkowski_dim,
    ordered_partitions as pkg_ordered_partitions,
    parse_type,
    refine,
    total_refinements,
    type_graph,
)


def T(text, d):
    return parse_type(text, d)


def from_sets(sets, d):
    return make_type(len(sets), d, sets)


# -- construction ---------------------------------------------------------


def test_make_type_six_letter_example():
    A = make_type(5, 6, [{1, 2, 3}, {1}, {3}, {4}, {5, 6}])
    assert A.n == 5 and A.d == 6
    assert str(A) == "(123,1,3,4,56)"
    assert A.entries[0] == frozenset({1, 2, 3})


def test_make_type_minimal():
    A = make_type(1, 1, [[1]])
    assert str(A) == "(1)"
    assert arrangement_dim(A) == 0 and minkowski_dim(A) == 0


@pytest.mark.parametrize(
    "n, d, entries, exc",
    [
        (2, 3, [{1, 2}, set()], EmptyEntry),
        (1, 3, [{4}], OutOfRange),
        (2, 3, [{1}], LengthMismatch),
        (1, 3, [{0}], OutOfRange),
    ],
)
def test_make_type_errors(n, d, entries, exc):
    with pytest.raises(exc):
        make_type(n, d, entries)


def test_canonical_storage_ignores_input_order():
    assert make_type(2, 3, [[3, 1], [2]]) == make_type(2, 3, [[1, 3], [2]])
    assert str(make_type(2, 3, [[3, 1], [2]])) == "(13,2)"


def test_text_roundtrip_large_d():
    A = make_type(3, 12, [{1, 12}, {4}, {10, 11}])
    assert str(A) == "(1.12,4,10.11)"
    assert parse_type(str(A), 12) == A


def test_parse_rejects_empty_entry():
    with pytest.raises(EmptyEntry):
        parse_type("(12,)", 3)


def test_sort_order_is_lexicographic():
    types = [T("(2,1)", 2), T("(1,12)", 2), T("(12,1)", 2), T("(1,1)", 2)]
    assert [str(t) for t in sorted(types)] == ["(1,1)", "(1,12)", "(12,1)", "(2,1)"]


# -- refinement -----------------------------------------------------------


def test_refine_six_letter_example():
    B = T("(123,16,34,456,56)", 6)
    P = OrderedPartition.from_sets(6, [{1, 2, 3}, {4}, {5, 6}])
    assert refine(B, P) == T("(123,1,3,4,56)", 6)


def test_refine_single_part_is_identity():
    A = T("(13,2,123)", 3)
    assert refine(A, OrderedPartition.from_sets(3, [{1, 2, 3}])) == A


def test_refine_derived_example():
    A = T("(12,12)", 2)
    assert refine(A, OrderedPartition.from_sets(2, [{2}, {1}])) == T("(2,2)", 2)
    # brute force: every ordered partition of {1,2}
    results = {oracle_refine(sets_of(A), P) for P in ordered_partitions([1, 2])}
    assert results == {(frozenset({1}),) * 2, (frozenset({2}),) * 2, (frozenset({1, 2}),) * 2}


def test_ordered_partition_counts():
    # ordered Bell numbers
    assert [sum(1 for _ in pkg_ordered_partitions(d)) for d in range(1, 6)] == [1, 3, 13, 75, 541]


def test_ordered_partition_cap():
    with pytest.raises(LimitExceeded):
        next(pkg_ordered_partitions(9))


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_refine_subset_and_idempotent_exhaustive(d):
    n = 2 if d < 4 else 1
    for sets in all_set_types(n, d):
        A = from_sets(sets, d)
        for P in pkg_ordered_partitions(d):
            R = refine(A, P)
            assert leq(R, A)
            assert refine(R, P) == R


# -- total refinements ----------------------------------------------------


def test_total_refinements_examples():
    assert total_refinements(T("(1,2)", 2)) == [T("(1,2)", 2)]
    assert total_refinements(T("(12,12)", 2)) == [T("(1,1)", 2), T("(2,2)", 2)]
    got = {str(t) for t in total_refinements(T("(12,23,13)", 3))}
    assert got == {"(1,2,1)", "(1,3,1)", "(1,3,3)", "(2,2,1)", "(2,2,3)", "(2,3,3)"}


@pytest.mark.parametrize("n, d", [(2, 3), (3, 3), (2, 4)])
def test_total_refinements_match_full_partition_enumeration(n, d):
    parts = ordered_partitions(range(1, d + 1))
    rng = random.Random(7)
    types = all_set_types(n, d)
    if len(types) > 400:
        types = rng.sample(types, 400)
    for sets in types:
        brute = {
            R for P in parts for R in [oracle_refine(sets, P)] if all(len(x) == 1 for x in R)
        }
        got = {sets_of(t) for t in total_refinements(from_sets(sets, d))}
        assert got == brute
        assert len(got) >= 1


def test_total_refinements_cap():
    A = make_type(1, 9, [{1, 9}])
    with pytest.raises(LimitExceeded):
        total_refinements(A)


# -- dimensions -----------------------------------------------------------


def _nx_components(A):
    G = nx.Graph()
    G.add_nodes_from(("N", i) for i in range(1, A.n + 1))
    G.add_nodes_from(("D", j) for j in range(1, A.d + 1))
    G.add_edges_from((("N", i), ("D", j)) for i, j in type_graph(A).edges)
    return G


def test_arrangement_dim_examples():
    assert arrangement_dim(T("(3,3,3)", 4)) == 3
    assert arrangement_dim(T("(123,1,3,4,56)", 6)) == 2
    assert arrangement_dim(T("(123,16,34,456,56)", 6)) == 0


def test_minkowski_dim_examples():
    assert minkowski_dim(T("(1,3,2,2)", 3)) == 0
    assert minkowski_dim(T("(12,23,13)", 3)) == 2
    assert minkowski_dim(T("(12,12)", 2)) == 1


def _affine_rank_of_vertices(A):
    pts = []
    for t in total_refinements(A):
        x = [0] * A.d
        for e in t.entries:
            (j,) = e
            x[j - 1] += 1
        pts.append(x)
    pts = np.array(pts)
    if len(pts) == 1:
        return 0
    return int(np.linalg.matrix_rank(pts[1:] - pts[0]))


@pytest.mark.parametrize("n, d", [(2, 3), (3, 3)])
def test_dimensions_exhaustive(n, d):
    for sets in all_set_types(n, d):
        A = from_sets(sets, d)
        G = _nx_components(A)
        assert arrangement_dim(A) == nx.number_connected_components(G) - 1
        assert arrangement_dim(A) + minkowski_dim(A) == d - 1
        assert (minkowski_dim(A) == 0) == A.is_total()
        assert minkowski_dim(A) == _affine_rank_of_vertices(A)
        assert is_forest(A) == nx.is_forest(G)


type_strategy = st.integers(1, 5).flatmap(
    lambda d: st.lists(st.integers(1, (1 << d) - 1), min_size=1, max_size=5).map(
        lambda ms: NdType(d, tuple(ms))
    )
)


@settings(max_examples=300, deadline=None)
@given(type_strategy)
def test_dimension_sum_random(A):
    assert arrangement_dim(A) + minkowski_dim(A) == A.d - 1
    assert 0 <= arrangement_dim(A) <= A.d - 1
    assert len(total_refinements(A)) >= 1


def test_type_graph_invariants():
    A = T("(123,16,34,456,56)", 6)
    g = type_graph(A)
    assert len(g.edges) == sum(len(e) for e in A.entries)
    assert all(g.degree_left(i) >= 1 for i in range(1, A.n + 1))


# -- boundedness and set operations ---------------------------------------


def test_is_bounded():
    assert is_bounded(T("(12,12)", 2))
    assert not is_bounded(T("(1,1)", 2))
    # union of (123,1,3,4,56) is all of 1..6
    assert is_bounded(T("(123,1,3,4,56)", 6))


def test_meet_join_leq():
    assert meet(T("(12,12)", 2), T("(12,1)", 2)) == T("(12,1)", 2)
    assert meet(T("(1,1)", 2), T("(2,2)", 2)) == EmptyPosition(frozenset({1, 2}))
    assert join(T("(1,1)", 2), T("(2,2)", 2)) == T("(12,12)", 2)
    assert leq(T("(1,2)", 2), T("(12,12)", 2))
    assert not leq(T("(12,2)", 2), T("(1,12)", 2))


def test_degenerate_d1():
    A = T("(1,1,1)", 1)
    assert total_refinements(A) == [A]
    assert arrangement_dim(A) == 0 == minkowski_dim(A)
    assert is_bounded(A)
    assert [refine(A, P) for P in pkg_ordered_partitions(1)] == [A]


def test_all_types_count():
    from tropmat.ndtype import all_types

    assert sum(1 for _ in all_types(2, 3)) == 49
    sizes = [sum(len(e) for e in A.entries) for A in all_types(2, 3)]
    assert sizes == sorted(sizes)


def test_refine_rejects_mismatched_d():
    from tropmat.errors import ParameterMismatch

    with pytest.raises(ParameterMismatch):
        refine(T("(12)", 2), OrderedPartition.from_sets(3, [{1, 2, 3}]))


def test_hashable_and_immutable():
    A = T("(12,3)", 3)
    with pytest.raises(Exception):
        A.d = 4
    assert len({A, T("(21,3)", 3)}) == 1
    assert list(itertools.islice(iter(A.entries), 1)) == [frozenset({1, 2})]
