import random

import pytest

from oracles import generic_rows, ordered_partitions, random_rows, refine as oracle_refine, sets_of
from tropmat.duality import (
    build_dual,
    check_arrangement_axioms,
    check_slice_structure,
    dual_complex,
    geometrically_bounded,
    pseudohyperplane,
    slice_deletion_compatible,
    slice_members,
)
from tropmat.errors import InvalidParameters, InvalidSubdivision, UnsupportedDimension
from tropmat.mixsd import MixedSubdivision, deletion_union_violations, is_fine, mixsd_deletion, tom_to_mixsd
from tropmat.ndtype import arrangement_dim, is_bounded, minkowski_dim, parse_type
from tropmat.realize import WeightMatrix, realizable_tom


def T(text, d):
    return parse_type(text, d)


def S_of(n, d, *maximal):
    return MixedSubdivision.from_maximal_cells(n, d, [T(m, d) for m in maximal])


TRIV22 = S_of(2, 2, "(12,12)")
FINE22 = S_of(2, 2, "(12,1)", "(2,12)")
TRIV13 = S_of(1, 3, "(123)")


def _subdivision(rows):
    return tom_to_mixsd(realizable_tom(WeightMatrix.from_rows(rows)))


def _oracle_faces(cells, d):
    """Face relation by brute force over all ordered partitions of [d]."""
    parts = ordered_partitions(range(1, d + 1))
    sets = [sets_of(C) for C in cells]
    out = {}
    for k, C in enumerate(sets):
        out[k] = frozenset(
            m for m, D in enumerate(sets) if m != k and any(oracle_refine(D, P) == C for P in parts)
        )
    return out


def test_dual_examples():
    D = dual_complex(TRIV13)
    assert [(str(c.cell), c.dim) for c in D.by_dim(0)] == [("(123)", 0)]
    D = dual_complex(TRIV22)
    assert [str(c.cell) for c in D.by_dim(0)] == ["(12,12)"]
    assert [(str(c.cell), c.bounded) for c in D.by_dim(1)] == [("(1,1)", False), ("(2,2)", False)]
    D = dual_complex(FINE22)
    assert [str(c.cell) for c in D.by_dim(0)] == ["(12,1)", "(2,12)"]
    assert [(str(c.cell), c.bounded) for c in D.by_dim(1)] == [("(1,1)", False), ("(2,1)", True), ("(2,2)", False)]


@pytest.mark.parametrize("S", [TRIV22, FINE22, TRIV13], ids=["triv22", "fine22", "triv13"])
def test_dual_poset_matches_oracle(S):
    D = dual_complex(S)
    cells = [c.cell for c in D.cells]
    assert D.faces == _oracle_faces(cells, S.d)


def test_dual_poset_matches_oracle_realized():
    rng = random.Random(12)
    S = _subdivision(random_rows(rng, 2, 3, num=2, dens=(1,)))
    D = dual_complex(S)
    assert D.faces == _oracle_faces([c.cell for c in D.cells], 3)


def test_dual_complex_rejects_invalid():
    with pytest.raises(InvalidSubdivision):
        dual_complex(S_of(2, 2, "(12,1)"))


def test_pseudohyperplane_examples():
    sl = pseudohyperplane(TRIV13, 1)
    assert {str(C) for C in sl.cells} == {"(123)", "(12)", "(13)", "(23)"}
    assert sorted(sl.dual_dims) == [0, 1, 1, 1]
    assert [str(C) for C in pseudohyperplane(FINE22, 1).cells] == ["(12,1)"]
    assert [str(C) for C in pseudohyperplane(TRIV22, 1).cells] == ["(12,12)"]
    assert pseudohyperplane(FINE22, 1).to_json() == {
        "i": 1,
        "cells": ["(12,1)"],
        "dual_dims": [0],
        "unbounded": [False],
    }
    with pytest.raises(InvalidParameters):
        pseudohyperplane(FINE22, 3)


def test_slice_structure_examples():
    rep = check_slice_structure(TRIV13, 1)
    assert rep.passed and rep.unbounded_edges == 3 and rep.vertices == 1
    rng = random.Random(1)
    S = _subdivision(generic_rows(rng, 2, 3))
    assert is_fine(S)
    for i in (1, 2):
        rep = check_slice_structure(S, i)
        assert rep.passed and rep.connected and rep.acyclic and rep.unbounded_edges == 3
    S0 = _subdivision([[0, 0, 0], [0, 0, 0]])
    for i in (1, 2):
        rep = check_slice_structure(S0, i)
        assert rep.connected and rep.acyclic
        assert not rep.fine
    with pytest.raises(UnsupportedDimension):
        check_slice_structure(FINE22, 1)


def test_arrangement_axioms():
    assert check_arrangement_axioms(FINE22).passed
    assert check_arrangement_axioms(TRIV13).passed
    cells = FINE22.sorted_cells()
    dup = build_dual(2, 2, cells + [cells[0]])
    rep = check_arrangement_axioms(dup)
    assert not rep.uniqueness.passed and rep.uniqueness.evidence["duplicates"] == [cells[0]]
    dropped = build_dual(2, 2, [C for C in cells if str(C) != "(2,1)"])
    rep = check_arrangement_axioms(dropped)
    assert not rep.surrounding.passed
    assert rep.surrounding.evidence["refinement"] == T("(2,1)", 2)


def _instances():
    rng = random.Random(55)
    out = [[[0, 0, 0]] * 2, [[0, 0, 0]] * 3]
    for n, d in [(2, 3), (3, 3), (4, 3), (2, 4)]:
        out.append(random_rows(rng, n, d, num=2, dens=(1,)))
        out.append(generic_rows(rng, n, d))
    return out


@pytest.mark.parametrize("rows", _instances(), ids=lambda r: f"{len(r)}x{len(r[0])}")
def test_duality_invariants(rows):
    S = _subdivision(rows)
    D = dual_complex(S)
    for c in D.cells:
        assert c.dim == arrangement_dim(c.cell) == S.d - 1 - minkowski_dim(c.cell)
        assert c.bounded == is_bounded(c.cell) == geometrically_bounded(c.cell)
    # the face relation is reversed: faces of a dual cell have smaller dimension
    for k, fs in D.faces.items():
        for m in fs:
            assert D.cells[m].dim < D.cells[k].dim
    members = set(slice_members(S))
    assert members == {C for C in S.cells if minkowski_dim(C) >= 1}
    assert check_arrangement_axioms(D).passed
    for i in range(1, S.n + 1):
        assert pseudohyperplane(S, i).cells
        if S.d == 3:
            rep = check_slice_structure(S, i)
            assert rep.connected and rep.acyclic, rep.to_json()
            if rep.fine:
                assert rep.unbounded_edges == 3
        for j in range(1, S.n + 1):
            if j != i:
                assert slice_deletion_compatible(S, i, j)
                assert deletion_union_violations(S, j) == []
                assert mixsd_deletion(S, j).validate().passed
