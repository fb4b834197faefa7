"""Combinatorial Poincaré duality between mixed subdivisions and pseudohyperplane arrangements.

Dual cells are poset elements only.  A cell ``C`` of dimension ``k`` becomes
a dual cell of dimension ``d-1-k`` (= ``arrangement_dim(C)``), and ``D∨`` is a
face of ``C∨`` exactly when ``C`` is a proper face of ``D``.  The ``i``-th
pseudohyperplane is the set of dual cells with ``|C_i| >= 2``.

Topological conditions (PL-homeomorphism, PL-balls) are replaced by
combinatorial surrogates: tree structure of the slices for ``d = 3``, type
uniqueness, surrounding/comparability of the type set and agreement of
geometric and combinatorial boundedness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .axioms import TypeCollection, Verdict, _jsonable, check_comparability, check_surrounding
from .comparability import is_refinement
from .errors import InvalidParameters, InvalidSubdivision, UnsupportedDimension
from .mixsd import MixedSubdivision, cell_vertex_points, mixsd_deletion, validate_mixsd
from .ndtype import NdType, arrangement_dim, delete_coordinate, format_type, is_bounded, popcount


def geometrically_bounded(C: NdType) -> bool:
    """True iff the Minkowski cell of ``C`` avoids every boundary facet of the dilated simplex."""
    pts = cell_vertex_points(C)
    return all(any(p[j] > 0 for p in pts) for j in range(C.d))


@dataclass(frozen=True)
class DualCell:
    cell: NdType
    dim: int
    bounded: bool


@dataclass
class DualComplex:
    """Dual cells in canonical cell order; ``faces[k]`` indexes the dual faces of cell ``k``."""

    n: int
    d: int
    cells: tuple[DualCell, ...]
    faces: dict[int, frozenset[int]] = field(default_factory=dict)

    def by_dim(self, k: int) -> list[DualCell]:
        return [c for c in self.cells if c.dim == k]

    def to_json(self) -> dict:
        return {
            "format": "tropmat/1",
            "n": self.n,
            "d": self.d,
            "cells": [format_type(c.cell) for c in self.cells],
            "dual_dims": [c.dim for c in self.cells],
            "bounded": [c.bounded for c in self.cells],
            "faces": {str(k): sorted(v) for k, v in sorted(self.faces.items())},
        }


def build_dual(n: int, d: int, cells: Sequence[NdType]) -> DualComplex:
    """Dual complex of an explicit cell list (duplicates are kept, for axiom testing)."""
    duals = tuple(DualCell(C, arrangement_dim(C), geometrically_bounded(C)) for C in cells)
    faces = {}
    for k, C in enumerate(cells):
        faces[k] = frozenset(
            m for m, D in enumerate(cells) if m != k and D != C and is_refinement(C, D)
        )
    return DualComplex(n, d, duals, faces)


def dual_complex(S: MixedSubdivision, check: bool = True) -> DualComplex:
    if check:
        report = validate_mixsd(S.cells, S.n, S.d)
        if not report.passed:
            raise InvalidSubdivision("input is not a valid mixed subdivision")
    return build_dual(S.n, S.d, S.sorted_cells())


@dataclass
class PseudohyperplaneSlice:
    i: int
    cells: list[NdType]
    dual_dims: list[int]
    unbounded: list[bool]

    def to_json(self) -> dict:
        return {
            "i": self.i,
            "cells": [format_type(C) for C in self.cells],
            "dual_dims": self.dual_dims,
            "unbounded": self.unbounded,
        }


def in_slice(C: NdType, i: int) -> bool:
    return popcount(C.masks[i - 1]) >= 2


def pseudohyperplane(S: MixedSubdivision, i: int) -> PseudohyperplaneSlice:
    """Dual cells of the ``i``-th tropical pseudohyperplane."""
    if not 1 <= i <= S.n:
        raise InvalidParameters(f"hyperplane index {i} outside 1..{S.n}")
    cells = [C for C in S.sorted_cells() if in_slice(C, i)]
    return PseudohyperplaneSlice(
        i,
        cells,
        [arrangement_dim(C) for C in cells],
        [not is_bounded(C) for C in cells],
    )


@dataclass
class SliceReport:
    i: int
    connected: bool
    acyclic: bool
    vertices: int
    bounded_edges: int
    unbounded_edges: int
    fine: bool
    evidence: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        rays_ok = self.unbounded_edges == 3 if self.fine else True
        return self.connected and self.acyclic and rays_ok and not self.evidence

    def to_json(self) -> dict:
        return {
            "i": self.i,
            "passed": self.passed,
            "connected": self.connected,
            "acyclic": self.acyclic,
            "vertices": self.vertices,
            "bounded_edges": self.bounded_edges,
            "unbounded_edges": self.unbounded_edges,
            "fine": self.fine,
            "evidence": _jsonable(self.evidence),
        }


def check_slice_structure(S: MixedSubdivision, i: int) -> SliceReport:
    """The dual 1-complex of slice ``i`` must be a tree; with 3 rays when ``S`` is fine.

    Only defined for ``d = 3``, where each slice is a pseudo tropical line.
    """
    from .mixsd import is_fine

    if S.d != 3:
        raise UnsupportedDimension(f"slice structure is checked for d = 3 only, got d = {S.d}")
    sl = pseudohyperplane(S, i)
    verts = [C for C, k in zip(sl.cells, sl.dual_dims) if k == 0]
    edges = [C for C, k in zip(sl.cells, sl.dual_dims) if k == 1]
    index = {V: k for k, V in enumerate(verts)}
    evidence: dict = {}
    bounded_pairs = []
    unbounded = 0
    for E in edges:
        ends = [V for V in verts if is_refinement(E, V)]
        want = 2 if is_bounded(E) else 1
        if len(ends) != want:
            evidence = {"edge": E, "endpoints": ends, "expected": want}
            break
        if want == 2:
            bounded_pairs.append((index[ends[0]], index[ends[1]]))
        else:
            unbounded += 1

    parent = list(range(len(verts)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    acyclic = True
    for a, b in bounded_pairs:
        ra, rb = find(a), find(b)
        if ra == rb:
            acyclic = False
        else:
            parent[ra] = rb
    connected = len(verts) > 0 and len({find(k) for k in range(len(verts))}) == 1
    return SliceReport(
        i, connected, acyclic, len(verts), len(bounded_pairs), unbounded, is_fine(S), evidence
    )


@dataclass
class ArrangementReport:
    uniqueness: Verdict
    surrounding: Verdict
    comparability: Verdict
    boundedness: Verdict

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts())

    def verdicts(self) -> tuple[Verdict, ...]:
        return (self.uniqueness, self.surrounding, self.comparability, self.boundedness)

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            **{v.name: v.passed for v in self.verdicts()},
            "evidence": [v.to_json() for v in self.verdicts() if not v.passed],
        }


def check_arrangement_axioms(D: DualComplex | MixedSubdivision) -> ArrangementReport:
    """Combinatorial surrogates of the pseudohyperplane-arrangement axioms.

    The PL-ball and regular-subdivision conditions are not checked
    topologically; type uniqueness stands in for the former.
    """
    if isinstance(D, MixedSubdivision):
        D = dual_complex(D, check=False)
    types = [c.cell for c in D.cells]
    seen: set[NdType] = set()
    dupes = []
    for C in types:
        if C in seen:
            dupes.append(C)
        seen.add(C)
    uniqueness = Verdict("uniqueness", not dupes, {"duplicates": dupes} if dupes else {})

    M = TypeCollection(D.n, D.d, types)
    surrounding = check_surrounding(M)
    comparability = check_comparability(M)

    mismatched = [c.cell for c in D.cells if c.bounded != is_bounded(c.cell)]
    boundedness = Verdict(
        "boundedness", not mismatched, {"mismatched": mismatched} if mismatched else {}
    )
    return ArrangementReport(uniqueness, surrounding, comparability, boundedness)


def slice_deletion_compatible(S: MixedSubdivision, i: int, j: int) -> bool:
    """The deletion map sends slice ``i`` of ``S`` onto the matching slice of ``S \\ j``."""
    if i == j:
        raise InvalidParameters("the deleted coordinate must differ from the slice index")
    image = {delete_coordinate(C, j) for C in pseudohyperplane(S, i).cells}
    target_index = i if i < j else i - 1
    target = set(pseudohyperplane(mixsd_deletion(S, j), target_index).cells)
    return image == target


def slice_members(S: MixedSubdivision) -> Iterable[NdType]:
    """Cells lying in at least one slice."""
    return [C for C in S.sorted_cells() if any(in_slice(C, i) for i in range(1, S.n + 1))]
