"""Mixed subdivisions of the dilated simplex ``n·Δ^{d-1}``.

A subdivision is stored as its set of cells, each cell being the (n,d)-type of
a Minkowski cell.  Geometry (lattice points, volumes) is derived on demand.
Coverage is certified combinatorially: face closure, pairwise comparability,
the ridge condition and connectivity of the adjacency graph of maximal cells.

Two kinds of "tope" appear: TOM region topes (full-dimensional types) and
vertex topes of a subdivision (0-dimensional cells).  Under the duality they
are the same tuples of singletons.
"""

from __future__ import annotations

import itertools
import json
from collections import defaultdict, deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

from .axioms import (
    TypeCollection,
    Verdict,
    _face_table,
    _full_partition,
    _jsonable,
    check_tom,
    refinements,
)
from .comparability import comparability_graph, find_cycle, is_refinement
from .errors import (
    EmptyInput,
    InvalidParameters,
    InvalidSubdivision,
    LimitExceeded,
    NotATom,
    NotFullDim,
    NotTotal,
    ParameterMismatch,
)
from .lattice import normalized_volume as _hull_volume
from .ndtype import (
    MAX_PARTITION_LETTERS,
    NdType,
    all_types,
    contract_letter,
    delete_coordinate,
    format_type,
    is_bounded,
    is_forest,
    join,
    leq,
    minkowski_dim,
    parse_type,
    total_refinements,
)
from .realize import _check_caps

LatticePoint = tuple[int, ...]


def embed_tope(v: NdType) -> LatticePoint:
    """Lattice point of a tope: coordinate ``j`` counts the entries equal to ``{j}``."""
    if not v.is_total():
        raise NotTotal(f"{v} is not a tuple of singletons")
    x = [0] * v.d
    for m in v.masks:
        x[m.bit_length() - 1] += 1
    return tuple(x)


@lru_cache(maxsize=65536)
def _vertex_points(A: NdType) -> frozenset[LatticePoint]:
    return frozenset(embed_tope(v) for v in total_refinements(A))


def cell_vertex_points(A: NdType) -> list[LatticePoint]:
    """Vertices of the Minkowski cell of ``A``, sorted."""
    if A.d > MAX_PARTITION_LETTERS:
        raise LimitExceeded(f"d={A.d} exceeds the enumeration cap {MAX_PARTITION_LETTERS}")
    return sorted(_vertex_points(A))


def faces(A: NdType) -> list[NdType]:
    """All faces of the Minkowski cell of ``A`` (its refinements), including ``A``."""
    return sorted(refinements(A))


def normalized_volume(A: NdType) -> int:
    """Lattice-normalized (d-1)-volume of the Minkowski cell of a full-dimensional type."""
    if minkowski_dim(A) != A.d - 1:
        raise NotFullDim(f"{A} has Minkowski dimension {minkowski_dim(A)} < {A.d - 1}")
    # points lie in the hyperplane sum = n; dropping the last coordinate is unimodular
    return _hull_volume([p[:-1] for p in cell_vertex_points(A)])


class MixedSubdivision:
    """A set of Minkowski cells of ``n·Δ^{d-1}``, stored by type."""

    def __init__(self, n: int, d: int, cells: Iterable[NdType]):
        if n < 1 or d < 1:
            raise InvalidParameters(f"subdivision needs n, d >= 1, got ({n},{d})")
        self.n = n
        self.d = d
        cell_set = set()
        for C in cells:
            if C.n != n or C.d != d:
                raise ParameterMismatch(f"{C!r} is not an ({n},{d})-type")
            cell_set.add(C)
        self.cells: frozenset[NdType] = frozenset(cell_set)
        self.maximal_cells: tuple[NdType, ...] = tuple(
            sorted(C for C in self.cells if minkowski_dim(C) == d - 1)
        )

    @classmethod
    def from_maximal_cells(cls, n: int, d: int, maximal: Iterable[NdType]) -> MixedSubdivision:
        closure = set()
        for A in maximal:
            closure |= refinements(A)
        return cls(n, d, closure)

    def sorted_cells(self) -> list[NdType]:
        return sorted(self.cells)

    def vertex_topes(self) -> list[NdType]:
        return sorted(C for C in self.cells if C.is_total())

    def __eq__(self, other) -> bool:
        if not isinstance(other, MixedSubdivision):
            return NotImplemented
        return (self.n, self.d, self.cells) == (other.n, other.d, other.cells)

    def __hash__(self):
        return hash((self.n, self.d, self.cells))

    def __repr__(self) -> str:
        return (
            f"MixedSubdivision(n={self.n}, d={self.d}, "
            f"{len(self.maximal_cells)} maximal / {len(self.cells)} cells)"
        )

    def validate(self, volume_check: bool = False) -> ValidationReport:
        return validate_mixsd(self.cells, self.n, self.d, volume_check=volume_check)

    def to_json(self, include_cells: bool = False) -> dict:
        data = {
            "format": "tropmat/1",
            "n": self.n,
            "d": self.d,
            "maximal_cells": [format_type(C) for C in self.maximal_cells],
        }
        if include_cells:
            data["cells"] = [format_type(C) for C in self.sorted_cells()]
        return data

    def dumps(self, include_cells: bool = False) -> str:
        return json.dumps(self.to_json(include_cells), indent=2)

    @classmethod
    def from_json(cls, data: dict) -> MixedSubdivision:
        n, d = int(data["n"]), int(data["d"])
        maximal = [parse_type(s, d) for s in data["maximal_cells"]]
        S = cls.from_maximal_cells(n, d, maximal)
        if "cells" in data:
            given = {parse_type(s, d) for s in data["cells"]}
            if given != S.cells:
                raise InvalidSubdivision("'cells' differs from the face closure of 'maximal_cells'")
        return S


@dataclass
class ValidationReport:
    face_closure: Verdict
    comparability: Verdict
    ridges: Verdict
    connectivity: Verdict
    volume: Verdict | None = None
    stats: dict = field(default_factory=dict)

    def verdicts(self) -> tuple[Verdict, ...]:
        out = (self.face_closure, self.comparability, self.ridges, self.connectivity)
        return out + ((self.volume,) if self.volume is not None else ())

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts())

    def __bool__(self) -> bool:
        return self.passed

    def to_json(self) -> dict:
        data = {"format": "tropmat/1", "passed": self.passed}
        for v in self.verdicts():
            data[v.name] = v.passed
        data["evidence"] = [v.to_json() for v in self.verdicts() if not v.passed]
        data["stats"] = _jsonable(self.stats)
        return data


def _check_face_closure(cells: frozenset[NdType]) -> Verdict:
    for A in sorted(cells):
        for parts, R in _face_table(A):
            if R not in cells:
                return Verdict(
                    "face_closure", False, {"A": A, "P": _full_partition(A, parts), "refinement": R}
                )
    return Verdict("face_closure", True)


def _check_pairwise(cells: Iterable[NdType]) -> Verdict:
    for A, B in itertools.combinations(sorted(cells), 2):
        cycle = find_cycle(comparability_graph(A, B))
        if cycle is not None:
            return Verdict("comparability", False, {"A": A, "B": B, "cycle": cycle})
    return Verdict("comparability", True)


def ridge_incidence(cells: Iterable[NdType], d: int) -> dict[NdType, list[NdType]]:
    """Map each ridge (face of Minkowski dimension d-2 of a maximal cell) to its maximal cells."""
    inc: dict[NdType, list[NdType]] = defaultdict(list)
    for M in sorted(C for C in cells if minkowski_dim(C) == d - 1):
        for R in refinements(M):
            if minkowski_dim(R) == d - 2:
                inc[R].append(M)
    return dict(inc)


def validate_mixsd(
    cells: Iterable[NdType], n: int, d: int, volume_check: bool = False
) -> ValidationReport:
    """Certify that ``cells`` form a mixed subdivision of ``n·Δ^{d-1}``."""
    cells = frozenset(cells)
    for C in cells:
        if C.n != n or C.d != d:
            raise ParameterMismatch(f"{C!r} is not an ({n},{d})-type")
    if d > MAX_PARTITION_LETTERS:
        raise LimitExceeded(f"d={d} exceeds the enumeration cap {MAX_PARTITION_LETTERS}")

    closure = _check_face_closure(cells)
    pairwise = _check_pairwise(cells)

    maximal = sorted(C for C in cells if minkowski_dim(C) == d - 1)
    incidence = ridge_incidence(maximal, d)
    ridges = Verdict("ridges", True)
    for R in sorted(incidence):
        want = 2 if is_bounded(R) else 1
        if len(incidence[R]) != want:
            ridges = Verdict(
                "ridges",
                False,
                {"ridge": R, "bounded": is_bounded(R), "maximal_cells": incidence[R], "expected": want},
            )
            break

    if not maximal:
        connectivity = Verdict("connectivity", False, {"reason": "no maximal cells"})
    else:
        adj: dict[NdType, set[NdType]] = defaultdict(set)
        for owners in incidence.values():
            for a, b in itertools.combinations(owners, 2):
                adj[a].add(b)
                adj[b].add(a)
        seen = {maximal[0]}
        queue = deque(seen)
        while queue:
            for nb in adj[queue.popleft()]:
                if nb not in seen:
                    seen.add(nb)
                    queue.append(nb)
        if len(seen) == len(maximal):
            connectivity = Verdict("connectivity", True)
        else:
            unreached = sorted(set(maximal) - seen)
            connectivity = Verdict("connectivity", False, {"unreached": unreached})

    volume = None
    if volume_check:
        total = sum(normalized_volume(C) for C in maximal)
        expected = n ** (d - 1)
        volume = Verdict(
            "volume", total == expected, {} if total == expected else {"total": total, "expected": expected}
        )

    stats = {"cells": len(cells), "maximal_cells": len(maximal), "ridges": len(incidence)}
    return ValidationReport(closure, pairwise, ridges, connectivity, volume, stats)


def is_fine(S: MixedSubdivision) -> bool:
    """True iff every cell's type graph is a forest."""
    return all(is_forest(C) for C in S.cells)


def tom_to_mixsd(M: TypeCollection) -> MixedSubdivision:
    """The mixed subdivision whose cells are the types of the TOM ``M``."""
    report = check_tom(M)
    if not report.passed:
        raise NotATom("collection fails the TOM axioms", report)
    return MixedSubdivision(M.n, M.d, M.types)


def vertex_topes(S: MixedSubdivision) -> list[NdType]:
    return S.vertex_topes()


def nice_type_evidence(A: NdType, topes: Iterable[NdType]) -> dict | None:
    """``None`` if ``A`` is nice with respect to ``topes``, else the first failing condition."""
    T = set(topes)
    inside = sorted(t for t in T if leq(t, A))
    union = None
    for t in inside:
        union = t if union is None else join(union, t)
    if union != A:
        return {"condition": "union", "topes_inside": inside}
    for v in total_refinements(A):
        if v not in T:
            return {"condition": "refinements", "missing_tope": v}
    for t in inside:
        if not is_refinement(t, A):
            return {"condition": "interior_tope", "tope": t}
    return None


def is_nice_type(A: NdType, topes: Iterable[NdType]) -> bool:
    return nice_type_evidence(A, topes) is None


def _check_topes(topes: Iterable[NdType], n: int, d: int) -> list[NdType]:
    T = sorted(set(topes))
    if not T:
        raise EmptyInput("no topes given")
    for t in T:
        if t.n != n or t.d != d:
            raise ParameterMismatch(f"{t!r} is not an ({n},{d})-type")
        if not t.is_total():
            raise NotTotal(f"{t} is not a tope")
    _check_caps(n, d)
    if d > MAX_PARTITION_LETTERS:
        raise LimitExceeded(f"d={d} exceeds the enumeration cap {MAX_PARTITION_LETTERS}")
    return T


def _tope_unions(T: list[NdType], n: int, d: int):
    """Candidate types equal to the union of the topes they contain."""
    for A in all_types(n, d):
        union = [0] * n
        for t in T:
            if all(a & tm == tm for a, tm in zip(A.masks, t.masks)):
                union = [u | tm for u, tm in zip(union, t.masks)]
        if tuple(union) == A.masks:
            yield A


def reconstruct_from_topes(topes: Iterable[NdType], n: int, d: int) -> MixedSubdivision:
    """The subdivision whose cells are exactly the nice types of ``topes``."""
    T = _check_topes(topes, n, d)
    Tset = set(T)
    cells = [A for A in _tope_unions(T, n, d) if is_nice_type(A, Tset)]
    return MixedSubdivision(n, d, cells)


def reconstruct_fine(topes: Iterable[NdType], n: int, d: int) -> MixedSubdivision:
    """Cells of a fine subdivision: forest-graph tope unions whose total refinements are topes."""
    T = _check_topes(topes, n, d)
    Tset = set(T)
    cells = [
        A
        for A in _tope_unions(T, n, d)
        if is_forest(A) and all(v in Tset for v in total_refinements(A))
    ]
    return MixedSubdivision(n, d, cells)


def mixsd_deletion(S: MixedSubdivision, i: int) -> MixedSubdivision:
    if S.n == 1:
        raise InvalidParameters("deletion would leave n = 0")
    if not 1 <= i <= S.n:
        raise InvalidParameters(f"coordinate {i} outside 1..{S.n}")
    return MixedSubdivision(S.n - 1, S.d, (delete_coordinate(C, i) for C in S.cells))


def mixsd_contraction(S: MixedSubdivision, j: int) -> MixedSubdivision:
    if S.d == 1:
        raise InvalidParameters("contraction would leave d = 0")
    if not 1 <= j <= S.d:
        raise InvalidParameters(f"letter {j} outside 1..{S.d}")
    kept = (contract_letter(C, j) for C in S.cells)
    return MixedSubdivision(S.n, S.d - 1, (C for C in kept if C is not None))


def deletion_union_violations(S: MixedSubdivision, i: int) -> list[tuple[NdType, NdType]]:
    """Pairs ``A != B`` with equal ``i``-deletions whose union is not a cell."""
    fibers: dict[tuple[int, ...], list[NdType]] = defaultdict(list)
    for C in S.cells:
        fibers[C.masks[: i - 1] + C.masks[i:]].append(C)
    bad = []
    for fiber in fibers.values():
        for A, B in itertools.combinations(sorted(fiber), 2):
            if join(A, B) not in S.cells:
                bad.append((A, B))
    return bad


def lattice_points_used(S: MixedSubdivision) -> set[LatticePoint]:
    return {embed_tope(v) for v in S.vertex_topes()}
