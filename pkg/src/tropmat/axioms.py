"""Tropical oriented matroid axioms: boundary, comparability, elimination, surrounding.

Every failing check carries evidence that the test suite can replay: the
missing constant types, an incomparable pair with its cycle, an elimination
triple with no valid type, or a refinement that is absent from the collection.
Pair and per-type scans are independent work items; they run sequentially
here and merge results in canonical order.
"""

from __future__ import annotations

import itertools
import json
from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Iterable

from .comparability import comparability_graph, find_cycle
from .errors import InvalidParameters, LimitExceeded, NotMember, ParameterMismatch
from .ndtype import (
    MAX_PARTITION_LETTERS,
    NdType,
    OrderedPartition,
    arrangement_dim,
    constant_type,
    contract_letter,
    delete_coordinate,
    format_type,
    full_mask,
    ordered_partitions_of_mask,
    parse_type,
    refine_masks,
)


class TypeCollection:
    """A deduplicated, canonically ordered set of (n,d)-types."""

    def __init__(self, n: int, d: int, types: Iterable[NdType] = ()):
        if n < 1 or d < 1:
            raise InvalidParameters(f"collection needs n, d >= 1, got ({n},{d})")
        self.n = n
        self.d = d
        members = set()
        for A in types:
            if A.n != n or A.d != d:
                raise ParameterMismatch(f"{A!r} is not an ({n},{d})-type")
            members.add(A)
        self._set = frozenset(members)
        self.types: tuple[NdType, ...] = tuple(sorted(members))

    def __contains__(self, A) -> bool:
        return A in self._set

    def __iter__(self):
        return iter(self.types)

    def __len__(self) -> int:
        return len(self.types)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TypeCollection):
            return NotImplemented
        return (self.n, self.d, self._set) == (other.n, other.d, other._set)

    def __hash__(self):
        return hash((self.n, self.d, self._set))

    def __repr__(self) -> str:
        return f"TypeCollection(n={self.n}, d={self.d}, {len(self)} types)"

    @property
    def as_set(self) -> frozenset[NdType]:
        return self._set

    def to_json(self) -> dict:
        return {
            "format": "tropmat/1",
            "n": self.n,
            "d": self.d,
            "types": [format_type(A) for A in self.types],
        }

    @classmethod
    def from_json(cls, data: dict) -> TypeCollection:
        n, d = int(data["n"]), int(data["d"])
        return cls(n, d, (parse_type(s, d) for s in data["types"]))

    @classmethod
    def parse(cls, n: int, d: int, texts: Iterable[str]) -> TypeCollection:
        return cls(n, d, (parse_type(t, d) for t in texts))


@dataclass
class Verdict:
    name: str
    passed: bool
    evidence: dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.passed

    def to_json(self) -> dict:
        return {"axiom": self.name, "passed": self.passed, **_jsonable(self.evidence)}


def _jsonable(obj):
    if isinstance(obj, NdType):
        return format_type(obj)
    if isinstance(obj, OrderedPartition):
        return str(obj)
    if hasattr(obj, "to_json"):
        return obj.to_json()
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


@dataclass
class AxiomReport:
    boundary: Verdict
    comparability: Verdict
    elimination: Verdict
    surrounding: Verdict

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts())

    def __bool__(self) -> bool:
        return self.passed

    def verdicts(self) -> tuple[Verdict, ...]:
        return (self.boundary, self.comparability, self.elimination, self.surrounding)

    def to_json(self) -> dict:
        return {
            "format": "tropmat/1",
            "boundary": self.boundary.passed,
            "comparability": self.comparability.passed,
            "elimination": self.elimination.passed,
            "surrounding": self.surrounding.passed,
            "evidence": [v.to_json() for v in self.verdicts() if not v.passed],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def check_boundary(M: TypeCollection) -> Verdict:
    missing = [
        constant_type(M.n, M.d, j)
        for j in range(1, M.d + 1)
        if constant_type(M.n, M.d, j) not in M
    ]
    if missing:
        return Verdict("boundary", False, {"missing": missing})
    return Verdict("boundary", True)


def check_comparability(M: TypeCollection) -> Verdict:
    # acyclicity is symmetric under swapping the pair, so unordered pairs suffice
    for A, B in itertools.combinations(M.types, 2):
        cycle = find_cycle(comparability_graph(A, B))
        if cycle is not None:
            return Verdict("comparability", False, {"A": A, "B": B, "cycle": cycle})
    return Verdict("comparability", True)


def _elimination_ok(A: NdType, B: NdType, j: int, C: NdType) -> bool:
    for k, (a, b, c) in enumerate(zip(A.masks, B.masks, C.masks), 1):
        if k == j:
            if c != a | b:
                return False
        elif c not in (a, b, a | b):
            return False
    return True


class _EliminationIndex:
    def __init__(self, M: TypeCollection):
        self.by_entry: dict[tuple[int, int], list[NdType]] = defaultdict(list)
        for C in M.types:
            for j, m in enumerate(C.masks, 1):
                self.by_entry[(j, m)].append(C)

    def search(self, A: NdType, B: NdType, j: int) -> NdType | None:
        for C in self.by_entry.get((j, A.masks[j - 1] | B.masks[j - 1]), ()):
            if _elimination_ok(A, B, j, C):
                return C
        return None


def eliminate_search(M: TypeCollection, A: NdType, B: NdType, j: int) -> NdType | None:
    """The canonically first ``C`` in ``M`` eliminating ``A`` and ``B`` at position ``j``."""
    for X in (A, B):
        if X not in M:
            raise NotMember(f"{X} is not in the collection")
    if not 1 <= j <= M.n:
        raise InvalidParameters(f"position {j} outside 1..{M.n}")
    return _EliminationIndex(M).search(A, B, j)


def check_elimination(M: TypeCollection) -> Verdict:
    index = _EliminationIndex(M)
    types = M.types
    for a_idx, A in enumerate(types):
        for B in types[a_idx + 1 :]:
            for j in range(1, M.n + 1):
                if index.search(A, B, j) is None:
                    return Verdict("elimination", False, {"A": A, "B": B, "j": j})
    return Verdict("elimination", True)


@lru_cache(maxsize=65536)
def _face_table(A: NdType) -> tuple[tuple[tuple[int, ...], NdType], ...]:
    """``(partition masks, refinement)`` for every ordered partition of the letters of ``A``."""
    out = []
    seen = set()
    for parts in ordered_partitions_of_mask(A.union_mask):
        R = NdType(A.d, refine_masks(A.masks, parts))
        if R not in seen:
            seen.add(R)
            out.append((parts, R))
    return tuple(out)


def refinements(A: NdType) -> frozenset[NdType]:
    """All refinements of ``A`` (its faces as a Minkowski cell), including ``A``."""
    if A.d > MAX_PARTITION_LETTERS:
        raise LimitExceeded(f"d={A.d} exceeds the enumeration cap {MAX_PARTITION_LETTERS}")
    return frozenset(R for _, R in _face_table(A))


def _full_partition(A: NdType, parts: tuple[int, ...]) -> OrderedPartition:
    rest = full_mask(A.d) & ~A.union_mask
    return OrderedPartition(A.d, parts + ((rest,) if rest else ()))


def check_surrounding(M: TypeCollection) -> Verdict:
    if M.d > MAX_PARTITION_LETTERS:
        raise LimitExceeded(f"d={M.d} exceeds the enumeration cap {MAX_PARTITION_LETTERS}")
    for A in M.types:
        for parts, R in _face_table(A):
            if R not in M:
                P = _full_partition(A, parts)
                return Verdict("surrounding", False, {"A": A, "P": P, "refinement": R})
    return Verdict("surrounding", True)


def check_tom(M: TypeCollection) -> AxiomReport:
    return AxiomReport(
        check_boundary(M),
        check_comparability(M),
        check_elimination(M),
        check_surrounding(M),
    )


def tom_deletion(M: TypeCollection, i: int) -> TypeCollection:
    if M.n == 1:
        raise InvalidParameters("deletion would leave n = 0")
    if not 1 <= i <= M.n:
        raise InvalidParameters(f"coordinate {i} outside 1..{M.n}")
    return TypeCollection(M.n - 1, M.d, (delete_coordinate(A, i) for A in M))


def tom_contraction(M: TypeCollection, j: int) -> TypeCollection:
    if M.d == 1:
        raise InvalidParameters("contraction would leave d = 0")
    if not 1 <= j <= M.d:
        raise InvalidParameters(f"letter {j} outside 1..{M.d}")
    kept = (contract_letter(A, j) for A in M)
    return TypeCollection(M.n, M.d - 1, (C for C in kept if C is not None))


def classify(M: TypeCollection) -> dict[int, list[NdType]]:
    """Bucket the types of ``M`` by dimension (0 = vertices, d-1 = topes)."""
    buckets: dict[int, list[NdType]] = {k: [] for k in range(M.d)}
    for A in M.types:
        buckets[arrangement_dim(A)].append(A)
    return buckets


def vertices(M: TypeCollection) -> list[NdType]:
    return classify(M)[0]


def edges(M: TypeCollection) -> list[NdType]:
    return classify(M).get(1, [])


def region_topes(M: TypeCollection) -> list[NdType]:
    """Full-dimensional types of ``M``: n-tuples of singletons."""
    return classify(M)[M.d - 1]
