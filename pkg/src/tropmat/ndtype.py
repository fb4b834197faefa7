"""The (n,d)-type algebra.

An (n,d)-type is an n-tuple of nonempty subsets of ``{1..d}``.  Letters are
1-based in every public signature and in the text notation; internally each
subset is a bitmask with bit ``j-1`` standing for letter ``j``.

Text notation follows the compact set style, e.g. ``(123,16,34,456,56)``.
For ``d > 9`` the letters of an entry are dot-separated: ``(1.12,4)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import (
    EmptyEntry,
    InvalidParameters,
    LengthMismatch,
    LimitExceeded,
    OutOfRange,
    ParameterMismatch,
)

MAX_LETTERS = 16
MAX_PARTITION_LETTERS = 8


def bits(mask: int) -> Iterator[int]:
    """Yield the 0-based positions of the set bits of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def mask_of(letters: Iterable[int]) -> int:
    m = 0
    for j in letters:
        m |= 1 << (j - 1)
    return m


def letters_of(mask: int) -> frozenset[int]:
    return frozenset(b + 1 for b in bits(mask))


def full_mask(d: int) -> int:
    return (1 << d) - 1


class DisjointSet:
    """Union-find over ``range(size)`` with path halving."""

    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if rx > ry:
            rx, ry = ry, rx
        self.parent[ry] = rx
        return True


def _check_d(d: int) -> None:
    if d < 1:
        raise InvalidParameters(f"d must be >= 1, got {d}")
    if d > MAX_LETTERS:
        raise LimitExceeded(f"d={d} exceeds the bitmask cap {MAX_LETTERS}")


@dataclass(frozen=True)
class NdType:
    """An (n,d)-type stored as a tuple of bitmasks.

    Use :func:`make_type` or :meth:`parse` to build one from 1-based letters.
    """

    d: int
    masks: tuple[int, ...]

    def __post_init__(self):
        _check_d(self.d)
        if not self.masks:
            raise InvalidParameters("a type needs n >= 1 entries")
        full = full_mask(self.d)
        for i, m in enumerate(self.masks, 1):
            if m == 0:
                raise EmptyEntry(f"entry {i} is empty")
            if m & ~full:
                raise OutOfRange(f"entry {i} uses a letter outside 1..{self.d}")

    @property
    def n(self) -> int:
        return len(self.masks)

    @property
    def entries(self) -> tuple[frozenset[int], ...]:
        return tuple(letters_of(m) for m in self.masks)

    def entry(self, i: int) -> frozenset[int]:
        """The 1-based ``i``-th entry."""
        return letters_of(self.masks[i - 1])

    @property
    def union_mask(self) -> int:
        u = 0
        for m in self.masks:
            u |= m
        return u

    def sort_key(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(sorted(e)) for e in self.entries)

    def __lt__(self, other: NdType) -> bool:
        return (self.d, self.sort_key()) < (other.d, other.sort_key())

    def is_total(self) -> bool:
        return all(m & (m - 1) == 0 for m in self.masks)

    def __str__(self) -> str:
        return format_type(self)

    def __repr__(self) -> str:
        return f"NdType({format_type(self)}, d={self.d})"

    @classmethod
    def parse(cls, text: str, d: int) -> NdType:
        return parse_type(text, d)


def make_type(n: int, d: int, entries: Sequence[Iterable[int]]) -> NdType:
    """Validate and build an (n,d)-type from 1-based letter collections."""
    _check_d(d)
    if n < 1:
        raise InvalidParameters(f"n must be >= 1, got {n}")
    entries = list(entries)
    if len(entries) != n:
        raise LengthMismatch(f"expected {n} entries, got {len(entries)}")
    masks = []
    for i, entry in enumerate(entries, 1):
        letters = list(entry)
        if not letters:
            raise EmptyEntry(f"entry {i} is empty")
        for j in letters:
            if not 1 <= j <= d:
                raise OutOfRange(f"letter {j} in entry {i} is outside 1..{d}")
        masks.append(mask_of(letters))
    return NdType(d, tuple(masks))


def format_entry(mask: int, d: int) -> str:
    letters = [str(b + 1) for b in bits(mask)]
    return ("." if d > 9 else "").join(letters)


def format_type(A: NdType) -> str:
    return "(" + ",".join(format_entry(m, A.d) for m in A.masks) + ")"


def parse_type(text: str, d: int) -> NdType:
    """Parse the compact notation, e.g. ``"(123,1,3)"``."""
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    parts = [p.strip() for p in body.split(",")]
    entries = []
    for i, part in enumerate(parts, 1):
        if not part:
            raise EmptyEntry(f"entry {i} of {text!r} is empty")
        try:
            if d > 9 or "." in part:
                entries.append([int(t) for t in part.split(".")])
            else:
                entries.append([int(c) for c in part])
        except ValueError:
            raise InvalidParameters(f"cannot parse entry {part!r} of {text!r}") from None
    return make_type(len(entries), d, entries)


@dataclass(frozen=True)
class OrderedPartition:
    """An ordered partition of ``{1..d}`` stored as part bitmasks."""

    d: int
    masks: tuple[int, ...]

    def __post_init__(self):
        _check_d(self.d)
        seen = 0
        for m in self.masks:
            if m == 0:
                raise EmptyEntry("ordered partition has an empty part")
            if m & seen:
                raise InvalidParameters("ordered partition parts overlap")
            seen |= m
        if seen != full_mask(self.d):
            raise InvalidParameters(f"ordered partition does not cover 1..{self.d}")

    @classmethod
    def from_sets(cls, d: int, parts: Iterable[Iterable[int]]) -> OrderedPartition:
        masks = []
        for p in parts:
            p = list(p)
            if any(not 1 <= j <= d for j in p):
                raise OutOfRange(f"part {p} is outside 1..{d}")
            masks.append(mask_of(p))
        return cls(d, tuple(masks))

    @property
    def parts(self) -> tuple[frozenset[int], ...]:
        return tuple(letters_of(m) for m in self.masks)

    def __str__(self) -> str:
        return ",".join(format_entry(m, self.d) for m in self.masks)


def ordered_partitions_of_mask(mask: int) -> Iterator[tuple[int, ...]]:
    """All ordered partitions of the letter set ``mask`` into nonempty parts."""
    if mask == 0:
        yield ()
        return
    sub = mask
    while sub:
        for rest in ordered_partitions_of_mask(mask & ~sub):
            yield (sub,) + rest
        sub = (sub - 1) & mask


def ordered_partitions(d: int) -> Iterator[OrderedPartition]:
    """Every ordered partition of ``{1..d}`` (ordered Bell many)."""
    _check_d(d)
    if d > MAX_PARTITION_LETTERS:
        raise LimitExceeded(f"ordered partitions of {d} letters exceed the cap {MAX_PARTITION_LETTERS}")
    for masks in ordered_partitions_of_mask(full_mask(d)):
        yield OrderedPartition(d, masks)


def refine_masks(masks: Sequence[int], parts: Sequence[int]) -> tuple[int, ...]:
    out = []
    for a in masks:
        for p in parts:
            x = a & p
            if x:
                out.append(x)
                break
        else:
            raise InvalidParameters("partition does not cover the letters of the type")
    return tuple(out)


def refine(A: NdType, P: OrderedPartition) -> NdType:
    """The refinement of ``A`` by ``P``: keep, per entry, the earliest part it meets."""
    if A.d != P.d:
        raise ParameterMismatch(f"type has d={A.d}, partition has d={P.d}")
    return NdType(A.d, refine_masks(A.masks, P.masks))


@lru_cache(maxsize=65536)
def _total_refinements(A: NdType) -> frozenset[NdType]:
    used = list(bits(A.union_mask))
    out = set()
    for perm in itertools.permutations(used):
        rank = {b: r for r, b in enumerate(perm)}
        masks = tuple(1 << min(bits(m), key=rank.__getitem__) for m in A.masks)
        out.add(NdType(A.d, masks))
    return frozenset(out)


def total_refinements(A: NdType) -> list[NdType]:
    """All refinements of ``A`` whose entries are singletons, canonically sorted.

    Only linear orders of the letters are enumerated: a total refinement is
    determined by which letter of each entry comes first.
    """
    if A.d > MAX_PARTITION_LETTERS:
        raise LimitExceeded(f"d={A.d} exceeds the enumeration cap {MAX_PARTITION_LETTERS}")
    return sorted(_total_refinements(A))


def letter_classes(A: NdType) -> DisjointSet:
    ds = DisjointSet(A.d)
    for m in A.masks:
        first = (m & -m).bit_length() - 1
        for b in bits(m & (m - 1)):
            ds.union(first, b)
    return ds


def _component_counts(A: NdType) -> tuple[int, int]:
    """(#components of K_A counting isolated letters, #components touching an entry)."""
    ds = letter_classes(A)
    used = A.union_mask
    roots_all = {ds.find(j) for j in range(A.d)}
    roots_used = {ds.find(j) for j in bits(used)}
    return len(roots_all), len(roots_used)


def arrangement_dim(A: NdType) -> int:
    """Number of connected components of the type graph, minus one."""
    total, _ = _component_counts(A)
    return total - 1


def minkowski_dim(A: NdType) -> int:
    """Dimension of the Minkowski cell of ``A``: letters used minus components."""
    _, used_components = _component_counts(A)
    return popcount(A.union_mask) - used_components


def is_bounded(A: NdType) -> bool:
    return A.union_mask == full_mask(A.d)


def is_forest(A: NdType) -> bool:
    """True iff the type graph K_A has no cycle."""
    edges = sum(popcount(m) for m in A.masks)
    _, comps = _component_counts(A)
    return edges == A.n + popcount(A.union_mask) - comps


@dataclass(frozen=True)
class TypeGraph:
    """The bipartite graph K_A; nodes ``("N", i)`` and ``("D", j)``, both 1-based."""

    n: int
    d: int
    edges: frozenset[tuple[int, int]]

    def degree_left(self, i: int) -> int:
        return sum(1 for (a, _) in self.edges if a == i)


def type_graph(A: NdType) -> TypeGraph:
    edges = frozenset((i, j) for i, e in enumerate(A.entries, 1) for j in e)
    return TypeGraph(A.n, A.d, edges)


@dataclass(frozen=True)
class EmptyPosition:
    """Result of a meet that left some positions empty (1-based)."""

    positions: frozenset[int]


def _same_params(A: NdType, B: NdType) -> None:
    if A.n != B.n or A.d != B.d:
        raise ParameterMismatch(f"({A.n},{A.d})-type combined with ({B.n},{B.d})-type")


def meet(A: NdType, B: NdType) -> NdType | EmptyPosition:
    _same_params(A, B)
    masks = tuple(a & b for a, b in zip(A.masks, B.masks))
    empty = frozenset(i for i, m in enumerate(masks, 1) if m == 0)
    if empty:
        return EmptyPosition(empty)
    return NdType(A.d, masks)


def join(A: NdType, B: NdType) -> NdType:
    _same_params(A, B)
    return NdType(A.d, tuple(a | b for a, b in zip(A.masks, B.masks)))


def leq(A: NdType, B: NdType) -> bool:
    """Componentwise inclusion ``A ⊆ B``."""
    _same_params(A, B)
    return all(a & ~b == 0 for a, b in zip(A.masks, B.masks))


def constant_type(n: int, d: int, j: int) -> NdType:
    return NdType(d, (1 << (j - 1),) * n)


def all_types(n: int, d: int) -> Iterator[NdType]:
    """Every (n,d)-type, in increasing order of total entry size."""
    _check_d(d)
    masks = sorted(range(1, 1 << d), key=lambda m: (popcount(m), m))
    combos = itertools.product(masks, repeat=n)
    for combo in sorted(combos, key=lambda c: sum(popcount(m) for m in c)):
        yield NdType(d, combo)


def delete_coordinate(A: NdType, i: int) -> NdType:
    if A.n == 1:
        raise InvalidParameters("cannot delete the only coordinate")
    return NdType(A.d, A.masks[: i - 1] + A.masks[i:])


def contract_letter(A: NdType, j: int) -> NdType | None:
    """Drop letter ``j`` and shift higher letters down; ``None`` if ``A`` uses ``j``."""
    if A.d == 1:
        raise InvalidParameters("cannot contract the only letter")
    bit = 1 << (j - 1)
    low = bit - 1
    out = []
    for m in A.masks:
        if m & bit:
            return None
        out.append((m & low) | ((m >> 1) & ~low))
    return NdType(A.d - 1, tuple(out))
