"""Comparability multigraphs of type pairs and mixed directed-cycle detection.

A mixed cycle is a closed walk that uses at least one directed edge and
traverses every directed edge forward.  Such a cycle exists iff some directed
edge stays inside a connected component of the undirected edges, or the
digraph obtained by contracting those components has a directed cycle.
"""

from __future__ import annotations

import heapq
from collections import Counter, deque
from dataclasses import dataclass, field

from .errors import NotSubset, ParameterMismatch
from .ndtype import (
    DisjointSet,
    NdType,
    OrderedPartition,
    bits,
    full_mask,
    leq,
    refine,
)

UNDIRECTED = "undirected"
DIRECTED = "directed"


@dataclass
class MixedMultigraph:
    """Nodes ``1..d``; undirected edges keyed by sorted pairs, directed by (tail, head)."""

    d: int
    undirected: Counter = field(default_factory=Counter)
    directed: Counter = field(default_factory=Counter)

    def add_undirected(self, j: int, k: int) -> None:
        if j == k:
            return
        self.undirected[(min(j, k), max(j, k))] += 1

    def add_directed(self, j: int, k: int) -> None:
        if j == k:
            return
        self.directed[(j, k)] += 1

    def has_undirected(self, j: int, k: int) -> bool:
        return self.undirected[(min(j, k), max(j, k))] > 0

    def has_directed(self, j: int, k: int) -> bool:
        return self.directed[(j, k)] > 0

    def reversed(self) -> MixedMultigraph:
        return MixedMultigraph(
            self.d,
            Counter(self.undirected),
            Counter({(k, j): c for (j, k), c in self.directed.items()}),
        )

    def to_dot(self) -> str:
        lines = ["digraph CG {"]
        lines += [f"  {j};" for j in range(1, self.d + 1)]
        for (j, k), c in sorted(self.undirected.items()):
            lines += [f'  {j} -> {k} [dir=none, label="undirected"];'] * c
        for (j, k), c in sorted(self.directed.items()):
            lines += [f"  {j} -> {k};"] * c
        lines.append("}")
        return "\n".join(lines)

    def to_mixed_text(self) -> str:
        """Edge list in ``a -- b`` / ``a -> b`` notation, one edge per line."""
        lines = []
        for (j, k), c in sorted(self.undirected.items()):
            lines += [f"{j} -- {k}"] * c
        for (j, k), c in sorted(self.directed.items()):
            lines += [f"{j} -> {k}"] * c
        return "\n".join(lines)


@dataclass(frozen=True)
class CycleWitness:
    """A closed walk given as steps ``(from, to, kind)`` with 1-based nodes."""

    steps: tuple[tuple[int, int, str], ...]

    @property
    def nodes(self) -> tuple[int, ...]:
        return tuple(s[0] for s in self.steps) + (self.steps[0][0],)

    def replays_on(self, G: MixedMultigraph) -> bool:
        """Check that this is a genuine mixed directed cycle of ``G``."""
        if not self.steps:
            return False
        if not any(kind == DIRECTED for _, _, kind in self.steps):
            return False
        for (a, b, kind), nxt in zip(self.steps, self.steps[1:] + self.steps[:1]):
            if b != nxt[0]:
                return False
            if kind == DIRECTED and not G.has_directed(a, b):
                return False
            if kind == UNDIRECTED and not G.has_undirected(a, b):
                return False
            if kind not in (DIRECTED, UNDIRECTED):
                return False
        return True

    def __str__(self) -> str:
        out = [str(self.steps[0][0])]
        for _, b, kind in self.steps:
            out.append(("->" if kind == DIRECTED else "--") + str(b))
        return "".join(out)

    def to_json(self) -> list[list]:
        return [[a, b, kind] for a, b, kind in self.steps]


def comparability_graph(A: NdType, B: NdType) -> MixedMultigraph:
    """The comparability multigraph of ``A`` and ``B``.

    Per position ``i`` and each ``j`` in ``A_i``, ``k`` in ``B_i`` with
    ``j != k``: an undirected edge when both lie in ``A_i ∩ B_i`` (one per
    unordered pair and position), otherwise a directed edge ``j -> k``.
    """
    if A.n != B.n or A.d != B.d:
        raise ParameterMismatch(f"({A.n},{A.d})-type vs ({B.n},{B.d})-type")
    G = MixedMultigraph(A.d)
    for a, b in zip(A.masks, B.masks):
        common = a & b
        for j in bits(a):
            for k in bits(b):
                if j == k:
                    continue
                if (common >> j) & 1 and (common >> k) & 1:
                    if j < k:
                        G.add_undirected(j + 1, k + 1)
                else:
                    G.add_directed(j + 1, k + 1)
    return G


def _undirected_path(G: MixedMultigraph, start: int, goal: int) -> list[int]:
    """Node path from ``start`` to ``goal`` over undirected edges (BFS)."""
    if start == goal:
        return [start]
    adj: dict[int, list[int]] = {}
    for (j, k) in G.undirected:
        adj.setdefault(j, []).append(k)
        adj.setdefault(k, []).append(j)
    prev = {start: None}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v in sorted(adj.get(u, ())):
            if v not in prev:
                prev[v] = u
                if v == goal:
                    path = [v]
                    while prev[path[-1]] is not None:
                        path.append(prev[path[-1]])
                    return path[::-1]
                queue.append(v)
    raise AssertionError("nodes are not undirected-connected")


def _components(G: MixedMultigraph) -> DisjointSet:
    ds = DisjointSet(G.d + 1)
    for (j, k) in G.undirected:
        ds.union(j, k)
    return ds


def _expand(G: MixedMultigraph, directed_edges: list[tuple[int, int]]) -> CycleWitness:
    """Stitch a cyclic sequence of directed edges with undirected connecting paths."""
    steps = []
    for idx, (a, b) in enumerate(directed_edges):
        steps.append((a, b, DIRECTED))
        nxt = directed_edges[(idx + 1) % len(directed_edges)][0]
        path = _undirected_path(G, b, nxt)
        steps += [(u, v, UNDIRECTED) for u, v in zip(path, path[1:])]
    return CycleWitness(tuple(steps))


def find_cycle(G: MixedMultigraph) -> CycleWitness | None:
    """Return a mixed directed cycle of ``G``, or ``None`` if it is acyclic."""
    ds = _components(G)
    comp_edges: dict[int, list[tuple[int, int]]] = {}
    for (j, k) in sorted(G.directed):
        rj, rk = ds.find(j), ds.find(k)
        if rj == rk:
            return _expand(G, [(j, k)])
        comp_edges.setdefault(rj, []).append((j, k))

    # iterative DFS on the contracted digraph; colours 1 = on path, 2 = done
    colour: dict[int, int] = {}
    for root in sorted(comp_edges):
        if colour.get(root):
            continue
        path = [root]
        via: list[tuple[int, int]] = []  # via[k] leads from path[k] to path[k+1]
        iters = [iter(comp_edges[root])]
        colour[root] = 1
        while path:
            edge = next(iters[-1], None)
            if edge is None:
                colour[path.pop()] = 2
                iters.pop()
                if via:
                    via.pop()
                continue
            head = ds.find(edge[1])
            state = colour.get(head, 0)
            if state == 1:
                return _expand(G, via[path.index(head):] + [edge])
            if state == 0:
                colour[head] = 1
                path.append(head)
                via.append(edge)
                iters.append(iter(comp_edges.get(head, ())))
    return None


def is_acyclic(G: MixedMultigraph) -> tuple[bool, CycleWitness | None]:
    witness = find_cycle(G)
    return witness is None, witness


def comparable(A: NdType, B: NdType) -> bool:
    return find_cycle(comparability_graph(A, B)) is None


def _linear_extension(G: MixedMultigraph, letters: int) -> list[int]:
    """Kahn's algorithm on contracted components of ``letters`` (a bitmask).

    Ready components are emitted smallest-minimum-letter first.
    """
    ds = _components(G)
    members: dict[int, int] = {}
    for b in bits(letters):
        r = ds.find(b + 1)
        members[r] = members.get(r, 0) | (1 << b)
    succ: dict[int, set[int]] = {r: set() for r in members}
    indeg = {r: 0 for r in members}
    for (j, k) in G.directed:
        rj, rk = ds.find(j), ds.find(k)
        if rk not in succ[rj]:
            succ[rj].add(rk)
            indeg[rk] += 1
    ready = [(min(bits(members[r])), r) for r in members if indeg[r] == 0]
    heapq.heapify(ready)
    order = []
    while ready:
        _, r = heapq.heappop(ready)
        order.append(members[r])
        for s in succ[r]:
            indeg[s] -= 1
            if indeg[s] == 0:
                heapq.heappush(ready, (min(bits(members[s])), s))
    if len(order) != len(members):
        raise AssertionError("contracted graph is not acyclic")
    return order


def refinement_witness(A: NdType, B: NdType) -> OrderedPartition | CycleWitness:
    """An ordered partition ``P`` with ``refine(B, P) == A``, or a cycle proving none exists.

    Requires ``A ⊆ B``.  Letters absent from every entry of ``B`` form a final
    extra part.
    """
    if not leq(A, B):
        raise NotSubset(f"{A} is not contained in {B}")
    G = comparability_graph(A, B)
    cycle = find_cycle(G)
    if cycle is not None:
        return cycle
    used = B.union_mask
    parts = _linear_extension(G, used)
    rest = full_mask(B.d) & ~used
    if rest:
        parts.append(rest)
    P = OrderedPartition(B.d, tuple(parts))
    if refine(B, P) != A:
        raise AssertionError(f"witness {P} does not refine {B} to {A}")
    return P


def is_refinement(A: NdType, B: NdType) -> bool:
    """True iff ``A`` is a refinement of ``B``."""
    if not leq(A, B):
        return False
    return comparable(A, B)
