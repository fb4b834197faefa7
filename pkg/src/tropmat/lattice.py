"""Exact affine rank and normalized volume of lattice point configurations.

Volumes come from a placing (beneath–beyond) triangulation: points are added
one at a time and coned over every boundary facet they see strictly.  All
arithmetic is on integers, so the result is exact.
"""

from __future__ import annotations

import itertools
from collections import Counter
from fractions import Fraction
from typing import Sequence

from .errors import NotFullDim

Point = tuple[int, ...]


def det(rows: Sequence[Sequence[int]]) -> int:
    """Integer determinant by fraction-free (Bareiss) elimination."""
    a = [list(r) for r in rows]
    k = len(a)
    if k == 0:
        return 1
    sign, prev = 1, 1
    for c in range(k - 1):
        if a[c][c] == 0:
            swap = next((r for r in range(c + 1, k) if a[r][c] != 0), None)
            if swap is None:
                return 0
            a[c], a[swap] = a[swap], a[c]
            sign = -sign
        for r in range(c + 1, k):
            for s in range(c + 1, k):
                a[r][s] = (a[r][s] * a[c][c] - a[r][c] * a[c][s]) // prev
        prev = a[c][c]
    return sign * a[k - 1][k - 1]


def rank(rows: Sequence[Sequence]) -> int:
    m = [[Fraction(v) for v in r] for r in rows]
    r = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
    return r


def affine_rank(points: Sequence[Sequence]) -> int:
    pts = list(points)
    if len(pts) <= 1:
        return 0
    base = pts[0]
    return rank([[a - b for a, b in zip(p, base)] for p in pts[1:]])


def _orientation(facet: Sequence[Point], p: Point) -> int:
    base = facet[0]
    rows = [[a - b for a, b in zip(q, base)] for q in facet[1:]]
    rows.append([a - b for a, b in zip(p, base)])
    v = det(rows)
    return (v > 0) - (v < 0)


def placing_triangulation(points: Sequence[Point]) -> list[tuple[int, ...]]:
    """Simplices (as index tuples into the deduplicated ``points``) of a placing triangulation.

    The points must affinely span their ambient space.
    """
    pts = list(dict.fromkeys(tuple(p) for p in points))
    k = len(pts[0]) if pts else 0
    if not pts or affine_rank(pts) != k:
        raise NotFullDim("points do not span their ambient space")
    if k == 0:
        return [(0,)]

    basis = [0]
    for idx in range(1, len(pts)):
        if affine_rank([pts[b] for b in basis] + [pts[idx]]) == len(basis):
            basis.append(idx)
            if len(basis) == k + 1:
                break
    simplices = [tuple(basis)]
    # boundary facet -> index of a point strictly on its inner side
    facets: dict[tuple[int, ...], int] = {}
    for v in basis:
        facets[tuple(b for b in basis if b != v)] = v

    placed = set(basis)
    for idx in range(len(pts)):
        if idx in placed:
            continue
        p = pts[idx]
        visible = [
            F
            for F, ref in facets.items()
            if _orientation([pts[f] for f in F], p) * _orientation([pts[f] for f in F], pts[ref]) < 0
        ]
        placed.add(idx)
        if not visible:
            continue
        ridges = Counter(r for F in visible for r in itertools.combinations(F, k - 1))
        for F in visible:
            simplices.append(F + (idx,))
            for r in itertools.combinations(F, k - 1):
                if ridges[r] == 1:
                    apex = next(f for f in F if f not in r)
                    facets[tuple(sorted(r + (idx,)))] = apex
            del facets[F]
    return simplices


def normalized_volume(points: Sequence[Point]) -> int:
    """``k!`` times the Euclidean volume of the hull of full-dimensional points in ``Z^k``."""
    pts = list(dict.fromkeys(tuple(p) for p in points))
    total = 0
    for simplex in placing_triangulation(pts):
        base = pts[simplex[0]]
        total += abs(det([[a - b for a, b in zip(pts[s], base)] for s in simplex[1:]]))
    return total
