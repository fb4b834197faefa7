"""Arrangements of tropical hyperplanes from exact rational weight matrices.

Min-plus convention throughout: the type of a point ``x`` records, for each
hyperplane ``i``, the set of indices ``j`` minimizing ``a[i][j] + x[j]``.
Tropical projective space is modelled by pinning the last coordinate to 0.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch, InvalidParameters, LimitExceeded
from .fm import LinearSystem, solve
from .ndtype import NdType, all_types, bits, full_mask

MAX_ND = 30
MAX_CANDIDATES = 10**7


def parse_rational(value) -> Fraction:
    if isinstance(value, float):
        raise InvalidParameters(f"floating point weight {value!r}; use 'p/q' strings")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError, TypeError):
        raise InvalidParameters(f"not a rational: {value!r}") from None


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class WeightMatrix:
    """``n`` rows of ``d`` min-plus coefficients, one row per tropical hyperplane."""

    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if not self.rows or not self.rows[0]:
            raise InvalidParameters("weight matrix needs n, d >= 1")
        d = len(self.rows[0])
        if any(len(r) != d for r in self.rows):
            raise InvalidParameters("ragged weight matrix")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable]) -> WeightMatrix:
        return cls(tuple(tuple(parse_rational(v) for v in row) for row in rows))

    @classmethod
    def zero(cls, n: int, d: int) -> WeightMatrix:
        return cls(tuple((Fraction(0),) * d for _ in range(n)))

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def d(self) -> int:
        return len(self.rows[0])

    def to_json(self) -> dict:
        return {
            "format": "tropmat/1",
            "n": self.n,
            "d": self.d,
            "a": [[format_rational(v) for v in row] for row in self.rows],
        }

    @classmethod
    def from_json(cls, data: dict) -> WeightMatrix:
        W = cls.from_rows(data["a"])
        if "n" in data and data["n"] != W.n or "d" in data and data["d"] != W.d:
            raise InvalidParameters("declared n/d disagree with the matrix shape")
        return W

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def normalize_point(x: Sequence) -> tuple[Fraction, ...]:
    """Shift a point of tropical projective space so its last coordinate is 0."""
    pt = [parse_rational(v) for v in x]
    last = pt[-1]
    return tuple(v - last for v in pt)


def point_type(W: WeightMatrix, x: Sequence) -> NdType:
    if len(x) != W.d:
        raise DimensionMismatch(f"point has {len(x)} coordinates, weights have d={W.d}")
    x = normalize_point(x)
    masks = []
    for row in W.rows:
        vals = [a + xj for a, xj in zip(row, x)]
        low = min(vals)
        m = 0
        for j, v in enumerate(vals):
            if v == low:
                m |= 1 << j
        masks.append(m)
    return NdType(W.d, tuple(masks))


def type_system(W: WeightMatrix, A: NdType, strict: bool) -> LinearSystem:
    """The linear system in ``x_1..x_{d-1}`` (``x_d = 0``) whose solutions have type ``A``."""
    if A.n != W.n or A.d != W.d:
        raise DimensionMismatch(f"({A.n},{A.d})-type against a {W.n}x{W.d} matrix")
    d = W.d
    m = d - 1
    system = LinearSystem(m)

    def form(i: int, j: int):
        coeffs = [0] * m
        if j < m:
            coeffs[j] = 1
        return coeffs, W.rows[i][j]

    for i, mask in enumerate(A.masks):
        r = (mask & -mask).bit_length() - 1
        rc, rb = form(i, r)
        for j in bits(mask & ~(1 << r)):
            jc, jb = form(i, j)
            system.add_eq([a - b for a, b in zip(jc, rc)], jb - rb)
        for l in bits(full_mask(d) & ~mask):
            lc, lb = form(i, l)
            system.add_le([a - b for a, b in zip(rc, lc)], rb - lb, strict)
    return system


def type_witness(W: WeightMatrix, A: NdType, strict: bool = True) -> tuple[Fraction, ...] | None:
    """A point whose type is ``A`` (strict) or contains ``A`` (weak), or ``None``."""
    x = solve(type_system(W, A, strict))
    if x is None:
        return None
    return tuple(x) + (Fraction(0),)


def type_feasible(W: WeightMatrix, A: NdType, strict: bool = True) -> bool:
    return type_witness(W, A, strict) is not None


def _check_caps(n: int, d: int) -> None:
    if n * d > MAX_ND:
        raise LimitExceeded(f"n*d = {n * d} exceeds {MAX_ND}")
    if ((1 << d) - 1) ** n > MAX_CANDIDATES:
        raise LimitExceeded(f"(2^d-1)^n exceeds {MAX_CANDIDATES} candidate types")


def realizable_tom(W: WeightMatrix):
    """The set of types of all points of tropical projective space.

    Candidates are scanned by increasing total size; any superset of a weakly
    infeasible type is skipped, since its weak system implies the smaller one.
    """
    from .axioms import TypeCollection

    _check_caps(W.n, W.d)
    found = []
    dead: list[tuple[int, ...]] = []
    for A in all_types(W.n, W.d):
        masks = A.masks
        if any(all(k & ~a == 0 for k, a in zip(D, masks)) for D in dead):
            continue
        if type_feasible(W, A, strict=True):
            found.append(A)
        elif not type_feasible(W, A, strict=False):
            dead.append(masks)
    return TypeCollection(W.n, W.d, found)


def is_generic(W: WeightMatrix) -> bool:
    """True iff the arrangement is in general position (its subdivision is fine)."""
    from .mixsd import is_fine, tom_to_mixsd

    return is_fine(tom_to_mixsd(realizable_tom(W)))
