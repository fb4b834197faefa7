"""Exact feasibility of mixed strict/weak linear systems by Fourier–Motzkin elimination.

A constraint ``c·x + b < 0`` (strict) or ``c·x + b <= 0`` (weak) is a
:class:`Constraint`; equalities ``c·x + b = 0`` are eliminated first by
substitution.  Combining an upper and a lower bound gives a strict constraint
iff either parent is strict.  Witness points are recovered by
back-substitution through the stored elimination stages.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

Vector = tuple[Fraction, ...]


@dataclass(frozen=True)
class Constraint:
    coeffs: Vector
    const: Fraction
    strict: bool

    def holds(self, x: Sequence[Fraction]) -> bool:
        v = sum((c * xi for c, xi in zip(self.coeffs, x)), self.const)
        return v < 0 if self.strict else v <= 0


@dataclass
class LinearSystem:
    """Inequalities and equalities over ``nvars`` rational unknowns."""

    nvars: int
    inequalities: list[Constraint] = field(default_factory=list)
    equalities: list[tuple[Vector, Fraction]] = field(default_factory=list)

    def add_le(self, coeffs, const, strict: bool) -> None:
        self.inequalities.append(Constraint(_vec(coeffs), Fraction(const), strict))

    def add_eq(self, coeffs, const) -> None:
        self.equalities.append((_vec(coeffs), Fraction(const)))

    def holds(self, x: Sequence[Fraction]) -> bool:
        if any(not c.holds(x) for c in self.inequalities):
            return False
        for coeffs, const in self.equalities:
            if sum((c * xi for c, xi in zip(coeffs, x)), const) != 0:
                return False
        return True


def _vec(coeffs) -> Vector:
    return tuple(Fraction(c) for c in coeffs)


def _normalize(con: Constraint) -> Constraint:
    for c in con.coeffs:
        if c:
            s = abs(c)
            return Constraint(tuple(v / s for v in con.coeffs), con.const / s, con.strict)
    return con


def _prune(cons: list[Constraint]) -> list[Constraint] | None:
    """Drop trivial and proportional-redundant constraints; ``None`` on contradiction."""
    best: dict[Vector, Constraint] = {}
    for con in cons:
        con = _normalize(con)
        if not any(con.coeffs):
            if con.const > 0 or (con.strict and con.const == 0):
                return None
            continue
        old = best.get(con.coeffs)
        if old is None or con.const > old.const or (con.const == old.const and con.strict):
            best[con.coeffs] = con
    return list(best.values())


def _substitute(con_coeffs: Vector, const: Fraction, var: int, expr: tuple[Vector, Fraction]):
    """Replace ``x_var`` by ``expr_coeffs·x + expr_const`` in a linear form."""
    c = con_coeffs[var]
    if not c:
        return con_coeffs, const
    e_coeffs, e_const = expr
    coeffs = tuple(
        (0 if k == var else a) + c * e for k, (a, e) in enumerate(zip(con_coeffs, e_coeffs))
    )
    return tuple(Fraction(v) for v in coeffs), const + c * e_const


def _pick_value(con_list: list[Constraint], var: int, x: list[Fraction | None]) -> Fraction:
    lo, lo_strict, hi, hi_strict = None, False, None, False
    for con in con_list:
        c = con.coeffs[var]
        if not c:
            continue
        rest = con.const + sum(
            (a * x[k] for k, a in enumerate(con.coeffs) if k != var and a), Fraction(0)
        )
        bound = -rest / c
        if c > 0:
            if hi is None or bound < hi or (bound == hi and con.strict):
                hi, hi_strict = bound, con.strict
        else:
            if lo is None or bound > lo or (bound == lo and con.strict):
                lo, lo_strict = bound, con.strict
    if lo is not None and hi is not None:
        if lo == hi:
            if lo_strict or hi_strict:
                raise AssertionError("empty interval during back-substitution")
            return lo
        return (lo + hi) / 2
    if lo is not None:
        return lo + 1
    if hi is not None:
        return hi - 1
    return Fraction(0)


def solve(system: LinearSystem) -> tuple[Fraction, ...] | None:
    """A rational point satisfying ``system``, or ``None`` if it is infeasible."""
    m = system.nvars
    ineqs = [(c.coeffs, c.const, c.strict) for c in system.inequalities]
    eqs = list(system.equalities)

    # equalities first: each pivot expresses one variable through the others
    substitutions: list[tuple[int, tuple[Vector, Fraction]]] = []
    while eqs:
        coeffs, const = eqs.pop()
        pivot = next((k for k, c in enumerate(coeffs) if c), None)
        if pivot is None:
            if const != 0:
                return None
            continue
        p = coeffs[pivot]
        expr = (
            tuple(Fraction(0) if k == pivot else -c / p for k, c in enumerate(coeffs)),
            -const / p,
        )
        substitutions.append((pivot, expr))
        eqs = [_substitute(c, b, pivot, expr) for c, b in eqs]
        ineqs = [(*_substitute(c, b, pivot, expr), s) for c, b, s in ineqs]

    eliminated = {v for v, _ in substitutions}
    cons = _prune([Constraint(c, b, s) for c, b, s in ineqs])
    if cons is None:
        return None

    stages: list[tuple[int, list[Constraint]]] = []
    for var in range(m):
        if var in eliminated:
            continue
        stages.append((var, cons))
        upper = [c for c in cons if c.coeffs[var] > 0]
        lower = [c for c in cons if c.coeffs[var] < 0]
        nxt = [c for c in cons if not c.coeffs[var]]
        for u in upper:
            for w in lower:
                cu, cw = u.coeffs[var], -w.coeffs[var]
                nxt.append(
                    Constraint(
                        tuple(cw * a + cu * b for a, b in zip(u.coeffs, w.coeffs)),
                        cw * u.const + cu * w.const,
                        u.strict or w.strict,
                    )
                )
        cons = _prune(nxt)
        if cons is None:
            return None

    x: list[Fraction | None] = [None] * m
    for var, stage in reversed(stages):
        x[var] = _pick_value(stage, var, x)
    for var, (e_coeffs, e_const) in reversed(substitutions):
        x[var] = e_const + sum(
            (c * x[k] for k, c in enumerate(e_coeffs) if c), Fraction(0)
        )
    point = tuple(Fraction(v) for v in x)
    if not system.holds(point):
        raise AssertionError("Fourier–Motzkin witness violates the system")
    return point


def is_feasible(system: LinearSystem) -> bool:
    return solve(system) is not None
