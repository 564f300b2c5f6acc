"""Exact rational LP feasibility: phase-1 simplex with Bland's rule.

The tableau is kept fraction-free: rows are scaled to integers and every
pivot divides exactly by the previous pivot, so all entries stay integers
sharing one positive denominator.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence


def find_feasible(a_eq: Sequence[Sequence], b_eq: Sequence) -> list[Fraction] | None:
    """Return some ``x >= 0`` with ``a_eq @ x == b_eq``, or None if none exists.

    Phase-1 tableau simplex on the artificial-variable problem.  Bland's
    smallest-index rule guarantees termination; the result is a basic
    feasible solution.
    """
    m = len(a_eq)
    n = len(a_eq[0]) if m else 0
    width = n + m
    rows: list[list[int]] = []
    for i in range(m):
        vals = [_ratio(v) for v in a_eq[i]] + [_ratio(b_eq[i])]
        scale = lcm(*(den for _, den in vals))
        if vals[-1][0] < 0:
            scale = -scale
        ints = [num * (scale // den) for num, den in vals]
        rows.append(ints[:n] + [1 if k == i else 0 for k in range(m)] + [ints[n]])
    basis = [n + i for i in range(m)]
    # reduced costs for minimizing the sum of artificials
    cost = [0] * (width + 1)
    for row in rows:
        for j in range(n):
            cost[j] -= row[j]
        cost[width] -= row[width]
    denom = 1
    while True:
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        leave = None
        for i, row in enumerate(rows):
            if row[enter] > 0:
                if leave is None:
                    leave = i
                    continue
                best = rows[leave]
                # compare rhs ratios without dividing
                lhs = row[width] * best[enter]
                rhs = best[width] * row[enter]
                if lhs < rhs or (lhs == rhs and basis[i] < basis[leave]):
                    leave = i
        if leave is None:
            # unbounded direction cannot occur for a phase-1 objective bounded below
            raise AssertionError("phase-1 objective unbounded")
        denom = _pivot(rows, cost, leave, enter, width, denom)
        basis[leave] = enter
    if cost[width] != 0:
        return None
    x = [Fraction(0)] * n
    for i, var in enumerate(basis):
        if var < n:
            x[var] = Fraction(rows[i][width], denom)
    return x


def _ratio(v) -> tuple[int, int]:
    if isinstance(v, int):
        return v, 1
    if not isinstance(v, Fraction):
        v = Fraction(v)
    return v.numerator, v.denominator


def _pivot(rows, cost, leave, enter, width, denom) -> int:
    """Integer pivot; returns the new common denominator (the pivot, which is positive)."""
    prow = rows[leave]
    p = prow[enter]
    for row in rows + [cost]:
        if row is prow:
            continue
        f = row[enter]
        if f:
            for j in range(width + 1):
                row[j] = (row[j] * p - f * prow[j]) // denom
        elif p != denom:
            for j in range(width + 1):
                if row[j]:
                    row[j] = row[j] * p // denom
    return p
