"""Smith normal form over the integers (invariant factors only)."""

from __future__ import annotations


def invariant_factors(matrix: list[list[int]]) -> list[int]:
    """Return the nonzero diagonal entries of the Smith normal form.

    The entries are positive and each divides the next.  The input is not
    modified.  Only the diagonal is tracked; the unimodular transforms are
    discarded since homology needs rank and torsion alone.

    >>> invariant_factors([[2, 4], [6, 8]])
    [2, 4]
    >>> invariant_factors([[0, 0], [0, 0]])
    []
    """
    a = [list(row) for row in matrix]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    diag: list[int] = []
    t = 0
    while t < rows and t < cols:
        pivot = _smallest_nonzero(a, t, rows, cols)
        if pivot is None:
            break
        pi, pj = pivot
        a[t], a[pi] = a[pi], a[t]
        if pj != t:
            for row in a:
                row[t], row[pj] = row[pj], row[t]
        while True:
            done = True
            p = a[t][t]
            # clear the column below the pivot
            for i in range(t + 1, rows):
                v = a[i][t]
                if v:
                    q = v // p
                    if q:
                        ri, rt = a[i], a[t]
                        for j in range(t, cols):
                            if rt[j]:
                                ri[j] -= q * rt[j]
                    if a[i][t]:
                        done = False
            # clear the row right of the pivot
            rt = a[t]
            for j in range(t + 1, cols):
                v = rt[j]
                if v:
                    q = v // p
                    if q:
                        for i in range(t, rows):
                            if a[i][t]:
                                a[i][j] -= q * a[i][t]
                    if rt[j]:
                        done = False
            if done:
                # divisibility: the pivot must divide every remaining entry
                bad = _first_not_divisible(a, t, rows, cols, p)
                if bad is None:
                    break
                bi, _ = bad
                rt, rb = a[t], a[bi]
                for j in range(t, cols):
                    rt[j] += rb[j]
                continue
            pivot = _smallest_nonzero(a, t, rows, cols)
            pi, pj = pivot
            a[t], a[pi] = a[pi], a[t]
            if pj != t:
                for row in a:
                    row[t], row[pj] = row[pj], row[t]
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def _smallest_nonzero(a, t, rows, cols):
    best = None
    best_val = 0
    for i in range(t, rows):
        row = a[i]
        for j in range(t, cols):
            v = row[j]
            if v:
                av = abs(v)
                if best is None or av < best_val:
                    best, best_val = (i, j), av
                    if av == 1:
                        return best
    return best


def _first_not_divisible(a, t, rows, cols, p):
    for i in range(t + 1, rows):
        row = a[i]
        for j in range(t + 1, cols):
            if row[j] % p:
                return i, j
    return None
