"""Chessboard complexes, their orientation cycles and the square-board collapse."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass

from .simplicial import Chain, Complex, Permutation, Simplex, permutation_sign


def vertex_id(i: int, j: int, r: int) -> int:
    """Column-major id of cell (row i, column j), both 1-based."""
    return (j - 1) * r + (i - 1)


def cell(v: int, r: int) -> tuple[int, int]:
    return v % r + 1, v // r + 1


@dataclass(frozen=True)
class ChessboardSpec:
    r: int
    n: int

    def __post_init__(self):
        if self.r < 2 or self.n < 1:
            raise ValueError(f"need r >= 2 and n >= 1, got r={self.r}, n={self.n}")


def chessboard_complex(spec: ChessboardSpec | tuple[int, int]) -> Complex:
    """The r x n chessboard complex: non-attacking rook placements.

    Facets are the maximal placements of ``min(r, n)`` rooks.
    """
    if not isinstance(spec, ChessboardSpec):
        spec = ChessboardSpec(*spec)
    r, n = spec.r, spec.n
    k = min(r, n)
    facets = set()
    for cols in itertools.combinations(range(1, n + 1), k):
        for rows in itertools.permutations(range(1, r + 1), k):
            facets.add(tuple(sorted(vertex_id(i, j, r) for i, j in zip(rows, cols))))
    labels = tuple(cell(v, r) for v in range(r * n))
    return Complex(r * n, tuple(sorted(facets)), labels)


def orientation_terms(r: int):
    """Yield ``(simplex, sign)`` for the terms of the orientation cycle of Δ_{r,r-1}.

    One term per permutation of the r rows; the rook in column c sits in
    row ``π(c)`` and the coefficient is ``sgn π``.  Allowed for r = 2 as well,
    where it is the reduced 0-cycle ⟨(1,1)⟩ - ⟨(2,1)⟩.
    """
    for p in itertools.permutations(range(1, r + 1)):
        yield tuple(vertex_id(p[c], c + 1, r) for c in range(r - 1)), permutation_sign(p)


def orientation_cycle(r: int) -> Chain:
    if r < 3:
        raise ValueError("the orientation cycle is defined for r >= 3")
    return Chain(r - 2, dict(orientation_terms(r)))


@dataclass
class CollapseReport:
    valid: bool
    pairs: int
    equivariant: bool
    remaining_dimension: int

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "pairs": self.pairs,
            "equivariant": self.equivariant,
            "remaining_dimension": self.remaining_dimension,
        }


def _drop_last_column(facet: Simplex, r: int) -> Simplex:
    return tuple(v for v in facet if cell(v, r)[1] != r)


def collapse_matching(r: int) -> CollapseReport:
    """Pair each facet of Δ_{r,r} with the subfacet missing its column-r rook.

    The pairing is checked directly: every such subfacet must be a free face
    (contained in exactly one facet), distinct facets must give distinct
    subfacets, and the pairing must commute with permuting rows.
    """
    if r < 2:
        raise ValueError("need r >= 2")
    board = chessboard_complex(ChessboardSpec(r, r))
    matching = {f: _drop_last_column(f, r) for f in board.facets}

    # brute-force incidence: count facets containing each ridge
    incidence = Counter()
    for f in board.facets:
        for i in range(len(f)):
            incidence[f[:i] + f[i + 1:]] += 1
    free = all(incidence[sub] == 1 for sub in matching.values())
    distinct = len(set(matching.values())) == len(matching)

    labels = board.labels
    index = {lab: v for v, lab in enumerate(labels)}

    def act(p: Permutation, s: Simplex) -> Simplex:
        return tuple(sorted(index[(p(labels[v][0]), labels[v][1])] for v in s))

    equivariant = all(
        matching[act(p, f)] == act(p, sub)
        for p in Permutation.all(r)
        for f, sub in matching.items()
    )

    removed = set(matching) | set(matching.values())
    remaining = -1
    for dim in range(board.dimension, -1, -1):
        if any(s not in removed for s in board.faces(dim)):
            remaining = dim
            break
    return CollapseReport(free and distinct, len(matching), equivariant, remaining)
