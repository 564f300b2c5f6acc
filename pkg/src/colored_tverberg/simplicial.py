"""Exact integer simplicial algebra.

Simplices are tuples of strictly increasing vertex ids.  Chains are sparse
maps from such tuples to nonzero integers; the orientation of a simplex
relative to its increasing vertex order is folded into the coefficient.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import ComplexTooLarge
from .snf import invariant_factors

Simplex = tuple[int, ...]
Label = tuple[int, int]

MAX_HOMOLOGY_FACES = 100_000


def canonical(vertices: Sequence[int]) -> tuple[Simplex, int]:
    """Sort a vertex list, returning the sorted simplex and the permutation sign.

    Returns sign 0 if a vertex repeats (degenerate simplex).
    """
    vs = list(vertices)
    if not vs:
        raise ValueError("empty simplex")
    sign = 1
    # insertion sort keeps track of the transposition count
    for i in range(1, len(vs)):
        j = i
        while j > 0 and vs[j - 1] > vs[j]:
            vs[j - 1], vs[j] = vs[j], vs[j - 1]
            sign = -sign
            j -= 1
    for a, b in zip(vs, vs[1:]):
        if a == b:
            return tuple(vs), 0
    return tuple(vs), sign


class Chain:
    """Formal integer combination of oriented simplices of one dimension."""

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: Mapping[Simplex, int] | None = None):
        self.dim = dim
        self.terms: dict[Simplex, int] = {}
        if terms:
            for s, c in terms.items():
                if len(s) != dim + 1:
                    raise ValueError(f"simplex {s} does not have dimension {dim}")
                if c:
                    self.terms[s] = c

    @classmethod
    def from_oriented(cls, vertices: Sequence[int], coeff: int = 1) -> "Chain":
        s, sign = canonical(vertices)
        return cls(len(s) - 1, {s: sign * coeff} if sign else None)

    def add_term(self, vertices: Sequence[int], coeff: int) -> None:
        """Accumulate ``coeff`` times the oriented simplex ``vertices`` in place."""
        s, sign = canonical(vertices)
        if len(s) != self.dim + 1:
            raise ValueError(f"simplex {s} does not have dimension {self.dim}")
        if not sign or not coeff:
            return
        v = self.terms.get(s, 0) + sign * coeff
        if v:
            self.terms[s] = v
        else:
            self.terms.pop(s, None)

    def __getitem__(self, s: Simplex) -> int:
        return self.terms.get(tuple(s), 0)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[Simplex, int]]:
        return iter(sorted(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Chain):
            return NotImplemented
        if not self.terms and not other.terms:
            return True
        return self.dim == other.dim and self.terms == other.terms

    def _combine(self, other: "Chain", factor: int) -> "Chain":
        if self.terms and other.terms and self.dim != other.dim:
            raise ValueError("cannot add chains of different dimensions")
        dim = self.dim if self.terms or not other.terms else other.dim
        out = Chain(dim, self.terms)
        for s, c in other.terms.items():
            v = out.terms.get(s, 0) + factor * c
            if v:
                out.terms[s] = v
            else:
                out.terms.pop(s, None)
        return out

    def __add__(self, other: "Chain") -> "Chain":
        return self._combine(other, 1)

    def __sub__(self, other: "Chain") -> "Chain":
        return self._combine(other, -1)

    def __neg__(self) -> "Chain":
        return Chain(self.dim, {s: -c for s, c in self.terms.items()})

    def __mul__(self, k: int) -> "Chain":
        return Chain(self.dim, {s: k * c for s, c in self.terms.items()})

    __rmul__ = __mul__

    def __repr__(self) -> str:
        body = " ".join(f"{c:+d}{list(s)}" for s, c in self)
        return f"Chain(dim={self.dim}: {body or '0'})"

    def filter(self, keep) -> "Chain":
        return Chain(self.dim, {s: c for s, c in self.terms.items() if keep(s)})

    def to_json(self) -> dict:
        return {"dim": self.dim, "terms": [{"simplex": list(s), "coeff": c} for s, c in self]}

    @classmethod
    def from_json(cls, data: Mapping) -> "Chain":
        chain = cls(int(data["dim"]))
        for term in data["terms"]:
            chain.add_term(term["simplex"], int(term["coeff"]))
        return chain


@dataclass(frozen=True)
class Permutation:
    """A permutation of ``1..r`` stored by its images."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(self.images)}: {self.images}")

    @classmethod
    def identity(cls, r: int) -> "Permutation":
        return cls(tuple(range(1, r + 1)))

    @classmethod
    def transposition(cls, r: int, i: int, j: int) -> "Permutation":
        images = list(range(1, r + 1))
        images[i - 1], images[j - 1] = j, i
        return cls(tuple(images))

    @classmethod
    def all(cls, r: int) -> Iterator["Permutation"]:
        """All of S_r in lexicographic order of images."""
        for p in itertools.permutations(range(1, r + 1)):
            yield cls(p)

    @property
    def r(self) -> int:
        return len(self.images)

    @property
    def sign(self) -> int:
        return permutation_sign(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition: ``(p * q)(i) == p(q(i))``."""
        return Permutation(tuple(self.images[q - 1] for q in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.r
        for i, p in enumerate(self.images, start=1):
            inv[p - 1] = i
        return Permutation(tuple(inv))


def permutation_sign(images: Sequence[int]) -> int:
    """Parity sign of a sequence of distinct values, via cycle counting."""
    order = sorted(images)
    pos = {v: k for k, v in enumerate(order)}
    seen = [False] * len(images)
    sign = 1
    for start in range(len(images)):
        if seen[start]:
            continue
        length = 0
        k = start
        while not seen[k]:
            seen[k] = True
            k = pos[images[k]]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@dataclass(frozen=True)
class Complex:
    """A finite simplicial complex stored by its facets.

    ``labels`` optionally gives each vertex id a ``(row, column)`` cell, as for
    chessboard complexes and their joins.
    """

    num_vertices: int
    facets: tuple[Simplex, ...]
    labels: tuple[Label, ...] | None = None
    _faces: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def dimension(self) -> int:
        return max(len(f) for f in self.facets) - 1

    def faces(self, dim: int) -> list[Simplex]:
        """All faces of the given dimension, sorted."""
        if dim not in self._faces:
            if dim < 0 or dim > self.dimension:
                self._faces[dim] = []
            else:
                out = set()
                for f in self.facets:
                    if len(f) > dim:
                        out.update(itertools.combinations(f, dim + 1))
                self._faces[dim] = sorted(out)
        return self._faces[dim]

    def to_json(self) -> dict:
        data = {"num_vertices": self.num_vertices, "facets": [list(f) for f in self.facets]}
        if self.labels is not None:
            data["labels"] = [list(lab) for lab in self.labels]
        return data

    @classmethod
    def from_json(cls, data: Mapping) -> "Complex":
        labels = data.get("labels")
        return make_complex(data["num_vertices"], data["facets"], labels=labels)


def make_complex(
    num_vertices: int,
    facets: Iterable[Sequence[int]],
    labels: Sequence[Sequence[int]] | None = None,
) -> Complex:
    """Build a complex, canonicalizing facets and dropping non-maximal ones."""
    cells = set()
    for f in facets:
        f = list(f)
        if not f:
            raise ValueError("empty facet")
        for v in f:
            if not 0 <= v < num_vertices:
                raise ValueError(f"vertex id {v} out of range 0..{num_vertices - 1}")
        cells.add(tuple(sorted(set(f))))
    if not cells:
        raise ValueError("a complex needs at least one facet")
    by_size = sorted(cells, key=len, reverse=True)
    kept: list[Simplex] = []
    kept_sets: list[frozenset] = []
    for s in by_size:
        ss = frozenset(s)
        if any(ss < k for k in kept_sets):
            continue
        kept.append(s)
        kept_sets.append(ss)
    lab = None
    if labels is not None:
        lab = tuple((int(a), int(b)) for a, b in labels)
        if len(lab) != num_vertices:
            raise ValueError("labels must cover every vertex")
        if len(set(lab)) != len(lab):
            raise ValueError("vertex labels must be unique")
    return Complex(num_vertices, tuple(sorted(kept)), lab)


def boundary(c: Chain) -> Chain:
    """Alternating-sign simplicial boundary.

    A 0-chain has no boundary in the unaugmented complex; the result is the
    empty chain tagged with dimension -1.
    """
    if c.dim <= 0:
        return Chain(-1)
    out: dict[Simplex, int] = defaultdict(int)
    for s, coeff in c.terms.items():
        for i in range(len(s)):
            face = s[:i] + s[i + 1:]
            out[face] += coeff if i % 2 == 0 else -coeff
    return Chain(c.dim - 1, out)


def join(a: Complex, b: Complex) -> Complex:
    """Join of two complexes; the vertices of ``b`` follow those of ``a``.

    When both complexes are labeled, the columns of ``b`` are shifted past the
    last column of ``a`` so the labeled array reads left to right.
    """
    shift = a.num_vertices
    facets = tuple(
        sorted(fa + tuple(v + shift for v in fb) for fa in a.facets for fb in b.facets)
    )
    labels = None
    if a.labels is not None and b.labels is not None:
        col_shift = max(col for _, col in a.labels)
        labels = a.labels + tuple((row, col + col_shift) for row, col in b.labels)
    return Complex(a.num_vertices + b.num_vertices, facets, labels)


def join_chains(a: Chain, b: Chain, shift: int) -> Chain:
    """Join of chains; vertex ids of ``b`` are shifted by ``shift``."""
    out = Chain(a.dim + b.dim + 1)
    for sa, ca in a.terms.items():
        for sb, cb in b.terms.items():
            out.terms[sa + tuple(v + shift for v in sb)] = ca * cb
    return out


def apply_permutation(p: Permutation, c: Chain, labels: Sequence[Label]) -> Chain:
    """Act on a chain by permuting rows: vertex ``(i, j)`` goes to ``(p(i), j)``.

    ``labels[v]`` is the ``(row, column)`` cell of vertex id ``v``.  Vertex
    lists are re-sorted after relabeling and the orientation sign is absorbed
    into the coefficient.
    """
    index = {lab: v for v, lab in enumerate(labels)}
    images = {}
    out = Chain(c.dim)
    for s, coeff in c.terms.items():
        moved = []
        for v in s:
            if v not in images:
                if v >= len(labels) or labels[v] is None:
                    raise ValueError(f"vertex {v} carries no (row, column) label")
                row, col = labels[v]
                target = (p(row), col)
                if target not in index:
                    raise ValueError(f"no vertex labeled {target}")
                images[v] = index[target]
            moved.append(images[v])
        out.add_term(moved, coeff)
    return out


def boundary_matrix(k: Complex, dim: int) -> list[list[int]]:
    """Integer matrix of the boundary map from dim-faces to (dim-1)-faces."""
    rows = k.faces(dim - 1)
    cols = k.faces(dim)
    index = {s: i for i, s in enumerate(rows)}
    m = [[0] * len(cols) for _ in rows]
    for j, s in enumerate(cols):
        for i in range(len(s)):
            m[index[s[:i] + s[i + 1:]]][j] = 1 if i % 2 == 0 else -1
    return m


def homology(k: Complex, dim: int) -> tuple[int, list[int]]:
    """Integer homology ``H_dim(k; Z)`` as ``(betti, torsion)``."""
    if not 0 <= dim <= k.dimension:
        raise ValueError(f"dimension {dim} outside 0..{k.dimension}")
    sizes = [len(k.faces(i)) for i in (dim - 1, dim, dim + 1) if i >= 0]
    if sum(sizes) > MAX_HOMOLOGY_FACES:
        raise ComplexTooLarge(f"{sum(sizes)} faces exceed the homology limit {MAX_HOMOLOGY_FACES}")
    n = len(k.faces(dim))
    rank_out = len(invariant_factors(boundary_matrix(k, dim))) if dim > 0 else 0
    if dim < k.dimension:
        factors_in = invariant_factors(boundary_matrix(k, dim + 1))
    else:
        factors_in = []
    betti = n - rank_out - len(factors_in)
    return betti, [f for f in factors_in if f > 1]


def f_vector(k: Complex) -> list[int]:
    return [len(k.faces(i)) for i in range(k.dimension + 1)]


def euler_characteristic(k: Complex) -> int:
    return sum((-1) ** i * n for i, n in enumerate(f_vector(k)))


@dataclass
class PseudomanifoldReport:
    pure: bool
    ridge_degree_two: bool
    strongly_connected: bool
    orientable: bool

    @property
    def ok(self) -> bool:
        return self.pure and self.ridge_degree_two and self.strongly_connected and self.orientable


def is_pseudomanifold(k: Complex) -> PseudomanifoldReport:
    """Check the pseudomanifold conditions face by face.

    Orientability is decided by propagating facet signs across ridges, so it
    is only meaningful (and only reported true) when every ridge has degree two.
    """
    dim = k.dimension
    pure = all(len(f) == dim + 1 for f in k.facets)
    if dim == 0:
        # ridges are the empty face: a 0-pseudomanifold is a pair of points
        two = len(k.facets) == 2
        return PseudomanifoldReport(pure, two, two, two)
    ridges: dict[Simplex, list[tuple[int, int]]] = defaultdict(list)
    for fi, f in enumerate(k.facets):
        for i in range(len(f)):
            ridges[f[:i] + f[i + 1:]].append((fi, 1 if i % 2 == 0 else -1))
    ridge_two = all(len(v) == 2 for v in ridges.values())

    adj: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for inc in ridges.values():
        if len(inc) == 2:
            (f1, s1), (f2, s2) = inc
            # opposite induced orientations cancel when the facets get signs o1, o2
            # with o1*s1 + o2*s2 == 0, i.e. o2 == -o1*s1*s2
            adj[f1].append((f2, -s1 * s2))
            adj[f2].append((f1, -s1 * s2))
        else:
            for a, b in itertools.combinations([f for f, _ in inc], 2):
                adj[a].append((b, 0))
                adj[b].append((a, 0))
    orient = {0: 1}
    consistent = True
    stack = [0]
    while stack:
        f = stack.pop()
        for g, rel in adj[f]:
            if g not in orient:
                orient[g] = orient[f] * rel if rel else 1
                stack.append(g)
            elif rel and orient[g] != orient[f] * rel:
                consistent = False
    connected = len(orient) == len(k.facets)
    return PseudomanifoldReport(pure, ridge_two, connected, pure and ridge_two and consistent)


def simplex_complex(n: int) -> Complex:
    """The full n-simplex on vertices 0..n."""
    return make_complex(n + 1, [range(n + 1)])


def simplex_boundary_complex(n: int) -> Complex:
    """Boundary of the n-simplex, an (n-1)-sphere."""
    return make_complex(n + 1, [tuple(c) for c in itertools.combinations(range(n + 1), n)])

