"""The configuration space (Δ_{r,r-1})^{*(d+1)} * [r] and its obstruction cocycle.

Vertices form an r x (N+1) array, N = (r-1)(d+1): d+1 chessboard blocks of
r-1 columns each, then one final column.  Vertex (row i, column c) has id
``(c-1)*r + (i-1)``, so increasing ids read the array left to right and the
row action never reorders the vertices of a simplex.

A facet picks one row per column (pairwise distinct inside each block) and is
encoded by that list of rows, its *facet code*.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import factorial, lcm
from typing import Iterator, Sequence

import numpy as np

from .chessboard import orientation_terms
from .errors import BudgetExceeded, GeneralPositionError
from .geometry import ColoredConfiguration, Point, RainbowPartition, reference_configuration
from .lp import find_feasible
from .simplicial import Chain, Complex, Permutation, Simplex, apply_permutation, boundary

DEFAULT_BUDGET = 10**7
FacetCode = tuple[int, ...]


class ConfigSpace:
    """The join X = (Δ_{r,r-1})^{*(d+1)} * [r] with its reference test map."""

    def __init__(self, d: int, r: int, budget: int = DEFAULT_BUDGET):
        if d < 1 or r < 2:
            raise ValueError(f"need d >= 1 and r >= 2, got d={d}, r={r}")
        self.d = d
        self.r = r
        self.N = (r - 1) * (d + 1)
        self.budget = budget
        self.facet_count = factorial(r) ** (d + 1) * r
        if self.facet_count > budget:
            raise BudgetExceeded(f"{self.facet_count} facets exceed the budget {budget}")

    def __repr__(self) -> str:
        return f"ConfigSpace(d={self.d}, r={self.r})"

    @property
    def columns(self) -> int:
        return self.N + 1

    def vertex(self, row: int, col: int) -> int:
        return (col - 1) * self.r + (row - 1)

    def cell(self, v: int) -> tuple[int, int]:
        return v % self.r + 1, v // self.r + 1

    @cached_property
    def labels(self) -> tuple[tuple[int, int], ...]:
        return tuple(self.cell(v) for v in range(self.r * self.columns))

    def block_columns(self, b: int) -> range:
        """Columns of chessboard block b (0-based), 1-based column numbers."""
        return range(b * (self.r - 1) + 1, (b + 1) * (self.r - 1) + 1)

    def facet_codes(self) -> Iterator[FacetCode]:
        """All facet codes in lexicographic order."""
        injections = list(itertools.permutations(range(1, self.r + 1), self.r - 1))
        for blocks in itertools.product(injections, repeat=self.d + 1):
            head = tuple(itertools.chain.from_iterable(blocks))
            for last in range(1, self.r + 1):
                yield head + (last,)

    def is_valid_code(self, code: Sequence[int]) -> bool:
        if len(code) != self.columns or any(not 1 <= x <= self.r for x in code):
            return False
        for b in range(self.d + 1):
            rows = [code[c - 1] for c in self.block_columns(b)]
            if len(set(rows)) != len(rows):
                return False
        return True

    def simplex(self, code: Sequence[int]) -> Simplex:
        return tuple(self.vertex(row, c) for c, row in enumerate(code, start=1))

    def code(self, s: Simplex) -> FacetCode:
        """Facet code of a full facet given by its vertex ids."""
        cells = [self.cell(v) for v in s]
        if [c for _, c in cells] != list(range(1, self.columns + 1)):
            raise ValueError(f"{s} is not a facet of {self}")
        return tuple(row for row, _ in cells)

    @cached_property
    def complex(self) -> Complex:
        facets = tuple(self.simplex(c) for c in self.facet_codes())
        return Complex(self.r * self.columns, facets, self.labels)

    def identity_code(self) -> FacetCode:
        return tuple(range(1, self.r)) * (self.d + 1) + (self.r,)

    # reference test map -------------------------------------------------

    @cached_property
    def reference(self) -> ColoredConfiguration:
        return reference_configuration(self.d, self.r)

    def column_point(self, col: int) -> Point:
        """Image of configuration point v_{col-1} under the reference map."""
        if col == self.columns:
            return self.reference.classes[self.d + 1][0]
        b = (col - 1) // (self.r - 1)
        return self.reference.classes[b][(col - 1) % (self.r - 1)]

    def column_ref(self, col: int) -> tuple[int, int]:
        """``(class, index)`` of the point of a column in the reference configuration."""
        if col == self.columns:
            return self.d + 1, 0
        return (col - 1) // (self.r - 1), (col - 1) % (self.r - 1)

    def decode(self, code: Sequence[int]) -> RainbowPartition:
        """Ordered parts: part i collects the columns whose chosen row is i."""
        parts = [[] for _ in range(self.r)]
        for c, row in enumerate(code, start=1):
            parts[row - 1].append(self.column_ref(c))
        return RainbowPartition(tuple(tuple(p) for p in parts))

    def decode_points(self, code: Sequence[int]) -> list[list[Point]]:
        parts = [[] for _ in range(self.r)]
        for c, row in enumerate(code, start=1):
            parts[row - 1].append(self.column_point(c))
        return parts

    @cached_property
    def _vertex_columns(self) -> dict[int, tuple[int, ...]]:
        """Integer image of each vertex in the fixed basis, prefixed by the sum row.

        Vertex (i, c) maps to the r x (d+1) matrix with row i equal to
        (1, f(v_c)) and zeros elsewhere.  Rows are centered (the diagonal is
        factored out) and the last row dropped.  Everything is scaled by a
        positive integer to clear denominators, which preserves all signs.
        """
        r, d = self.r, self.d
        den = lcm(*(x.denominator for c in range(1, self.columns + 1) for x in self.column_point(c)))
        cols = {}
        for v in range(r * self.columns):
            i, c = self.cell(v)
            w = [den] + [int(x * den) for x in self.column_point(c)]
            entries = [1]
            for k in range(1, r):
                for t in range(d + 1):
                    entries.append((r if k == i else 0) * w[t] - w[t])
            cols[v] = tuple(entries)
        return cols

    def _raw_sign(self, code: Sequence[int]) -> int:
        n = self.columns
        vc = self._vertex_columns
        cols = [vc[self.vertex(row, c)] for c, row in enumerate(code, start=1)]
        m = [[cols[j][i] for j in range(n)] + [1 if i == 0 else 0] for i in range(n)]
        solved = _solve_signs(m, n)
        if solved is None:
            # singular: decide whether the simplex still meets the diagonal
            if not _consistent(m, n):
                return 0
            if find_feasible([row[:n] for row in m], [row[n] for row in m]) is None:
                return 0
            raise GeneralPositionError(f"degenerate intersection on facet {tuple(code)}")
        det_sign, mu_signs = solved
        if any(s < 0 for s in mu_signs):
            return 0
        if any(s == 0 for s in mu_signs):
            raise GeneralPositionError(f"intersection on the boundary of facet {tuple(code)}")
        return det_sign

    @cached_property
    def orientation_normalizer(self) -> int:
        s = self._raw_sign(self.identity_code())
        if s == 0:
            raise GeneralPositionError("identity facet misses the diagonal")
        return s


def _solve_signs(m: list[list[int]], n: int) -> tuple[int, list[int]] | None:
    """Fraction-free elimination of an augmented integer system.

    Returns the determinant sign and the signs of the unique solution, or
    None when the matrix is singular.
    """
    m = [row[:] for row in m]
    swap = 1
    prev = 1
    for k in range(n):
        p = next((i for i in range(k, n) if m[i][k]), None)
        if p is None:
            return None
        if p != k:
            m[k], m[p] = m[p], m[k]
            swap = -swap
        mk = m[k]
        pk = mk[k]
        for i in range(k + 1, n):
            mi = m[i]
            a = mi[k]
            if a:
                for j in range(k + 1, n + 1):
                    mi[j] = (mi[j] * pk - a * mk[j]) // prev
            else:
                for j in range(k + 1, n + 1):
                    mi[j] = (mi[j] * pk) // prev
            mi[k] = 0
        prev = pk
    diag = m[n - 1][n - 1]
    det_sign = swap * (1 if diag > 0 else -1)
    # back substitution for x * diag, which is integral by Cramer's rule
    scaled = [0] * n
    for i in range(n - 1, -1, -1):
        acc = m[i][n] * diag - sum(m[i][j] * scaled[j] for j in range(i + 1, n))
        q, rem = divmod(acc, m[i][i])
        assert rem == 0, "non-integral Cramer numerator"
        scaled[i] = q
    sd = 1 if diag > 0 else -1
    return det_sign, [sd * ((x > 0) - (x < 0)) for x in scaled]


def _consistent(m: list[list[int]], n: int) -> bool:
    """Whether the augmented system ``m`` (n unknowns) has any real solution."""
    m = [row[:] for row in m]
    rank = 0
    for k in range(n):
        p = next((i for i in range(rank, len(m)) if m[i][k]), None)
        if p is None:
            continue
        m[rank], m[p] = m[p], m[rank]
        pr = m[rank]
        for i in range(rank + 1, len(m)):
            a = m[i][k]
            if a:
                m[i] = [x * pr[k] - a * y for x, y in zip(m[i], pr)]
        rank += 1
    return all(row[n] == 0 for row in m[rank:])


def configuration_space(d: int, r: int, budget: int = DEFAULT_BUDGET) -> ConfigSpace:
    return ConfigSpace(d, r, budget)


def is_nonfree(s: Simplex, cs: ConfigSpace) -> bool:
    """True iff at least two rows contain no vertex of ``s``."""
    rows = {cs.cell(v)[0] for v in s}
    return cs.r - len(rows) >= 2


def evaluate_cocycle(code: Sequence[int], cs: ConfigSpace) -> int:
    """Signed intersection number of the facet's image with the diagonal, in units of ζ."""
    code = tuple(code)
    if not cs.is_valid_code(code):
        raise ValueError(f"invalid facet code {code} for {cs}")
    return cs._raw_sign(code) * cs.orientation_normalizer


def cocycle_on_chain(c: Chain, cs: ConfigSpace) -> int:
    total = 0
    for s, coeff in c.terms.items():
        total += coeff * evaluate_cocycle(cs.code(s), cs)
    return total


@dataclass
class SpecialChains:
    phi: Chain
    omega: dict[int, Chain]
    theta: dict[int, Chain]
    theta2: dict[tuple[int, int], Chain]


def _last_block(cs: ConfigSpace, omit: int | None, last_row: int | None) -> tuple[int, ...]:
    base = cs.d * (cs.r - 1)
    ids = [cs.vertex(k, base + k) for k in range(1, cs.r) if k != omit]
    if last_row is not None:
        ids.append(cs.vertex(last_row, cs.columns))
    return tuple(ids)


def _z_join_terms(cs: ConfigSpace) -> list[tuple[Simplex, int]]:
    """Terms of (z_{r,r-1})^{*d} on the first d blocks."""
    count = factorial(cs.r) ** cs.d
    if count > cs.budget:
        raise BudgetExceeded(f"{count} chain terms exceed the budget {cs.budget}")
    base = list(orientation_terms(cs.r))
    shift = (cs.r - 1) * cs.r
    out = []
    for combo in itertools.product(base, repeat=cs.d):
        simplex: tuple[int, ...] = ()
        sign = 1
        for b, (s, sg) in enumerate(combo):
            simplex += tuple(v + b * shift for v in s)
            sign *= sg
        out.append((simplex, sign))
    return out


def special_chains(cs: ConfigSpace) -> SpecialChains:
    """Φ, Ω_j, Θ_i and Θ_{i,j}: (z_{r,r-1})^{*d} joined with fixed last-block simplices.

    Θ_{r,j} is the face of Ω_j without its final-column vertex, which is Θ_r.
    """
    zterms = _z_join_terms(cs)
    r = cs.r

    def with_tail(tail: tuple[int, ...]) -> Chain:
        dim = cs.d * (r - 1) + len(tail) - 1
        return Chain(dim, {s + tail: c for s, c in zterms})

    phi = with_tail(_last_block(cs, None, r))
    omega = {j: with_tail(_last_block(cs, None, j)) for j in range(1, r)}
    theta = {i: with_tail(_last_block(cs, i, r)) for i in range(1, r)}
    theta[r] = with_tail(_last_block(cs, None, None))
    theta2 = {}
    for j in range(1, r):
        for i in range(1, r):
            theta2[(i, j)] = with_tail(_last_block(cs, i, j))
        theta2[(r, j)] = theta[r]
    return SpecialChains(phi, omega, theta, theta2)


def relative_boundary(c: Chain, cs: ConfigSpace) -> Chain:
    """Boundary with every simplex of the non-free subcomplex A discarded."""
    return boundary(c).filter(lambda s: not is_nonfree(s, cs))


@dataclass
class IdentityCheck:
    name: str
    ok: bool
    mismatches: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok, "mismatches": self.mismatches}


def _compare(name: str, lhs: Chain, rhs: Chain, limit: int = 10) -> IdentityCheck:
    diff = lhs - rhs
    bad = [{"simplex": list(s), "lhs": lhs[s], "rhs": rhs[s]} for s, _ in list(diff)[:limit]]
    return IdentityCheck(name, not diff, bad)


@dataclass
class CheckReport:
    checks: list[IdentityCheck]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def to_json(self) -> dict:
        return {"ok": self.ok, "checks": [c.to_json() for c in self.checks]}


def check_boundary_relations(cs: ConfigSpace, chains: SpecialChains | None = None) -> CheckReport:
    """Verify the boundaries of Φ and Ω_j relative to A, as exact chain equalities."""
    ch = chains or special_chains(cs)
    r, d = cs.r, cs.d
    g = (-1) ** (d * (r - 1))
    checks = []
    rhs = Chain(ch.phi.dim - 1)
    for i in range(1, r + 1):
        rhs = rhs + ch.theta[i] * ((-1) ** (i - 1))
    checks.append(_compare("boundary Phi", relative_boundary(ch.phi, cs), (rhs * g).filter(
        lambda s: not is_nonfree(s, cs))))
    for j in range(1, r):
        rhs = ch.theta[r] * ((-1) ** (r - 1))
        for i in range(1, r):
            rhs = rhs + ch.theta2[(i, j)] * ((-1) ** (i - 1))
        checks.append(_compare(f"boundary Omega_{j}", relative_boundary(ch.omega[j], cs),
                               (rhs * g).filter(lambda s: not is_nonfree(s, cs))))
    return CheckReport(checks)


def check_sign_claims(cs: ConfigSpace, chains: SpecialChains | None = None) -> CheckReport:
    """Transposition identities: (i r)·Θ_{i,j} = (-1)^d Θ_{i,j} and (j r)·Θ_{j,j} = (-1)^d Θ_j."""
    ch = chains or special_chains(cs)
    r, d = cs.r, cs.d
    sign = (-1) ** d
    checks = []
    for i in range(1, r):
        t = Permutation.transposition(r, i, r)
        for j in range(1, r):
            if i != j:
                moved = apply_permutation(t, ch.theta2[(i, j)], cs.labels)
                checks.append(_compare(f"({i} {r}) Theta_{i},{j}", moved, ch.theta2[(i, j)] * sign))
    for j in range(1, r):
        t = Permutation.transposition(r, j, r)
        moved = apply_permutation(t, ch.theta2[(j, j)], cs.labels)
        checks.append(_compare(f"({j} {r}) Theta_{j},{j}", moved, ch.theta[j] * sign))
    return CheckReport(checks)


def decompose(target: Chain, basis: dict) -> dict:
    """Write ``target`` as an integer combination of chains with disjoint supports.

    Raises ValueError if the combination is not exact.
    """
    residual = Chain(target.dim, target.terms)
    coeffs = {}
    seen: set = set()
    for name, b in basis.items():
        if not b or id(b) in seen:
            continue
        seen.add(id(b))
        s, bc = next(iter(b))
        q, rem = divmod(residual[s], bc)
        if rem:
            raise ValueError(f"{name}: coefficient not integral")
        if q:
            coeffs[name] = q
            residual = residual - b * q
    if residual:
        raise ValueError(f"chain is not a combination of the basis: {len(residual)} terms left")
    return coeffs


@dataclass
class CocycleReport:
    d: int
    r: int
    phi_value: int
    omega_values: list[int]
    divides: bool
    extension_exists: bool
    facets_evaluated: int
    nonzero_facets: int
    phi_computed: bool = True

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "r": self.r,
            "phi_value": self.phi_value,
            "omega_values": self.omega_values,
            "divides": self.divides,
            "extension_exists": self.extension_exists,
            "facets_evaluated": self.facets_evaluated,
            "nonzero_facets": self.nonzero_facets,
            "phi_computed": self.phi_computed,
        }


def closed_form_phi(d: int, r: int) -> int:
    return factorial(r - 1) ** d


def obstruction_verdict(d: int, r: int, budget: int = 100_000) -> CocycleReport:
    """Evaluate c_f on Φ and every Ω_j when the term count fits the budget.

    Otherwise ``phi_value`` is the closed form (r-1)!^d and ``phi_computed``
    is false.  The extension exists iff r divides (r-1)!^d.
    """
    if d < 1 or r < 2:
        raise ValueError("need d >= 1 and r >= 2")
    closed = closed_form_phi(d, r)
    divides = closed % r == 0
    terms = factorial(r) ** d * r
    if terms > budget:
        return CocycleReport(d, r, closed, [], divides, divides, 0, 0, phi_computed=False)
    cs = ConfigSpace(d, r, budget=max(budget, factorial(r) ** (d + 1) * r))
    ch = special_chains(cs)
    evaluated = nonzero = 0
    values = []
    for chain in [ch.phi] + [ch.omega[j] for j in range(1, r)]:
        total = 0
        for s, coeff in chain.terms.items():
            v = evaluate_cocycle(cs.code(s), cs)
            evaluated += 1
            nonzero += v != 0
            total += coeff * v
        values.append(total)
    return CocycleReport(d, r, values[0], values[1:], divides, divides, evaluated, nonzero)


def evaluate_all_facets(cs: ConfigSpace) -> dict[FacetCode, int]:
    """Cocycle value of every facet with a nonzero value, in lexicographic order."""
    out = {}
    for code in cs.facet_codes():
        v = evaluate_cocycle(code, cs)
        if v:
            out[code] = v
    return out


@dataclass
class ExplicitHReport:
    quotient: int
    h_theta: dict[int, int]
    h_theta_diag: dict[int, int]
    h_boundary_phi: int
    c_phi: int
    h_boundary_omega: dict[int, int]
    c_omega: dict[int, int]

    @property
    def ok(self) -> bool:
        return (
            self.h_boundary_phi == self.c_phi
            and all(self.h_boundary_omega[j] == self.c_omega[j] for j in self.c_omega)
            and all(self.h_theta_diag[j] == -self.h_theta[j] for j in self.h_theta_diag)
        )

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "quotient": self.quotient,
            "h_theta": {str(k): v for k, v in self.h_theta.items()},
            "h_theta_diag": {str(k): v for k, v in self.h_theta_diag.items()},
            "h_boundary_phi": self.h_boundary_phi,
            "c_phi": self.c_phi,
            "h_boundary_omega": {str(k): v for k, v in self.h_boundary_omega.items()},
            "c_omega": {str(k): v for k, v in self.c_omega.items()},
        }


def explicit_h(d: int, r: int) -> tuple[dict, dict, int]:
    """Values of the explicit cochain on Θ_j and Θ_{j,j}; zero on the other Θ_{i,j}."""
    total = closed_form_phi(d, r)
    if total % r:
        raise ValueError(f"r={r} does not divide (r-1)!^d={total}")
    q = total // r
    h_theta = {j: (-1) ** ((d + 1) * (r - 1) + j + r) * q for j in range(1, r + 1)}
    h_diag = {j: -h_theta[j] for j in range(1, r)}
    return h_theta, h_diag, q


def explicit_h_check(cs: ConfigSpace, chains: SpecialChains | None = None) -> ExplicitHReport:
    """Check h(∂Φ) = c_f(Φ) and h(∂Ω_j) = c_f(Ω_j) with h given on the Θ chains."""
    d, r = cs.d, cs.r
    h_theta, h_diag, q = explicit_h(d, r)
    ch = chains or special_chains(cs)
    basis = {("theta", i): ch.theta[i] for i in range(1, r + 1)}
    basis.update({("theta2", i, j): ch.theta2[(i, j)] for i in range(1, r) for j in range(1, r)})

    def h_of(name) -> int:
        if name[0] == "theta":
            return h_theta[name[1]]
        _, i, j = name
        return h_diag[j] if i == j else 0

    def h_on(chain: Chain) -> int:
        return sum(k * h_of(name) for name, k in decompose(chain, basis).items())

    hb_phi = h_on(relative_boundary(ch.phi, cs))
    hb_omega = {j: h_on(relative_boundary(ch.omega[j], cs)) for j in range(1, r)}
    c_phi = cocycle_on_chain(ch.phi, cs)
    c_omega = {j: cocycle_on_chain(ch.omega[j], cs) for j in range(1, r)}
    return ExplicitHReport(q, h_theta, h_diag, hb_phi, c_phi, hb_omega, c_omega)


def nonfree_facets(cs: ConfigSpace) -> Iterator[Simplex]:
    """Maximal simplices of A: all vertices avoid a fixed pair of rows."""
    r = cs.r
    seen = set()
    for excluded in itertools.combinations(range(1, r + 1), 2):
        rows = [i for i in range(1, r + 1) if i not in excluded]
        if not rows:
            continue
        per_block = []
        for b in range(cs.d + 1):
            cols = list(cs.block_columns(b))
            options = []
            for placed in itertools.permutations(cols, len(rows)):
                options.append(tuple(sorted(cs.vertex(i, c) for i, c in zip(rows, placed))))
            per_block.append(options)
        for combo in itertools.product(*per_block):
            for last in rows:
                s = tuple(itertools.chain.from_iterable(combo)) + (cs.vertex(last, cs.columns),)
                if s not in seen:
                    seen.add(s)
                    yield s


def _image_rows(cs: ConfigSpace, s: Simplex, weights: Sequence[Fraction]) -> list[tuple[Fraction, ...]]:
    """Rows (λ_k, λ_k f(x_k)) of the deleted-join map at a point of ``s``."""
    rows = [[Fraction(0)] * (cs.d + 1) for _ in range(cs.r)]
    for v, mu in zip(s, weights):
        i, c = cs.cell(v)
        p = cs.column_point(c)
        rows[i - 1][0] += mu
        for t in range(cs.d):
            rows[i - 1][t + 1] += mu * p[t]
    return [tuple(row) for row in rows]


def check_A_avoids_diagonal(cs: ConfigSpace, samples: int, seed: int = 0, exhaustive: bool = True) -> bool:
    """The image of A never meets the diagonal.

    Symbolically, on every maximal simplex of A: two rows are untouched, so
    their first coordinates vanish while the first coordinates sum to one.
    Numerically, at ``samples`` random rational points of random faces of A.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    facets = list(nonfree_facets(cs))
    if exhaustive:
        for s in facets:
            if not is_nonfree(s, cs):
                return False
            rows = _image_rows(cs, s, [Fraction(1, len(s))] * len(s))
            zero = [row for row in rows if row[0] == 0]
            if len(zero) < 2 or sum(row[0] for row in rows) != 1:
                return False
    if not facets:
        return True
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        s = facets[int(rng.integers(len(facets)))]
        size = int(rng.integers(1, len(s) + 1))
        picks = sorted(int(x) for x in rng.choice(len(s), size=size, replace=False))
        face = tuple(s[k] for k in picks)
        raw = [int(x) for x in rng.integers(1, 1000, size=len(face))]
        weights = [Fraction(w, sum(raw)) for w in raw]
        rows = _image_rows(cs, face, weights)
        if sum(row[0] for row in rows) != 1:
            return False
        if all(row == rows[0] for row in rows):
            return False
    return True
