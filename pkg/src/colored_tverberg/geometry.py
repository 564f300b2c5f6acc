"""Colored point configurations and rainbow Tverberg partitions, exactly.

Points are tuples of :class:`fractions.Fraction`.  A point of a configuration
is addressed by ``(class_index, point_index)``.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from math import lcm
from typing import Iterator, Sequence

import numpy as np

from .errors import BudgetExceeded, ConfigError
from .lp import find_feasible

Point = tuple[Fraction, ...]
PointRef = tuple[int, int]

DEFAULT_PARTITION_BUDGET = 10**6
GRID = 1000


@dataclass(frozen=True)
class ColoredConfiguration:
    d: int
    classes: tuple[tuple[Point, ...], ...]

    def __post_init__(self):
        for ci, cls in enumerate(self.classes):
            for pi, p in enumerate(cls):
                if len(p) != self.d:
                    raise ConfigError(f"classes[{ci}][{pi}]: expected {self.d} coordinates, got {len(p)}")

    @classmethod
    def from_lists(cls, d: int, classes) -> "ColoredConfiguration":
        return cls(d, tuple(tuple(tuple(Fraction(x) for x in p) for p in c) for c in classes))

    @property
    def total(self) -> int:
        return sum(len(c) for c in self.classes)

    @property
    def sizes(self) -> list[int]:
        return [len(c) for c in self.classes]

    def point(self, ref: PointRef) -> Point:
        return self.classes[ref[0]][ref[1]]

    def refs(self) -> list[PointRef]:
        return [(ci, pi) for ci, c in enumerate(self.classes) for pi in range(len(c))]

    def to_json(self) -> dict:
        return {"d": self.d, "classes": [[[str(x) for x in p] for p in c] for c in self.classes]}


@dataclass(frozen=True)
class RainbowPartition:
    parts: tuple[tuple[PointRef, ...], ...]

    def to_json(self) -> list:
        return [[{"class": c, "index": i} for c, i in part] for part in self.parts]

    def canonical(self) -> "RainbowPartition":
        """Same partition with parts sorted, for unordered comparison."""
        return RainbowPartition(tuple(sorted(tuple(sorted(p)) for p in self.parts)))


@dataclass(frozen=True)
class Witness:
    point: Point
    barycentrics: tuple[tuple[Fraction, ...], ...]

    def to_json(self) -> dict:
        return {
            "point": [str(x) for x in self.point],
            "barycentrics": [[str(x) for x in b] for b in self.barycentrics],
        }


def check_witness(parts: Sequence[Sequence[Point]], w: Witness) -> bool:
    """Coefficients are nonnegative, sum to one and reproduce the point in every part."""
    if len(parts) != len(w.barycentrics):
        return False
    for pts, coeffs in zip(parts, w.barycentrics):
        if len(pts) != len(coeffs) or any(c < 0 for c in coeffs) or sum(coeffs) != 1:
            return False
        dim = len(w.point)
        combo = tuple(sum((c * p[t] for c, p in zip(coeffs, pts)), Fraction(0)) for t in range(dim))
        if combo != w.point:
            return False
    return True


def hulls_intersect(parts: Sequence[Sequence[Sequence]]) -> Witness | None:
    """Common point of the convex hulls of the parts, with exact certificates.

    Feasibility system: one block of convex coefficients per part, each
    summing to one, and the combination of part 1 equal to that of every
    other part.  Returns None if the hulls have no common point (or a part
    is empty).
    """
    parts = [[tuple(Fraction(x) for x in p) for p in part] for part in parts]
    if any(not part for part in parts):
        return None
    dims = {len(p) for part in parts for p in part}
    if len(dims) != 1:
        raise ValueError(f"points of mixed dimension {sorted(dims)}")
    dim = dims.pop()
    offsets = list(itertools.accumulate((len(p) for p in parts), initial=0))
    nvars = offsets[-1]
    a_eq, b_eq = [], []
    for k, part in enumerate(parts):
        row = [0] * nvars
        for j in range(len(part)):
            row[offsets[k] + j] = 1
        a_eq.append(row)
        b_eq.append(1)
    first = parts[0]
    for k in range(1, len(parts)):
        for t in range(dim):
            row = [Fraction(0)] * nvars
            for j, p in enumerate(first):
                row[j] = p[t]
            for j, p in enumerate(parts[k]):
                row[offsets[k] + j] = -p[t]
            a_eq.append(row)
            b_eq.append(0)
    x = find_feasible(a_eq, b_eq)
    if x is None:
        return None
    bary = tuple(tuple(x[offsets[k]:offsets[k + 1]]) for k in range(len(parts)))
    point = tuple(sum((c * p[t] for c, p in zip(bary[0], first)), Fraction(0)) for t in range(dim))
    return Witness(point, bary)


@lru_cache(maxsize=None)
def _directions(dim: int) -> tuple[tuple[int, ...], ...]:
    """Coordinate axes and the diagonals e_i + e_j, e_i - e_j."""
    axes = [tuple(int(t == i) for t in range(dim)) for i in range(dim)]
    diagonals = [
        tuple(int(t == i) + s * int(t == j) for t in range(dim))
        for i, j in itertools.combinations(range(dim), 2)
        for s in (1, -1)
    ]
    return tuple(axes + diagonals)


def _projector(points: Sequence[Point], dim: int):
    """Integer projections of points onto the fixed directions, scaled to a common denominator."""
    scale = lcm(*(x.denominator for p in points for x in p)) if points else 1
    dirs = _directions(dim)

    def project(p: Point) -> tuple[int, ...]:
        ints = [int(x * scale) for x in p]
        return tuple(sum(c * x for c, x in zip(u, ints) if c) for u in dirs)

    return project


def _projections_overlap(parts: Sequence[Sequence[tuple[int, ...]]]) -> bool:
    """Necessary condition for a common point: the projected intervals of all parts overlap."""
    for k in range(len(parts[0][0])):
        lo = max(min(v[k] for v in part) for part in parts)
        hi = min(max(v[k] for v in part) for part in parts)
        if lo > hi:
            return False
    return True


def _boxes_overlap(parts: Sequence[Sequence[Point]], dim: int) -> bool:
    project = _projector([p for part in parts for p in part], dim)
    return _projections_overlap([[project(p) for p in part] for part in parts])


def reference_configuration(d: int, r: int) -> ColoredConfiguration:
    """d+1 classes of r-1 copies of the simplex vertices e_0=0, e_1..e_d, plus the barycenter."""
    if d < 1 or r < 2:
        raise ValueError("need d >= 1 and r >= 2")

    def e(i: int) -> Point:
        return tuple(Fraction(1 if t == i - 1 else 0) for t in range(d))

    classes = [tuple(e(i) for _ in range(r - 1)) for i in range(d + 1)]
    classes.append((tuple(Fraction(1, d + 1) for _ in range(d)),))
    return ColoredConfiguration(d, tuple(classes))


def enumerate_rainbow_partitions(
    cfg: ColoredConfiguration,
    r: int,
    *,
    use_all: bool = False,
    ordered: bool = False,
    budget: int = DEFAULT_PARTITION_BUDGET,
) -> Iterator[RainbowPartition]:
    """Rainbow r-partitions of (subsets of) the configuration, all parts nonempty.

    Order: by number of unused points ascending, then lexicographically on the
    assignment of points (in class order) to parts labeled by first use.
    Unordered by default; ``ordered=True`` yields every labeling of the parts.
    Raises BudgetExceeded after ``budget`` partitions.
    """
    if r < 2:
        raise ValueError("need r >= 2")
    refs = cfg.refs()
    total = len(refs)
    if total < r:
        return
    classes = [c for c, _ in refs]
    produced = 0
    max_unused = 0 if use_all else total - r
    for unused in range(max_unused + 1):
        for parts in _assign(refs, classes, r, unused):
            variants = itertools.permutations(parts) if ordered else (parts,)
            for v in variants:
                produced += 1
                if produced > budget:
                    raise BudgetExceeded(f"more than {budget} partitions")
                yield RainbowPartition(tuple(tuple(p) for p in v))


def _assign(refs, classes, r, unused):
    total = len(refs)
    parts: list[list[PointRef]] = []
    used_classes: list[set[int]] = []

    def rec(idx, skip_left):
        remaining = total - idx
        if remaining < skip_left + (r - len(parts)):
            return
        if idx == total:
            yield [list(p) for p in parts]
            return
        ref, c = refs[idx], classes[idx]
        for k in range(len(parts)):
            if c not in used_classes[k]:
                parts[k].append(ref)
                used_classes[k].add(c)
                yield from rec(idx + 1, skip_left)
                parts[k].pop()
                used_classes[k].discard(c)
        if len(parts) < r:
            parts.append([ref])
            used_classes.append({c})
            yield from rec(idx + 1, skip_left)
            parts.pop()
            used_classes.pop()
        if skip_left:
            yield from rec(idx + 1, skip_left - 1)

    return rec(0, unused)


def _part_points(cfg: ColoredConfiguration, part: RainbowPartition) -> list[list[Point]]:
    return [[cfg.point(ref) for ref in p] for p in part.parts]


def _projection_table(cfg: ColoredConfiguration) -> dict[PointRef, tuple[int, ...]]:
    project = _projector([cfg.point(ref) for ref in cfg.refs()], cfg.d)
    return {ref: project(cfg.point(ref)) for ref in cfg.refs()}


def _candidates(cfg: ColoredConfiguration, partitions) -> Iterator[tuple[RainbowPartition, Witness]]:
    """Partitions from ``partitions`` whose hulls meet, with witnesses."""
    table = _projection_table(cfg)
    for part in partitions:
        if not _projections_overlap([[table[ref] for ref in p] for p in part.parts]):
            continue
        w = hulls_intersect(_part_points(cfg, part))
        if w is not None:
            yield part, w


def find_rainbow_partition(
    cfg: ColoredConfiguration, r: int, *, budget: int = DEFAULT_PARTITION_BUDGET
) -> tuple[RainbowPartition, Witness] | None:
    """First enumerated rainbow r-partition whose hulls share a point."""
    return next(_candidates(cfg, enumerate_rainbow_partitions(cfg, r, budget=budget)), None)


def tverberg_partitions(
    cfg: ColoredConfiguration, r: int, *, budget: int = DEFAULT_PARTITION_BUDGET
) -> Iterator[tuple[RainbowPartition, Witness]]:
    """Unordered rainbow r-partitions using every point, with intersecting hulls."""
    yield from _candidates(cfg, enumerate_rainbow_partitions(cfg, r, use_all=True, budget=budget))


def count_tverberg_partitions(
    cfg: ColoredConfiguration, r: int, *, budget: int = DEFAULT_PARTITION_BUDGET
) -> int:
    return sum(1 for _ in tverberg_partitions(cfg, r, budget=budget))


@dataclass
class Padding:
    """Result of enlarging a configuration to the d+1 classes of r-1 plus one singleton shape.

    ``origin[c][i]`` is the original reference of padded point ``(c, i)``, or
    None for an added vertex.
    """

    original: ColoredConfiguration
    padded: ColoredConfiguration
    r: int
    origin: list[list[PointRef | None]] = field(default_factory=list)

    @property
    def added(self) -> int:
        return self.padded.total - self.original.total

    def restrict(self, partition: RainbowPartition) -> RainbowPartition:
        """Drop added vertices from every part."""
        parts = []
        for part in partition.parts:
            kept = tuple(self.origin[c][i] for c, i in part if self.origin[c][i] is not None)
            parts.append(kept)
        return RainbowPartition(tuple(parts))


def pad_reduction(cfg: ColoredConfiguration, r: int) -> Padding:
    """Enlarge the color classes so the configuration fits the singleton shape.

    Requires ``(r-1)(d+1)+1`` points in classes of size at most r-1.  A class
    of size one (the last such) becomes the singleton class; otherwise a new
    singleton class is appended.  The remaining classes are topped up to r-1
    points with new vertices in groups of r-1, group i sitting at the unit
    vector of the new coordinate d+i.  Original points get trailing zeros.
    """
    d = cfg.d
    n_plus_1 = (r - 1) * (d + 1) + 1
    if cfg.total != n_plus_1:
        raise ValueError(f"need exactly (r-1)(d+1)+1 = {n_plus_1} points, got {cfg.total}")
    if any(s > r - 1 for s in cfg.sizes):
        raise ValueError(f"class sizes {cfg.sizes} exceed r-1 = {r - 1}")
    nonempty = [ci for ci, c in enumerate(cfg.classes) if c]
    if len(nonempty) < d + 2:
        raise ValueError("need at least d+2 nonempty classes")

    singles = [ci for ci in nonempty if len(cfg.classes[ci]) == 1]
    singleton = singles[-1] if singles else None
    big = [ci for ci in nonempty if ci != singleton]
    d_new = len(big) - 1
    groups = d_new - d
    new_vertices = [
        tuple(Fraction(1 if t == d + g else 0) for t in range(d_new))
        for g in range(groups)
        for _ in range(r - 1)
    ]

    def lift(p: Point) -> Point:
        return p + (Fraction(0),) * (d_new - d)

    queue = iter(new_vertices)
    classes, origin = [], []
    for ci in big:
        pts = [lift(p) for p in cfg.classes[ci]]
        org: list[PointRef | None] = [(ci, pi) for pi in range(len(pts))]
        while len(pts) < r - 1:
            pts.append(next(queue))
            org.append(None)
        classes.append(tuple(pts))
        origin.append(org)
    if singleton is not None:
        classes.append((lift(cfg.classes[singleton][0]),))
        origin.append([(singleton, 0)])
    else:
        classes.append((next(queue),))
        origin.append([None])
    leftover = sum(1 for _ in queue)
    assert leftover == 0, "padding arithmetic"
    return Padding(cfg, ColoredConfiguration(d_new, tuple(classes)), r, origin)


def find_by_extension(
    cfg: ColoredConfiguration, r: int, *, budget: int = DEFAULT_PARTITION_BUDGET
) -> tuple[RainbowPartition, Witness] | None:
    """Rainbow r-partition from an (r+1)-partition of the configuration plus one extra point.

    The extra point forms its own singleton class and sits at the first point
    of the configuration; the part containing it is discarded.
    """
    extra = cfg.classes[0][0] if cfg.total else tuple(Fraction(0) for _ in range(cfg.d))
    ext = ColoredConfiguration(cfg.d, cfg.classes + ((extra,),))
    marker = (len(cfg.classes), 0)

    def restricted():
        tried = set()
        for part in enumerate_rainbow_partitions(ext, r + 1, budget=budget):
            kept = RainbowPartition(tuple(p for p in part.parts if marker not in p))
            key = kept.canonical()
            if key not in tried:
                tried.add(key)
                yield kept

    return next(_candidates(cfg, restricted()), None)


def random_configuration(rng: np.random.Generator, d: int, sizes: Sequence[int]) -> ColoredConfiguration:
    """Integer points uniform on [-GRID, GRID]^d (denominator 1)."""
    classes = []
    for s in sizes:
        coords = rng.integers(-GRID, GRID + 1, size=(s, d))
        classes.append(tuple(tuple(Fraction(int(x)) for x in row) for row in coords))
    return ColoredConfiguration(d, tuple(classes))


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Independent stream per (seed, trial index)."""
    return np.random.default_rng([seed, trial])


@dataclass
class TrialReport:
    successes: int
    failures: int
    failing_configs: list[ColoredConfiguration]

    def to_json(self) -> dict:
        return {
            "successes": self.successes,
            "failures": self.failures,
            "failing_configs": [c.to_json() for c in self.failing_configs],
        }


def conjecture_trial(
    d: int,
    r: int,
    class_size: int | None,
    trials: int,
    seed: int,
    *,
    class_sizes: Sequence[int] | None = None,
    extend: bool = False,
    budget: int = DEFAULT_PARTITION_BUDGET,
) -> TrialReport:
    """Search random configurations for rainbow r-partitions.

    By default d+1 classes of ``class_size`` points; ``class_sizes`` overrides
    the class structure (e.g. ``(2, 2, 2, 1)``).  With ``extend``, each
    configuration is solved through :func:`find_by_extension`.
    Deterministic given seed.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    sizes = list(class_sizes) if class_sizes is not None else [class_size] * (d + 1)
    ok, bad = 0, []
    for t in range(trials):
        cfg = random_configuration(trial_rng(seed, t), d, sizes)
        if extend:
            found = find_by_extension(cfg, r, budget=budget)
        else:
            found = find_rainbow_partition(cfg, r, budget=budget)
        if found is None:
            bad.append(cfg)
        else:
            ok += 1
    return TrialReport(ok, len(bad), bad)


_RATIONAL = re.compile(r"\s*(-?\d+)\s*(?:/\s*(-?\d+)\s*)?")


def parse_rational(value, where: str) -> Fraction:
    """Parse an exact rational: a JSON integer or a "p" / "p/q" string."""
    if isinstance(value, bool):
        raise ConfigError(f"{where}: expected a rational, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        m = _RATIONAL.fullmatch(value)
        if m:
            num, den = int(m.group(1)), int(m.group(2) or 1)
            if den == 0:
                raise ConfigError(f"{where}: zero denominator in {value!r}")
            return Fraction(num, den)
    raise ConfigError(f"{where}: not an exact rational: {value!r}")


def config_from_json(data) -> ColoredConfiguration:
    if not isinstance(data, dict):
        raise ConfigError("top level: expected an object with 'd' and 'classes'")
    if "d" not in data or "classes" not in data:
        raise ConfigError("top level: missing 'd' or 'classes'")
    d = data["d"]
    if not isinstance(d, int) or isinstance(d, bool) or d < 1:
        raise ConfigError(f"d: expected a positive integer, got {d!r}")
    if not isinstance(data["classes"], list):
        raise ConfigError("classes: expected a list")
    classes = []
    for ci, cls in enumerate(data["classes"]):
        if not isinstance(cls, list):
            raise ConfigError(f"classes[{ci}]: expected a list of points")
        pts = []
        for pi, p in enumerate(cls):
            where = f"classes[{ci}][{pi}]"
            if not isinstance(p, list):
                raise ConfigError(f"{where}: expected a list of coordinates")
            if len(p) != d:
                raise ConfigError(f"{where}: expected {d} coordinates, got {len(p)}")
            pts.append(tuple(parse_rational(x, f"{where}[{k}]") for k, x in enumerate(p)))
        classes.append(tuple(pts))
    return ColoredConfiguration(d, tuple(classes))


def load_config(path) -> ColoredConfiguration:
    """Read a configuration file; errors name the line or field at fault."""
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"{path}: {exc.strerror}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return config_from_json(data)
