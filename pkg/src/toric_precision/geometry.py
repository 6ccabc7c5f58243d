"""Lattice point configurations and their convex hulls.

Facets are enumerated by brute force over point subsets, which is exact and
entirely adequate at the handful-of-points scale this package targets.
Every facet is stored as a primitive inward normal ``n`` and an integer
offset ``a`` so that the polytope is ``{p : <p, n> + a >= 0 for all facets}``
and ``h(p) = <p, n> + a`` is the lattice distance to the facet.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import gcd
from typing import NamedTuple, Sequence

from . import linalg
from .errors import NotFullDimensionalError
from .polynomials import Polynomial

IntVector = tuple[int, ...]


@dataclass(frozen=True)
class PointConfiguration:
    """Ordered list of integer points in a fixed dimension, optionally labelled."""

    dim: int
    points: tuple[IntVector, ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        points = tuple(tuple(int(x) for x in p) for p in self.points)
        object.__setattr__(self, "points", points)
        if self.dim < 1:
            raise ValueError(f"dimension must be positive, got {self.dim}")
        for p in points:
            if len(p) != self.dim:
                raise ValueError(f"point {p} does not have dimension {self.dim}")
        if self.labels is not None:
            labels = tuple(str(s) for s in self.labels)
            object.__setattr__(self, "labels", labels)
            if len(labels) != len(points):
                raise ValueError("label count does not match point count")
            if len(set(labels)) != len(labels):
                raise ValueError("labels must be unique")

    def __len__(self) -> int:
        return len(self.points)

    def effective_labels(self) -> tuple[str, ...]:
        """Explicit labels, else comma-joined coordinates, else positional names."""
        if self.labels is not None:
            return self.labels
        coords = tuple(",".join(str(x) for x in p) for p in self.points)
        if len(set(coords)) == len(coords):
            return coords
        return tuple(f"p{i}" for i in range(len(self.points)))


class Facet(NamedTuple):
    normal: IntVector
    offset: int


@dataclass(frozen=True)
class LatticePolytope:
    """Full-dimensional lattice polytope given by facets and vertices."""

    dim: int
    facets: tuple[Facet, ...]
    vertices: tuple[IntVector, ...]

    def __post_init__(self):
        facets = tuple(Facet(tuple(int(x) for x in n), int(a)) for n, a in self.facets)
        vertices = tuple(tuple(int(x) for x in v) for v in self.vertices)
        object.__setattr__(self, "facets", facets)
        object.__setattr__(self, "vertices", vertices)
        for normal, offset in facets:
            if len(normal) != self.dim:
                raise ValueError(f"normal {normal} does not have dimension {self.dim}")
            g = 0
            for x in normal:
                g = gcd(g, abs(x))
            if g != 1:
                raise ValueError(f"normal {normal} is not primitive")
            tight = sum(1 for v in vertices if self._distance(v, normal, offset) == 0)
            if tight < self.dim:
                raise ValueError(f"facet {normal, offset} touches only {tight} vertices")
        for v in vertices:
            if any(self._distance(v, n, a) < 0 for n, a in facets):
                raise ValueError(f"vertex {v} lies outside a facet")

    @staticmethod
    def _distance(point: Sequence[int], normal: IntVector, offset: int) -> int:
        return sum(p * n for p, n in zip(point, normal)) + offset

    def lattice_distances(self, point: Sequence[int | Fraction]) -> tuple[Fraction, ...]:
        """Lattice distance of a (rational) point to each facet, in facet order."""
        return tuple(
            sum((Fraction(p) * n for p, n in zip(point, normal)), Fraction(0)) + offset
            for normal, offset in self.facets
        )

    def contains(self, point: Sequence[int | Fraction]) -> bool:
        return all(d >= 0 for d in self.lattice_distances(point))


def _affine_rank(points: Sequence[IntVector]) -> int:
    if len(points) < 2:
        return 0
    base = points[0]
    diffs = [[p[i] - base[i] for i in range(len(base))] for p in points[1:]]
    return linalg.rank(diffs)


def convex_hull_facets(config: PointConfiguration) -> LatticePolytope:
    """Irredundant facet description of the convex hull of a configuration.

    Tries every d-subset of points: if the subset spans a hyperplane and all
    configuration points lie on one side, the (inward-oriented) primitive
    normal is a facet.  Requires the configuration to be full-dimensional.
    """
    d = config.dim
    points = config.points
    if _affine_rank(points) < d:
        raise NotFullDimensionalError(
            f"points affinely span dimension {_affine_rank(points)} < {d}"
        )
    facets: set[Facet] = set()
    for subset in combinations(points, d):
        base = subset[0]
        diffs = [[p[i] - base[i] for i in range(d)] for p in subset[1:]]
        kernel = linalg.nullspace(diffs, d)
        if len(kernel) != 1:
            continue
        normal = linalg.primitive_integer(kernel[0])
        offset = -sum(b * n for b, n in zip(base, normal))
        values = [sum(p[i] * normal[i] for i in range(d)) + offset for p in points]
        if all(v >= 0 for v in values):
            facets.add(Facet(tuple(normal), offset))
        elif all(v <= 0 for v in values):
            facets.add(Facet(tuple(-n for n in normal), -offset))
    ordered = tuple(sorted(facets))
    vertices = []
    for p in points:
        tight = [f.normal for f in ordered if LatticePolytope._distance(p, f.normal, f.offset) == 0]
        if len(tight) >= d and linalg.rank(tight) == d:
            vertices.append(p)
    vertices = tuple(sorted(set(vertices)))
    return LatticePolytope(d, ordered, vertices)


def lattice_distance_forms(
    poly: LatticePolytope, names: Sequence[str] | None = None
) -> list[Polynomial]:
    """Degree-1 polynomials h_i(p) = <p, n_i> + a_i, one per facet, in facet order."""
    if names is None:
        names = tuple(f"x{i + 1}" for i in range(poly.dim))
    names = tuple(names)
    if len(names) != poly.dim:
        raise ValueError(f"expected {poly.dim} variable names, got {len(names)}")
    forms = []
    zero = (0,) * poly.dim
    for normal, offset in poly.facets:
        terms = {zero: Fraction(offset)}
        for i, coeff in enumerate(normal):
            exp = tuple(1 if j == i else 0 for j in range(poly.dim))
            terms[exp] = Fraction(coeff)
        forms.append(Polynomial(names, terms))
    return forms


def lattice_points(poly: LatticePolytope) -> PointConfiguration:
    """All integer points of the polytope, by bounding-box scan, in lex order."""
    lows = [min(v[i] for v in poly.vertices) for i in range(poly.dim)]
    highs = [max(v[i] for v in poly.vertices) for i in range(poly.dim)]
    found = []
    for candidate in product(*(range(lo, hi + 1) for lo, hi in zip(lows, highs))):
        if poly.contains(candidate):
            found.append(candidate)
    return PointConfiguration(poly.dim, tuple(sorted(found)))


def sample_interior(
    config: PointConfiguration, count: int, seed: int
) -> list[tuple[Fraction, ...]]:
    """Strictly positive rational convex combinations of the configuration points.

    Sample 0 is always the barycenter (uniform coefficients); later samples
    draw positive integer weights from a seeded generator.  Output depends
    only on (config, count, seed).
    """
    if not config.points:
        raise ValueError("cannot sample from an empty configuration")
    rng = random.Random(seed)
    n = len(config.points)
    samples = []
    for index in range(count):
        if index == 0:
            weights = [Fraction(1, n)] * n
        else:
            raw = [rng.randint(1, 1000) for _ in range(n)]
            total = sum(raw)
            weights = [Fraction(r, total) for r in raw]
        point = tuple(
            sum((w * p[i] for w, p in zip(weights, config.points)), Fraction(0))
            for i in range(config.dim)
        )
        samples.append(point)
    return samples


@dataclass(frozen=True)
class DesignMatrix:
    """Integer matrix whose columns are configuration points, with a row of
    ones prepended whenever the all-ones vector is not already in the row span."""

    rows: tuple[IntVector, ...]
    ones_row_added: bool

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def n_columns(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def apply(self, vector: Sequence[Fraction | int]) -> tuple[Fraction, ...]:
        """Exact matrix-vector product."""
        return tuple(
            sum((Fraction(x) * r for x, r in zip(vector, row)), Fraction(0)) for row in self.rows
        )


def design_matrix(config: PointConfiguration) -> DesignMatrix:
    """Coordinate rows of the configuration, homogenized with a ones row if needed."""
    n = len(config.points)
    coordinate_rows = [tuple(p[i] for p in config.points) for i in range(config.dim)]
    ones = tuple(1 for _ in range(n))
    if linalg.in_row_span(coordinate_rows, ones):
        return DesignMatrix(tuple(coordinate_rows), False)
    return DesignMatrix((ones, *coordinate_rows), True)
