"""The projective plane PG(2, p) with canonically indexed points and lines.

Points and lines are both indexed by normalized triples (first nonzero
coordinate 1) sorted as base-p numbers with the first coordinate most
significant. Point [X:Y:Z] lies on line [a:b:c] iff aX + bY + cZ = 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np

from .fplinalg import check_prime, inverse_table

MAX_P = 101


@dataclass(frozen=True)
class ProjPoint:
    coords: tuple[int, int, int]
    index: int


@dataclass(frozen=True)
class ProjLine:
    coeffs: tuple[int, int, int]
    index: int
    point_set: tuple[int, ...]


def normalized_triples(p: int) -> np.ndarray:
    """All normalized nonzero triples over F_p in canonical order, shape (p*p+p+1, 3)."""
    rows = [(0, 0, 1)]
    rows += [(0, 1, z) for z in range(p)]
    rows += [(1, y, z) for y in range(p) for z in range(p)]
    return np.array(rows, dtype=np.int64)


def normalize(v, p: int) -> tuple[int, int, int]:
    v = [int(a) % p for a in v]
    for a in v:
        if a:
            s = int(inverse_table(p)[a])
            return tuple((b * s) % p for b in v)  # type: ignore[return-value]
    raise ValueError("zero vector has no projective point")


def triple_index(t, p: int) -> int:
    """Canonical index of a normalized triple."""
    x, y, z = (int(a) for a in t)
    if x == 1:
        return 1 + p + y * p + z
    if y == 1:
        return 1 + z
    if (x, y, z) == (0, 0, 1):
        return 0
    raise ValueError(f"{t} is not normalized")


def cross(u, v, p: int) -> tuple[int, int, int]:
    u1, u2, u3 = (int(a) for a in u)
    v1, v2, v3 = (int(a) for a in v)
    return ((u2 * v3 - u3 * v2) % p, (u3 * v1 - u1 * v3) % p, (u1 * v2 - u2 * v1) % p)


@dataclass(frozen=True, eq=False)
class PlaneModel:
    """PG(2, p). Build with :func:`build_plane`."""

    p: int
    coords: np.ndarray = field(repr=False)
    line_points: np.ndarray = field(repr=False)
    point_lines: np.ndarray = field(repr=False)

    @property
    def n(self) -> int:
        return self.p * self.p + self.p + 1

    @property
    def points(self) -> list[ProjPoint]:
        return [self.point(i) for i in range(self.n)]

    @property
    def lines(self) -> list[ProjLine]:
        return [self.line(j) for j in range(self.n)]

    def point(self, i: int) -> ProjPoint:
        return ProjPoint(tuple(int(a) for a in self.coords[i]), int(i))

    def line(self, j: int) -> ProjLine:
        return ProjLine(
            tuple(int(a) for a in self.coords[j]),
            int(j),
            tuple(int(a) for a in self.line_points[j]),
        )

    def point_index(self, coords) -> int:
        return triple_index(normalize(coords, self.p), self.p)

    line_index = point_index

    @cached_property
    def incidence(self) -> np.ndarray:
        """Line-by-point 0/1 matrix (rows are line indicators)."""
        N = np.zeros((self.n, self.n), dtype=np.int64)
        rows = np.repeat(np.arange(self.n), self.p + 1)
        N[rows, self.line_points.ravel()] = 1
        N.flags.writeable = False
        return N

    def on(self, x: int, l: int) -> bool:
        return bool(np.dot(self.coords[x], self.coords[l]) % self.p == 0)

    def join(self, x1, x2) -> int:
        """Index of the line through two distinct points."""
        x1, x2 = _idx(x1), _idx(x2)
        if x1 == x2:
            raise ValueError("join of a point with itself is undefined")
        return triple_index(normalize(cross(self.coords[x1], self.coords[x2], self.p), self.p), self.p)

    def meet(self, l1, l2) -> int:
        """Index of the point common to two distinct lines."""
        l1, l2 = _idx(l1), _idx(l2)
        if l1 == l2:
            raise ValueError("meet of a line with itself is undefined")
        return triple_index(normalize(cross(self.coords[l1], self.coords[l2], self.p), self.p), self.p)

    def lines_through(self, x) -> list[ProjLine]:
        return [self.line(j) for j in self.point_lines[_idx(x)]]

    def indicator(self, points) -> np.ndarray:
        v = np.zeros(self.n, dtype=np.int64)
        v[list(points)] = 1
        return v

    def line_vector(self, l) -> np.ndarray:
        return self.indicator(self.line_points[_idx(l)])

    def dual(self) -> "PlaneModel":
        """The dual plane: roles of points and lines swapped (same index sets)."""
        return PlaneModel(self.p, self.coords, self.point_lines, self.line_points)


def _idx(obj) -> int:
    if isinstance(obj, ProjPoint | ProjLine):
        return obj.index
    return int(obj)


@lru_cache(maxsize=16)
def build_plane(p: int) -> PlaneModel:
    p = check_prime(p)
    if p > MAX_P:
        raise ValueError(f"p={p} exceeds the supported range 2..{MAX_P}")
    coords = normalized_triples(p)
    n = coords.shape[0]
    line_points = np.empty((n, p + 1), dtype=np.int64)
    block = 512
    for start in range(0, n, block):
        dots = (coords[start:start + block] @ coords.T) % p
        rows, cols = np.nonzero(dots == 0)
        line_points[start:start + block] = cols.reshape(-1, p + 1)
    # Incidence is symmetric in the coordinates, so the pencil of a point
    # has the same index pattern as the point set of the line with equal coords.
    point_lines = line_points.copy()
    for a in (coords, line_points, point_lines):
        a.flags.writeable = False
    return PlaneModel(p, coords, line_points, point_lines)
