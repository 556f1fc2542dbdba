"""Intersection geometry of point sets (usually codeword supports) in PG(2, p)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .plane import PlaneModel

NAMES = {0: "passant", 1: "tangent", 2: "secant"}


@dataclass(frozen=True)
class KWitness:
    case: str  # "a": x outside S, "b": x inside S
    k: int
    lines: tuple[int, ...]

    @property
    def threshold_offset(self) -> int:
        return 2 if self.case == "a" else 3

    def bound(self, p: int) -> int:
        return self.k * (p + 2 - self.k)


@dataclass(frozen=True)
class PencilLineInside:
    """k_witness marker: some line through x lies inside S, so case b is excluded."""

    line: int


@dataclass(frozen=True)
class PencilCounts:
    secants: int
    tangents: int
    passants: int
    higher: int


def mask(plane: PlaneModel, S) -> np.ndarray:
    m = np.zeros(plane.n, dtype=bool)
    m[np.asarray(list(S), dtype=np.int64)] = True
    return m


def line_hits(plane: PlaneModel, S) -> np.ndarray:
    """|l n S| for every line l."""
    return mask(plane, S)[plane.line_points].sum(axis=1)


def classify_line(plane: PlaneModel, line: int, S) -> tuple[int, str]:
    i = int(mask(plane, S)[plane.line_points[line]].sum())
    return i, NAMES.get(i, f"{i}-secant")


def intersection_profile(plane: PlaneModel, S) -> dict[int, int]:
    """e_i = number of lines meeting S in exactly i points, for i = 0..p+1."""
    S = set(int(s) for s in S)
    hits = line_hits(plane, S)
    counts = np.bincount(hits, minlength=plane.p + 2)
    e = {i: int(c) for i, c in enumerate(counts)}
    if sum(e.values()) != plane.n or sum(i * c for i, c in e.items()) != (plane.p + 1) * len(S):
        raise RuntimeError(f"profile counting identities fail for {sorted(S)}")
    return e


def _pencil_hits(plane: PlaneModel, x: int, m: np.ndarray):
    pencil = plane.point_lines[x]
    return pencil, m[plane.line_points[pencil]].sum(axis=1)


def tangent_locus(plane: PlaneModel, x: int, S) -> set[int]:
    """Points y of S (y != x) with x v y a tangent (x outside S) or a secant (x in S)."""
    m = mask(plane, S)
    pencil, hits = _pencil_hits(plane, x, m)
    want = 2 if m[x] else 1
    out: set[int] = set()
    for l, h in zip(pencil, hits):
        if h == want:
            out.update(int(y) for y in plane.line_points[l] if m[y] and y != x)
    return out


def collinear(plane: PlaneModel, pts) -> bool:
    pts = sorted(int(q) for q in pts)
    if len(pts) <= 2:
        return True
    l = plane.join(pts[0], pts[1])
    return all(plane.on(q, l) for q in pts[2:])


def k_witness(plane: PlaneModel, x: int, S) -> KWitness | PencilLineInside | None:
    """Smallest k with at least k pencil lines through x meeting S in >= p+2-k
    points (x outside S), or >= p+3-k points (x in S)."""
    p = plane.p
    m = mask(plane, S)
    pencil, hits = _pencil_hits(plane, x, m)
    if m[x]:
        full = np.flatnonzero(hits == p + 1)
        if full.size:
            return PencilLineInside(int(pencil[full[0]]))
        case, offset, kmin = "b", 3, 3
    else:
        case, offset, kmin = "a", 2, 2
    order = np.lexsort((pencil, -hits))
    for k in range(kmin, p + 2):
        good = order[hits[order] >= p + offset - k]
        if good.size >= k:
            return KWitness(case, k, tuple(int(pencil[i]) for i in good))
    return None


def pencil_counts(plane: PlaneModel, x: int, S) -> PencilCounts:
    _, hits = _pencil_hits(plane, x, mask(plane, S))
    c = np.bincount(hits, minlength=3)
    return PencilCounts(int(c[2]), int(c[1]), int(c[0]), int(c[3:].sum()))


def is_double_blocking(plane: PlaneModel, S) -> bool:
    e = intersection_profile(plane, S)
    return e[0] == 0 and e[1] == 0
