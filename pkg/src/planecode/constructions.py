"""Explicit codewords for the low weights of C_p.

``bagchi_word`` builds the weight 3p-3 word of the dual code attached to a
point x, three lines through x and a line m missing x. The word is written
down in the frame where the three lines are X=0, Y=0, X=Y and m is Z=0, then
pulled back along a projectivity.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import fplinalg as fl
from .plane import PlaneModel, normalize, triple_index


@dataclass(frozen=True)
class TwoLineSpec:
    line1: int
    line2: int
    coeff1: int
    coeff2: int


@dataclass(frozen=True)
class BagchiFrame:
    apex: int
    lines: tuple[int, int, int]
    far_line: int

    def validate(self, plane: PlaneModel) -> None:
        if len(set(self.lines)) != 3:
            raise ValueError("the three lines through the apex must be distinct")
        for l in self.lines:
            if not plane.on(self.apex, l):
                raise ValueError(f"line {l} does not pass through the apex {self.apex}")
        if plane.on(self.apex, self.far_line):
            raise ValueError("the far line must not pass through the apex")


# A decomposition is a tuple of (line index, nonzero coefficient) pairs, at most two.
LineCombination = tuple[tuple[int, int], ...]


def line_word(plane: PlaneModel, line: int, coeff: int = 1) -> np.ndarray:
    return (plane.line_vector(line) * coeff) % plane.p


def two_line_word(plane: PlaneModel, spec: TwoLineSpec) -> np.ndarray:
    if spec.line1 == spec.line2:
        raise ValueError("two_line_word needs distinct lines")
    w = line_word(plane, spec.line1, spec.coeff1) + line_word(plane, spec.line2, spec.coeff2)
    return w % plane.p


def combination_word(plane: PlaneModel, terms: LineCombination) -> np.ndarray:
    w = np.zeros(plane.n, dtype=np.int64)
    for l, c in terms:
        w += line_word(plane, l, c)
    return w % plane.p


def frame_matrix(plane: PlaneModel, frame: BagchiFrame) -> np.ndarray:
    """Matrix T (columns are point coordinates) with
    T[0:0:1] = apex, T[0:1:0] = m ^ l1, T[1:0:0] = m ^ l2, T[1:1:0] = m ^ l3.
    """
    p = plane.p
    l1, l2, l3 = frame.lines
    x = plane.coords[frame.apex]
    a1 = plane.coords[plane.meet(frame.far_line, l1)]
    a2 = plane.coords[plane.meet(frame.far_line, l2)]
    a3 = plane.coords[plane.meet(frame.far_line, l3)]
    # a3 = alpha*a2 + beta*a1 since all three lie on m
    c = fl.in_row_space(a3, np.stack([a2, a1]), p)
    assert c is not None
    alpha, beta = int(c[0]), int(c[1])
    return np.stack([alpha * a2, beta * a1, x], axis=1) % p


def _frame_value(t, p: int) -> int:
    X, Y, Z = t
    if Z == 0:
        return 0
    if (X, Y) in ((0, 1), (1, 0)):
        return Z
    if (X, Y) == (1, 1):
        return (-Z) % p
    return 0


def bagchi_word(plane: PlaneModel, frame: BagchiFrame) -> np.ndarray:
    """Word of C_p-perp supported on (l1 u l2 u l3) minus (m u {x}); weight 3p-3."""
    p = plane.p
    if p == 2:
        raise ValueError("bagchi_word requires odd p")
    frame.validate(plane)
    T = frame_matrix(plane, frame)
    Tinv = _inverse3(T, p)
    w = np.zeros(plane.n, dtype=np.int64)
    support = set()
    for l in frame.lines:
        support.update(plane.line_points[l].tolist())
    for i in support:
        t = normalize(Tinv @ plane.coords[i], p)
        w[i] = _frame_value(t, p)
    return w


def _inverse3(T: np.ndarray, p: int) -> np.ndarray:
    aug = np.concatenate([T % p, np.eye(3, dtype=np.int64)], axis=1)
    R, r, _ = fl.rref(aug, p)
    if r != 3 or np.any(R[:, :3] != np.eye(3, dtype=np.int64)):
        raise ValueError("frame matrix is singular")
    return R[:, 3:]


def canonical_frame(plane: PlaneModel) -> BagchiFrame:
    """Frame with lines X=0, Y=0, X=Y through [0:0:1] and far line Z=0."""
    p = plane.p
    idx = lambda t: triple_index(normalize(t, p), p)  # noqa: E731
    return BagchiFrame(idx((0, 0, 1)), (idx((1, 0, 0)), idx((0, 1, 0)), idx((1, p - 1, 0))), idx((0, 0, 1)))


def random_frame(plane: PlaneModel, rng: np.random.Generator) -> BagchiFrame:
    x = int(rng.integers(plane.n))
    lines = tuple(int(l) for l in rng.choice(plane.point_lines[x], size=3, replace=False))
    off = np.setdiff1d(np.arange(plane.n), plane.point_lines[x])
    return BagchiFrame(x, lines, int(rng.choice(off)))


def decompose_two_lines(plane: PlaneModel, w) -> LineCombination | None:
    """Write w as a combination of at most two lines, or return None."""
    p = plane.p
    w = np.asarray(w, dtype=np.int64) % p
    wt = fl.weight(w)
    if wt == 0:
        return ()
    if wt > 2 * p + 1:
        return None
    on_support = (w[plane.line_points] != 0).sum(axis=1)
    for l in np.flatnonzero(on_support >= p):
        vals = w[plane.line_points[l]]
        for lam in np.unique(vals[vals != 0]):
            rest = (w - lam * plane.line_vector(l)) % p
            tail = _single_line(plane, rest)
            if tail is not None:
                return ((int(l), int(lam)),) + tail
    return None


def _single_line(plane: PlaneModel, w: np.ndarray) -> LineCombination | None:
    supp = np.flatnonzero(w)
    if supp.size == 0:
        return ()
    if supp.size != plane.p + 1:
        return None
    l = plane.join(int(supp[0]), int(supp[1]))
    if not np.array_equal(np.sort(plane.line_points[l]), supp):
        return None
    vals = np.unique(w[supp])
    if vals.size != 1:
        return None
    return ((int(l), int(vals[0])),)
