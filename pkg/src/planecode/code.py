"""The p-ary code C_p of PG(2, p) and its dual.

Codewords are length p^2+p+1 integer arrays indexed by canonical point order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import comb

import numpy as np

from . import fplinalg as fl
from .plane import PlaneModel, build_plane


def code_dimension(p: int) -> int:
    return comb(p + 1, 2) + 1


def dual_dimension(p: int) -> int:
    return comb(p + 1, 2)


class MoorhouseError(ValueError):
    pass


@dataclass(frozen=True)
class MoorhouseSpec:
    """Data for a Moorhouse basis.

    ``points`` orders the p+1 points of ``base_line`` as x_0..x_p;
    ``line_sets[i-1]`` holds i lines through x_i other than the base line;
    ``extra_line`` passes through x_0.
    """

    base_line: int
    points: tuple[int, ...]
    line_sets: tuple[tuple[int, ...], ...]
    extra_line: int


@dataclass(eq=False)
class CodeModel:
    plane: PlaneModel

    @property
    def p(self) -> int:
        return self.plane.p

    @property
    def n(self) -> int:
        return self.plane.n

    @property
    def generators(self) -> np.ndarray:
        return self.plane.incidence

    @cached_property
    def _rref(self):
        R, r, pivots = fl.rref(self.generators, self.p)
        R = R[:r]
        R.flags.writeable = False
        return R, r, tuple(pivots)

    @property
    def dimension(self) -> int:
        return self._rref[1]

    @property
    def basis(self) -> np.ndarray:
        """Row-reduced basis of C_p (dimension x n)."""
        return self._rref[0]

    @property
    def pivots(self) -> tuple[int, ...]:
        return self._rref[2]

    @cached_property
    def dual_basis(self) -> np.ndarray:
        K = fl.kernel_basis(self.generators, self.p)
        K.flags.writeable = False
        return K

    def _check(self, w) -> np.ndarray:
        w = np.asarray(w, dtype=np.int64)
        if w.shape != (self.n,):
            raise ValueError(f"word of shape {w.shape} does not fit a plane with {self.n} points")
        return w % self.p

    def line_sums(self, w) -> np.ndarray:
        w = self._check(w)
        return w[self.plane.line_points].sum(axis=1) % self.p

    def is_member(self, w) -> int | None:
        """Common value of all line sums if w is in C_p, else None."""
        sums = self.line_sums(w)
        sigma = int(sums[0])
        if np.any(sums != sigma):
            return None
        # the constant is forced to be the total sum
        assert sigma == int(self._check(w).sum() % self.p)
        return sigma

    def is_dual_member(self, w) -> bool:
        return not np.any(self.line_sums(w))

    def in_span(self, w) -> bool:
        """Row-space solve; independent cross-check of :meth:`is_member`."""
        return fl.in_row_space(self._check(w), self.generators, self.p) is not None

    def words_supported_in(self, S) -> np.ndarray:
        """Basis (rows) of the codewords whose support lies inside the point set S."""
        outside = np.ones(self.n, dtype=bool)
        outside[list(S)] = False
        B = self.basis
        coeffs = fl.left_kernel_basis(B[:, outside], self.p)
        if coeffs.shape[0] == 0:
            return np.zeros((0, self.n), dtype=np.int64)
        return (coeffs @ B) % self.p

    def subsystem_full_rank(self, S) -> bool:
        """True iff restricting C_p to the complement of S keeps its dimension.

        Equivalently S contains the support of no nonzero codeword.
        """
        outside = np.ones(self.n, dtype=bool)
        outside[list(S)] = False
        return fl.rank(self.basis[:, outside], self.p) == self.dimension

    def validate_moorhouse(self, spec: MoorhouseSpec) -> None:
        pl = self.plane
        p = self.p
        base = set(pl.line_points[spec.base_line].tolist())
        if len(spec.points) != p + 1 or set(spec.points) != base:
            raise MoorhouseError("points must enumerate the base line's p+1 points")
        if len(spec.line_sets) != p:
            raise MoorhouseError(f"expected {p} line sets L_1..L_p, got {len(spec.line_sets)}")
        seen: set[int] = set()
        for i, Li in enumerate(spec.line_sets, start=1):
            if len(Li) != i or len(set(Li)) != i:
                raise MoorhouseError(f"|L_{i}| must be {i} distinct lines, got {list(Li)}")
            xi = spec.points[i]
            for l in Li:
                if l == spec.base_line:
                    raise MoorhouseError(f"L_{i} contains the base line")
                if not pl.on(xi, l):
                    raise MoorhouseError(f"line {l} in L_{i} does not pass through x_{i}={xi}")
                if l in seen:
                    raise MoorhouseError(f"line {l} appears twice")
                seen.add(l)
        if not pl.on(spec.points[0], spec.extra_line):
            raise MoorhouseError(f"extra line {spec.extra_line} does not pass through x_0")
        if spec.extra_line in seen:
            raise MoorhouseError(f"extra line {spec.extra_line} duplicates a line of L_i")

    def moorhouse_basis(self, spec: MoorhouseSpec) -> np.ndarray:
        """Line indicators of the Moorhouse basis, extra line first; rank-checked."""
        self.validate_moorhouse(spec)
        lines = [spec.extra_line] + [l for Li in spec.line_sets for l in Li]
        B = self.generators[lines].copy()
        r = fl.rank(B, self.p)
        if r != len(lines) or r != self.dimension:
            raise RuntimeError(f"Moorhouse set has rank {r}, expected {self.dimension}")
        return B


def build_code(plane: PlaneModel | int) -> CodeModel:
    if not isinstance(plane, PlaneModel):
        plane = build_plane(plane)
    code = CodeModel(plane)
    expected = code_dimension(plane.p)
    if code.dimension != expected:
        raise RuntimeError(f"dim C_{plane.p} = {code.dimension}, formula gives {expected}")
    return code


def random_moorhouse_spec(plane: PlaneModel, rng: np.random.Generator) -> MoorhouseSpec:
    p = plane.p
    base = int(rng.integers(plane.n))
    points = tuple(int(x) for x in rng.permutation(plane.line_points[base]))
    sets = []
    for i in range(1, p + 1):
        pencil = [int(l) for l in plane.point_lines[points[i]] if l != base]
        sets.append(tuple(sorted(int(l) for l in rng.choice(pencil, size=i, replace=False))))
    extra = int(rng.choice(plane.point_lines[points[0]]))
    return MoorhouseSpec(base, points, tuple(sets), extra)
