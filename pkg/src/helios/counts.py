"""Root counts: Bezout total degree and the mixed volume of Newton polytopes.

The mixed volume is evaluated by inclusion-exclusion over Minkowski sums,
which is exponential in the number of variables but exact; the dimension is
capped accordingly.  All volumes are computed as exact rationals: the convex
hull facets come from Qhull, the simplex volumes from integer determinants.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import Iterable

import numpy as np
from scipy.spatial import Delaunay, QhullError

from .poly import PolySystem, degree, support

__all__ = ["Polytope", "total_degree", "volume", "mixed_volume", "minkowski_sum"]

MAX_DIMENSION = 6


@dataclass(frozen=True)
class Polytope:
    """A lattice polytope given by (a superset of) its vertices."""

    points: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        pts = sorted({tuple(int(c) for c in p) for p in self.points})
        if not pts:
            raise ValueError("a polytope needs at least one point")
        dim = len(pts[0])
        if any(len(p) != dim for p in pts):
            raise ValueError("all points must have the same dimension")
        object.__setattr__(self, "points", tuple(pts))

    @property
    def dimension(self) -> int:
        return len(self.points[0])


def total_degree(s: PolySystem) -> int:
    """Bezout number: the product of the equation degrees of a square system."""
    if not s.is_square():
        raise ValueError(
            f"total degree needs a square system, got {s.n_equations} equations "
            f"in {s.n_variables} variables"
        )
    result = 1
    for p in s.polys:
        result *= degree(p)
    return result


def _int_det(rows: list[tuple[int, ...]]) -> int:
    """Exact determinant of a small integer matrix (fraction-free Bareiss)."""
    n = len(rows)
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for r in range(k + 1, n):
            for c in range(k + 1, n):
                m[r][c] = (m[r][c] * m[k][k] - m[r][k] * m[k][c]) // prev
            m[r][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _affine_rank(points: list[tuple[int, ...]]) -> int:
    """Rank of the point set's affine hull, by exact integer elimination."""
    base = points[0]
    rows = [[p[i] - base[i] for i in range(len(base))] for p in points[1:]]
    rank = 0
    col = 0
    ncols = len(base)
    while rows and col < ncols:
        pivot_row = next((r for r in range(len(rows)) if rows[r][col] != 0), None)
        if pivot_row is None:
            col += 1
            continue
        rows[0], rows[pivot_row] = rows[pivot_row], rows[0]
        head = rows[0]
        rest = []
        for r in rows[1:]:
            if r[col] != 0:
                factor_head, factor_r = r[col], head[col]
                r = [factor_r * a - factor_head * b for a, b in zip(r, head)]
            if any(r):
                rest.append(r)
        rows = rest
        rank += 1
        col += 1
    return rank


def volume(p: Polytope | Iterable[tuple[int, ...]]) -> Fraction:
    """Euclidean volume of the convex hull of a lattice point set.

    Returns 0 when the hull is lower-dimensional.  The hull is partitioned
    into simplices by a Delaunay triangulation and each simplex contributes
    |det| / n!, evaluated in exact integer arithmetic; exactness is
    cross-checked downstream by the integrality of mixed volumes.
    """
    if not isinstance(p, Polytope):
        p = Polytope(tuple(p))
    n = p.dimension
    if n > MAX_DIMENSION:
        raise ValueError(f"dimension {n} exceeds the cap of {MAX_DIMENSION}")
    pts = list(p.points)
    if len(pts) <= n:
        return Fraction(0)
    if _affine_rank(pts) < n:
        return Fraction(0)
    if n == 1:
        return Fraction(pts[-1][0] - pts[0][0])
    try:
        tri = Delaunay(np.asarray(pts, dtype=float))
    except QhullError:
        return Fraction(0)
    scaled = 0
    for simplex in tri.simplices:
        base = pts[int(simplex[0])]
        rows = [
            tuple(pts[int(v)][i] - base[i] for i in range(n)) for v in simplex[1:]
        ]
        scaled += abs(_int_det(rows))
    return Fraction(scaled, factorial(n))


def minkowski_sum(
    a: Iterable[tuple[int, ...]], b: Iterable[tuple[int, ...]]
) -> set[tuple[int, ...]]:
    """Pointwise sums {p + q}, deduplicated."""
    return {tuple(x + y for x, y in zip(p, q)) for p in a for q in b}


def mixed_volume(s: PolySystem) -> int:
    """Mixed volume of the Newton polytopes of a square system.

    Computed as sum over nonempty subsets S of (-1)^(n-|S|) times the volume
    of the Minkowski sum of the polytopes indexed by S.  Counts the isolated
    solutions with all coordinates nonzero; roots with zero coordinates are
    not covered by this predictor.
    """
    if not s.is_square():
        raise ValueError("mixed volume needs a square system")
    n = s.n_variables
    if n > MAX_DIMENSION:
        raise ValueError(f"dimension {n} exceeds the cap of {MAX_DIMENSION}")
    supports = [support(p) for p in s.polys]
    mv = Fraction(0)
    for size in range(1, n + 1):
        sign = (-1) ** (n - size)
        for subset in combinations(range(n), size):
            pts: set[tuple[int, ...]] = supports[subset[0]]
            for k in subset[1:]:
                pts = minkowski_sum(pts, supports[k])
            mv += sign * volume(pts)
    if mv.denominator != 1 or mv < 0:
        raise ArithmeticError(f"mixed volume came out non-integral: {mv}")
    return int(mv)
