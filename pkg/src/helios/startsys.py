"""Start systems with known solutions, random affine slices, squaring up.

All randomness flows through the injected generator, so equal seeds give
byte-identical output.
"""

from __future__ import annotations

import cmath
import itertools
import math
import random
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._rand import TWO_PI, unit_circle
from .poly import Polynomial, PolySystem, Term, degree, linear_combination

__all__ = ["StartPair", "total_degree_start", "random_slices", "square_up"]


@dataclass(frozen=True)
class StartPair:
    """A start system g(x) = 0 together with all of its solutions."""

    g: PolySystem
    solutions: tuple[tuple[complex, ...], ...]
    degrees: tuple[int, ...]


def total_degree_start(s: PolySystem, rng: random.Random) -> StartPair:
    """Build g_i = x_i^d_i - r_i with unit-modulus r_i and all its roots.

    The degrees d_i are those of the target equations; the solution list is
    the full cartesian product of the d_i-th roots of each r_i, so it has
    exactly prod(d_i) entries.
    """
    if not s.is_square():
        raise ValueError("a total-degree start system needs a square target")
    n = s.n_variables
    degrees = tuple(degree(p) for p in s.polys)
    if any(d < 1 for d in degrees):
        raise ValueError("every equation must have degree at least one")
    angles = [TWO_PI * rng.random() for _ in range(n)]
    polys = []
    for i, d in enumerate(degrees):
        exps = [0] * n
        exps[i] = d
        polys.append(
            Polynomial(
                s.variables,
                (Term(1, tuple(exps)), Term(-cmath.exp(1j * angles[i]), (0,) * n)),
            )
        )
    roots_per_variable = [
        [cmath.exp(1j * (angles[i] + TWO_PI * k) / d) for k in range(d)]
        for i, d in enumerate(degrees)
    ]
    solutions = tuple(itertools.product(*roots_per_variable))
    return StartPair(PolySystem(s.variables, tuple(polys)), solutions, degrees)


def random_slices(
    variables: Sequence[str] | int, d: int, rng: random.Random
) -> tuple[Polynomial, ...]:
    """d affine equations c_0 + sum_i c_i x_i with unit-circle coefficients.

    The d-by-n coefficient matrix is guaranteed to have full rank (redrawn in
    the measure-zero case that it does not).
    """
    if isinstance(variables, int):
        variables = tuple(f"x{k + 1}" for k in range(variables))
    else:
        variables = tuple(variables)
    n = len(variables)
    if not 1 <= d <= n:
        raise ValueError(f"slice count must be between 1 and {n}, got {d}")
    while True:
        coefs = [[unit_circle(rng) for _ in range(n + 1)] for _ in range(d)]
        matrix = np.array([row[1:] for row in coefs], dtype=np.complex128)
        if np.linalg.matrix_rank(matrix) == d:
            break
    slices = []
    for row in coefs:
        terms = [Term(row[0], (0,) * n)]
        for i in range(n):
            exps = [0] * n
            exps[i] = 1
            terms.append(Term(row[i + 1], tuple(exps)))
        slices.append(Polynomial(variables, tuple(terms)))
    return tuple(slices)


def square_up(s: PolySystem, k: int, rng: random.Random) -> PolySystem:
    """Replace the N equations by k <= N random complex linear combinations.

    Every solution of s satisfies the output; for k = N the combination
    matrix is invertible, so the zero sets agree exactly.
    """
    n_eqs = s.n_equations
    if not 1 <= k <= n_eqs:
        raise ValueError(f"target count must be between 1 and {n_eqs}, got {k}")
    if k == n_eqs:
        while True:
            matrix = [[unit_circle(rng) for _ in range(n_eqs)] for _ in range(k)]
            if abs(np.linalg.det(np.array(matrix))) > 1e-8:
                break
    else:
        matrix = [[unit_circle(rng) for _ in range(n_eqs)] for _ in range(k)]
    combined = tuple(linear_combination(s.polys, row) for row in matrix)
    return PolySystem(s.variables, combined)
