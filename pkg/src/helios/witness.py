"""Witness sets for positive-dimensional solution sets.

A d-dimensional component is represented by d random affine slices together
with the points where the component meets them.  When the dimension is not
known, candidates at every dimension come out of a top-down cascade of
embeddings with slack variables: a point whose slack coordinates vanish
lives on the sliced solution set at that level, the others continue down.

No membership test is applied, so all outputs are candidate supersets: junk
points from higher-dimensional components may remain at lower levels.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from ._rand import unit_circle
from .homotopy import Homotopy
from .poly import Polynomial, PolySystem, Term, evaluate_system, linear_combination
from .solver import solve
from .startsys import random_slices, square_up
from .tracker import Solution, TrackSettings, track_path

__all__ = ["WitnessSet", "Embedding", "CascadeResult", "embed", "witness_set", "cascade"]

SLACK_ZERO_TOLERANCE = 1e-8
SLACK_AMBIGUOUS_TOLERANCE = 1e-6
POINT_RESIDUAL_BOUND = 1e-8


@dataclass(frozen=True)
class WitnessSet:
    """dim-many random slices plus the points cutting out a component's degree."""

    system: PolySystem
    dimension: int
    slices: tuple[Polynomial, ...]
    points: tuple[Solution, ...]

    @property
    def degree(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class Embedding:
    """A system augmented with slack variables for the cascade.

    The augmented system is square of size n + level: the base equations get
    random slack columns, and each slice equation carries its own slack
    variable.  Setting all slacks to zero recovers base + slices.
    """

    original: PolySystem
    level: int
    base: PolySystem
    slices: tuple[Polynomial, ...]
    slack_columns: tuple[tuple[complex, ...], ...]  # [equation][slack]
    slack_names: tuple[str, ...]
    augmented: PolySystem


def _square_to_n(s: PolySystem, rng: random.Random) -> PolySystem:
    """Bring the equation count to the variable count, preserving the zero set.

    Overdetermined systems are squared down by random combinations; systems
    with too few equations are padded with extra random combinations of the
    originals, which cut out the same set.
    """
    n = s.n_variables
    if s.n_equations == n:
        return s
    if s.n_equations > n:
        return square_up(s, n, rng)
    extra = []
    for _ in range(n - s.n_equations):
        weights = [unit_circle(rng) for _ in range(s.n_equations)]
        extra.append(linear_combination(s.polys, weights))
    return PolySystem(s.variables, s.polys + tuple(extra))


def _slack_names(variables: tuple[str, ...], d: int) -> tuple[str, ...]:
    names = []
    for j in range(1, d + 1):
        name = f"zz{j}"
        while name in variables or name in names:
            name = "z" + name
        names.append(name)
    return tuple(names)


def _lift(p: Polynomial, new_variables: tuple[str, ...]) -> Polynomial:
    """Reinterpret p over a variable list that extends its own."""
    positions = [new_variables.index(v) for v in p.variables]
    terms = []
    for term in p.terms:
        exps = [0] * len(new_variables)
        for pos, e in zip(positions, term.exponents):
            exps[pos] = e
        terms.append(Term(term.coefficient, tuple(exps)))
    return Polynomial(new_variables, tuple(terms))


def _assemble_level(
    base: PolySystem,
    slices: tuple[Polynomial, ...],
    slack_columns: tuple[tuple[complex, ...], ...],
    slack_names: tuple[str, ...],
    level: int,
) -> PolySystem:
    """The square embedded system at the given level (level <= len(slices))."""
    variables = base.variables + slack_names[:level]
    nv = len(variables)
    polys = []
    for k, p in enumerate(base.polys):
        terms = list(_lift(p, variables).terms)
        for j in range(level):
            exps = [0] * nv
            exps[len(base.variables) + j] = 1
            terms.append(Term(slack_columns[k][j], tuple(exps)))
        polys.append(Polynomial(variables, tuple(terms)))
    for j in range(level):
        terms = list(_lift(slices[j], variables).terms)
        exps = [0] * nv
        exps[len(base.variables) + j] = 1
        terms.append(Term(1, tuple(exps)))
        polys.append(Polynomial(variables, tuple(terms)))
    return PolySystem(variables, tuple(polys))


def embed(s: PolySystem, d: int, rng: random.Random) -> Embedding:
    """Augment s with d slack variables, slack columns, and d sliced equations."""
    n = s.n_variables
    if not 1 <= d <= n:
        raise ValueError(f"embedding level must be between 1 and {n}, got {d}")
    base = _square_to_n(s, rng)
    slack_columns = tuple(
        tuple(unit_circle(rng) for _ in range(d)) for _ in range(n)
    )
    slices = random_slices(s.variables, d, rng)
    names = _slack_names(s.variables, d)
    augmented = _assemble_level(base, slices, slack_columns, names, d)
    return Embedding(
        original=s,
        level=d,
        base=base,
        slices=slices,
        slack_columns=slack_columns,
        slack_names=names,
        augmented=augmented,
    )


def _original_residual(s: PolySystem, point) -> float:
    return float(np.abs(evaluate_system(s, point)).max())


def witness_set(
    s: PolySystem, d: int, rng: random.Random | None = None
) -> WitnessSet:
    """Witness points of the d-dimensional part of the zero set of s.

    Cuts the system with d random affine slices, squares the equations up to
    n - d, solves the resulting square system, and keeps the solutions that
    actually satisfy the original equations.
    """
    from .solver import _shared_rng

    generator = rng if rng is not None else _shared_rng()
    n = s.n_variables
    if not 1 <= d <= n - 1:
        raise ValueError(f"dimension must be between 1 and {n - 1}, got {d}")
    k = n - d
    if k > s.n_equations:
        raise ValueError(
            f"need at least {k} equations to cut dimension {d} in {n} variables"
        )
    base = s if s.n_equations == k else square_up(s, k, generator)
    slices = random_slices(s.variables, d, generator)
    sliced = PolySystem(s.variables, base.polys + slices)
    report = solve(sliced, silent=True, rng=generator)
    points = tuple(
        sol
        for sol in report.solutions
        if _original_residual(s, sol.coordinates) <= POINT_RESIDUAL_BOUND
    )
    return WitnessSet(system=s, dimension=d, slices=slices, points=points)


@dataclass(frozen=True)
class CascadeResult:
    """Per-dimension candidate witness points, plus the ambiguous leftovers.

    Points whose slack norm falls between the zero tolerance and the
    ambiguity tolerance are not classified either way; they are reported
    separately instead of being silently counted.
    """

    candidates: dict[int, list[Solution]]
    ambiguous: dict[int, list[Solution]]


def _strip_slacks(sol: Solution, n_original: int) -> Solution:
    return Solution(
        t=sol.t,
        m=sol.m,
        variables=sol.variables[:n_original],
        coordinates=sol.coordinates[:n_original],
        err=sol.err,
        rco=sol.rco,
        res=sol.res,
    )


def _slack_norm(sol: Solution, n_original: int, level: int) -> float:
    if level == 0:
        return 0.0
    parts = sol.coordinates[n_original : n_original + level]
    return max(abs(z) for z in parts)


def cascade(
    s: PolySystem, top: int, rng: random.Random | None = None
) -> CascadeResult:
    """Candidate witness points at every dimension from top down to zero.

    The embedded system at the top level is solved blackbox; points with
    vanishing slack coordinates are candidates there, the rest start paths of
    the next level's homotopy, in which the last slice equation is replaced
    by the constraint that its slack variable vanish.  An empty start set at
    some level ends the cascade early with the lower dimensions empty.
    """
    from .solver import _shared_rng

    generator = rng if rng is not None else _shared_rng()
    n = s.n_variables
    if not 0 <= top <= n - 1:
        raise ValueError(f"top dimension must be between 0 and {n - 1}, got {top}")
    candidates: dict[int, list[Solution]] = {k: [] for k in range(top + 1)}
    ambiguous: dict[int, list[Solution]] = {k: [] for k in range(top + 1)}
    settings = TrackSettings()

    if top == 0:
        base = _square_to_n(s, generator)
        report = solve(base, silent=True, rng=generator)
        candidates[0] = list(report.solutions)
        return CascadeResult(candidates, ambiguous)

    emb = embed(s, top, generator)
    report = solve(emb.augmented, silent=True, rng=generator)
    current = list(report.solutions)
    n_orig = len(emb.base.variables)

    for level in range(top, 0, -1):
        zero_here: list[Solution] = []
        carry_down: list[Solution] = []
        for sol in current:
            norm = _slack_norm(sol, n_orig, level)
            if norm <= SLACK_ZERO_TOLERANCE:
                zero_here.append(sol)
            elif norm <= SLACK_AMBIGUOUS_TOLERANCE:
                ambiguous[level].append(_strip_slacks(sol, n_orig))
                carry_down.append(sol)
            else:
                carry_down.append(sol)
        candidates[level] = [_strip_slacks(sol, n_orig) for sol in zero_here]
        if not carry_down:
            break

        # Level homotopy: force the current slack to zero, keeping everything
        # else; gamma multiplies the start side for regularity.
        level_system = _assemble_level(
            emb.base, emb.slices, emb.slack_columns, emb.slack_names, level
        )
        slack_poly_exps = [0] * len(level_system.variables)
        slack_poly_exps[n_orig + level - 1] = 1
        target_polys = level_system.polys[:-1] + (
            Polynomial(level_system.variables, (Term(1, tuple(slack_poly_exps)),)),
        )
        target = PolySystem(level_system.variables, target_polys)
        h = Homotopy(target, level_system, unit_circle(generator))

        next_points: list[Solution] = []
        for sol in carry_down:
            outcome = track_path(h, sol.coordinates, settings)
            if outcome.status == "converged":
                trimmed = Solution(
                    t=outcome.endpoint.t,
                    m=outcome.endpoint.m,
                    variables=outcome.endpoint.variables[:-1],
                    coordinates=outcome.endpoint.coordinates[:-1],
                    err=outcome.endpoint.err,
                    rco=outcome.endpoint.rco,
                    res=outcome.endpoint.res,
                )
                next_points.append(trimmed)
        current = next_points
        if level == 1:
            candidates[0] = [_strip_slacks(sol, n_orig) for sol in current]
    return CascadeResult(candidates, ambiguous)
