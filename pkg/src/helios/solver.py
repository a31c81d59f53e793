"""Blackbox solving: seed control, path tracking for all start solutions,
and clustering of endpoints into multiplicities.

One module-level random generator feeds every random draw (start-system
constants, gamma, slices).  It is advanced in a fixed order before any
concurrent tracking begins, so runs with equal seeds are reproducible down
to the byte even when paths are tracked by several workers.
"""

from __future__ import annotations

import random
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .homotopy import make_gamma_homotopy
from .poly import PolySystem, evaluate_system, jacobian
from .startsys import total_degree_start
from .tracker import (
    PathOutcome,
    Solution,
    TrackSettings,
    inverse_condition,
    track_path,
)

__all__ = [
    "SolveReport",
    "set_seed",
    "get_seed",
    "solve",
    "cluster_multiplicities",
]

DEFAULT_CLUSTER_RADIUS = 1e-6

_seed: int = random.SystemRandom().randrange(2**31)
_rng: random.Random = random.Random(_seed)


def set_seed(seed: int) -> None:
    """Fix the seed of the shared random generator for reproducible runs."""
    global _seed, _rng
    _seed = int(seed)
    _rng = random.Random(_seed)


def get_seed() -> int:
    """The seed currently backing the shared generator."""
    return _seed


def _shared_rng() -> random.Random:
    return _rng


@dataclass(frozen=True)
class SolveReport:
    """Everything a blackbox run produced."""

    solutions: tuple[Solution, ...]
    paths_tracked: int
    diverged: int
    stalled: int
    seed: int
    root_count_used: int


def _validate_input(s: PolySystem) -> None:
    if not s.is_square():
        raise ValueError(
            f"the blackbox solver needs a square system, got {s.n_equations} "
            f"equations in {s.n_variables} variables; use witness sets for "
            "non-square input"
        )
    for k, p in enumerate(s.polys):
        if p.is_zero():
            raise ValueError(f"equation {k + 1} is the zero polynomial")
        if all(t.total_degree == 0 for t in p.terms):
            raise ValueError(f"equation {k + 1} is a nonzero constant; no solutions exist")


def _canonical_key(coords: Sequence[complex]) -> tuple:
    return tuple((round(c.real, 8), round(c.imag, 8)) for c in coords)


def _cluster_indices(
    points: list[np.ndarray], radius: float, halos: Sequence[float] | None = None
) -> list[list[int]]:
    """Group indices whose points lie within radius (max-norm, transitive).

    Optional halos widen the radius per pair: two points are merged when
    they are indistinguishable at their own refinement accuracy, which is
    what collapses multiple roots whose endpoints cannot be polished below
    the base radius.
    """
    n = len(points)
    parent = list(range(n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in range(n):
        for j in range(i + 1, n):
            bound = radius
            if halos is not None:
                bound = max(bound, min(1e-3, 10.0 * max(halos[i], halos[j])))
            if float(np.abs(points[i] - points[j]).max()) <= bound:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return [groups[root] for root in sorted(groups)]


def cluster_multiplicities(
    endpoints: Sequence[Sequence[complex]], radius: float = DEFAULT_CLUSTER_RADIUS
) -> list[tuple[tuple[complex, ...], int]]:
    """Merge endpoint vectors within radius of each other (transitively).

    Returns one (representative, multiplicity) pair per cluster, where the
    representative is the component-wise mean.
    """
    if radius <= 0:
        raise ValueError("cluster radius must be positive")
    points = [np.asarray(e, dtype=np.complex128) for e in endpoints]
    out = []
    for group in _cluster_indices(points, radius):
        mean = sum(points[i] for i in group) / len(group)
        out.append((tuple(map(complex, mean)), len(group)))
    return out


def _track_all(
    homotopy, starts, settings: TrackSettings, tasks: int, silent: bool
) -> list[PathOutcome]:
    def one(start):
        return track_path(homotopy, start, settings)

    if tasks > 1:
        with ThreadPoolExecutor(max_workers=tasks) as pool:
            outcomes = list(pool.map(one, starts))
    else:
        outcomes = []
        for k, start in enumerate(starts):
            outcomes.append(one(start))
            if not silent and (k + 1) % 25 == 0:
                print(f"tracked {k + 1}/{len(starts)} paths", file=sys.stderr)
    return outcomes


def solve(
    s: PolySystem,
    *,
    silent: bool = False,
    start: str = "total-degree",
    tasks: int = 1,
    rng: random.Random | None = None,
    settings: TrackSettings | None = None,
    cluster_radius: float = DEFAULT_CLUSTER_RADIUS,
) -> SolveReport:
    """Compute all isolated solutions of a square polynomial system.

    Builds a total-degree start system, blends it into the target with a
    random gamma, tracks every path, refines the converged endpoints and
    clusters them into multiplicities.  The mixed volume is a sharper
    predictor of the finite root count, but the start system is always the
    total-degree one, so excess paths simply diverge.

    silent only suppresses progress output; it never changes the result.
    """
    _validate_input(s)
    if start != "total-degree":
        raise ValueError(f"unsupported start system choice: {start!r}")
    if tasks < 1:
        raise ValueError("tasks must be at least 1")
    generator = rng if rng is not None else _shared_rng()
    settings = settings if settings is not None else TrackSettings()

    # All random draws happen here, before any tracking starts.
    pair = total_degree_start(s, generator)
    homotopy = make_gamma_homotopy(s, pair.g, generator)

    if not silent:
        print(
            f"tracking {len(pair.solutions)} total-degree paths", file=sys.stderr
        )
    outcomes = _track_all(homotopy, pair.solutions, settings, tasks, silent)

    # One cheap retry for stalled paths with a finer floor and a patient corrector.
    retry = replace(
        settings,
        min_step=settings.min_step / 10.0,
        max_corrector_iterations=settings.max_corrector_iterations + 2,
    )
    for k, outcome in enumerate(outcomes):
        if outcome.status == "stalled":
            outcomes[k] = track_path(homotopy, pair.solutions[k], retry)

    converged = [o.endpoint for o in outcomes if o.status == "converged"]
    diverged = sum(o.status == "diverged" for o in outcomes)
    stalled = sum(o.status == "stalled" for o in outcomes)

    converged.sort(key=lambda sol: _canonical_key(sol.coordinates))
    points = [np.asarray(sol.coordinates, dtype=np.complex128) for sol in converged]
    halos = [sol.err if np.isfinite(sol.err) else 0.0 for sol in converged]
    solutions = []
    for group in _cluster_indices(points, cluster_radius, halos):
        members = [converged[i] for i in group]
        mean = sum(points[i] for i in group) / len(group)
        res = float(np.abs(evaluate_system(s, mean)).max())
        rco = inverse_condition(jacobian(s, mean))
        solutions.append(
            Solution(
                t=1 + 0j,
                m=len(group),
                variables=s.variables,
                coordinates=tuple(map(complex, mean)),
                err=max(m.err for m in members),
                rco=rco,
                res=res,
            )
        )
    if not silent:
        print(
            f"{len(solutions)} solutions, {diverged} diverged, {stalled} stalled",
            file=sys.stderr,
        )
    return SolveReport(
        solutions=tuple(solutions),
        paths_tracked=len(pair.solutions),
        diverged=diverged,
        stalled=stalled,
        seed=get_seed(),
        root_count_used=len(pair.solutions),
    )
