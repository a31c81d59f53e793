"""Predictor-corrector path tracking with adaptive steps and endpoint refinement.

A PathTracker is driven step by step through next(), which performs one
accepted tangent-predictor / Newton-corrector move and hands back the new
path point.  Settings can be swapped mid-path with tune().  track_path runs
a tracker to its end and refines the endpoint into a Solution carrying the
quality triplet (err, rco, res).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .poly import PolySystem, evaluate_system, jacobian

__all__ = [
    "TrackSettings",
    "PathPoint",
    "PathOutcome",
    "Solution",
    "PathTracker",
    "tracker_init",
    "track_path",
    "refine_endpoint",
    "newton_refine",
    "inverse_condition",
]

START_RESIDUAL_BOUND = 1e-8
PIVOT_FLOOR = 1e-14


@dataclass(frozen=True)
class TrackSettings:
    """Knobs of the step-size control and the correctors."""

    max_step: float = 0.1
    min_step: float = 1e-8
    corrector_tolerance: float = 1e-8
    max_corrector_iterations: int = 4
    step_expansion: float = 2.0
    step_reduction: float = 0.5
    divergence_threshold: float = 1e8
    endpoint_tolerance: float = 1e-12

    def __post_init__(self) -> None:
        if not 0.0 < self.min_step <= self.max_step <= 1.0:
            raise ValueError("need 0 < min_step <= max_step <= 1")
        for name in ("corrector_tolerance", "endpoint_tolerance", "divergence_threshold"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be positive")
        if self.max_corrector_iterations < 1:
            raise ValueError("max_corrector_iterations must be at least 1")
        if self.step_expansion < 1.0:
            raise ValueError("step_expansion must be at least 1")
        if not 0.0 < self.step_reduction < 1.0:
            raise ValueError("step_reduction must lie in (0, 1)")


@dataclass(frozen=True)
class PathPoint:
    """One accepted point on a solution path."""

    t: float
    x: tuple[complex, ...]
    step_used: float
    corrector_iterations: int
    corrector_residual: float


@dataclass(frozen=True)
class Solution:
    """An end-of-path record with the quality triplet.

    err is the max-norm of the last Newton update (forward error), rco the
    inverse condition number of the Jacobian and res the max-norm of the
    system evaluated at the point (backward error).
    """

    t: complex
    m: int
    variables: tuple[str, ...]
    coordinates: tuple[complex, ...]
    err: float
    rco: float
    res: float

    def coordinate(self, name: str) -> complex:
        return self.coordinates[self.variables.index(name)]


@dataclass(frozen=True)
class PathOutcome:
    status: str  # "converged" | "diverged" | "stalled"
    endpoint: Solution | None = None


def _max_norm(v: np.ndarray) -> float:
    return float(np.abs(v).max()) if v.size else 0.0


class PathTracker:
    """Stateful tracker for one solution path of a homotopy.

    The homotopy must provide eval(x, t) -> (value, jacobian, dt) and a
    target_system() accessor; distinct trackers share it safely because it is
    immutable.  Tracking is fully deterministic: equal homotopy, start and
    settings produce identical step sequences.
    """

    def __init__(self, homotopy, start: Sequence[complex], settings: TrackSettings | None = None):
        self._h = homotopy
        self._settings = settings if settings is not None else TrackSettings()
        self._x = np.asarray(start, dtype=np.complex128).copy()
        if self._x.shape != (homotopy.n_variables,):
            raise ValueError(
                f"start point must have {homotopy.n_variables} coordinates"
            )
        value, _, _ = homotopy.eval(self._x, 0.0)
        residual = _max_norm(value)
        if residual > START_RESIDUAL_BOUND:
            raise ValueError(
                f"start point is not on the path: residual {residual:.3e} "
                f"exceeds {START_RESIDUAL_BOUND:.0e}"
            )
        self._t = 0.0
        self._step = self._settings.max_step
        self._streak = 0
        self._status = "tracking"

    @property
    def t(self) -> float:
        return self._t

    @property
    def x(self) -> tuple[complex, ...]:
        return tuple(complex(c) for c in self._x)

    @property
    def status(self) -> str:
        return self._status

    @property
    def finished(self) -> bool:
        return self._status != "tracking"

    @property
    def settings(self) -> TrackSettings:
        return self._settings

    def tune(self, settings: TrackSettings) -> None:
        """Swap in new settings without moving; invalid settings are rejected."""
        if not isinstance(settings, TrackSettings):
            raise TypeError("tune expects a TrackSettings value")
        self._settings = settings
        self._step = min(self._step, settings.max_step)

    def next(self) -> PathPoint | None:
        """Advance by one accepted predictor-corrector step.

        Returns the accepted PathPoint, or None when the path terminates
        without one (diverged or stalled); t strictly increases across the
        points this emits.  Calling next() on a finished tracker is an error.
        """
        if self.finished:
            raise ValueError(f"tracker is finished with status {self._status!r}")
        st = self._settings
        while True:
            if 1.0 - self._t <= self._step:
                step, t_new = 1.0 - self._t, 1.0  # land exactly on the end
            else:
                step, t_new = self._step, self._t + self._step
            accepted, y, iters, update = self._attempt(t_new)
            if self._status == "diverged":
                return None
            if accepted:
                self._t = t_new
                self._x = y
                self._streak += 1
                if self._streak >= 3:
                    self._step = min(self._step * st.step_expansion, st.max_step)
                    self._streak = 0
                if t_new >= 1.0:
                    self._status = "converged"
                return PathPoint(t_new, tuple(map(complex, y)), step, iters, update)
            self._streak = 0
            self._step *= st.step_reduction
            if self._step < st.min_step:
                self._status = "stalled"
                return None

    def _attempt(self, t_new: float) -> tuple[bool, np.ndarray, int, float]:
        """One trial step: tangent predictor then Newton corrector at fixed t.

        The corrector normally accepts once the update max-norm drops to the
        tolerance.  After the iteration cap there is one fallback: accept on
        the residual max-norm instead, provided the corrector stayed local.
        Near a singular endpoint Newton contracts only linearly while h is
        already quadratically small, so this is what lets such paths finish;
        the locality guard keeps a wandering corrector from tunneling onto a
        different root and faking convergence.
        """
        st = self._settings
        failed = (False, self._x, 0, math.inf)
        try:
            _, jx, dt = self._h.eval(self._x, self._t)
            tangent = np.linalg.solve(jx, -dt)
        except np.linalg.LinAlgError:
            return failed
        predicted = self._x + (t_new - self._t) * tangent
        if not np.isfinite(predicted).all():
            return failed
        if _max_norm(predicted) > st.divergence_threshold:
            self._status = "diverged"
            return failed
        y = predicted
        update = math.inf
        for k in range(st.max_corrector_iterations + 1):
            value, jx, _ = self._h.eval(y, t_new)
            residual = _max_norm(value)
            if update <= st.corrector_tolerance:
                return True, y, k, residual
            if k == st.max_corrector_iterations:
                moved = _max_norm(y - predicted)
                local = moved <= 0.1 * max(1.0, _max_norm(predicted))
                if residual <= st.corrector_tolerance and local:
                    return True, y, k, residual
                return failed
            try:
                delta = np.linalg.solve(jx, -value)
            except np.linalg.LinAlgError:
                return failed
            y = y + delta
            if not np.isfinite(y).all():
                return failed
            if _max_norm(y) > st.divergence_threshold:
                self._status = "diverged"
                return failed
            update = _max_norm(delta)
        return failed

    def __iter__(self):
        return self

    def __next__(self) -> PathPoint:
        if self.finished:
            raise StopIteration
        point = self.next()
        if point is None:
            raise StopIteration
        return point


def tracker_init(
    homotopy, start: Sequence[complex], settings: TrackSettings | None = None
) -> PathTracker:
    """Start a tracker at t = 0; the start point must satisfy h(., 0) = 0."""
    return PathTracker(homotopy, start, settings)


def track_path(
    homotopy, start: Sequence[complex], settings: TrackSettings | None = None
) -> PathOutcome:
    """Track one path to termination and refine the endpoint when it converges."""
    settings = settings if settings is not None else TrackSettings()
    tracker = PathTracker(homotopy, start, settings)
    last = None
    while not tracker.finished:
        point = tracker.next()
        if point is not None:
            last = point
    if tracker.status != "converged":
        return PathOutcome(tracker.status)
    solution = refine_endpoint(homotopy.target_system(), last.x, settings)
    return PathOutcome("converged", solution)


def newton_refine(
    f: PolySystem,
    x: Sequence[complex],
    tolerance: float,
    max_iterations: int,
) -> tuple[np.ndarray, list[float]]:
    """Newton iteration on f from x; returns the iterate and the update norms.

    Stops once an update max-norm drops to the tolerance, the iteration cap
    is hit, or the Jacobian becomes exactly singular; the caller reads
    convergence off the returned update sequence.
    """
    point = np.asarray(x, dtype=np.complex128).copy()
    updates: list[float] = []
    for _ in range(max_iterations):
        value = evaluate_system(f, point)
        jac = jacobian(f, point)
        try:
            delta = np.linalg.solve(jac, -value)
        except np.linalg.LinAlgError:
            break
        if not np.isfinite(delta).all():
            break
        point = point + delta
        updates.append(_max_norm(delta))
        if updates[-1] <= tolerance:
            break
    return point, updates


def inverse_condition(matrix: np.ndarray) -> float:
    """1 / (1-norm of J times 1-norm of J^-1), or 0 on a tiny LU pivot."""
    a = np.array(matrix, dtype=np.complex128)
    n = a.shape[0]
    aug = np.hstack([a, np.eye(n, dtype=np.complex128)])
    for col in range(n):
        pivot_row = col + int(np.argmax(np.abs(aug[col:, col])))
        pivot = aug[pivot_row, col]
        if abs(pivot) < PIVOT_FLOOR:
            return 0.0
        if pivot_row != col:
            aug[[col, pivot_row]] = aug[[pivot_row, col]]
        aug[col] = aug[col] / pivot
        for row in range(n):
            if row != col and aug[row, col] != 0:
                aug[row] = aug[row] - aug[row, col] * aug[col]
    inverse = aug[:, n:]
    norm_a = float(np.abs(a).sum(axis=0).max())
    norm_inv = float(np.abs(inverse).sum(axis=0).max())
    if norm_a == 0.0 or norm_inv == 0.0:
        return 0.0
    return min(1.0, 1.0 / (norm_a * norm_inv))


def solution_quality(f: PolySystem, x: Sequence[complex]) -> tuple[float, float]:
    """(rco, res) of f at x, without moving the point."""
    point = np.asarray(x, dtype=np.complex128)
    res = _max_norm(evaluate_system(f, point))
    rco = inverse_condition(jacobian(f, point))
    return rco, res


def refine_endpoint(
    f: PolySystem, x: Sequence[complex], settings: TrackSettings | None = None
) -> Solution:
    """Polish an endpoint with up to five Newton steps and measure its quality.

    err is the max-norm of the last update made (0 when the point is already
    an exact root), res the backward error at the refined point and rco the
    inverse condition number of the Jacobian there.  A diverging refinement
    is not an error; it simply shows up as a large err.
    """
    if not f.is_square():
        raise ValueError("endpoint refinement needs a square system")
    settings = settings if settings is not None else TrackSettings()
    refined, updates = newton_refine(f, x, settings.endpoint_tolerance, 5)
    err = updates[-1] if updates else math.inf
    rco, res = solution_quality(f, refined)
    return Solution(
        t=1 + 0j,
        m=1,
        variables=f.variables,
        coordinates=tuple(map(complex, refined)),
        err=err,
        rco=rco,
        res=res,
    )
