"""The single boundary between the bindings and the solver core.

Every public function of this package funnels through call(): one entry
point, dispatching on a job name, exchanging only strings in the core's
documented text formats plus plain JSON-able values.  Nothing outside this
module touches the core, which keeps the binding surface uniform and makes
the traffic across the boundary auditable.
"""

from __future__ import annotations

import itertools
from typing import Any

import helios
from helios import solio
from helios.counts import mixed_volume as _mixed_volume
from helios.homotopy import make_gamma_homotopy
from helios.parse import parse_system
from helios.solver import _shared_rng, get_seed, set_seed
from helios.tracker import PathTracker, TrackSettings

_trackers: dict[int, PathTracker] = {}
_tracker_ids = itertools.count(1)


def _system_from_strings(polynomials: list[str]):
    if not polynomials:
        raise ValueError("expected at least one polynomial string")
    header = str(len(polynomials))
    return parse_system(header + "\n" + "\n".join(polynomials))


def _job_set_seed(payload: dict[str, Any]) -> int:
    set_seed(int(payload["seed"]))
    return 0


def _job_get_seed(payload: dict[str, Any]) -> int:
    return get_seed()


def _job_solve(payload: dict[str, Any]) -> list[str]:
    system = _system_from_strings(payload["polynomials"])
    report = helios.solve(system, silent=bool(payload.get("silent", False)))
    return [solio.format_solution(sol) for sol in report.solutions]


def _job_mixed_volume(payload: dict[str, Any]) -> int:
    return _mixed_volume(_system_from_strings(payload["polynomials"]))


def _settings_from(payload: dict[str, Any]) -> TrackSettings:
    allowed = {
        "max_step",
        "min_step",
        "corrector_tolerance",
        "max_corrector_iterations",
        "step_expansion",
        "step_reduction",
        "divergence_threshold",
        "endpoint_tolerance",
    }
    unknown = set(payload) - allowed
    if unknown:
        raise ValueError(f"unknown tracker settings: {sorted(unknown)}")
    return TrackSettings(**payload)


def _job_track_init(payload: dict[str, Any]) -> int:
    target = _system_from_strings(payload["target"])
    start = _system_from_strings(payload["start"])
    solution = solio.parse_solution(payload["start_solution"])
    coords = [solution.coordinate(name) for name in target.variables]
    homotopy = make_gamma_homotopy(target, start, _shared_rng())
    settings = _settings_from(payload.get("settings", {}))
    tracker = PathTracker(homotopy, coords, settings)
    handle = next(_tracker_ids)
    _trackers[handle] = tracker
    return handle


def _tracker_for(payload: dict[str, Any]) -> PathTracker:
    handle = payload["tracker"]
    if handle not in _trackers:
        raise ValueError(f"no live tracker with handle {handle}")
    return _trackers[handle]


def _job_track_next(payload: dict[str, Any]) -> dict[str, Any] | None:
    tracker = _tracker_for(payload)
    point = tracker.next()
    if point is None:
        return None
    names = tracker._h.target_system().variables
    return {
        "t": point.t,
        "step": point.step_used,
        "iterations": point.corrector_iterations,
        "residual": point.corrector_residual,
        "coordinates": {
            name: [c.real, c.imag] for name, c in zip(names, point.x)
        },
    }


def _job_track_status(payload: dict[str, Any]) -> str:
    return _tracker_for(payload).status


def _job_track_tune(payload: dict[str, Any]) -> int:
    _tracker_for(payload).tune(_settings_from(payload["settings"]))
    return 0


def _job_track_free(payload: dict[str, Any]) -> int:
    _trackers.pop(payload["tracker"], None)
    return 0


_JOBS = {
    "set_seed": _job_set_seed,
    "get_seed": _job_get_seed,
    "solve": _job_solve,
    "mixed_volume": _job_mixed_volume,
    "track_init": _job_track_init,
    "track_next": _job_track_next,
    "track_status": _job_track_status,
    "track_tune": _job_track_tune,
    "track_free": _job_track_free,
}


def call(job: str, **payload: Any) -> Any:
    """Route one request into the solver core; the only door in."""
    try:
        handler = _JOBS[job]
    except KeyError:
        raise ValueError(f"unknown gateway job {job!r}") from None
    return handler(payload)
