"""Path tracking: stepping, tuning, outcomes, endpoint refinement."""

import math
import random

import numpy as np
import pytest

from helios.homotopy import make_gamma_homotopy
from helios.parse import parse_system
from helios.poly import PolySystem, Polynomial, Term, evaluate_system
from helios.solver import _shared_rng, set_seed
from helios.startsys import total_degree_start
from helios.tracker import (
    PathTracker,
    TrackSettings,
    inverse_condition,
    newton_refine,
    refine_endpoint,
    track_path,
    tracker_init,
)

QUARTIC = parse_system("2\n x**2*y**2 + x + y;\n x*y + x + y + 1;")


def quartic_homotopy(seed):
    rng = random.Random(seed)
    pair = total_degree_start(QUARTIC, rng)
    return pair, make_gamma_homotopy(QUARTIC, pair.g, rng)


def test_settings_validation():
    with pytest.raises(ValueError):
        TrackSettings(min_step=0.2, max_step=0.1)
    with pytest.raises(ValueError):
        TrackSettings(max_step=2.0)
    with pytest.raises(ValueError):
        TrackSettings(corrector_tolerance=-1)
    with pytest.raises(ValueError):
        TrackSettings(step_reduction=1.0)


def test_tracker_init_accepts_start_solution():
    pair, h = quartic_homotopy(1)
    tracker = tracker_init(h, pair.solutions[0])
    assert tracker.t == 0.0
    assert not tracker.finished


def test_tracker_init_rejects_bad_start():
    _, h = quartic_homotopy(1)
    with pytest.raises(ValueError):
        tracker_init(h, [5.0, 5.0])


def test_trackers_are_independent():
    pair, h = quartic_homotopy(2)
    a = tracker_init(h, pair.solutions[0])
    b = tracker_init(h, pair.solutions[3])
    a.next()
    assert b.t == 0.0 and a.t > 0.0


def test_t_strictly_increases():
    pair, h = quartic_homotopy(3)
    tracker = tracker_init(h, pair.solutions[0])
    previous = 0.0
    while not tracker.finished:
        point = tracker.next()
        if point is None:
            break
        assert point.t > previous
        previous = point.t
    if tracker.status == "converged":
        assert previous == 1.0


def test_emitted_points_stay_on_path():
    pair, h = quartic_homotopy(4)
    settings = TrackSettings()
    for start in pair.solutions[:4]:
        tracker = tracker_init(h, start, settings)
        while not tracker.finished:
            point = tracker.next()
            if point is None:
                break
            value, _, _ = h.eval(np.array(point.x), point.t)
            assert np.abs(value).max() <= 10 * settings.corrector_tolerance
            assert point.corrector_residual <= settings.corrector_tolerance


def test_generator_equals_batch():
    pair, h = quartic_homotopy(5)
    for start in pair.solutions:
        batch = track_path(h, start)
        tracker = tracker_init(h, start)
        last = None
        while not tracker.finished:
            point = tracker.next()
            if point is not None:
                last = point
        assert tracker.status == batch.status
        if batch.status == "converged":
            refined = refine_endpoint(QUARTIC, last.x)
            for a, b in zip(refined.coordinates, batch.endpoint.coordinates):
                assert abs(a - b) <= 1e-8


def test_tracking_is_deterministic():
    pair, h = quartic_homotopy(6)
    def run():
        tracker = tracker_init(h, pair.solutions[0])
        points = []
        while not tracker.finished:
            p = tracker.next()
            if p is not None:
                points.append((p.t, p.x, p.step_used))
        return points
    assert run() == run()


def test_square_root_deformation_endpoint():
    # gamma blend from x^2 - 1 to x^2 - 4 starting at x = 1: the endpoint
    # satisfies x^2 = 4; the branch tracked from +1 lands on +2
    g = parse_system("1\n x**2 - 1;")
    f = parse_system("1\n x**2 - 4;")
    set_seed(0)
    h = make_gamma_homotopy(f, g, _shared_rng())
    out = track_path(h, [1.0])
    assert out.status == "converged"
    end = out.endpoint.coordinates[0]
    assert abs(end**2 - 4) <= 1e-8
    assert abs(end - 2) <= 1e-8


def test_linear_path_converges():
    g = parse_system("1\n x - 1;")
    f = parse_system("1\n x - 2;")
    h = make_gamma_homotopy(f, g, random.Random(8))
    out = track_path(h, [1.0])
    assert out.status == "converged"
    assert abs(out.endpoint.coordinates[0] - 2) <= 1e-10


def test_divergence_threshold_flags_escaping_path():
    # quadratic start, linear target: one of the two paths escapes to
    # infinity like 1/(1-t) and must cross a low norm threshold
    g = parse_system("1\n x**2 - 1;")
    f = parse_system("1\n x - 2;")
    set_seed(12)
    h = make_gamma_homotopy(f, g, _shared_rng())
    outcomes = [
        track_path(h, [s], TrackSettings(divergence_threshold=10.0))
        for s in (1.0, -1.0)
    ]
    statuses = sorted(o.status for o in outcomes)
    assert statuses == ["converged", "diverged"]
    converged = next(o for o in outcomes if o.status == "converged")
    assert abs(converged.endpoint.coordinates[0] - 2) <= 1e-8


def test_next_on_finished_tracker_raises():
    g = parse_system("1\n x - 1;")
    f = parse_system("1\n x - 2;")
    h = make_gamma_homotopy(f, g, random.Random(9))
    tracker = tracker_init(h, [1.0])
    while not tracker.finished:
        tracker.next()
    with pytest.raises(ValueError):
        tracker.next()


def test_iterator_protocol():
    pair, h = quartic_homotopy(10)
    tracker = tracker_init(h, pair.solutions[0])
    points = list(tracker)
    assert points
    assert tracker.finished


def test_tune_shrinks_step():
    pair, h = quartic_homotopy(11)
    tracker = tracker_init(h, pair.solutions[0])
    tracker.next()
    tracker.tune(TrackSettings(max_step=0.01))
    point = tracker.next()
    assert point.step_used <= 0.01


def test_tune_tightens_corrector():
    pair, h = quartic_homotopy(12)
    tracker = tracker_init(h, pair.solutions[0])
    tracker.next()
    tracker.tune(TrackSettings(corrector_tolerance=1e-12))
    point = tracker.next()
    assert point.corrector_residual <= 1e-12


def test_tune_rejects_invalid_and_keeps_old():
    pair, h = quartic_homotopy(13)
    tracker = tracker_init(h, pair.solutions[0])
    with pytest.raises(ValueError):
        tracker.tune(TrackSettings(min_step=0.5, max_step=0.1))
    assert tracker.settings.max_step == 0.1


def test_quartic_system_path_tally():
    # total-degree tracking of the quartic pair: 4 of 8 paths reach finite
    # roots; the 4 excess paths fail to converge
    pair, h = quartic_homotopy(14)
    statuses = [track_path(h, s).status for s in pair.solutions]
    assert statuses.count("converged") == 4
    assert sum(s in ("diverged", "stalled") for s in statuses) == 4


def test_refine_exact_root():
    f = parse_system("1\n x - 2;")
    sol = refine_endpoint(f, [2.0])
    assert sol.err == 0.0
    assert sol.res == 0.0
    assert sol.rco == 1.0
    assert sol.m == 1


def test_refine_quartic_root_quality():
    sol = refine_endpoint(QUARTIC, [-1.0, -1.61803398874989])
    assert sol.res <= 1e-12
    # inverse condition number of the Jacobian at this root
    assert 4.775e-2 / 2 <= sol.rco <= 4.775e-2 * 2


def test_newton_quadratic_contraction():
    # on a regular root the update norms contract quadratically:
    # u_{k+1} <= C * u_k^2 with a modest constant
    rng = random.Random(77)
    variables = ("x", "y")
    target = [0.3 + 0.4j, -0.6 + 0.1j]
    # build a system with a known regular root by subtracting the value
    polys = []
    for k in range(2):
        terms = [
            Term(complex(rng.uniform(-1, 1), rng.uniform(-1, 1)), (2, 0)),
            Term(complex(rng.uniform(-1, 1), rng.uniform(-1, 1)), (0, 2)),
            Term(complex(rng.uniform(-1, 1), rng.uniform(-1, 1)), (1, 1)),
            Term(1 + 0.3 * k, (1, 0)),
            Term(1 - 0.2 * k, (0, 1)),
        ]
        p = Polynomial(variables, tuple(terms))
        from helios.poly import evaluate

        shift = evaluate(p, target)
        polys.append(Polynomial(variables, p.terms + (Term(-shift, (0, 0)),)))
    system = PolySystem(variables, tuple(polys))
    start = [target[0] + 1e-3, target[1] - 1e-3j]
    _, updates = newton_refine(system, start, 1e-15, 6)
    assert len(updates) >= 3
    for u_prev, u_next in zip(updates, updates[1:]):
        if u_next <= 1e-15:
            break
        assert u_next <= 100 * u_prev**2


def test_inverse_condition_identity_and_singular():
    assert inverse_condition(np.eye(3)) == 1.0
    assert inverse_condition(np.array([[1.0, 0.0], [0.0, 0.0]])) == 0.0
