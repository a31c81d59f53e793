"""Batch command-line front end.

stdout carries only the payload (solution blocks, JSON, counts); everything
diagnostic goes to stderr.  Exit codes: 0 on success, 1 on a mathematical
failure such as no converging path, 2 on usage or input errors.  The
environment variable HELIOS_SEED provides a default seed; --seed overrides.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import binmaps, families, solio, solver, witness
from .counts import mixed_volume, total_degree
from .homotopy import make_gamma_homotopy
from .parse import ParseError, format_system, parse_system, read_system_file
from .poly import PolySystem
from .solver import set_seed, solve
from .tracker import PathTracker, TrackSettings, track_path
from .solio import format_solution, parse_solution_list

__all__ = ["run", "main"]


def _read_system(path: str):
    if path == "-":
        return parse_system(sys.stdin.read())
    return read_system_file(path)


def _apply_seed(args) -> None:
    seed = getattr(args, "seed", None)
    if seed is None:
        env = os.environ.get("HELIOS_SEED")
        if env is not None:
            try:
                seed = int(env)
            except ValueError:
                raise ValueError(f"HELIOS_SEED must be an integer, got {env!r}")
    if seed is not None:
        set_seed(seed)


def _usage_error(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


def _cmd_solve(args) -> int:
    _apply_seed(args)
    system = _read_system(args.file)
    report = solve(system, silent=args.quiet, tasks=args.tasks)
    if args.json:
        print(solio.to_json(report))
    else:
        for sol in report.solutions:
            print(format_solution(sol))
            print()
    if not report.solutions:
        print("no path converged", file=sys.stderr)
        return 1
    return 0


def _cmd_mixvol(args) -> int:
    system = _read_system(args.file)
    print(f"total degree: {total_degree(system)}")
    print(f"mixed volume: {mixed_volume(system)}")
    return 0


def _cmd_track(args) -> int:
    _apply_seed(args)
    target = _read_system(args.target)
    start = _read_system(args.start)
    sols = parse_solution_list(Path(args.sols).read_text(encoding="utf-8"))
    if not sols:
        return _usage_error("no start solutions found")
    homotopy = make_gamma_homotopy(target, start, solver._shared_rng())
    settings = TrackSettings()
    converged = 0
    for sol in sols:
        coords = [sol.coordinate(name) for name in target.variables]
        if args.step:
            tracker = PathTracker(homotopy, coords, settings)
            for point in tracker:
                payload = {
                    "t": point.t,
                    "step": point.step_used,
                    "iterations": point.corrector_iterations,
                    "residual": point.corrector_residual,
                    "x": [[c.real, c.imag] for c in point.x],
                }
                print(json.dumps(payload, sort_keys=True))
            if tracker.status == "converged":
                converged += 1
        else:
            outcome = track_path(homotopy, coords, settings)
            if outcome.status == "converged":
                converged += 1
                print(format_solution(outcome.endpoint))
                print()
            else:
                print(f"path {outcome.status}", file=sys.stderr)
    return 0 if converged else 1


def _cmd_witness(args) -> int:
    _apply_seed(args)
    system = _read_system(args.file)
    ws = witness.witness_set(system, args.dim)
    sliced = PolySystem(system.variables, system.polys + ws.slices)
    sys.stdout.write(format_system(sliced))
    print()
    for sol in ws.points:
        print(format_solution(sol))
        print()
    if not ws.points:
        print("no witness points found", file=sys.stderr)
        return 1
    return 0


def _cmd_cascade(args) -> int:
    _apply_seed(args)
    system = _read_system(args.file)
    result = witness.cascade(system, args.top)
    for dim in sorted(result.candidates, reverse=True):
        points = result.candidates[dim]
        print(f"dimension {dim} : {len(points)} candidates")
        for sol in points:
            print(format_solution(sol))
            print()
    return 0


def _cmd_maps(args) -> int:
    system = _read_system(args.file)
    if not binmaps.is_binomial(system):
        print("error: input is not a binomial system", file=sys.stderr)
        return 1
    for m in binmaps.monomial_maps(system):
        print(m)
    return 0


def _cmd_family(args) -> int:
    system = families.build(args.name, args.n)
    text = format_system(system)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="helios",
        description="Polynomial system solving by homotopy continuation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="compute all isolated solutions")
    p_solve.add_argument("file", help="system file ('-' for stdin)")
    p_solve.add_argument("--seed", type=int, default=None)
    p_solve.add_argument("--json", action="store_true", help="JSON report instead of blocks")
    p_solve.add_argument("--tasks", type=int, default=1, help="path-tracking workers")
    p_solve.add_argument("--quiet", action="store_true", help="suppress progress output")
    p_solve.set_defaults(func=_cmd_solve)

    p_mixvol = sub.add_parser(
        "mixvol",
        help="total degree and mixed volume (zero-coordinate roots not counted)",
    )
    p_mixvol.add_argument("file")
    p_mixvol.set_defaults(func=_cmd_mixvol)

    p_track = sub.add_parser("track", help="track start solutions to a target system")
    p_track.add_argument("--target", required=True)
    p_track.add_argument("--start", required=True)
    p_track.add_argument("--sols", required=True, help="file of start solution blocks")
    p_track.add_argument("--step", action="store_true", help="one JSON line per path point")
    p_track.add_argument("--seed", type=int, default=None)
    p_track.set_defaults(func=_cmd_track)

    p_witness = sub.add_parser("witness", help="witness points at a known dimension")
    p_witness.add_argument("file")
    p_witness.add_argument("--dim", type=int, required=True)
    p_witness.add_argument("--seed", type=int, default=None)
    p_witness.set_defaults(func=_cmd_witness)

    p_cascade = sub.add_parser("cascade", help="candidate witness points at every dimension")
    p_cascade.add_argument("file")
    p_cascade.add_argument("--top", type=int, required=True)
    p_cascade.add_argument("--seed", type=int, default=None)
    p_cascade.set_defaults(func=_cmd_cascade)

    p_maps = sub.add_parser("maps", help="monomial maps of a binomial system")
    p_maps.add_argument("file")
    p_maps.set_defaults(func=_cmd_maps)

    p_family = sub.add_parser("family", help="emit a benchmark family instance")
    p_family.add_argument("name", choices=families.FAMILY_NAMES)
    p_family.add_argument("n", type=int)
    p_family.add_argument("-o", "--output", default=None)
    p_family.set_defaults(func=_cmd_family)
    return parser


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))
