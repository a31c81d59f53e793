"""Solution serialization: the fixed-layout text block, flat records, JSON.

The block layout is pinned down to the byte:

    t :  1.00000000000000E+00  0.00000000000000E+00
    m : 1
    the solution for t :
     x : -1.00000000000000E+00  0.00000000000000E+00
    == err : 2.143E-101 = rco : 4.775E-02 = res : 2.220E-16 =

Coordinates carry 14 fractional digits, the quality triplet 3; positive
numbers are padded with a space where the sign would sit.
"""

from __future__ import annotations

import json
import re

from .solver import SolveReport
from .tracker import Solution

__all__ = [
    "format_solution",
    "parse_solution",
    "parse_solution_list",
    "format_solution_list",
    "to_record",
    "to_json",
]


def _sci(v: float) -> str:
    return f"{v: .14E}"


def format_solution(sol: Solution) -> str:
    """Render one solution as the fixed text block."""
    lines = [
        f"t : {_sci(sol.t.real)} {_sci(sol.t.imag)}",
        f"m : {sol.m}",
        "the solution for t :",
    ]
    for name, value in zip(sol.variables, sol.coordinates):
        lines.append(f" {name} : {_sci(value.real)} {_sci(value.imag)}")
    lines.append(
        f"== err : {sol.err:.3E} = rco : {sol.rco:.3E} = res : {sol.res:.3E} ="
    )
    return "\n".join(lines)


_FLOAT = r"[-+ ]?\d+\.\d+E[-+]\d+"
_T_RE = re.compile(rf"^t :\s*({_FLOAT})\s+({_FLOAT})\s*$")
_M_RE = re.compile(r"^m :\s*(\d+)\s*$")
_COORD_RE = re.compile(rf"^\s*([A-Za-z][A-Za-z0-9_]*) :\s*({_FLOAT})\s+({_FLOAT})\s*$")
_QUAL_RE = re.compile(
    r"^== err :\s*(\S+) = rco :\s*(\S+) = res :\s*(\S+) =\s*$"
)


class SolutionFormatError(ValueError):
    def __init__(self, message: str, line_number: int):
        super().__init__(f"solution block, line {line_number}: {message}")
        self.line_number = line_number


def parse_solution(text: str) -> Solution:
    """Parse a text block back into a Solution (exact to printed precision)."""
    lines = [ln for ln in text.strip("\n").split("\n") if ln.strip()]
    if len(lines) < 4:
        raise SolutionFormatError("expected at least 4 lines", 1)
    m_t = _T_RE.match(lines[0])
    if not m_t:
        raise SolutionFormatError(f"bad t line: {lines[0]!r}", 1)
    t = complex(float(m_t.group(1)), float(m_t.group(2)))
    m_m = _M_RE.match(lines[1])
    if not m_m:
        raise SolutionFormatError(f"bad m line: {lines[1]!r}", 2)
    if lines[2].strip() != "the solution for t :":
        raise SolutionFormatError(f"bad header line: {lines[2]!r}", 3)
    names: list[str] = []
    values: list[complex] = []
    for k, line in enumerate(lines[3:-1], start=4):
        m_c = _COORD_RE.match(line)
        if not m_c:
            raise SolutionFormatError(f"bad coordinate line: {line!r}", k)
        names.append(m_c.group(1))
        values.append(complex(float(m_c.group(2)), float(m_c.group(3))))
    m_q = _QUAL_RE.match(lines[-1])
    if not m_q:
        raise SolutionFormatError(f"bad quality line: {lines[-1]!r}", len(lines))
    if not names:
        raise SolutionFormatError("no coordinate lines found", 4)
    return Solution(
        t=t,
        m=int(m_m.group(1)),
        variables=tuple(names),
        coordinates=tuple(values),
        err=float(m_q.group(1)),
        rco=float(m_q.group(2)),
        res=float(m_q.group(3)),
    )


def format_solution_list(solutions) -> str:
    """Blocks joined by blank lines; inverse of parse_solution_list."""
    return "\n\n".join(format_solution(s) for s in solutions) + "\n"


def parse_solution_list(text: str) -> list[Solution]:
    """Split text into blocks at the '== err ... =' terminator lines."""
    blocks: list[Solution] = []
    current: list[str] = []
    for line in text.split("\n"):
        if not line.strip() and not current:
            continue
        current.append(line)
        if line.startswith("== err"):
            blocks.append(parse_solution("\n".join(current)))
            current = []
    if any(ln.strip() for ln in current):
        raise ValueError("trailing text after the last solution block")
    return blocks


def to_record(sol: Solution) -> dict:
    """Flat key-value view: t, m, err, rco, res plus one key per variable."""
    record: dict = {
        "t": sol.t,
        "m": sol.m,
        "err": sol.err,
        "rco": sol.rco,
        "res": sol.res,
    }
    for name, value in zip(sol.variables, sol.coordinates):
        record[name] = value
    return record


def to_json(report: SolveReport) -> str:
    """Machine-readable report; keys sorted, floats at shortest round-trip."""
    payload = {
        "seed": report.seed,
        "paths": report.paths_tracked,
        "diverged": report.diverged,
        "solutions": [
            {
                "t": [sol.t.real, sol.t.imag],
                "m": sol.m,
                "err": sol.err,
                "rco": sol.rco,
                "res": sol.res,
                "coords": {
                    name: [value.real, value.imag]
                    for name, value in zip(sol.variables, sol.coordinates)
                },
            }
            for sol in report.solutions
        ],
    }
    return json.dumps(payload, sort_keys=True)
