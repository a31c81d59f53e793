"""Session API: solve systems given as lists of polynomial strings.

Mirrors an interactive workflow: fix the seed, call solve() on string
polynomials, read back solution strings, or walk a single path step by step
with a PathTracker.  Everything delegates to the gateway module.
"""

from __future__ import annotations

from . import gateway

__all__ = ["set_seed", "get_seed", "solve", "mixed_volume", "PathTracker"]


def set_seed(seed: int) -> int:
    """Seed the core's random generator; returns 0."""
    return gateway.call("set_seed", seed=seed)


def get_seed() -> int:
    return gateway.call("get_seed")


def solve(polynomials: list[str], silent: bool = False) -> list[str]:
    """Solve a square system given as ';'-terminated polynomial strings.

    Returns one formatted solution string per isolated solution found; parse
    them with helios.solio.parse_solution or keep them as text.
    """
    return gateway.call("solve", polynomials=list(polynomials), silent=silent)


def mixed_volume(polynomials: list[str]) -> int:
    """Mixed volume of the system's Newton polytopes (toric root count)."""
    return gateway.call("mixed_volume", polynomials=list(polynomials))


class PathTracker:
    """Step-by-step tracking of one solution path.

    Built from target and start systems (lists of polynomial strings) and one
    start solution string; next() returns the fields of the next path point
    as a dict, or None once the path has ended.  Settings can be adjusted
    mid-path with tune().
    """

    def __init__(
        self,
        target: list[str],
        start: list[str],
        start_solution: str,
        **settings: float,
    ):
        self._handle = gateway.call(
            "track_init",
            target=list(target),
            start=list(start),
            start_solution=start_solution,
            settings=settings,
        )

    def next(self) -> dict | None:
        return gateway.call("track_next", tracker=self._handle)

    def tune(self, **settings: float) -> None:
        gateway.call("track_tune", tracker=self._handle, settings=settings)

    @property
    def status(self) -> str:
        return gateway.call("track_status", tracker=self._handle)

    def close(self) -> None:
        gateway.call("track_free", tracker=self._handle)

    def __iter__(self):
        return self

    def __next__(self) -> dict:
        if self.status != "tracking":
            raise StopIteration
        point = self.next()
        if point is None:
            raise StopIteration
        return point
