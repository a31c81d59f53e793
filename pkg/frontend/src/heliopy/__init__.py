"""heliopy: session-style scripting bindings over the helios solver core.

>>> from heliopy import set_seed, solve
>>> set_seed(21320)
0
>>> s = solve(["x**2*y**2 + x + y;", "x*y + x + y + 1;"], silent=True)
>>> len(s)
4
"""

from .session import PathTracker, get_seed, mixed_volume, set_seed, solve

__version__ = "0.1.0"
