"""helios: polynomial system solving by homotopy continuation.

Isolated solutions of square systems come out of the blackbox solve();
positive-dimensional sets are represented by witness sets and cascades, and
binomial systems by exact monomial maps.  Path tracking is also available
step by step through PathTracker.
"""

from .binmaps import MonomialMap, is_binomial, monomial_maps, verify_map
from .counts import mixed_volume, total_degree
from .families import cyclic, noon
from .homotopy import Homotopy, make_gamma_homotopy, make_parameter_homotopy
from .parse import (
    format_polynomial,
    format_system,
    parse_polynomial,
    parse_system,
    read_system_file,
    write_system_file,
)
from .poly import Polynomial, PolySystem, Term, evaluate, jacobian
from .solio import format_solution, parse_solution, to_json, to_record
from .solver import SolveReport, cluster_multiplicities, get_seed, set_seed, solve
from .startsys import StartPair, random_slices, square_up, total_degree_start
from .tracker import (
    PathOutcome,
    PathPoint,
    PathTracker,
    Solution,
    TrackSettings,
    refine_endpoint,
    track_path,
    tracker_init,
)
from .witness import WitnessSet, cascade, embed, witness_set

__version__ = "0.1.0"
