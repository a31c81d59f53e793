"""Root counts: total degree, lattice polytope volumes, mixed volume."""

import itertools
import random
from fractions import Fraction

import numpy as np
import pytest
from scipy.spatial import ConvexHull

from helios.counts import Polytope, minkowski_sum, mixed_volume, total_degree, volume
from helios.parse import parse_system

QUARTIC = parse_system("2\n x**2*y**2 + x + y;\n x*y + x + y + 1;")


def test_total_degree():
    assert total_degree(QUARTIC) == 8
    assert total_degree(parse_system("1\n x**2 - 1;")) == 2
    linear3 = parse_system("3\n x + y + z - 1;\n x - y;\n y - z + 2;")
    assert total_degree(linear3) == 1


def test_total_degree_requires_square():
    with pytest.raises(ValueError):
        total_degree(parse_system("1 2\n x + y;"))


def test_volume_simplex_and_square():
    assert volume([(0, 0), (1, 0), (0, 1)]) == Fraction(1, 2)
    assert volume([(0, 0), (1, 0), (0, 1), (1, 1)]) == Fraction(1)


def test_volume_degenerate_is_zero():
    assert volume([(0, 0), (1, 1), (2, 2)]) == 0
    assert volume([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0)]) == 0


def test_volume_segment():
    assert volume([(2,), (0,)]) == 2


def test_volume_dimension_cap():
    with pytest.raises(ValueError):
        volume([tuple(range(7)), tuple(1 for _ in range(7))])


def _monte_carlo_volume(points, samples, rng):
    # hull-membership sampling over the bounding box, independent of the
    # triangulation used by the implementation
    pts = np.asarray(points, dtype=float)
    hull = ConvexHull(pts)
    lo, hi = pts.min(axis=0), pts.max(axis=0)
    box = np.prod(hi - lo)
    draws = rng.uniform(lo, hi, size=(samples, pts.shape[1]))
    inside = np.ones(samples, dtype=bool)
    for eq in hull.equations:
        inside &= draws @ eq[:-1] + eq[-1] <= 1e-9
    return box * inside.mean()


def test_volume_against_monte_carlo_3d():
    rng = np.random.default_rng(2024)
    for _ in range(5):
        pts = {tuple(int(c) for c in rng.integers(0, 5, size=3)) for _ in range(12)}
        v = float(volume(pts))
        if v == 0.0:
            continue
        estimate = _monte_carlo_volume(sorted(pts), 200_000, rng)
        assert abs(estimate - v) <= 0.02 * max(v, 1.0)


def test_minkowski_sum():
    assert minkowski_sum({(0, 0), (1, 0)}, {(0, 0), (0, 1)}) == {
        (0, 0),
        (1, 0),
        (0, 1),
        (1, 1),
    }


def test_mixed_volume_quartic_pair():
    assert mixed_volume(QUARTIC) == 4


def test_mixed_volume_univariate_segment():
    assert mixed_volume(parse_system("1\n x**2 - 1;")) == 2


def test_mixed_volume_dense_equals_bezout():
    # full supports of degrees (2, 3): the count must match the Bezout bound
    def dense(degree_bound, variables, n):
        pts = [
            e
            for e in itertools.product(range(degree_bound + 1), repeat=n)
            if sum(e) <= degree_bound
        ]
        from helios.poly import Polynomial, Term

        return Polynomial(variables, tuple(Term(1 + k, e) for k, e in enumerate(pts)))

    from helios.poly import PolySystem

    variables = ("x", "y")
    system = PolySystem(variables, (dense(2, variables, 2), dense(3, variables, 2)))
    assert mixed_volume(system) == 6
    assert total_degree(system) == 6


def test_mixed_volume_at_most_total_degree():
    for text in (
        "2\n x**2*y**2 + x + y;\n x*y + x + y + 1;",
        "2\n x**2 + y;\n x + y**3;",
        "1\n x**3 - x;",
    ):
        s = parse_system(text)
        assert mixed_volume(s) <= total_degree(s)


def test_mixed_volume_permutation_invariance():
    a = parse_system("2\n x**2*y**2 + x + y;\n x*y + x + y + 1;")
    b = parse_system("2\n x*y + x + y + 1;\n x**2*y**2 + x + y;")
    # relabeling variables swaps coordinates of all supports
    c = parse_system("2\n y**2*x**2 + y + x;\n y*x + y + x + 1;")
    assert mixed_volume(a) == mixed_volume(b) == mixed_volume(c)


def test_mixed_volume_translation_invariance():
    # multiplying one equation by a monomial translates its support
    a = parse_system("2\n x**2*y**2 + x + y;\n x*y + x + y + 1;")
    b = parse_system("2\n x**3*y**3 + x**2*y + x*y**2;\n x*y + x + y + 1;")
    assert mixed_volume(a) == mixed_volume(b)


def test_mixed_volume_requires_square():
    with pytest.raises(ValueError):
        mixed_volume(parse_system("1 2\n x + y;"))


def test_polytope_validation():
    with pytest.raises(ValueError):
        Polytope(())
    with pytest.raises(ValueError):
        Polytope(((0, 0), (1,)))
