"""Shared helpers for drawing random complex constants."""

from __future__ import annotations

import cmath
import math
import random

TWO_PI = 2.0 * math.pi


def unit_circle(rng: random.Random) -> complex:
    """A uniformly random complex number of modulus one."""
    return cmath.exp(1j * TWO_PI * rng.random())
