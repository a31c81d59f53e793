"""Homotopies: the gamma-trick blend and the two-instance parameter blend.

Both evaluators return the triple (h value, Jacobian in x, derivative in t)
at a point; they are never expanded into one polynomial system, which keeps
t symbolic and evaluation cheap.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from ._rand import unit_circle
from .poly import Polynomial, PolySystem, Term, evaluate_system, jacobian

__all__ = [
    "Homotopy",
    "ParameterHomotopy",
    "make_gamma_homotopy",
    "make_parameter_homotopy",
    "eval_h",
]


def _check_shapes(f: PolySystem, g: PolySystem) -> None:
    if f.variables != g.variables:
        raise ValueError("target and start must share one variable list")
    if not (f.is_square() and g.is_square()):
        raise ValueError("target and start must both be square")


@dataclass(frozen=True)
class Homotopy:
    """h(x, t) = gamma * (1 - t) * g(x) + t * f(x), with |gamma| = 1."""

    target: PolySystem
    start: PolySystem
    gamma: complex

    def __post_init__(self) -> None:
        _check_shapes(self.target, self.start)
        if abs(abs(self.gamma) - 1.0) > 1e-12:
            raise ValueError("gamma must lie on the unit circle")

    @property
    def n_variables(self) -> int:
        return self.target.n_variables

    def target_system(self) -> PolySystem:
        return self.target

    def eval(
        self, x: Sequence[complex], t: float
    ) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        if not 0.0 <= t <= 1.0:
            raise ValueError(f"t must lie in [0, 1], got {t}")
        fx = evaluate_system(self.target, x)
        gx = evaluate_system(self.start, x)
        jf = jacobian(self.target, x)
        jg = jacobian(self.start, x)
        w = self.gamma * (1.0 - t)
        value = w * gx + t * fx
        jx = w * jg + t * jf
        dt = fx - self.gamma * gx
        return value, jx, dt


def make_gamma_homotopy(
    f: PolySystem, g: PolySystem, rng: random.Random
) -> Homotopy:
    """Blend start g into target f with a random unit-modulus gamma."""
    _check_shapes(f, g)
    return Homotopy(f, g, unit_circle(rng))


def eval_h(
    h, x: Sequence[complex], t: float
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Evaluate a homotopy: returns (value vector, Jacobian in x, d/dt vector)."""
    return h.eval(x, t)


def _substitute(p: Polynomial, values: Mapping[str, complex]) -> Polynomial:
    """Fix some variables of p at numeric values; returns a polynomial in the rest."""
    keep = [i for i, name in enumerate(p.variables) if name not in values]
    fixed = [(i, complex(values[name])) for i, name in enumerate(p.variables) if name in values]
    new_vars = tuple(p.variables[i] for i in keep)
    terms = []
    for term in p.terms:
        coef = term.coefficient
        for i, v in fixed:
            if term.exponents[i]:
                coef *= v ** term.exponents[i]
        terms.append(Term(coef, tuple(term.exponents[i] for i in keep)))
    return Polynomial(new_vars, tuple(terms))


@dataclass(frozen=True)
class ParameterHomotopy:
    """h(x, t) = (1 - t) * f(lambda0, x) + t * f(lambda1, x).

    The generic-parameter assumption replaces the gamma trick here, so no
    gamma factor is applied; non-generic parameter pairs may meet singular
    points along the way, which surface as path failures.
    """

    at_start: PolySystem
    at_target: PolySystem

    def __post_init__(self) -> None:
        _check_shapes(self.at_target, self.at_start)

    @property
    def n_variables(self) -> int:
        return self.at_target.n_variables

    def target_system(self) -> PolySystem:
        return self.at_target

    def eval(
        self, x: Sequence[complex], t: float
    ) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        if not 0.0 <= t <= 1.0:
            raise ValueError(f"t must lie in [0, 1], got {t}")
        f0 = evaluate_system(self.at_start, x)
        f1 = evaluate_system(self.at_target, x)
        j0 = jacobian(self.at_start, x)
        j1 = jacobian(self.at_target, x)
        value = (1.0 - t) * f0 + t * f1
        jx = (1.0 - t) * j0 + t * j1
        dt = f1 - f0
        return value, jx, dt


def make_parameter_homotopy(
    family: PolySystem,
    lambda0: Mapping[str, complex],
    lambda1: Mapping[str, complex],
) -> ParameterHomotopy:
    """Instantiate a parametric family at two parameter vectors and blend them.

    The family is a system over parameters and variables together; lambda0
    and lambda1 assign values to the same parameter names, and both
    substitutions must leave a square system in the remaining variables.
    """
    if set(lambda0) != set(lambda1):
        raise ValueError("lambda0 and lambda1 must assign the same parameter names")
    unknown = set(lambda0) - set(family.variables)
    if unknown:
        raise ValueError(f"unknown parameter names: {sorted(unknown)}")
    start = PolySystem(
        tuple(v for v in family.variables if v not in lambda0),
        tuple(_substitute(p, lambda0) for p in family.polys),
    )
    target = PolySystem(
        start.variables,
        tuple(_substitute(p, lambda1) for p in family.polys),
    )
    if not start.is_square():
        raise ValueError(
            f"substituted system has {start.n_equations} equations in "
            f"{start.n_variables} variables; it must be square"
        )
    return ParameterHomotopy(start, target)
