"""Sparse multivariate polynomials over double-precision complex numbers.

Everything in here is immutable after construction, so polynomials and
systems can be shared freely between concurrent path trackers.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Sequence

import numpy as np

__all__ = [
    "Term",
    "Polynomial",
    "PolySystem",
    "evaluate",
    "evaluate_system",
    "jacobian",
    "degree",
    "support",
    "linear_combination",
]

# Coefficients below this magnitude after combining like terms are dropped;
# they are indistinguishable from denormal noise.
COEFFICIENT_FLOOR = 1e-300


def _as_finite_complex(value) -> complex:
    c = complex(value)
    if not cmath.isfinite(c):
        raise ValueError(f"coefficient must be finite, got {c!r}")
    return c


@dataclass(frozen=True)
class Term:
    """One monomial ``c * x^alpha`` with a dense exponent vector."""

    coefficient: complex
    exponents: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coefficient", _as_finite_complex(self.coefficient))
        exps = tuple(int(e) for e in self.exponents)
        if any(e < 0 for e in exps):
            raise ValueError("exponents must be non-negative")
        object.__setattr__(self, "exponents", exps)

    @property
    def total_degree(self) -> int:
        return sum(self.exponents)


def _as_term(item, nvars: int) -> Term:
    term = item if isinstance(item, Term) else Term(item[0], tuple(item[1]))
    if len(term.exponents) != nvars:
        raise ValueError(
            f"term has {len(term.exponents)} exponents, expected {nvars}"
        )
    return term


@dataclass(frozen=True)
class Polynomial:
    """A canonicalized sum of terms over a fixed ordered variable list.

    Construction combines like terms, drops vanishing coefficients and sorts
    the result in graded-lexicographic descending order, so equal polynomials
    compare equal and print byte-identically.
    """

    variables: tuple[str, ...]
    terms: tuple[Term, ...]

    def __post_init__(self) -> None:
        variables = tuple(str(v) for v in self.variables)
        if len(set(variables)) != len(variables):
            raise ValueError("duplicate variable names")
        combined: dict[tuple[int, ...], complex] = {}
        for item in self.terms:
            term = _as_term(item, len(variables))
            combined[term.exponents] = combined.get(term.exponents, 0j) + term.coefficient
        # Graded-lex ties are broken against the name-sorted variable order,
        # so the printed order does not depend on how the list was collected.
        by_name = sorted(range(len(variables)), key=lambda i: variables[i])
        def grlex(exps: tuple[int, ...]):
            return (sum(exps), tuple(exps[i] for i in by_name))
        terms = tuple(
            Term(c, e)
            for e, c in sorted(combined.items(), key=lambda kv: grlex(kv[0]), reverse=True)
            if abs(c) > COEFFICIENT_FLOOR
        )
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "terms", terms)

    @property
    def n_variables(self) -> int:
        return len(self.variables)

    def is_zero(self) -> bool:
        return not self.terms

    def _arrays(self) -> tuple[np.ndarray, np.ndarray]:
        cached = self.__dict__.get("_array_cache")
        if cached is None:
            n = len(self.variables)
            if self.terms:
                coefs = np.array([t.coefficient for t in self.terms], dtype=np.complex128)
                exps = np.array([t.exponents for t in self.terms], dtype=np.int64)
            else:
                coefs = np.zeros(0, dtype=np.complex128)
                exps = np.zeros((0, n), dtype=np.int64)
            cached = (coefs, exps)
            object.__setattr__(self, "_array_cache", cached)
        return cached

    def __call__(self, x: Sequence[complex]) -> complex:
        return evaluate(self, x)


@dataclass(frozen=True)
class PolySystem:
    """A list of polynomials sharing one ordered variable list."""

    variables: tuple[str, ...]
    polys: tuple[Polynomial, ...]

    def __post_init__(self) -> None:
        variables = tuple(str(v) for v in self.variables)
        polys = tuple(self.polys)
        if not polys:
            raise ValueError("a system needs at least one equation")
        for i, p in enumerate(polys):
            if p.variables != variables:
                raise ValueError(
                    f"equation {i + 1} uses variables {p.variables}, "
                    f"system declares {variables}"
                )
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "polys", polys)

    @property
    def n_equations(self) -> int:
        return len(self.polys)

    @property
    def n_variables(self) -> int:
        return len(self.variables)

    def is_square(self) -> bool:
        return self.n_equations == self.n_variables

    def _diff_arrays(self) -> list[tuple[np.ndarray, np.ndarray]]:
        """Per-polynomial derivative tensors, built once and cached.

        For polynomial i with T terms over n variables this holds coefficients
        of shape (n, T) and exponents of shape (n, T, n), where slice j is the
        termwise partial derivative with respect to variable j.
        """
        cached = self.__dict__.get("_diff_cache")
        if cached is None:
            n = self.n_variables
            cached = []
            for p in self.polys:
                coefs, exps = p._arrays()
                t = len(coefs)
                dcoefs = np.zeros((n, t), dtype=np.complex128)
                dexps = np.zeros((n, t, n), dtype=np.int64)
                for j in range(n):
                    dcoefs[j] = coefs * exps[:, j]
                    dexps[j] = exps
                    dexps[j, :, j] = np.maximum(exps[:, j] - 1, 0)
                cached.append((dcoefs, dexps))
            object.__setattr__(self, "_diff_cache", cached)
        return cached


def _as_point(x: Sequence[complex], nvars: int) -> np.ndarray:
    point = np.asarray(x, dtype=np.complex128)
    if point.shape != (nvars,):
        raise ValueError(f"expected a point with {nvars} coordinates, got shape {point.shape}")
    return point


def evaluate(p: Polynomial, x: Sequence[complex]) -> complex:
    """Evaluate p at the point x, termwise."""
    point = _as_point(x, p.n_variables)
    coefs, exps = p._arrays()
    if not len(coefs):
        return 0j
    monomials = np.prod(point[np.newaxis, :] ** exps, axis=1)
    return complex(coefs @ monomials)


def evaluate_system(s: PolySystem, x: Sequence[complex]) -> np.ndarray:
    """Evaluate every equation of s at x; returns a complex vector."""
    point = _as_point(x, s.n_variables)
    values = np.empty(s.n_equations, dtype=np.complex128)
    for i, p in enumerate(s.polys):
        coefs, exps = p._arrays()
        if len(coefs):
            values[i] = coefs @ np.prod(point[np.newaxis, :] ** exps, axis=1)
        else:
            values[i] = 0j
    return values


def jacobian(s: PolySystem, x: Sequence[complex]) -> np.ndarray:
    """Jacobian matrix of s at x; entry (i, j) is d f_i / d x_j.

    Partial derivatives are formed symbolically term by term, so the result
    carries no finite-difference truncation error.
    """
    point = _as_point(x, s.n_variables)
    n = s.n_variables
    out = np.zeros((s.n_equations, n), dtype=np.complex128)
    for i, (dcoefs, dexps) in enumerate(s._diff_arrays()):
        if dcoefs.shape[1]:
            monomials = np.prod(point[np.newaxis, np.newaxis, :] ** dexps, axis=2)
            out[i] = (dcoefs * monomials).sum(axis=1)
    return out


def degree(p: Polynomial) -> int:
    """Total degree: the maximum exponent sum over the terms of p."""
    if not p.terms:
        raise ValueError("the zero polynomial has no degree")
    return max(t.total_degree for t in p.terms)


def support(p: Polynomial) -> set[tuple[int, ...]]:
    """The exponent vectors of p's nonzero terms (Newton polytope vertices come from these)."""
    if not p.terms:
        raise ValueError("the zero polynomial has empty support")
    return {t.exponents for t in p.terms}


def linear_combination(
    polys: Sequence[Polynomial], weights: Sequence[complex]
) -> Polynomial:
    """Construct sum_k weights[k] * polys[k] as a fresh canonical polynomial."""
    if not polys or len(polys) != len(weights):
        raise ValueError("need one weight per polynomial")
    variables = polys[0].variables
    terms: list[Term] = []
    for w, p in zip(weights, polys):
        if p.variables != variables:
            raise ValueError("polynomials must share one variable list")
        w = complex(w)
        terms.extend(Term(w * t.coefficient, t.exponents) for t in p.terms)
    return Polynomial(variables, tuple(terms))
