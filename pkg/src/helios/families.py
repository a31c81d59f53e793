"""Benchmark system families parametrized by the number of variables."""

from __future__ import annotations

from .poly import Polynomial, PolySystem, Term

__all__ = ["FAMILY_NAMES", "cyclic", "noon", "build"]

FAMILY_NAMES = ("cyclic", "noon")


def cyclic(n: int) -> PolySystem:
    """The cyclic n-roots system.

    Equation k (k = 1..n-1) sums the n cyclically consecutive products of k
    variables; the last equation is the full product minus one.
    """
    if n < 2:
        raise ValueError("cyclic needs n >= 2")
    variables = tuple(f"x{i}" for i in range(n))
    polys = []
    for k in range(1, n):
        terms = []
        for i in range(n):
            exps = [0] * n
            for j in range(i, i + k):
                exps[j % n] += 1
            terms.append(Term(1, tuple(exps)))
        polys.append(Polynomial(variables, tuple(terms)))
    polys.append(
        Polynomial(variables, (Term(1, (1,) * n), Term(-1, (0,) * n)))
    )
    return PolySystem(variables, tuple(polys))


def noon(n: int) -> PolySystem:
    """A neural-network equilibrium family: x_i * sum_{j != i} x_j^2 - 1.1 x_i + 1."""
    if n < 2:
        raise ValueError("noon needs n >= 2")
    variables = tuple(f"x{i}" for i in range(1, n + 1))
    polys = []
    for i in range(n):
        terms = []
        for j in range(n):
            if j == i:
                continue
            exps = [0] * n
            exps[i] = 1
            exps[j] = 2
            terms.append(Term(1, tuple(exps)))
        linear = [0] * n
        linear[i] = 1
        terms.append(Term(-1.1, tuple(linear)))
        terms.append(Term(1, (0,) * n))
        polys.append(Polynomial(variables, tuple(terms)))
    return PolySystem(variables, tuple(polys))


def build(name: str, n: int) -> PolySystem:
    """Dispatch a family by name."""
    if name == "cyclic":
        return cyclic(n)
    if name == "noon":
        return noon(n)
    raise ValueError(f"unknown family {name!r}; available: {', '.join(FAMILY_NAMES)}")
