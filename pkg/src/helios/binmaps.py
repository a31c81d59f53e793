"""Monomial map solutions of binomial systems, via exact lattice algebra.

A binomial system (two monomials per equation) has its solution set carved
into torus strata: on each subset of vanishing variables the remaining
equations collapse to x^M = gamma, which integer diagonalization solves in
closed form.  Each stratum contributes a map assigning every variable either
zero or a coefficient times a monomial in free parameters; maps whose
solution set lies inside another map's are discarded.

Laurent (negative) exponents are allowed in the emitted maps even though the
input polynomials cannot carry them; the zero set handles vanishing
coordinates separately, so inverted parameters are safe.
"""

from __future__ import annotations

import cmath
import itertools
from dataclasses import dataclass

from ._lattice import column_hermite, diagonalize, kernel_basis
from .poly import PolySystem

__all__ = ["MonomialMap", "is_binomial", "monomial_maps", "verify_map"]

CONSISTENCY_TOL = 1e-10
RELATION_TOL = 1e-8
SUBSTITUTION_TOL = 1e-10


@dataclass(frozen=True)
class MonomialMap:
    """x_i = 0 on the zero set, x_i = c_i * L^(k_i) elsewhere.

    entries holds (variable, coefficient, exponent vector over the
    parameters) for every variable outside the zero set, in system variable
    order; parameters counts the free L's, which equals the dimension of the
    component this map sweeps out.
    """

    variables: tuple[str, ...]
    parameters: int
    zero_set: frozenset[str]
    entries: tuple[tuple[str, complex, tuple[int, ...]], ...]

    def coefficient(self, name: str) -> complex:
        for var, coef, _ in self.entries:
            if var == name:
                return coef
        raise KeyError(name)

    def exponents(self, name: str) -> tuple[int, ...]:
        for var, _, exps in self.entries:
            if var == name:
                return exps
        raise KeyError(name)

    def point(self, parameters: tuple[complex, ...]) -> tuple[complex, ...]:
        """Evaluate the map at concrete parameter values."""
        if len(parameters) != self.parameters:
            raise ValueError(f"expected {self.parameters} parameter values")
        table = {var: (coef, exps) for var, coef, exps in self.entries}
        out = []
        for var in self.variables:
            if var in self.zero_set:
                out.append(0j)
            else:
                coef, exps = table[var]
                value = coef
                for lam, e in zip(parameters, exps):
                    if e:
                        value *= lam**e
                out.append(value)
        return tuple(out)

    def __str__(self) -> str:
        table = {var: (coef, exps) for var, coef, exps in self.entries}
        parts = []
        for var in self.variables:
            if var in self.zero_set:
                parts.append(f"{var} = 0")
            else:
                coef, exps = table[var]
                parts.append(f"{var} = {_entry_str(coef, exps)}")
        return "(" + ", ".join(parts) + ")"


def _float_str(v: float) -> str:
    if v == int(v) and abs(v) < 1e16:
        return str(int(v))
    return repr(v)


def _coef_str(c: complex) -> str:
    if c.imag == 0.0:
        return _float_str(c.real)
    if c.real == 0.0:
        mag = _float_str(abs(c.imag))
        body = "i" if mag == "1" else f"{mag}*i"
        return body if c.imag > 0 else f"-{body}"
    op = "+" if c.imag > 0 else "-"
    return f"({_float_str(c.real)} {op} {_float_str(abs(c.imag))}*i)"


def _entry_str(coef: complex, exps: tuple[int, ...]) -> str:
    monomial = []
    for j, e in enumerate(exps, start=1):
        if e == 0:
            continue
        if e == 1:
            monomial.append(f"L{j}")
        elif e > 1:
            monomial.append(f"L{j}**{e}")
        else:
            monomial.append(f"L{j}**({e})")
    mono = "*".join(monomial)
    if not mono:
        return _coef_str(coef)
    coef_text = _coef_str(coef)
    if coef_text == "1":
        return mono
    if coef_text == "-1":
        return f"-{mono}"
    return f"{coef_text}*{mono}"


def is_binomial(s: PolySystem) -> bool:
    """True iff every equation has exactly two terms with nonzero coefficient."""
    return all(len(p.terms) == 2 for p in s.polys)


def _solve_torus(
    m_rows: list[list[int]], gammas: list[complex], width: int
) -> list[tuple[list[complex], list[list[int]]]]:
    """All solution branches of x^M = gamma over the torus (C*)^width.

    Returns (coefficient vector, exponent matrix) pairs: positive-dimensional
    strata yield one branch through principal roots, finite ones yield every
    root combination as its own zero-parameter branch.  An inconsistent
    system yields no branches.
    """
    if not m_rows:
        identity = [[1 if i == j else 0 for j in range(width)] for i in range(width)]
        return [([1 + 0j] * width, identity)]
    u, d, v = diagonalize(m_rows)
    n_eqs = len(m_rows)
    rank = sum(1 for k in range(min(n_eqs, width)) if d[k][k] != 0)

    def power_product(exponent_row: list[int]) -> complex:
        value = 1 + 0j
        for g, e in zip(gammas, exponent_row):
            if e:
                value *= g**e
        return value

    for i in range(rank, n_eqs):
        if abs(power_product(u[i]) - 1.0) > CONSISTENCY_TOL:
            return []

    deltas = [power_product(u[l]) for l in range(rank)]
    orders = [d[l][l] for l in range(rank)]
    principals = [
        cmath.rect(abs(delta) ** (1.0 / order), cmath.phase(delta) / order)
        for delta, order in zip(deltas, orders)
    ]

    def branch(y_values: list[complex]) -> tuple[list[complex], list[list[int]]]:
        coefs = []
        for j in range(width):
            value = 1 + 0j
            for l, y in enumerate(y_values):
                if v[j][l]:
                    value *= y ** v[j][l]
            coefs.append(value)
        exps = [[v[j][c] for c in range(rank, width)] for j in range(width)]
        return coefs, exps

    if rank == width:
        branches = []
        for multipliers in itertools.product(*[range(o) for o in orders]):
            ys = [
                principals[l] * cmath.exp(2j * cmath.pi * m / orders[l])
                for l, m in enumerate(multipliers)
            ]
            branches.append(branch(ys))
        return branches
    return [branch(principals)]


def _canonical_exponents(exps: list[list[int]], params: int) -> list[list[int]]:
    if params == 0:
        return exps
    reduced = column_hermite(exps)
    return [row[:params] for row in reduced]


def monomial_maps(s: PolySystem) -> list[MonomialMap]:
    """All maximal monomial maps solving a binomial system.

    Vanishing-variable subsets are enumerated exhaustively; a subset is
    viable only when each equation either dies entirely (both monomials touch
    a vanishing variable) or stays binomial (neither does).  The residual
    binomial system on each viable stratum is solved on the torus; maps
    contained in other maps are dropped.
    """
    if not is_binomial(s):
        raise ValueError("monomial maps need a binomial system (two terms per equation)")
    variables = s.variables
    n = len(variables)
    raw: list[MonomialMap] = []
    for size in range(n + 1):
        for zero_idx in itertools.combinations(range(n), size):
            zero = set(zero_idx)
            residual = []
            viable = True
            for p in s.polys:
                first, second = p.terms
                hit1 = any(first.exponents[i] > 0 for i in zero)
                hit2 = any(second.exponents[i] > 0 for i in zero)
                if hit1 and hit2:
                    continue
                if hit1 != hit2:
                    viable = False
                    break
                residual.append((first, second))
            if not viable:
                continue
            kept = [i for i in range(n) if i not in zero]
            m_rows = [
                [t1.exponents[i] - t2.exponents[i] for i in kept]
                for t1, t2 in residual
            ]
            gammas = [-t2.coefficient / t1.coefficient for t1, t2 in residual]
            for coefs, exps in _solve_torus(m_rows, gammas, len(kept)):
                params = len(exps[0]) if exps else 0
                exps = _canonical_exponents(exps, params)
                entries = tuple(
                    (variables[i], complex(coefs[j]), tuple(exps[j]))
                    for j, i in enumerate(kept)
                )
                raw.append(
                    MonomialMap(
                        variables=variables,
                        parameters=params,
                        zero_set=frozenset(variables[i] for i in zero_idx),
                        entries=entries,
                    )
                )
    return _drop_contained(raw)


def _generic_point(m: MonomialMap) -> tuple[complex, ...]:
    # Moduli off the unit circle and incommensurate angles dodge accidental
    # coincidences in the containment relations.
    params = tuple(
        cmath.rect(1.0 + 0.17 * (j + 1), 2.399963229728653 * (j + 1))
        for j in range(m.parameters)
    )
    return m.point(params)


def _contained_in(inner: MonomialMap, outer: MonomialMap) -> bool:
    """Does a generic point of inner satisfy outer's defining relations?"""
    point = dict(zip(inner.variables, _generic_point(inner)))
    for var in outer.zero_set:
        if abs(point[var]) > CONSISTENCY_TOL:
            return False
    kept = [var for var, _, _ in outer.entries]
    coefs = {var: coef for var, coef, _ in outer.entries}
    exponent_matrix = [list(outer.exponents(var)) for var in kept]
    transposed = [
        [exponent_matrix[i][j] for i in range(len(kept))]
        for j in range(outer.parameters)
    ]
    for relation in kernel_basis(transposed, len(kept)):
        lhs = 1 + 0j
        rhs = 1 + 0j
        for var, e in zip(kept, relation):
            if e > 0:
                lhs *= point[var] ** e
                rhs *= coefs[var] ** e
            elif e < 0:
                lhs *= coefs[var] ** (-e)
                rhs *= point[var] ** (-e)
        scale = max(1.0, abs(lhs), abs(rhs))
        if abs(lhs - rhs) > RELATION_TOL * scale:
            return False
    return True


def _sort_key(m: MonomialMap):
    return (
        -m.parameters,
        len(m.zero_set),
        sorted(m.zero_set),
        [(var, exps) for var, _, exps in m.entries],
    )


def _drop_contained(maps: list[MonomialMap]) -> list[MonomialMap]:
    ordered = sorted(maps, key=_sort_key)
    kept = []
    for a_idx, a in enumerate(ordered):
        discard = False
        for b_idx, b in enumerate(ordered):
            if a_idx == b_idx or not _contained_in(a, b):
                continue
            if _contained_in(b, a) and a_idx < b_idx:
                continue  # equal sets: the canonically earlier map survives
            discard = True
            break
        if not discard:
            kept.append(a)
    return kept


def verify_map(s: PolySystem, m: MonomialMap) -> bool:
    """Check by symbolic substitution that m solves every equation of s.

    Substituting the map turns each equation into a Laurent polynomial in the
    parameters; it must combine to zero, with exact integer exponent
    arithmetic and a small tolerance on the coefficients.
    """
    table = {var: (coef, exps) for var, coef, exps in m.entries}
    for p in s.polys:
        combined: dict[tuple[int, ...], complex] = {}
        scale = 1.0
        for term in p.terms:
            coef = term.coefficient
            exps = [0] * m.parameters
            dead = False
            for var, e in zip(m.variables, term.exponents):
                if e == 0:
                    continue
                if var in m.zero_set:
                    dead = True
                    break
                c_var, k_var = table[var]
                coef *= c_var**e
                for idx in range(m.parameters):
                    exps[idx] += e * k_var[idx]
            if dead:
                continue
            scale = max(scale, abs(coef))
            key = tuple(exps)
            combined[key] = combined.get(key, 0j) + coef
        if any(abs(c) > SUBSTITUTION_TOL * scale for c in combined.values()):
            return False
    return True
