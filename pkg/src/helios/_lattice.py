"""Exact integer matrix algebra: diagonalization, kernels, Hermite form.

All arithmetic is over Python ints, so there is no overflow and no rounding;
matrices here are small (variables and equations at desk scale).
"""

from __future__ import annotations

__all__ = ["diagonalize", "kernel_basis", "column_hermite"]

Matrix = list[list[int]]


def _identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def diagonalize(matrix: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """Unimodular U, V with U @ matrix @ V diagonal; returns (U, D, V).

    The diagonal entries are non-negative, with the nonzero ones first.  The
    divisibility chain of the Smith form is not enforced; a plain diagonal
    form is all the lattice solving here needs.
    """
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    d = [list(r) for r in matrix]
    u = _identity(rows)
    v = _identity(cols)

    def swap_rows(a, b):
        d[a], d[b] = d[b], d[a]
        u[a], u[b] = u[b], u[a]

    def swap_cols(a, b):
        for r in d:
            r[a], r[b] = r[b], r[a]
        for r in v:
            r[a], r[b] = r[b], r[a]

    def add_row(src, dst, q):  # row dst += q * row src
        d[dst] = [x + q * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, q):  # col dst += q * col src
        for r in d:
            r[dst] += q * r[src]
        for r in v:
            r[dst] += q * r[src]

    def negate_row(a):
        d[a] = [-x for x in d[a]]
        u[a] = [-x for x in u[a]]

    k = 0
    while k < min(rows, cols):
        # Find the smallest nonzero entry in the remaining block as pivot.
        pivot = None
        for i in range(k, rows):
            for j in range(k, cols):
                if d[i][j] != 0 and (pivot is None or abs(d[i][j]) < abs(d[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(k, pivot[0])
        swap_cols(k, pivot[1])
        while True:
            if d[k][k] < 0:
                negate_row(k)
            # Reduce the cross; remainders are in [0, pivot), so the minimum
            # absolute value strictly drops each round and this terminates.
            for i in range(k + 1, rows):
                q = d[i][k] // d[k][k]
                if q:
                    add_row(k, i, -q)
            for j in range(k + 1, cols):
                q = d[k][j] // d[k][k]
                if q:
                    add_col(k, j, -q)
            leftover = None
            for i in range(k + 1, rows):
                if d[i][k] != 0:
                    leftover = ("row", i)
                    break
            if leftover is None:
                for j in range(k + 1, cols):
                    if d[k][j] != 0:
                        leftover = ("col", j)
                        break
            if leftover is None:
                break
            kind, idx = leftover
            if kind == "row":
                swap_rows(k, idx)
            else:
                swap_cols(k, idx)
        k += 1
    return u, d, v


def kernel_basis(matrix: Matrix, cols: int) -> list[list[int]]:
    """Basis vectors (as rows) of the integer kernel {v : matrix @ v = 0}."""
    rows = len(matrix)
    if rows == 0:
        return [list(row) for row in _identity(cols)]
    _, d, v = diagonalize(matrix)
    rank = sum(
        1 for k in range(min(rows, cols)) if d[k][k] != 0
    )
    basis = []
    for j in range(rank, cols):
        basis.append([v[i][j] for i in range(cols)])
    return basis


def column_hermite(matrix: Matrix) -> Matrix:
    """Canonical basis of the column lattice of an integer matrix.

    Returns a matrix whose nonzero columns form the lattice basis in column
    echelon form with positive pivots and reduced off-pivot entries; used to
    print kernel bases deterministically.
    """
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    h = [list(r) for r in matrix]

    def swap(a, b):
        for r in h:
            r[a], r[b] = r[b], r[a]

    def add(src, dst, q):
        for r in h:
            r[dst] += q * r[src]

    def negate(a):
        for r in h:
            r[a] = -r[a]

    pivot_col = 0
    for row in range(rows):
        if pivot_col >= cols:
            break
        # Euclidean reduction across columns on this row.
        while True:
            nonzero = [j for j in range(pivot_col, cols) if h[row][j] != 0]
            if len(nonzero) <= 1:
                break
            j_min = min(nonzero, key=lambda j: abs(h[row][j]))
            for j in nonzero:
                if j != j_min:
                    add(j_min, j, -(h[row][j] // h[row][j_min]))
        nonzero = [j for j in range(pivot_col, cols) if h[row][j] != 0]
        if not nonzero:
            continue
        j = nonzero[0]
        swap(pivot_col, j)
        if h[row][pivot_col] < 0:
            negate(pivot_col)
        for j in range(pivot_col):
            q = h[row][j] // h[row][pivot_col]
            if q:
                add(pivot_col, j, -q)
        pivot_col += 1
    return h
