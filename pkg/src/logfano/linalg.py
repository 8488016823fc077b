"""Exact linear algebra over Q.

Rank and determinant run Bareiss fraction-free elimination on integer
matrices; rational input is first cleared of denominators row by row.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

from .rational import RationalLike, as_fraction

Matrix = Sequence[Sequence[RationalLike]]


def _integer_rows(matrix: Matrix) -> tuple[list[list[int]], Fraction]:
    """Scale each row to integers; return the rows and the product of the scale factors."""
    rows: list[list[int]] = []
    scale = Fraction(1)
    for row in matrix:
        fr = [as_fraction(x) for x in row]
        m = lcm(*(x.denominator for x in fr)) if fr else 1
        rows.append([int(x * m) for x in fr])
        scale *= m
    return rows, scale


def _bareiss(rows: list[list[int]]) -> tuple[int, int]:
    """Eliminate in place. Returns (rank, signed last pivot).

    The signed last pivot is the determinant when the matrix is square and
    of full rank.
    """
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    prev = 1
    sign = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
            sign = -sign
        p = rows[r][c]
        for i in range(r + 1, nrows):
            ri = rows[i]
            f = ri[c]
            for j in range(c + 1, ncols):
                # exact by Sylvester's identity
                ri[j] = (p * ri[j] - f * rows[r][j]) // prev
            ri[c] = 0
        prev = p
        r += 1
    return r, sign * prev


def rank(matrix: Matrix) -> int:
    if not matrix or not len(matrix[0]):
        return 0
    rows, _ = _integer_rows(matrix)
    return _bareiss(rows)[0]


def determinant(matrix: Matrix) -> Fraction:
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    if any(len(row) != n for row in matrix):
        raise ValueError("determinant of a non-square matrix")
    rows, scale = _integer_rows(matrix)
    r, last = _bareiss(rows)
    if r < n:
        return Fraction(0)
    return Fraction(last) / scale


def rref(matrix: Matrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Fraction, with pivot columns."""
    a = [[as_fraction(x) for x in row] for row in matrix]
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return a, pivots


def nullspace(matrix: Matrix, ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of the right kernel, one vector per free column."""
    if ncols is None:
        ncols = len(matrix[0])
    if not matrix:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    a, pivots = rref(matrix)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * ncols
        v[fcol] = Fraction(1)
        for row, pc in zip(a, pivots):
            v[pc] = -row[fcol]
        basis.append(v)
    return basis


def solve(matrix: Matrix, rhs: Sequence[RationalLike]) -> list[Fraction]:
    """Solve a square nonsingular system exactly."""
    n = len(matrix)
    aug = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    a, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("singular system")
    return [a[i][n] for i in range(n)]
