"""Exact linear algebra over the rationals.

Plain Gaussian elimination on lists of Fractions.  Matrix sizes here are
tiny (tens of rows), so clarity beats asymptotics; everything is exact.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Matrix = list[list[Fraction]]


def _to_matrix(rows: Sequence[Sequence[int | Fraction]]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def rref(rows: Sequence[Sequence[int | Fraction]]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    m = _to_matrix(rows)
    if not m:
        return [], []
    n_rows, n_cols = len(m), len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        pivot = next((i for i in range(r, n_rows) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c] != 0:
                factor = m[i][c]
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return m, pivots


def rank(rows: Sequence[Sequence[int | Fraction]]) -> int:
    return len(rref(rows)[1])


def in_row_span(rows: Sequence[Sequence[int | Fraction]], vector: Sequence[int | Fraction]) -> bool:
    base = rank(rows)
    return rank(list(rows) + [list(vector)]) == base


def solve(
    rows: Sequence[Sequence[int | Fraction]], rhs: Sequence[int | Fraction]
) -> list[Fraction] | None:
    """One exact solution of A x = b, or None when the system is infeasible.

    Free variables are set to zero.
    """
    if len(rows) != len(rhs):
        raise ValueError("rhs length does not match row count")
    if not rows:
        return []
    augmented = [list(row) + [b] for row, b in zip(rows, rhs)]
    reduced, pivots = rref(augmented)
    n_cols = len(rows[0])
    if n_cols in pivots:
        return None
    solution = [Fraction(0)] * n_cols
    for r, c in enumerate(pivots):
        solution[c] = reduced[r][n_cols]
    return solution


def nullspace(rows: Sequence[Sequence[int | Fraction]], n_cols: int | None = None) -> list[list[Fraction]]:
    """Basis of the right kernel, one vector per free column."""
    if n_cols is None:
        if not rows:
            raise ValueError("empty matrix needs an explicit column count")
        n_cols = len(rows[0])
    if not rows:
        return [[Fraction(int(i == j)) for j in range(n_cols)] for i in range(n_cols)]
    reduced, pivots = rref(rows)
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n_cols
        v[f] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -reduced[r][f]
        basis.append(v)
    return basis


def primitive_integer(vector: Sequence[Fraction | int]) -> list[int]:
    """Scale a nonzero rational vector to coprime integers, first nonzero entry positive."""
    v = [Fraction(x) for x in vector]
    if all(x == 0 for x in v):
        raise ValueError("zero vector has no primitive representative")
    scale = 1
    for x in v:
        scale = scale * x.denominator // gcd(scale, x.denominator)
    ints = [int(x * scale) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    ints = [x // g for x in ints]
    first = next(x for x in ints if x != 0)
    if first < 0:
        ints = [-x for x in ints]
    return ints


def integer_kernel_basis(rows: Sequence[Sequence[int]], n_cols: int | None = None) -> list[list[int]]:
    """Primitive integer scalings of a rational kernel basis."""
    return [primitive_integer(v) for v in nullspace(rows, n_cols)]
