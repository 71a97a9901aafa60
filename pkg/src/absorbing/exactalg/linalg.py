"""Exact determinants: cofactor expansion for symbolic entries, Bareiss for rationals."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from ..errors import DimensionError
from .poly import BiPoly


def _check_square(matrix: Sequence[Sequence]) -> int:
    n = len(matrix)
    if n == 0 or any(len(row) != n for row in matrix):
        raise DimensionError("determinant needs a non-empty square matrix")
    return n


def det_poly(matrix: Sequence[Sequence[BiPoly]]) -> BiPoly:
    """Determinant of a matrix of bivariate polynomials.

    Laplace expansion along rows, memoized on the set of unused columns, so
    the cost is O(n 2^n) ring operations.
    """
    n = _check_square(matrix)
    rows = [[e if isinstance(e, BiPoly) else BiPoly.constant(e) for e in row] for row in matrix]

    @lru_cache(maxsize=None)
    def minor(r: int, cols: frozenset) -> BiPoly:
        if r == n:
            return BiPoly.constant(1)
        acc = BiPoly()
        ordered = sorted(cols)
        for pos, c in enumerate(ordered):
            entry = rows[r][c]
            if not entry:
                continue
            term = entry * minor(r + 1, cols - {c})
            acc = acc - term if pos % 2 else acc + term
        return acc

    return minor(0, frozenset(range(n)))


def det_exact(matrix: Sequence[Sequence]) -> Fraction:
    """Bareiss fraction-free elimination with row pivoting."""
    n = _check_square(matrix)
    a = [[Fraction(x) for x in row] for row in matrix]
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
            a[i][k] = Fraction(0)
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def adjugate(matrix: Sequence[Sequence]) -> list[list[Fraction]]:
    """Classical adjoint, adj(B)[j][i] = (-1)^(i+j) det(B without row i, column j)."""
    n = _check_square(matrix)
    if n == 1:
        return [[Fraction(1)]]
    adj = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            sub = [[matrix[r][c] for c in range(n) if c != j] for r in range(n) if r != i]
            cof = det_exact(sub)
            adj[j][i] = cof if (i + j) % 2 == 0 else -cof
    return adj
