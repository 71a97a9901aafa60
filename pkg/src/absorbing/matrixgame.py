"""Exact solution of one-shot zero-sum matrix games (row player maximizes)."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from . import lp
from .errors import DimensionError, InvariantViolation
from .exactalg import adjugate, det_exact
from .model import StationaryStrategy

NEGATIVE, ZERO, POSITIVE = -1, 0, 1


@dataclass(frozen=True)
class Kernel:
    """Square sub-matrix (rows, cols) with its Shapley-Snow data."""

    rows: tuple[int, ...]
    cols: tuple[int, ...]
    value: Fraction | None
    verified: bool
    x: tuple[Fraction, ...] | None = None
    y: tuple[Fraction, ...] | None = None


@dataclass(frozen=True)
class MatrixGameSolution:
    value: Fraction
    x_opt: StationaryStrategy
    y_opt: StationaryStrategy
    kernel: tuple[tuple[int, ...], tuple[int, ...]] | None


def _as_matrix(A: Sequence[Sequence]) -> list[list[Fraction]]:
    if not A or not A[0] or any(len(r) != len(A[0]) for r in A):
        raise DimensionError("matrix game needs a non-empty rectangular matrix")
    return [[Fraction(v) for v in row] for row in A]


def _column_player(A: list[list[Fraction]]) -> tuple[Fraction, list[Fraction]]:
    """Value and an optimal column strategy via max 1.y s.t. (A + c) y <= 1."""
    shift = 1 - min(min(row) for row in A)
    B = [[v + shift for v in row] for row in A]
    n = len(A[0])
    res = lp.maximize([1] * n, B, [1] * len(A))
    if res.status != lp.OPTIMAL:
        raise InvariantViolation(f"matrix game LP ended {res.status}")
    total = res.objective
    return 1 / total - shift, [v / total for v in res.x]


def _transpose_neg(A):
    return [[-A[i][j] for i in range(len(A))] for j in range(len(A[0]))]


def _solve(A: list[list[Fraction]]) -> tuple[Fraction, list[Fraction], list[Fraction]]:
    v_col, y = _column_player(A)
    v_row, x = _column_player(_transpose_neg(A))
    if v_col != -v_row:
        raise InvariantViolation(f"primal/dual values disagree: {v_col} vs {-v_row}")
    return v_col, x, y


def _check_optimal(A, x, y, v) -> bool:
    m, n = len(A), len(A[0])
    return (
        all(sum(x[i] * A[i][j] for i in range(m)) >= v for j in range(n))
        and all(sum(y[j] * A[i][j] for j in range(n)) <= v for i in range(m))
    )


def _kernel_data(A, rows, cols) -> Kernel:
    B = [[A[i][j] for j in cols] for i in rows]
    adj = adjugate(B)
    sigma = sum(sum(r) for r in adj)
    if sigma == 0:
        return Kernel(rows, cols, None, False)
    value = det_exact(B) / sigma
    r = len(rows)
    xs = [sum(adj[i][k] for i in range(r)) / sigma for k in range(r)]
    ys = [sum(adj[k][j] for j in range(r)) / sigma for k in range(r)]
    ok = all(v >= 0 for v in xs) and all(v >= 0 for v in ys)
    x = y = None
    if ok:
        x = [Fraction(0)] * len(A)
        y = [Fraction(0)] * len(A[0])
        for k, i in enumerate(rows):
            x[i] = xs[k]
        for k, j in enumerate(cols):
            y[j] = ys[k]
        ok = _check_optimal(A, x, y, value)
        x, y = tuple(x), tuple(y)
    return Kernel(rows, cols, value, ok, x, y)


def enumerate_kernels(A: Sequence[Sequence]) -> list[Kernel]:
    """All square sub-matrices with their Shapley-Snow candidate values.

    ``verified`` marks candidates whose formula strategies are optimal in
    the full game.
    """
    M = _as_matrix(A)
    m, n = len(M), len(M[0])
    out = []
    for r in range(1, min(m, n) + 1):
        for rows in combinations(range(m), r):
            for cols in combinations(range(n), r):
                out.append(_kernel_data(M, rows, cols))
    return out


def _find_kernel(M, x, y, value):
    m, n = len(M), len(M[0])
    sx = {i for i in range(m) if x[i]}
    sy = {j for j in range(n) if y[j]}
    fallback = None
    for r in range(max(len(sx), len(sy)), min(m, n) + 1):
        for rows in combinations(range(m), r):
            if not sx <= set(rows):
                continue
            for cols in combinations(range(n), r):
                if not sy <= set(cols):
                    continue
                k = _kernel_data(M, rows, cols)
                if k.verified and k.value == value:
                    if k.x == tuple(x) and k.y == tuple(y):
                        return rows, cols
                    fallback = fallback or (rows, cols)
    return fallback


def solve_exact(A: Sequence[Sequence], with_kernel: bool = True) -> MatrixGameSolution:
    """Exact value and optimal mixed strategies of the matrix game A."""
    M = _as_matrix(A)
    value, x, y = _solve(M)
    if not _check_optimal(M, x, y, value):
        raise InvariantViolation("simplex strategies fail the minimax inequalities")
    kernel = _find_kernel(M, x, y, value) if with_kernel else None
    return MatrixGameSolution(
        value, StationaryStrategy(1, tuple(x)), StationaryStrategy(2, tuple(y)), kernel
    )


def value_sign(A: Sequence[Sequence]) -> int:
    """Sign of val(A), using pure-strategy bounds before falling back to the LP."""
    M = _as_matrix(A)
    lower = max(min(row) for row in M)
    upper = min(max(col) for col in zip(*M))
    if lower > 0:
        return POSITIVE
    if upper < 0:
        return NEGATIVE
    if lower == 0 and upper == 0:
        return ZERO
    v = _solve(M)[0]
    return (v > 0) - (v < 0)
