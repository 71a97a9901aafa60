"""Two-phase tableau simplex over the rationals, Bland's rule throughout.

Problems here have a handful of variables, so clarity wins over speed:
reduced costs are recomputed from scratch every iteration.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

OPTIMAL, INFEASIBLE, UNBOUNDED = "optimal", "infeasible", "unbounded"


@dataclass
class LPResult:
    status: str
    x: list[Fraction] | None = None
    objective: Fraction | None = None


def _pivot(T: list[list[Fraction]], basis: list[int], r: int, c: int) -> None:
    piv = T[r][c]
    row = [v / piv for v in T[r]]
    T[r] = row
    for i, other in enumerate(T):
        if i != r and other[c]:
            f = other[c]
            T[i] = [a - f * b for a, b in zip(other, row)]
    basis[r] = c


def _optimize(T, basis, cost, allowed) -> str:
    """Maximize cost.x over the tableau in place."""
    while True:
        enter = None
        for j in allowed:
            if j in basis:
                continue
            rc = cost[j] - sum(cost[b] * T[i][j] for i, b in enumerate(basis) if cost[b])
            if rc > 0:
                enter = j
                break
        if enter is None:
            return OPTIMAL
        best = None
        for i, row in enumerate(T):
            if row[enter] > 0:
                ratio = row[-1] / row[enter]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return UNBOUNDED
        _pivot(T, basis, best[1], enter)


def maximize(
    c: Sequence,
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
) -> LPResult:
    """max c.x  s.t.  A_ub x <= b_ub,  A_eq x = b_eq,  x >= 0."""
    n = len(c)
    n_ub = len(A_ub)
    rows = []
    for a, b in zip(A_ub, b_ub):
        rows.append(([Fraction(v) for v in a], Fraction(b), True))
    for a, b in zip(A_eq, b_eq):
        rows.append(([Fraction(v) for v in a], Fraction(b), False))

    # columns: x (n) | slacks (n_ub) | artificials (one per row needing it)
    needs_art = [b < 0 or not is_ub for _, b, is_ub in rows]
    n_art = sum(needs_art)
    width = n + n_ub + n_art
    T, basis = [], []
    art_col = n + n_ub
    for k, (a, b, is_ub) in enumerate(rows):
        row = a + [Fraction(0)] * (n_ub + n_art) + [b]
        if is_ub:
            row[n + k] = Fraction(1)
        if b < 0:
            row = [-v for v in row]
        if needs_art[k]:
            row[art_col] = Fraction(1)
            basis.append(art_col)
            art_col += 1
        else:
            basis.append(n + k)
        T.append(row)

    real_cols = list(range(n + n_ub))
    if n_art:
        cost1 = [Fraction(0)] * (n + n_ub) + [Fraction(-1)] * n_art
        _optimize(T, basis, cost1, range(width))
        if any(T[i][-1] != 0 for i, b in enumerate(basis) if b >= n + n_ub):
            return LPResult(INFEASIBLE)
        # drive zero-level artificials out of the basis; drop redundant rows
        i = 0
        while i < len(T):
            if basis[i] >= n + n_ub:
                col = next((j for j in real_cols if T[i][j] != 0), None)
                if col is None:
                    del T[i]
                    del basis[i]
                    continue
                _pivot(T, basis, i, col)
            i += 1

    cost2 = [Fraction(v) for v in c] + [Fraction(0)] * (n_ub + n_art)
    status = _optimize(T, basis, cost2, real_cols)
    if status != OPTIMAL:
        return LPResult(status)
    x = [Fraction(0)] * width
    for i, b in enumerate(basis):
        x[b] = T[i][-1]
    x = x[:n]
    return LPResult(OPTIMAL, x, sum(ci * xi for ci, xi in zip(cost2, x)))
