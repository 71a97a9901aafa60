"""Absorbing games with one non-absorbing state, and value-preserving transforms."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Sequence

from .errors import DimensionError, DomainError
from .exactalg import as_fraction

Matrix = tuple[tuple[Fraction, ...], ...]


def _freeze(rows) -> Matrix:
    return tuple(tuple(as_fraction(x) for x in row) for row in rows)


@dataclass(frozen=True)
class AbsorbingGame:
    """Stage payoffs ``g``, absorption probabilities ``q``, absorbing payoffs ``w``.

    ``w[i][j]`` is stored everywhere but carries no meaning where
    ``q[i][j] == 0``; nothing in the package reads it there.
    Construction does not validate; see :func:`validate`.
    """

    g: Matrix
    q: Matrix
    w: Matrix

    def __post_init__(self):
        for name in ("g", "q", "w"):
            object.__setattr__(self, name, _freeze(getattr(self, name)))

    @property
    def m(self) -> int:
        return len(self.g)

    @property
    def n(self) -> int:
        return len(self.g[0]) if self.g else 0

    @property
    def shape(self) -> tuple[int, int]:
        return self.m, self.n

    def is_deterministic(self) -> bool:
        return all(x in (0, 1) for row in self.q for x in row)

    def payoff_range(self) -> tuple[Fraction, Fraction]:
        """Min and max over all g entries and the meaningful w entries."""
        vals = [x for row in self.g for x in row]
        vals += [self.w[i][j] for i in range(self.m) for j in range(self.n) if self.q[i][j]]
        return min(vals), max(vals)

    def star_cells(self):
        """Star-notation grid, or None if the game is not representable that way."""
        cells = []
        for i in range(self.m):
            row = []
            for j in range(self.n):
                q, g, w = self.q[i][j], self.g[i][j], self.w[i][j]
                if q == 1 and g == w:
                    row.append((g, True))
                elif q == 0 and w == 0:
                    row.append((g, False))
                else:
                    return None
            cells.append(row)
        return cells


def validate(game: AbsorbingGame) -> list[str]:
    """Every violated model invariant, as messages with 1-based positions. Empty means ok."""
    problems = []
    m = len(game.g)
    if m == 0 or any(len(row) == 0 for row in game.g):
        return ["empty payoff matrix"]
    n = len(game.g[0])
    for name in ("g", "q", "w"):
        mat = getattr(game, name)
        if len(mat) != m or any(len(row) != n for row in mat):
            dims = "x".join(str(len(r)) for r in mat)
            problems.append(f"dimension mismatch: {name} rows have lengths {dims}, expected {m}x{n}")
    if problems:
        return problems
    for i in range(m):
        for j in range(n):
            if not 0 <= game.q[i][j] <= 1:
                problems.append(f"q out of range at ({i + 1},{j + 1}): {game.q[i][j]}")
    return problems


def ensure_valid(game: AbsorbingGame) -> AbsorbingGame:
    problems = validate(game)
    if problems:
        raise DomainError("invalid game: " + "; ".join(problems))
    return game


@dataclass(frozen=True)
class StationaryStrategy:
    """Mixed action repeated at every stage before absorption."""

    owner: int
    probs: tuple[Fraction, ...]

    def __post_init__(self):
        if self.owner not in (1, 2):
            raise DomainError("owner must be player 1 or 2")
        probs = tuple(as_fraction(p) for p in self.probs)
        if not probs or any(p < 0 for p in probs) or sum(probs) != 1:
            raise DomainError(f"not a probability vector: {probs}")
        object.__setattr__(self, "probs", probs)

    def __len__(self) -> int:
        return len(self.probs)

    def __getitem__(self, i) -> Fraction:
        return self.probs[i]

    def __iter__(self):
        return iter(self.probs)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, p in enumerate(self.probs) if p)

    @classmethod
    def pure(cls, owner: int, size: int, index: int) -> StationaryStrategy:
        return cls(owner, tuple(Fraction(int(i == index)) for i in range(size)))


def from_star_matrix(cells: Sequence[Sequence[tuple]]) -> AbsorbingGame:
    """Build a deterministic game from ``(value, starred)`` cells.

    A starred cell absorbs with payoff ``value`` forever; an unstarred cell
    pays ``value`` and never absorbs (its ``w`` is a 0 placeholder).
    """
    if not cells or not cells[0]:
        raise DimensionError("star matrix is empty")
    n = len(cells[0])
    if any(len(row) != n for row in cells):
        raise DimensionError("star matrix is not rectangular")
    g, q, w = [], [], []
    for row in cells:
        g.append([as_fraction(v) for v, _ in row])
        q.append([1 if s else 0 for _, s in row])
        w.append([as_fraction(v) if s else 0 for v, s in row])
    return AbsorbingGame(g, q, w)


BUILTIN_NAMES = ("big-match", "theorem2", "sqrt-k")


def builtin(name: str, k: int | None = None) -> AbsorbingGame:
    if name != "sqrt-k" and k is not None:
        raise DomainError(f"{name} takes no k")
    if name == "big-match":
        return from_star_matrix([[(1, True), (0, True)], [(0, False), (1, False)]])
    if name == "theorem2":
        return from_star_matrix([
            [(1, True), (1, True), (2, True)],
            [(1, True), (2, True), (0, False)],
            [(2, True), (0, False), (1, True)],
        ])
    if name == "sqrt-k":
        if k is None or isinstance(k, bool) or int(k) != k or k < 1:
            raise DomainError(f"sqrt-k needs a positive integer k, got {k!r}")
        k = int(k)
        return AbsorbingGame(
            g=[[0, 1], [1, k]],
            q=[[Fraction(1, k), 1], [1, 1]],
            w=[[k, 1], [1, k]],
        )
    raise DomainError(f"unknown built-in game {name!r}; choose from {', '.join(BUILTIN_NAMES)}")


def affine(game: AbsorbingGame, a, b) -> AbsorbingGame:
    """Rescale payoffs to a*x + b (a > 0); transitions are untouched."""
    a, b = as_fraction(a), as_fraction(b)
    if a <= 0:
        raise DomainError("affine scale must be positive; use dual() to flip sign")
    g = [[a * x + b for x in row] for row in game.g]
    w = [[a * x + b if qij else 0 for x, qij in zip(wrow, qrow)]
         for wrow, qrow in zip(game.w, game.q)]
    return AbsorbingGame(g, game.q, w)


def dual(game: AbsorbingGame) -> AbsorbingGame:
    """Swap the players: transpose everything and negate payoffs."""
    def t(mat):
        return [list(col) for col in zip(*mat)]

    g = [[-x for x in row] for row in t(game.g)]
    w = [[-x if qij else 0 for x, qij in zip(wrow, qrow)]
         for wrow, qrow in zip(t(game.w), t(game.q))]
    return AbsorbingGame(g, t(game.q), w)


@dataclass(frozen=True)
class QuadraticTarget:
    """The real number p + qcoef * sqrt(k)."""

    p: Fraction
    qcoef: Fraction
    k: int

    def __post_init__(self):
        object.__setattr__(self, "p", as_fraction(self.p))
        object.__setattr__(self, "qcoef", as_fraction(self.qcoef))
        if isinstance(self.k, bool) or int(self.k) != self.k or self.k < 1:
            raise DomainError(f"k must be a positive integer, got {self.k!r}")
        object.__setattr__(self, "k", int(self.k))

    def __float__(self) -> float:
        return float(self.p) + float(self.qcoef) * self.k ** 0.5

    def is_rational(self) -> bool:
        return self.qcoef == 0 or isqrt(self.k) ** 2 == self.k


def represent_quadratic(t: QuadraticTarget) -> AbsorbingGame:
    """A 2x2 absorbing game (1x1 when qcoef = 0) whose limit value is t."""
    if t.qcoef == 0:
        return AbsorbingGame([[t.p]], [[1]], [[t.p]])
    base = builtin("sqrt-k", t.k)
    if t.qcoef > 0:
        return affine(base, t.qcoef, t.p)
    return affine(dual(base), -t.qcoef, t.p)
