"""Discounted and limit values of absorbing games.

The discounted value v_lam is the unique z with val(W_lam(z)) = 0, where

    W_lam(z)[i][j] = lam*g + (1 - lam)*q*w - z*(lam + (1 - lam)*q).

Every z-coefficient is at most -lam < 0, so val(W_lam(z)) is strictly
decreasing in z and bisection on its sign brackets v_lam.  Limit values are
recovered by matching a lam-sweep against the real roots of the
lam-normalized determinants of all square sub-matrices of W_lam(z).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from . import lp
from .errors import DomainError, InvariantViolation, NotCertified
from .exactalg import (
    LAM,
    Z,
    AlgebraicNumber,
    BiPoly,
    UniPoly,
    as_fraction,
    det_poly,
    isolate_real_roots,
    lambda_normalize,
    minimal_poly_candidate,
    poly_gcd,
    rational_roots,
    refine_root,
    squarefree_part,
)
from .matrixgame import NEGATIVE, POSITIVE, ZERO, solve_exact, value_sign
from .model import AbsorbingGame, StationaryStrategy, dual, ensure_valid

log = logging.getLogger(__name__)

DEFAULT_SCHEDULE = tuple(Fraction(1, 10**e) for e in range(1, 8))
DEFAULT_TOL = Fraction(1, 10**2)
DEFAULT_WIDTH = Fraction(1, 10**9)
MAX_ACTIONS = 10

Interval = tuple[Fraction, Fraction]


# -- the auxiliary matrix ---------------------------------------------------

@dataclass(frozen=True)
class WMatrix:
    entries: tuple[tuple[BiPoly, ...], ...]
    game: AbsorbingGame

    def at(self, lam=None, z=None):
        """Substitute lam and/or z; with both given the result is a rational matrix."""
        def sub(p: BiPoly):
            terms = {}
            for (a, b), c in p.terms.items():
                if lam is not None:
                    c, a = c * as_fraction(lam) ** a, 0
                if z is not None:
                    c, b = c * as_fraction(z) ** b, 0
                terms[(a, b)] = terms.get((a, b), 0) + c
            out = BiPoly(terms)
            if lam is not None and z is not None:
                return out.terms.get((0, 0), Fraction(0))
            return out

        return [[sub(p) for p in row] for row in self.entries]


def _w_symbolic(g, q, w) -> BiPoly:
    absorbed = q * w if q else 0
    return LAM * g + (1 - LAM) * absorbed - Z * (LAM + (1 - LAM) * q)


def _w_numeric(g, q, w, lam, z) -> Fraction:
    absorbed = q * w if q else 0
    return lam * g + (1 - lam) * absorbed - z * (lam + (1 - lam) * q)


def build_W(game: AbsorbingGame, lam=None, z=None):
    """Auxiliary matrix W_lam(z); None leaves that variable symbolic."""
    if lam is not None:
        lam = as_fraction(lam)
        if not 0 < lam < 1:
            raise DomainError(f"discount factor must lie in (0, 1), got {lam}")
    cells = [
        [(game.g[i][j], game.q[i][j], game.w[i][j]) for j in range(game.n)]
        for i in range(game.m)
    ]
    if lam is not None and z is not None:
        z = as_fraction(z)
        return [[_w_numeric(g, q, w, lam, z) for g, q, w in row] for row in cells]
    W = WMatrix(tuple(tuple(_w_symbolic(*c) for c in row) for row in cells), game)
    if lam is None and z is None:
        return W
    return W.at(lam=lam, z=z)


# -- discounted game ---------------------------------------------------------

def _check_lambda(lam) -> Fraction:
    lam = as_fraction(lam)
    if not 0 < lam < 1:
        raise DomainError(f"discount factor must lie in (0, 1), got {lam}")
    return lam


def discounted_value(game: AbsorbingGame, lam, width=DEFAULT_WIDTH) -> Interval:
    """Interval of length <= width containing v_lam (degenerate if hit exactly)."""
    ensure_valid(game)
    lam = _check_lambda(lam)
    width = as_fraction(width)
    if width <= 0:
        raise DomainError("width must be positive")
    lo, hi = game.payoff_range()
    lo, hi = lo - 1, hi + 1
    while hi - lo > width:
        mid = (lo + hi) / 2
        s = value_sign(build_W(game, lam, mid))
        if s == ZERO:
            return mid, mid
        if s == POSITIVE:
            lo = mid
        else:
            hi = mid
    return lo, hi


def discounted_optimal(game: AbsorbingGame, lam, width=DEFAULT_WIDTH):
    """Optimal strategies of W_lam at the bisection midpoint: near-optimal stationary play."""
    lo, hi = discounted_value(game, lam, width)
    sol = solve_exact(build_W(game, lam, (lo + hi) / 2), with_kernel=False)
    return sol.x_opt, sol.y_opt


def discounted_payoff(game: AbsorbingGame, lam, x, y) -> Fraction:
    """Closed-form gamma_lam(x, y) for stationary x, y from the live state.

    The absorbing stage pays g, every later stage pays w.
    """
    lam = _check_lambda(lam)
    x, y = list(x), list(y)
    stage = absorb = tail = Fraction(0)
    for i, xi in enumerate(x):
        if not xi:
            continue
        for j, yj in enumerate(y):
            p = xi * yj
            if not p:
                continue
            stage += p * game.g[i][j]
            q = game.q[i][j]
            if q:
                absorb += p * q
                tail += p * q * game.w[i][j]
    return (lam * stage + (1 - lam) * tail) / (lam + (1 - lam) * absorb)


def limit_payoff(game: AbsorbingGame, x, j: int) -> Fraction:
    """lim_{lam -> 0} gamma_lam(x, j) for a stationary x against pure column j."""
    x = list(x)
    reach = sum(xi * game.q[i][j] for i, xi in enumerate(x) if xi)
    if reach > 0:
        return sum(xi * game.q[i][j] * game.w[i][j]
                   for i, xi in enumerate(x) if xi and game.q[i][j]) / reach
    return sum(xi * game.g[i][j] for i, xi in enumerate(x))


# -- stationary guarantees ---------------------------------------------------

@dataclass(frozen=True)
class Guarantee:
    lo: Fraction
    hi: Fraction
    strategy: StationaryStrategy
    support: tuple[int, ...]

    @property
    def interval(self) -> Interval:
        return self.lo, self.hi


def _support_feasible(game, support, z):
    """A strategy with support exactly ``support`` holding every limit payoff >= z, or None."""
    k = len(support)
    A_ub, b_ub = [], []
    # maximize t subject to x_i >= t on the support
    for pos in range(k):
        row = [Fraction(0)] * (k + 1)
        row[pos], row[k] = Fraction(-1), Fraction(1)
        A_ub.append(row)
        b_ub.append(0)
    for j in range(game.n):
        if any(game.q[i][j] for i in support):
            row = [-(game.q[i][j] * (game.w[i][j] - z)) if game.q[i][j] else Fraction(0)
                   for i in support]
            b_ub.append(0)
        else:
            row = [-game.g[i][j] for i in support]
            b_ub.append(-z)
        A_ub.append(row + [Fraction(0)])
    res = lp.maximize([0] * k + [1], A_ub, b_ub, [[1] * k + [0]], [1])
    if res.status != lp.OPTIMAL or res.objective <= 0:
        return None
    x = [Fraction(0)] * game.m
    for pos, i in enumerate(support):
        x[i] = res.x[pos]
    return x


def stationary_guarantee(game: AbsorbingGame, player: int = 1, width=DEFAULT_WIDTH) -> Guarantee:
    """Best payoff a stationary strategy secures in the limit, over all supports.

    For player 2 the answer is the upper bound player 2 can enforce, in the
    original payoff scale, computed on the dual game.
    """
    ensure_valid(game)
    if player == 2:
        r = stationary_guarantee(dual(game), 1, width)
        return Guarantee(-r.hi, -r.lo, StationaryStrategy(2, r.strategy.probs), r.support)
    if player != 1:
        raise DomainError(f"player must be 1 or 2, got {player!r}")
    if game.m > MAX_ACTIONS:
        raise DomainError(f"support enumeration is capped at {MAX_ACTIONS} actions, game has {game.m}")
    width = as_fraction(width)
    pmin, pmax = game.payoff_range()
    best = None
    for size in range(1, game.m + 1):
        for support in combinations(range(game.m), size):
            lo = pmin - 1 if best is None else best.lo
            x_lo = _support_feasible(game, support, lo)
            if x_lo is None:
                continue
            hi = pmax + 1
            while hi - lo > width:
                mid = (lo + hi) / 2
                x_mid = _support_feasible(game, support, mid)
                if x_mid is None:
                    hi = mid
                else:
                    lo, x_lo = mid, x_mid
            if best is None or lo > best.lo:
                best = Guarantee(lo, hi, StationaryStrategy(1, tuple(x_lo)), support)
    return best


# -- limit value -------------------------------------------------------------

@dataclass(frozen=True)
class Candidate:
    """Square-free primitive limit polynomial and the kernels (rows, cols) producing it."""

    poly: UniPoly
    kernels: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]


def limit_candidates(game: AbsorbingGame) -> list[Candidate]:
    """Lam-normalized determinants of every square sub-matrix of W_lam(z), deduplicated."""
    W = build_W(game).entries
    found: dict[UniPoly, list] = {}
    for r in range(1, min(game.m, game.n) + 1):
        for rows in combinations(range(game.m), r):
            for cols in combinations(range(game.n), r):
                P = det_poly([[W[i][j] for j in cols] for i in rows])
                if not P:
                    continue
                p0 = lambda_normalize(P)
                if p0.degree < 1:
                    continue
                key = squarefree_part(p0)
                found.setdefault(key, []).append((rows, cols))
    return [Candidate(p, tuple(ks)) for p, ks in found.items()]


@dataclass
class _Root:
    poly: UniPoly                  # square-free, contains this root exactly once in [lo, hi]
    lo: Fraction
    hi: Fraction
    exact: Fraction | None = None
    sources: list[int] = field(default_factory=list)

    @property
    def point(self) -> Fraction:
        return self.exact if self.exact is not None else (self.lo + self.hi) / 2


_ROOT_WIDTH = Fraction(1, 10**40)


def _same_root(a: _Root, b: _Root) -> bool:
    if a.exact is not None or b.exact is not None:
        if a.exact is not None and b.exact is not None:
            return a.exact == b.exact
        return False
    lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
    if lo > hi:
        return False
    g = poly_gcd(a.poly, b.poly)
    return g.degree >= 1 and g(lo) * g(hi) <= 0


def _collect_roots(candidates: Sequence[Candidate]) -> list[_Root]:
    roots: list[_Root] = []
    for idx, cand in enumerate(candidates):
        rats = rational_roots(cand.poly)
        mine = [_Root(UniPoly.linear(r), r, r, r) for r in rats]
        for lo, hi in isolate_real_roots(cand.poly):
            if any(lo <= r <= hi for r in rats):
                continue
            lo, hi = refine_root(cand.poly, (lo, hi), _ROOT_WIDTH)
            mine.append(_Root(cand.poly, lo, hi))
        for new in mine:
            for old in roots:
                if _same_root(old, new):
                    old.sources.append(idx)
                    break
            else:
                new.sources.append(idx)
                roots.append(new)
    return roots


def _distance(x: Fraction, interval: Interval) -> Fraction:
    lo, hi = interval
    return max(lo - x, x - hi, Fraction(0))


@dataclass
class LimitResult:
    value: Fraction | AlgebraicNumber | None
    algebraic: AlgebraicNumber | None
    candidates: list[Candidate]
    lambda_trace: list[tuple[Fraction, Interval]]
    distances: list[Fraction]
    certified: bool
    reason: str = ""

    def is_rational(self) -> bool:
        return isinstance(self.value, Fraction)

    def __float__(self) -> float:
        return float(self.value)


def _eventually_nonincreasing(ds: Sequence[Fraction]) -> bool:
    tail = ds[-max(3, (len(ds) + 1) // 2):]
    return all(b <= a for a, b in zip(tail, tail[1:]))


def limit_value(game: AbsorbingGame, tol=DEFAULT_TOL, schedule: Sequence = DEFAULT_SCHEDULE) -> LimitResult:
    """Certify lim_{lam -> 0} v_lam by matching a lam-sweep to candidate roots.

    The root nearest the last v_lam interval is reported.  It is certified
    when that distance is within ``tol`` and the distances along the sweep
    are non-increasing over its second half.
    """
    ensure_valid(game)
    tol = as_fraction(tol)
    if tol <= 0:
        raise DomainError("tol must be positive")
    schedule = [_check_lambda(lam) for lam in schedule]
    if not schedule or any(b >= a for a, b in zip(schedule, schedule[1:])):
        raise DomainError("lambda schedule must be a non-empty strictly decreasing sequence")

    candidates = limit_candidates(game)
    trace = []
    for lam in schedule:
        iv = discounted_value(game, lam, min(tol, Fraction(1)) * lam / 100)
        trace.append((lam, iv))
        log.debug("lambda=%s v in [%s, %s]", lam, *iv)

    roots = _collect_roots(candidates)
    if not roots:
        return LimitResult(None, None, candidates, trace, [], False, "no real candidate roots")
    final = trace[-1][1]
    ranked = sorted(roots, key=lambda r: _distance(r.point, final))
    best = ranked[0]
    dists = [_distance(best.point, iv) for _, iv in trace]

    poly = best.poly
    if best.exact is None:
        for idx in best.sources:
            poly = poly_gcd(poly, candidates[idx].poly)
    alg = minimal_poly_candidate(poly, (best.lo, best.hi))
    value = best.exact if best.exact is not None else alg

    reason = ""
    if len(ranked) > 1 and _distance(ranked[1].point, final) == dists[-1]:
        reason = "two candidate roots are equally close to the last discounted value"
    elif dists[-1] > tol:
        reason = f"nearest candidate root is {float(dists[-1]):.3g} away, above tol {float(tol):.3g}"
    elif not _eventually_nonincreasing(dists):
        reason = "distances to the candidate root do not settle into a decreasing trend"
    return LimitResult(value, alg, candidates, trace, dists, not reason, reason)


def check_theorem1(game: AbsorbingGame, tol=DEFAULT_TOL, schedule=DEFAULT_SCHEDULE) -> Fraction | None:
    """Rational limit value of a deterministic game with min(m, n) < 3; None if not applicable."""
    if not game.is_deterministic() or min(game.m, game.n) >= 3:
        return None
    res = limit_value(game, tol, schedule)
    if not res.certified:
        raise NotCertified(f"limit value not certified: {res.reason}", res)
    if not res.is_rational():
        raise InvariantViolation(f"deterministic {game.m}x{game.n} game certified irrational: {res.value}")
    return res.value
