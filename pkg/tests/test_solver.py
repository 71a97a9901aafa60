import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from absorbing.errors import DomainError, InvariantViolation
from absorbing.exactalg import LAM, Z, AlgebraicNumber, UniPoly
from absorbing.matrixgame import NEGATIVE, POSITIVE, ZERO, solve_exact, value_sign
from absorbing.model import (
    AbsorbingGame,
    QuadraticTarget,
    affine,
    builtin,
    dual,
    represent_quadratic,
)
from absorbing.solver import (
    build_W,
    check_theorem1,
    discounted_optimal,
    discounted_payoff,
    discounted_value,
    limit_candidates,
    limit_payoff,
    limit_value,
    stationary_guarantee,
)
from absorbing.verify import random_star_game
from tests.test_model import games

F = Fraction
P0 = UniPoly([-7, 10, -5, 1])
lams = st.fractions(min_value=F(1, 50), max_value=F(49, 50), max_denominator=50)


def alpha_from_value(v: float) -> float:
    # alpha^2 + alpha = v - 1
    return (-1 + math.sqrt(4 * v - 3)) / 2


# -- W matrix ------------------------------------------------------------------

def test_build_w_big_match():
    W = build_W(builtin("big-match")).entries
    assert W[0][0] == 1 - Z and W[0][1] == -Z
    assert W[1][0] == -LAM * Z and W[1][1] == LAM * (1 - Z)


def test_build_w_theorem2():
    W = build_W(builtin("theorem2")).entries
    expected = [[1 - Z, 1 - Z, 2 - Z], [1 - Z, 2 - Z, -LAM * Z], [2 - Z, -LAM * Z, 1 - Z]]
    assert [list(r) for r in W] == expected


def test_build_w_sqrt_k_entry():
    k = 5
    W = build_W(builtin("sqrt-k", k)).entries
    assert W[0][0] == (1 - LAM) - Z * (LAM + (1 - LAM) * F(1, k))


@given(games(), lams, st.fractions(min_value=-6, max_value=6, max_denominator=9))
def test_w_entries_linear_in_z_with_negative_slope(G, lam, z):
    W = build_W(G)
    numeric = build_W(G, lam, z)
    for i in range(G.m):
        for j in range(G.n):
            p = W.entries[i][j]
            assert p.z_degree <= 1
            slope = p.at_lambda(lam).coeffs[1]
            assert slope == -(lam + (1 - lam) * G.q[i][j]) and slope <= -lam
            assert p(lam, z) == numeric[i][j]


def test_build_w_rejects_bad_lambda():
    with pytest.raises(DomainError):
        build_W(builtin("big-match"), 0, 1)
    with pytest.raises(DomainError):
        build_W(builtin("big-match"), 1, 1)


# -- discounted values -----------------------------------------------------------

@pytest.mark.parametrize("lam", [F(1, 2), F(1, 10), F(1, 100), F(1, 1000), F(3, 7)])
def test_big_match_discounted_value_is_half(lam):
    G = builtin("big-match")
    lo, hi = discounted_value(G, lam, F(1, 10**9))
    assert lo <= F(1, 2) <= hi
    assert value_sign(build_W(G, lam, F(1, 2))) == ZERO
    # equalizer x = (lam/(1+lam), 1/(1+lam)) makes both columns of W_lam(1/2) vanish
    x = (lam / (1 + lam), 1 / (1 + lam))
    W = build_W(G, lam, F(1, 2))
    assert all(x[0] * W[0][j] + x[1] * W[1][j] == 0 for j in range(2))


def test_sqrt_k_one_discounted_value():
    G = builtin("sqrt-k", 1)
    lo, hi = discounted_value(G, F(1, 3), F(1, 10**9))
    assert lo <= 1 <= hi
    assert solve_exact(build_W(G, F(1, 3), 1)).value == 0


def test_theorem2_discounted_trend():
    G = builtin("theorem2")
    v = float(limit_value(G).value)
    gaps = []
    for e in range(2, 7):
        lo, hi = discounted_value(G, F(1, 10**e), F(1, 10**10))
        gaps.append(abs(float(lo + hi) / 2 - v))
    assert gaps[2] < 0.05  # lam = 1e-4
    assert all(b < a for a, b in zip(gaps, gaps[1:]))


def test_discounted_value_errors():
    with pytest.raises(DomainError):
        discounted_value(builtin("big-match"), F(3, 2))
    with pytest.raises(DomainError):
        discounted_value(builtin("big-match"), F(1, 2), 0)
    with pytest.raises(DomainError):
        discounted_value(AbsorbingGame([[0]], [[2]], [[0]]), F(1, 2))


@settings(max_examples=30)
@given(games(), lams, st.fractions(min_value=-6, max_value=6, max_denominator=8),
       st.fractions(min_value=F(1, 8), max_value=3, max_denominator=8))
def test_val_w_strictly_decreasing_in_z(G, lam, z1, dz):
    v1 = solve_exact(build_W(G, lam, z1), with_kernel=False).value
    v2 = solve_exact(build_W(G, lam, z1 + dz), with_kernel=False).value
    assert v1 > v2


@settings(max_examples=30)
@given(games(), lams)
def test_sign_flips_across_interval(G, lam):
    lo, hi = discounted_value(G, lam, F(1, 10**6))
    assert value_sign(build_W(G, lam, lo)) in (POSITIVE, ZERO)
    assert value_sign(build_W(G, lam, hi)) in (NEGATIVE, ZERO)


@settings(max_examples=30)
@given(games(), lams)
def test_discounted_optimal_is_near_optimal(G, lam):
    width = F(1, 10**8)
    lo, hi = discounted_value(G, lam, width)
    x, y = discounted_optimal(G, lam, width)
    for j in range(G.n):
        pure = [F(int(k == j)) for k in range(G.n)]
        assert discounted_payoff(G, lam, x, pure) >= lo - width / lam
    for i in range(G.m):
        pure = [F(int(k == i)) for k in range(G.m)]
        assert discounted_payoff(G, lam, pure, y) <= hi + width / lam


def test_discounted_optimal_big_match():
    x, _ = discounted_optimal(builtin("big-match"), F(1, 10))
    assert x.probs == (F(1, 11), F(10, 11))


def test_discounted_optimal_theorem2_near_alpha():
    x, _ = discounted_optimal(builtin("theorem2"), F(1, 10**4))
    a = alpha_from_value(float(limit_value(builtin("theorem2")).value))
    target = (a, 1 - 2 * a - a * a, a + a * a)
    assert x.support == (0, 1, 2)
    assert max(abs(float(p) - t) for p, t in zip(x, target)) < 1e-3


def test_discounted_optimal_sqrt_k_four():
    # The equalizer of k/(x1 + k x2) = x1 + k x2 is x1 = (k - sqrt k)/(k - 1): (2/3, 1/3) at k = 4.
    x, _ = discounted_optimal(builtin("sqrt-k", 4), F(1, 10**4))
    assert abs(float(x[0]) - 2 / 3) < 1e-3


# -- limit payoffs and guarantees --------------------------------------------------

def test_limit_payoff_examples():
    T = builtin("theorem2")
    third = F(1, 3)
    assert limit_payoff(T, (third, third, third), 0) == F(4, 3)
    x = (F(1, 5), F(3, 10), F(1, 2))
    assert limit_payoff(T, x, 1) == (x[0] + 2 * x[1]) / (x[0] + x[1])
    assert limit_payoff(T, x, 2) == (2 * x[0] + x[2]) / (x[0] + x[2])
    assert limit_payoff(T, x, 0) == x[0] + x[1] + 2 * x[2]
    assert limit_payoff(builtin("big-match"), (0, 1), 0) == 0


@pytest.mark.parametrize("k", [2, 3, 7])
def test_limit_payoff_matches_small_lambda(k):
    G = builtin("sqrt-k", k)
    x = (F(2, 5), F(3, 5))
    for j in range(2):
        pure = [F(int(c == j)) for c in range(2)]
        assert abs(discounted_payoff(G, F(1, 10**9), x, pure) - limit_payoff(G, x, j)) < F(1, 10**6)


def test_guarantee_big_match_is_zero():
    g = stationary_guarantee(builtin("big-match"))
    assert g.lo <= 0 <= g.hi and g.hi - g.lo <= F(1, 10**9)


def test_guarantee_theorem2():
    g = stationary_guarantee(builtin("theorem2"))
    v = float(limit_value(builtin("theorem2")).value)
    assert abs(float(g.lo) - v) < 1e-8 and g.support == (0, 1, 2)
    a = alpha_from_value(v)
    x = [float(p) for p in g.strategy]
    # the equalizer system: x1 + x2 + 2x3 = (x1 + 2x2)/(x1 + x2) = (2x1 + x3)/(x1 + x3)
    assert abs(x[0] + x[1] + 2 * x[2] - (x[0] + 2 * x[1]) / (x[0] + x[1])) < 1e-7
    assert abs(x[0] + x[1] + 2 * x[2] - (2 * x[0] + x[2]) / (x[0] + x[2])) < 1e-7
    assert max(abs(p - t) for p, t in zip(x, (a, 1 - 2 * a - a * a, a + a * a))) < 1e-7


def test_guarantee_sqrt_k_four():
    g = stationary_guarantee(builtin("sqrt-k", 4))
    assert g.lo <= 2 <= g.hi
    assert abs(float(g.strategy[0]) - 2 / 3) < 1e-8 and abs(float(g.strategy[1]) - 1 / 3) < 1e-8


def test_guarantee_player_two_is_upper_bound():
    G = builtin("big-match")
    g2 = stationary_guarantee(G, 2)
    # column player secures 1/2 by mixing (1/2, 1/2); dual guarantee negated
    assert g2.lo <= F(1, 2) <= g2.hi
    assert g2.strategy.owner == 2


@pytest.mark.parametrize("name,k", [("big-match", None), ("theorem2", None), ("sqrt-k", 2), ("sqrt-k", 5)])
def test_guarantee_never_exceeds_limit(name, k):
    G = builtin(name, k)
    v = float(limit_value(G).value)
    g = stationary_guarantee(G)
    assert float(g.lo) <= v + 1e-2
    if name == "big-match":
        assert float(g.hi) < v  # strict gap: 0 < 1/2
    else:
        assert abs(float(g.lo) - v) < 1e-6


# -- candidates and limit values --------------------------------------------------

def test_candidates_theorem2_contains_p0():
    polys = {c.poly for c in limit_candidates(builtin("theorem2"))}
    assert P0 in polys
    full = next(c for c in limit_candidates(builtin("theorem2")) if c.poly == P0)
    assert ((0, 1, 2), (0, 1, 2)) in full.kernels


@pytest.mark.parametrize("k", [2, 3, 6])
def test_candidates_sqrt_k(k):
    polys = {c.poly for c in limit_candidates(builtin("sqrt-k", k))}
    assert UniPoly([-k, 0, 1]) in polys


def test_candidates_big_match():
    cands = limit_candidates(builtin("big-match"))
    polys = {c.poly for c in cands}
    # 1x1: 1 - z, -z, -lam z -> z, lam(1 - z) -> 1 - z; 2x2: lam(1 - 2z)
    assert polys == {UniPoly([-1, 1]), UniPoly([0, 1]), UniPoly([-1, 2])}
    half = next(c for c in cands if c.poly == UniPoly([-1, 2]))
    assert half.kernels == (((0, 1), (0, 1)),)


def test_limit_big_match():
    res = limit_value(builtin("big-match"))
    assert res.certified and res.value == F(1, 2)


def test_limit_theorem2():
    res = limit_value(builtin("theorem2"))
    assert res.certified
    assert isinstance(res.value, AlgebraicNumber)
    assert res.value.poly == P0 and res.value.minimality_certified
    assert abs(float(res.value) - 1.4301597) < 1e-6


@pytest.mark.parametrize("k", [2, 3, 11])
def test_limit_sqrt_k(k):
    res = limit_value(builtin("sqrt-k", k))
    assert res.certified and res.value.poly == UniPoly([-k, 0, 1])
    assert abs(float(res.value) - math.sqrt(k)) < 1e-12


def test_limit_result_invariants():
    for G in (builtin("theorem2"), builtin("sqrt-k", 3), builtin("big-match")):
        res = limit_value(G)
        assert res.certified
        ds = res.distances
        assert all(b <= a for a, b in zip(ds[3:], ds[4:]))
        assert ds[-1] <= F(1, 100)
        # completeness: the certified value annihilates some candidate
        root = res.algebraic
        assert any(not (c.poly % root.poly) for c in res.candidates)


def test_limit_uncertified_with_tiny_tol():
    res = limit_value(builtin("theorem2"), tol=F(1, 10**30))
    assert not res.certified and "tol" in res.reason
    assert res.candidates and len(res.lambda_trace) == 7


def test_limit_schedule_validation():
    with pytest.raises(DomainError):
        limit_value(builtin("big-match"), schedule=[F(1, 100), F(1, 10)])
    with pytest.raises(DomainError):
        limit_value(builtin("big-match"), tol=0)


def test_dual_limit_is_negated():
    res = limit_value(dual(builtin("sqrt-k", 2)))
    assert res.certified and abs(float(res.value) + math.sqrt(2)) < 1e-12


@pytest.mark.parametrize("p,q,k", [(0, 1, 2), (1, 1, 2), (0, -1, 3), (F(-3, 2), F(2, 5), 7)])
def test_represent_quadratic_limit(p, q, k):
    t = QuadraticTarget(p, q, k)
    res = limit_value(represent_quadratic(t))
    assert res.certified
    quad = (UniPoly([-t.p, 1]) ** 2 - t.qcoef**2 * k).primitive()
    assert not (res.algebraic.poly % quad)
    assert abs(float(res.value) - float(t)) < 1e-9


def test_represent_quadratic_rational():
    res = limit_value(represent_quadratic(QuadraticTarget(F(5, 3), 0, 2)))
    assert res.value == F(5, 3)


# -- deterministic star games ----------------------------------------------------

def test_check_theorem1_examples():
    assert check_theorem1(builtin("big-match")) == F(1, 2)
    assert check_theorem1(builtin("theorem2")) is None
    assert check_theorem1(builtin("sqrt-k", 2)) is None  # q = 1/2 is not deterministic


@pytest.mark.parametrize("seed", range(12))
def test_check_theorem1_random(seed):
    rng = random.Random(seed)
    G = random_star_game(rng, *[(2, 3), (3, 2), (2, 2)][seed % 3])
    assert isinstance(check_theorem1(G), Fraction)


def test_check_theorem1_flags_irrational(monkeypatch):
    import absorbing.solver as solver

    fake = solver.LimitResult(AlgebraicNumber(UniPoly([-2, 0, 1]), F(1), F(2), True), None, [], [], [], True)
    monkeypatch.setattr(solver, "limit_value", lambda *a, **k: fake)
    with pytest.raises(InvariantViolation):
        solver.check_theorem1(builtin("big-match"))


# -- placeholders are never read ------------------------------------------------------

@settings(max_examples=15)
@given(games(max_side=2), st.lists(st.integers(-100, 100), min_size=4, max_size=4), lams)
def test_placeholder_w_is_ignored(G, junk, lam):
    w = [[G.w[i][j] if G.q[i][j] else junk[(2 * i + j) % 4] for j in range(G.n)] for i in range(G.m)]
    H = AbsorbingGame(G.g, G.q, w)
    assert discounted_value(H, lam, F(1, 10**6)) == discounted_value(G, lam, F(1, 10**6))
    assert [c.poly for c in limit_candidates(H)] == [c.poly for c in limit_candidates(G)]
    assert stationary_guarantee(H, 1, F(1, 10**4)) == stationary_guarantee(G, 1, F(1, 10**4))
    x = [F(1, G.m)] * G.m
    assert [limit_payoff(H, x, j) for j in range(G.n)] == [limit_payoff(G, x, j) for j in range(G.n)]


@settings(max_examples=20)
@given(games(), st.fractions(min_value=F(1, 3), max_value=4, max_denominator=5),
       st.fractions(min_value=-3, max_value=3, max_denominator=5))
def test_discounted_equivariance(G, a, b):
    lam, width = F(1, 7), F(1, 10**8)
    lo, hi = discounted_value(G, lam, width)
    alo, ahi = discounted_value(affine(G, a, b), lam, width)
    dlo, dhi = discounted_value(dual(G), lam, width)
    v, va, vd = (lo + hi) / 2, (alo + ahi) / 2, (dlo + dhi) / 2
    assert abs(va - (a * v + b)) <= 2 * max(width, a * width)
    assert abs(vd + v) <= 2 * width
