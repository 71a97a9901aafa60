"""Acceptance checks over the built-in games and randomized suites, run by ``absorbing verify``.

Each check returns a :class:`Check`; ``scale`` < 1 shrinks the randomized
suites for a quick smoke run (the acceptance tests always use scale 1).
"""
from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable

from .exactalg import AlgebraicNumber, UniPoly
from .matrixgame import ZERO, enumerate_kernels, solve_exact, value_sign
from .model import (
    AbsorbingGame,
    QuadraticTarget,
    affine,
    builtin,
    dual,
    from_star_matrix,
    represent_quadratic,
)
from .simulate import estimate_gamma
from .solver import (
    build_W,
    check_theorem1,
    discounted_payoff,
    discounted_value,
    limit_payoff,
    limit_value,
    stationary_guarantee,
)

P0 = UniPoly([-7, 10, -5, 1])


@dataclass
class Check:
    name: str
    expected: str
    computed: str
    passed: bool
    elapsed: float = 0.0

    def line(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        return f"[{flag}] {self.name} ({self.elapsed:.2f}s): expected {self.expected}; got {self.computed}"


@dataclass
class VerifyReport:
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def render(self) -> str:
        lines = [c.line() for c in self.checks]
        n_ok = sum(c.passed for c in self.checks)
        lines.append(f"{n_ok}/{len(self.checks)} checks passed")
        return "\n".join(lines)


def _timed(name: str, budget: float, body: Callable[[], tuple[str, str, bool]]) -> Check:
    t0 = time.perf_counter()
    expected, computed, ok = body()
    elapsed = time.perf_counter() - t0
    if elapsed >= budget:
        computed += f" [over the {budget:g}s budget]"
    return Check(name, expected, computed, ok and elapsed < budget, elapsed)


def _mid(iv) -> Fraction:
    return (iv[0] + iv[1]) / 2


# -- support-enumeration oracle for matrix games (independent of the simplex) --

def _solve_linear(M, rhs):
    """Unique solution of M x = rhs by Gauss-Jordan over Q, or None if singular."""
    n = len(M)
    a = [list(map(Fraction, row)) + [Fraction(b)] for row, b in zip(M, rhs)]
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            return None
        a[c], a[p] = a[p], a[c]
        inv = 1 / a[c][c]
        a[c] = [v * inv for v in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [v - f * w for v, w in zip(a[r], a[c])]
    return [row[-1] for row in a]


def support_enumeration_value(A) -> Fraction:
    """Value of a matrix game by trying every pair of equal-size supports."""
    m, n = len(A), len(A[0])
    for r in range(1, min(m, n) + 1):
        for S in combinations(range(m), r):
            for T in combinations(range(n), r):
                # x on S equalizes columns T at v; y on T equalizes rows S at v
                Mx = [[A[i][j] for i in S] + [-1] for j in T] + [[1] * r + [0]]
                My = [[A[i][j] for j in T] + [-1] for i in S] + [[1] * r + [0]]
                sx = _solve_linear(Mx, [0] * r + [1])
                sy = _solve_linear(My, [0] * r + [1])
                if sx is None or sy is None or sx[-1] != sy[-1]:
                    continue
                v = sx[-1]
                if any(p < 0 for p in sx[:-1] + sy[:-1]):
                    continue
                x = dict(zip(S, sx[:-1]))
                y = dict(zip(T, sy[:-1]))
                if all(sum(x[i] * A[i][j] for i in S) >= v for j in range(n)) and all(
                    sum(y[j] * A[i][j] for j in T) <= v for i in range(m)
                ):
                    return v
    raise AssertionError("support enumeration found no equilibrium")


# -- individual criteria -----------------------------------------------------

def check_big_match(scale: float = 1.0) -> Check:
    def body():
        G = builtin("big-match")
        bad = []
        for lam in (Fraction(1, 2), Fraction(1, 10), Fraction(1, 100), Fraction(1, 1000)):
            lo, hi = discounted_value(G, lam, Fraction(1, 10**9))
            sign = value_sign(build_W(G, lam, Fraction(1, 2)))
            if not lo <= Fraction(1, 2) <= hi or sign != ZERO:
                bad.append(f"lam={lam}: [{lo}, {hi}], sign {sign}")
        return "v_lam = 1/2 and val W_lam(1/2) = 0 for 4 lambdas", "; ".join(bad) or "all hold", not bad
    return _timed("1 big match discounted value", 1.0, body)


def check_theorem2_limit(scale: float = 1.0) -> Check:
    def body():
        res = limit_value(builtin("theorem2"))
        v = res.value
        problems = []
        if not res.certified:
            problems.append(f"not certified ({res.reason})")
        if not isinstance(v, AlgebraicNumber) or v.poly != P0 or not v.minimality_certified:
            problems.append(f"value {v}")
        dec = float(v) if v is not None else float("nan")
        if not 1.4301 <= dec <= 1.4303:
            problems.append(f"decimal {dec}")
        root = v.approx() if isinstance(v, AlgebraicNumber) else Fraction(0)
        micro = dict(res.lambda_trace).get(Fraction(1, 10**6))
        if micro is None or abs(_mid(micro) - root) > Fraction(1, 100):
            problems.append("v_lam at 1e-6 not within 1e-2")
        gaps = [abs(_mid(iv) - root) for _, iv in res.lambda_trace]
        if any(b >= a for a, b in zip(gaps, gaps[1:])):
            problems.append("|v_lam - root| not decreasing")
        computed = f"root of {v.poly if v else None} ~ {dec:.6f}, gaps {[f'{float(g):.1e}' for g in gaps]}"
        if problems:
            computed += " | " + "; ".join(problems)
        return "certified root of z^3 - 5z^2 + 10z - 7 in [1.4301, 1.4303], degree 3", computed, not problems
    return _timed("2 theorem2 limit value", 30.0, body)


def check_theorem2_guarantees(scale: float = 1.0) -> Check:
    def body():
        G = builtin("theorem2")
        v = limit_value(G).value.approx()
        g1 = stationary_guarantee(G, 1)
        g2 = stationary_guarantee(dual(G), 1)
        p1, p2 = _mid(g1.interval), -_mid(g2.interval)
        third = Fraction(1, 3)
        step1 = limit_payoff(G, (third, third, third), 0)
        alpha = (-1 + math.sqrt(4 * float(v) - 3)) / 2
        target = (alpha, 1 - 2 * alpha - alpha**2, alpha + alpha**2)
        err = max(abs(float(a) - b) for a, b in zip(g1.strategy, target))
        ok = (
            abs(p1 - v) <= Fraction(1, 10**6)
            and abs(p2 - v) <= Fraction(1, 10**6)
            and g1.support == (0, 1, 2)
            and step1 == Fraction(4, 3)
            and err <= 1e-4
        )
        computed = (f"P1 {float(p1):.9f}, P2 {float(p2):.9f}, support {g1.support}, "
                    f"payoff(1/3,1/3,1/3; col 1) = {step1}, strategy error {err:.1e}")
        return f"guarantees = {float(v):.9f} +- 1e-6, full support, 4/3, alpha-strategy +- 1e-4", computed, ok
    return _timed("3 theorem2 stationary guarantees", 10.0, body)


def check_sqrt_k_limits(scale: float = 1.0) -> Check:
    def body():
        notes, ok = [], True
        for k in (2, 3, 5, 7, 10):
            t0 = time.perf_counter()
            res = limit_value(builtin("sqrt-k", k))
            v = res.value
            good = res.certified and isinstance(v, AlgebraicNumber) and v.poly == UniPoly([-k, 0, 1])
            if good:
                m = v.approx(Fraction(1, 10**20))
                good = abs(m * m - k) <= Fraction(1, 10**10) and m > 0
            good = good and time.perf_counter() - t0 < 10
            notes.append(f"k={k}:{'ok' if good else v}")
            ok &= good
        for k in (1, 4, 9):
            res = limit_value(builtin("sqrt-k", k))
            good = res.certified and res.value == math.isqrt(k) and res.is_rational()
            notes.append(f"k={k}:{res.value}")
            ok &= good
        return "z^2 - k certified (|v^2 - k| <= 1e-10), rational sqrt(k) for squares", ", ".join(notes), ok
    return _timed("4a sqrt-k limit values", 80.0, body)


def check_sqrt_k_strategy(scale: float = 1.0) -> Check:
    def body():
        worst, notes = 0.0, []
        for k in (2, 3, 4, 5, 7, 9, 10):
            g = stationary_guarantee(builtin("sqrt-k", k), 1)
            r = math.sqrt(k)
            target = ((r - 1) / (k - 1), (k - r) / (k - 1))
            err = max(abs(float(a) - b) for a, b in zip(g.strategy, target))
            worst = max(worst, err)
            notes.append(f"k={k}: ({float(g.strategy[0]):.6f}, {float(g.strategy[1]):.6f})")
        return ("strategy ((sqrt k - 1)/(k - 1), (k - sqrt k)/(k - 1)) +- 1e-6",
                f"max error {worst:.3g}; " + "; ".join(notes), worst <= 1e-6)
    return _timed("4b sqrt-k guarantee strategy", 70.0, body)


def random_star_game(rng: random.Random, m: int, n: int, lo: int = -5, hi: int = 5) -> AbsorbingGame:
    return from_star_matrix([[(rng.randint(lo, hi), rng.random() < 0.5) for _ in range(n)] for _ in range(m)])


def check_star_suite(scale: float = 1.0, seed: int = 2024) -> Check:
    def body():
        rng = random.Random(seed)
        shapes = [(2, 2), (2, 3), (3, 2)]
        count = max(3, int(200 * scale))
        failures = []
        for s in range(count):
            G = random_star_game(rng, *shapes[s % 3])
            try:
                v = check_theorem1(G)
                if not isinstance(v, Fraction):
                    failures.append(s)
            except Exception as exc:  # report, keep going
                failures.append(f"{s}: {exc}")
        return (f"{count} random deterministic games with rational certified limits",
                f"{count - len(failures)}/{count} certified rational" + (f", failures {failures[:5]}" if failures else ""),
                not failures)
    return _timed("5 deterministic star games", 300.0, body)


def random_quadratic_target(rng: random.Random) -> QuadraticTarget:
    k = rng.choice([k for k in range(2, 31) if math.isqrt(k) ** 2 != k])
    p = Fraction(rng.randint(-20, 20), rng.randint(1, 6))
    q = Fraction(rng.choice([v for v in range(-10, 11) if v]), rng.randint(1, 6))
    return QuadraticTarget(p, q, k)


def check_representation(scale: float = 1.0, seed: int = 7) -> Check:
    def body():
        rng = random.Random(seed)
        count = max(2, int(20 * scale))
        bad = []
        for _ in range(count):
            t = random_quadratic_target(rng)
            res = limit_value(represent_quadratic(t))
            quad = (UniPoly([-t.p, 1]) ** 2 - t.qcoef**2 * t.k).primitive()
            alg = res.algebraic
            ok = res.certified and alg is not None and not (alg.poly % quad)
            ok = ok and abs(float(alg.approx()) - float(t)) <= 1e-8
            if not ok:
                bad.append(f"({t.p}, {t.qcoef}, {t.k}) -> {res.value}")
        return (f"{count} targets p + q sqrt(k) certified within 1e-8",
                f"{count - len(bad)}/{count} ok" + (f", failures {bad}" if bad else ""), not bad)
    return _timed("6 degree-2 representation", 120.0, body)


def check_matrix_oracle(scale: float = 1.0, seed: int = 11) -> Check:
    def body():
        rng = random.Random(seed)
        count = max(10, int(500 * scale))
        bad = []
        for s in range(count):
            m, n = rng.randint(1, 4), rng.randint(1, 4)
            A = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)]
            v = solve_exact(A).value
            if v != support_enumeration_value(A):
                bad.append(f"{s}: simplex {v}")
            elif not any(k.verified and k.value == v for k in enumerate_kernels(A)):
                bad.append(f"{s}: no kernel")
        return (f"{count} matrices: simplex value = support enumeration, kernel hit",
                f"{count - len(bad)}/{count} agree" + (f", failures {bad[:5]}" if bad else ""), not bad)
    return _timed("7 matrix-game oracle equivalence", 120.0, body)


def simulation_fixtures():
    F = Fraction
    third = F(1, 3)
    general = AbsorbingGame(g=[[1, -2], [0, 3]], q=[[F(1, 2), 0], [F(1, 3), F(1, 4)]], w=[[2, 0], [-1, 5]])
    return [
        (builtin("big-match"), (F(1, 11), F(10, 11)), (F(1, 2), F(1, 2)), F(1, 10)),
        (builtin("sqrt-k", 4), (third, 2 * third), (1, 0), F(1, 100)),
        (builtin("theorem2"), (third, third, third), (third, third, third), F(1, 10)),
        (builtin("theorem2"), (third, F(1, 4), F(5, 12)), (0, 1, 0), F(1, 20)),
        (builtin("sqrt-k", 2), (F(1, 2), F(1, 2)), (F(1, 2), F(1, 2)), F(1, 5)),
        (builtin("big-match"), (F(1, 2), F(1, 2)), (F(1, 4), F(3, 4)), F(1, 2)),
        (dual(builtin("big-match")), (F(2, 3), third), (F(1, 5), F(4, 5)), F(1, 10)),
        (general, (F(3, 5), F(2, 5)), (F(1, 2), F(1, 2)), F(1, 10)),
        (affine(builtin("sqrt-k", 3), 2, -1), (F(1, 4), F(3, 4)), (F(2, 3), third), F(1, 10)),
        (AbsorbingGame([[3]], [[F(1, 5)]], [[-2]]), (1,), (1,), F(1, 10)),
    ]


def check_simulation(scale: float = 1.0, seed: int = 5) -> Check:
    def body():
        n = max(1000, int(100_000 * scale))
        hits, notes = 0, []
        for idx, (G, x, y, lam) in enumerate(simulation_fixtures()):
            mean, se = estimate_gamma(G, x, y, lam, n, seed + idx)
            exact = float(discounted_payoff(G, lam, x, y))
            # float rounding allowance for zero-variance fixtures
            ok = abs(mean - exact) <= 4 * se + 1e-9
            hits += ok
            notes.append(f"{(mean - exact) / se if se else 0.0:+.2f}se")
        return "means within 4 stderr in >= 9 of 10 fixtures", f"{hits}/10 ({', '.join(notes)})", hits >= 9
    return _timed("8 simulation consistency", 60.0, body)


def random_game(rng: random.Random, max_side: int = 3) -> AbsorbingGame:
    m, n = rng.randint(1, max_side), rng.randint(1, max_side)
    qs = [Fraction(0), Fraction(1), Fraction(1, 2), Fraction(1, 3), Fraction(3, 4)]
    q = [[rng.choice(qs) for _ in range(n)] for _ in range(m)]
    g = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(m)]
    w = [[rng.randint(-5, 5) if q[i][j] else 0 for j in range(n)] for i in range(m)]
    return AbsorbingGame(g, q, w)


def check_transforms(scale: float = 1.0, seed: int = 3) -> Check:
    def body():
        rng = random.Random(seed)
        lam, width = Fraction(1, 7), Fraction(1, 10**9)
        count = max(5, int(50 * scale))
        bad = []
        for s in range(count):
            G = random_game(rng)
            a = Fraction(rng.randint(1, 12), rng.randint(1, 4))
            b = Fraction(rng.randint(-10, 10), rng.randint(1, 4))
            v = _mid(discounted_value(G, lam, width))
            va = _mid(discounted_value(affine(G, a, b), lam, width))
            vd = _mid(discounted_value(dual(G), lam, width))
            if abs(va - (a * v + b)) > 2 * max(width, a * width) or abs(vd + v) > 2 * width:
                bad.append(s)
        return (f"{count} games: affine and dual equivariance at lam = 1/7",
                f"{count - len(bad)}/{count} hold" + (f", failures {bad}" if bad else ""), not bad)
    return _timed("9 transform equivariance", 120.0, body)


CHECKS = (
    check_big_match,
    check_theorem2_limit,
    check_theorem2_guarantees,
    check_sqrt_k_limits,
    check_sqrt_k_strategy,
    check_star_suite,
    check_representation,
    check_matrix_oracle,
    check_simulation,
    check_transforms,
)


def run_all(scale: float = 1.0, progress: Callable[[Check], None] | None = None) -> VerifyReport:
    report = VerifyReport()
    for fn in CHECKS:
        check = fn(scale)
        report.checks.append(check)
        if progress:
            progress(check)
    return report
