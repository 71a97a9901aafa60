"""Real root isolation by Sturm sequences, rational roots, algebraic numbers."""
from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction

from ..errors import DomainError
from .poly import UniPoly, as_fraction, squarefree_part

Interval = tuple[Fraction, Fraction]


def sturm_sequence(p: UniPoly) -> list[UniPoly]:
    """Sturm chain of the square-free part of p."""
    f = squarefree_part(p)
    seq = [f, f.derivative()]
    while seq[-1]:
        seq.append(-(seq[-2] % seq[-1]))
    return seq[:-1]


def _variations(seq: list[UniPoly], x: Fraction) -> int:
    signs = [s for s in ((q(x) > 0) - (q(x) < 0) for q in seq) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(p: UniPoly, lo, hi, seq: list[UniPoly] | None = None) -> int:
    """Number of distinct real roots of p in the closed interval [lo, hi]."""
    lo, hi = as_fraction(lo), as_fraction(hi)
    if lo > hi:
        raise DomainError(f"empty interval [{lo}, {hi}]")
    seq = seq or sturm_sequence(p)
    n = _variations(seq, lo) - _variations(seq, hi)
    if seq[0](lo) == 0:
        n += 1
    return n


def root_bound(p: UniPoly) -> Fraction:
    """Cauchy bound: every real root r satisfies |r| < bound."""
    lc = p.lc
    return 1 + max((abs(c / lc) for c in p.coeffs[:-1]), default=Fraction(0))


def _nonroot_split(f: UniPoly, a: Fraction, b: Fraction) -> Fraction:
    mid = (a + b) / 2
    k = 3
    while f(mid) == 0:
        mid = a + (b - a) / k
        k += 1
    return mid


def isolate_real_roots(p: UniPoly) -> list[Interval]:
    """Disjoint rational intervals, sorted, each holding exactly one real root of p.

    Endpoints are never roots unless the interval is degenerate; exact
    rational roots hit by bisection are returned as ``(r, r)``.
    """
    if not p:
        raise DomainError("cannot isolate roots of the zero polynomial")
    f = squarefree_part(p)
    if f.degree < 1:
        return []
    seq = sturm_sequence(f)
    bound = Fraction(math.ceil(root_bound(f)))
    out: list[Interval] = []
    stack = [(-bound, bound)]
    while stack:
        a, b = stack.pop()
        n = _variations(seq, a) - _variations(seq, b)
        if n == 0:
            continue
        if n == 1:
            out.append((a, b))
            continue
        mid = _nonroot_split(f, a, b)
        stack.append((a, mid))
        stack.append((mid, b))
    out.sort()
    return out


def refine_root(p: UniPoly, interval: Interval, width) -> Interval:
    """Shrink an isolating interval by exact bisection until it is at most ``width`` long."""
    f = squarefree_part(p)
    lo, hi = (as_fraction(x) for x in interval)
    width = as_fraction(width)
    if width <= 0:
        raise DomainError("width must be positive")
    if count_roots(f, lo, hi) != 1:
        raise DomainError(f"interval [{lo}, {hi}] does not isolate a single root")
    if f(lo) == 0:
        return lo, lo
    if f(hi) == 0:
        return hi, hi
    s_lo = f(lo) > 0
    while hi - lo > width:
        mid = (lo + hi) / 2
        v = f(mid)
        if v == 0:
            return mid, mid
        if (v > 0) == s_lo:
            lo = mid
        else:
            hi = mid
    return lo, hi


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(p: UniPoly) -> list[Fraction]:
    """All rational roots (distinct, ascending) via the rational-root theorem."""
    if not p:
        raise DomainError("rational roots of the zero polynomial")
    cs = p.int_coeffs()
    roots = set()
    shift = 0
    while cs and cs[0] == 0:
        cs.pop(0)
        shift += 1
    if shift:
        roots.add(Fraction(0))
    if len(cs) > 1:
        reduced = UniPoly(cs)
        for num in _divisors(cs[0]):
            for den in _divisors(cs[-1]):
                if math.gcd(num, den) != 1:
                    continue
                for cand in (Fraction(num, den), Fraction(-num, den)):
                    if reduced(cand) == 0:
                        roots.add(cand)
    return sorted(roots)


def to_decimal(x: Fraction, digits: int = 10) -> Decimal:
    with localcontext() as ctx:
        ctx.prec = digits
        return Decimal(x.numerator) / Decimal(x.denominator)


@dataclass(frozen=True)
class AlgebraicNumber:
    """A real algebraic number: square-free primitive polynomial plus isolating interval."""

    poly: UniPoly
    lo: Fraction
    hi: Fraction
    minimality_certified: bool = False

    @property
    def interval(self) -> Interval:
        return self.lo, self.hi

    @property
    def degree(self) -> int:
        return self.poly.degree

    def is_rational(self) -> bool:
        return self.poly.degree == 1

    def exact(self) -> Fraction:
        if not self.is_rational():
            raise DomainError(f"{self.poly} has no rational root here")
        return -self.poly.coeffs[0] / self.poly.coeffs[1]

    def refined(self, width) -> AlgebraicNumber:
        if self.is_rational():
            r = self.exact()
            return AlgebraicNumber(self.poly, r, r, self.minimality_certified)
        lo, hi = refine_root(self.poly, self.interval, width)
        return AlgebraicNumber(self.poly, lo, hi, self.minimality_certified)

    def approx(self, width=Fraction(1, 10**30)) -> Fraction:
        a = self.refined(width)
        return (a.lo + a.hi) / 2

    def __float__(self) -> float:
        return float(self.approx())

    def decimal(self, digits: int = 10) -> Decimal:
        return to_decimal(self.approx(Fraction(1, 10 ** (digits + 5))), digits)

    def __str__(self) -> str:
        return f"root of {self.poly} in [{self.lo}, {self.hi}]"


def minimal_poly_candidate(p: UniPoly, interval: Interval) -> AlgebraicNumber:
    """Smallest factor of p we can certify for the root isolated by ``interval``.

    Takes the square-free part, splits off rational linear factors, and
    certifies minimality when what is left has degree at most 3 (such a
    polynomial without rational roots is irreducible over Q).
    """
    lo, hi = (as_fraction(x) for x in interval)
    f = squarefree_part(p)
    if count_roots(f, lo, hi) != 1:
        raise DomainError(f"interval [{lo}, {hi}] does not isolate a single root of {f}")
    rats = rational_roots(f)
    for r in rats:
        if lo <= r <= hi:
            return AlgebraicNumber(UniPoly.linear(r).primitive(), r, r, True)
    for r in rats:
        f = f // UniPoly.linear(r)
    f = f.primitive()
    return AlgebraicNumber(f, lo, hi, f.degree <= 3)
