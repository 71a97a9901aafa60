"""Exact univariate and bivariate polynomials over the rationals.

Univariate polynomials are in the variable ``z``; bivariate ones are in
``(lam, z)``.  Coefficients are always :class:`fractions.Fraction`.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from numbers import Rational
from typing import Iterable, Mapping

from ..errors import DomainError


def as_fraction(value) -> Fraction:
    """Coerce an int/Fraction/str to Fraction, refusing floats."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


class UniPoly:
    """Polynomial in z with rational coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def constant(cls, c) -> UniPoly:
        return cls([c])

    @classmethod
    def linear(cls, root) -> UniPoly:
        """The monic polynomial z - root."""
        return cls([-as_fraction(root), 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __call__(self, z) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UniPoly([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def _coerce(self, other) -> UniPoly:
        if isinstance(other, UniPoly):
            return other
        return UniPoly([other])

    def __add__(self, other) -> UniPoly:
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return UniPoly(
            (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
        )

    __radd__ = __add__

    def __neg__(self) -> UniPoly:
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other) -> UniPoly:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> UniPoly:
        return self._coerce(other) - self

    def __mul__(self, other) -> UniPoly:
        other = self._coerce(other)
        if not self or not other:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> UniPoly:
        out = UniPoly([1])
        for _ in range(e):
            out = out * self
        return out

    def __divmod__(self, other) -> tuple[UniPoly, UniPoly]:
        other = self._coerce(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        if len(rem) - 1 < dq:
            return UniPoly(), self
        quot = [Fraction(0)] * (len(rem) - dq)
        inv = 1 / other.lc
        for k in range(len(rem) - 1 - dq, -1, -1):
            c = rem[k + dq] * inv
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return UniPoly(quot), UniPoly(rem[:dq])

    def __floordiv__(self, other) -> UniPoly:
        return divmod(self, other)[0]

    def __mod__(self, other) -> UniPoly:
        return divmod(self, other)[1]

    def derivative(self) -> UniPoly:
        return UniPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def monic(self) -> UniPoly:
        if not self:
            return self
        inv = 1 / self.lc
        return UniPoly(c * inv for c in self.coeffs)

    def content(self) -> Fraction:
        """Positive rational c such that self / c has coprime integer coefficients."""
        if not self:
            return Fraction(0)
        den = reduce(lcm, (c.denominator for c in self.coeffs), 1)
        num = reduce(gcd, (abs(c.numerator) * (den // c.denominator) for c in self.coeffs), 0)
        return Fraction(num, den)

    def primitive(self) -> UniPoly:
        """Integer-coefficient primitive associate with positive leading coefficient."""
        if not self:
            return self
        c = self.content()
        if self.lc < 0:
            c = -c
        return UniPoly(x / c for x in self.coeffs)

    def int_coeffs(self) -> list[int]:
        return [int(c) for c in self.primitive().coeffs]

    def __repr__(self) -> str:
        return f"UniPoly({self})"

    def __str__(self) -> str:
        return format_poly(self.coeffs)


def format_poly(coeffs, var: str = "z") -> str:
    if not any(coeffs):
        return "0"
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        terms.append((sign, body))
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd (zero only when both inputs are zero)."""
    while b:
        a, b = b, a % b
    return a.monic()


def squarefree_part(p: UniPoly) -> UniPoly:
    """p / gcd(p, p'), normalized to a primitive integer polynomial."""
    if not p:
        raise DomainError("square-free part of the zero polynomial")
    if p.degree <= 0:
        return UniPoly([1])
    g = poly_gcd(p, p.derivative())
    return (p // g).primitive()


class BiPoly:
    """Sparse polynomial in (lam, z): ``terms[(a, b)]`` is the coefficient of lam^a z^b."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], object] | None = None):
        self.terms: dict[tuple[int, int], Fraction] = {}
        for key, c in (terms or {}).items():
            c = as_fraction(c)
            if c:
                self.terms[key] = c

    @classmethod
    def constant(cls, c) -> BiPoly:
        return cls({(0, 0): c})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, BiPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == BiPoly.constant(other).terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    @staticmethod
    def _coerce(other) -> BiPoly:
        return other if isinstance(other, BiPoly) else BiPoly.constant(other)

    def __add__(self, other) -> BiPoly:
        other = self._coerce(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return BiPoly(out)

    __radd__ = __add__

    def __neg__(self) -> BiPoly:
        return BiPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other) -> BiPoly:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> BiPoly:
        return self._coerce(other) - self

    def __mul__(self, other) -> BiPoly:
        other = self._coerce(other)
        out: dict[tuple[int, int], Fraction] = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                key = (a1 + a2, b1 + b2)
                out[key] = out.get(key, 0) + c1 * c2
        return BiPoly(out)

    __rmul__ = __mul__

    @property
    def z_degree(self) -> int:
        return max((b for _, b in self.terms), default=-1)

    @property
    def lambda_valuation(self) -> int:
        if not self.terms:
            raise DomainError("valuation of the zero polynomial")
        return min(a for a, _ in self.terms)

    def at_lambda(self, lam) -> UniPoly:
        """Specialize lam to a rational, leaving a polynomial in z."""
        lam = as_fraction(lam)
        deg = self.z_degree
        cs = [Fraction(0)] * (deg + 1)
        for (a, b), c in self.terms.items():
            cs[b] += c * lam**a
        return UniPoly(cs)

    def __call__(self, lam, z) -> Fraction:
        return self.at_lambda(lam)(as_fraction(z))

    def __repr__(self) -> str:
        if not self.terms:
            return "BiPoly(0)"
        parts = []
        for (a, b), c in sorted(self.terms.items()):
            mono = "*".join(
                s for s in (f"lam^{a}" if a > 1 else "lam" if a else "",
                            f"z^{b}" if b > 1 else "z" if b else "") if s
            )
            parts.append(f"{c}*{mono}" if mono else str(c))
        return "BiPoly(" + " + ".join(parts) + ")"


LAM = BiPoly({(1, 0): 1})
Z = BiPoly({(0, 1): 1})


def lambda_normalize(p: BiPoly) -> UniPoly:
    """Divide out the largest power of lam and set lam = 0."""
    if not p:
        raise DomainError("cannot normalize the zero polynomial")
    v = p.lambda_valuation
    deg = p.z_degree
    cs = [Fraction(0)] * (deg + 1)
    for (a, b), c in p.terms.items():
        if a == v:
            cs[b] += c
    return UniPoly(cs)
