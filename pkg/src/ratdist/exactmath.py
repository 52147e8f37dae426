"""Exact scalar arithmetic: rationals, square detection, heights, and Q(sqrt d).

Every scalar in this package is a ``fractions.Fraction`` (arbitrary precision,
always reduced, positive denominator).  ``Rational`` is an alias for it.
No floating point is used anywhere.
"""

from __future__ import annotations

import math
from fractions import Fraction

Rational = Fraction


class RadicandMismatch(ValueError):
    """Arithmetic between QuadElem values over different radicands."""


def is_rational_square(r) -> Fraction | None:
    """Return the nonnegative s with s*s == r, or None if r is not a square.

    Works on the reduced form: r = n/d is a square iff n and d are both
    perfect integer squares.  Negative r never is.
    """
    r = Fraction(r)
    if r < 0:
        return None
    n, d = r.numerator, r.denominator
    sn = math.isqrt(n)
    if sn * sn != n:
        return None
    sd = math.isqrt(d)
    if sd * sd != d:
        return None
    return Fraction(sn, sd)


def height(r) -> int:
    """Height of a reduced fraction p/q: max(|p|, q).  height(0) == 1."""
    r = Fraction(r)
    return max(abs(r.numerator), r.denominator)


def parse_rational(s: str) -> Fraction:
    """Parse "p/q" or "p" (no decimals accepted)."""
    s = s.strip()
    if "." in s or "e" in s or "E" in s:
        raise ValueError(f"not an exact rational literal: {s!r}")
    return Fraction(s)


def format_rational(r) -> str:
    """Serialize as "p/q" with q > 0 and gcd(p, q) = 1, or "p" when q == 1."""
    r = Fraction(r)
    if r.denominator == 1:
        return str(r.numerator)
    return f"{r.numerator}/{r.denominator}"


def _squarefree(d: int) -> bool:
    if d < 1:
        return False
    f = 2
    n = d
    while f * f <= n:
        if n % (f * f) == 0:
            return False
        if n % f == 0:
            n //= f
        f += 1
    return True


class QuadElem:
    """An element base + coeff*sqrt(d) of the real quadratic field Q(sqrt d).

    d must be a squarefree integer >= 2.  Elements over different radicands
    do not mix.  All arithmetic is exact; division goes through the conjugate.
    """

    __slots__ = ("base", "coeff", "d")

    def __init__(self, base, coeff, d: int):
        if not _squarefree(d) or d < 2:
            raise ValueError(f"radicand must be squarefree and >= 2, got {d}")
        self.base = Fraction(base)
        self.coeff = Fraction(coeff)
        self.d = int(d)

    @classmethod
    def of(cls, value, d: int) -> "QuadElem":
        """Embed a rational into Q(sqrt d)."""
        return cls(value, 0, d)

    @classmethod
    def sqrt_gen(cls, d: int) -> "QuadElem":
        """The generator sqrt(d)."""
        return cls(0, 1, d)

    def _coerce(self, other) -> "QuadElem":
        if isinstance(other, QuadElem):
            if other.d != self.d:
                raise RadicandMismatch(f"sqrt({self.d}) vs sqrt({other.d})")
            return other
        return QuadElem(other, 0, self.d)

    def __add__(self, other):
        o = self._coerce(other)
        return QuadElem(self.base + o.base, self.coeff + o.coeff, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadElem(-self.base, -self.coeff, self.d)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return QuadElem(
            self.base * o.base + self.d * self.coeff * o.coeff,
            self.base * o.coeff + self.coeff * o.base,
            self.d,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "QuadElem":
        return QuadElem(self.base, -self.coeff, self.d)

    def norm(self) -> Fraction:
        """Field norm base^2 - d*coeff^2 (a rational)."""
        return self.base * self.base - self.d * self.coeff * self.coeff

    def inverse(self) -> "QuadElem":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("zero has no inverse in Q(sqrt d)")
        return QuadElem(self.base / n, -self.coeff / n, self.d)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = QuadElem(1, 0, self.d)
        b = self
        while n:
            if n & 1:
                out = out * b
            b = b * b
            n >>= 1
        return out

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except RadicandMismatch:
            return False
        return self.base == o.base and self.coeff == o.coeff

    def __hash__(self):
        return hash((self.base, self.coeff, self.d))

    def is_zero(self) -> bool:
        return self.base == 0 and self.coeff == 0

    def is_rational(self) -> bool:
        return self.coeff == 0

    def signum(self) -> int:
        """Sign under the real embedding with sqrt(d) > 0."""
        if self.is_zero():
            return 0
        # sign of base + coeff*sqrt(d): compare base^2 vs d*coeff^2
        if self.base >= 0 and self.coeff >= 0:
            return 1
        if self.base <= 0 and self.coeff <= 0:
            return -1
        big_base = self.base * self.base > self.d * self.coeff * self.coeff
        if big_base:
            return 1 if self.base > 0 else -1
        return 1 if self.coeff > 0 else -1

    def __abs__(self):
        return self if self.signum() >= 0 else -self

    def __repr__(self):
        return f"QuadElem({self.base}, {self.coeff}, d={self.d})"

    def __str__(self):
        if self.coeff == 0:
            return format_rational(self.base)
        s = "" if self.base == 0 else f"{format_rational(self.base)} + "
        return f"{s}{format_rational(self.coeff)}*sqrt({self.d})"


def quad_sqrt(alpha: QuadElem) -> QuadElem | None:
    """A beta in Q(sqrt d) with beta^2 == alpha, or None.

    Solves x^2 + d*y^2 = base, 2xy = coeff over Q.  The returned root is
    normalized to be nonnegative in the real embedding.
    """
    p, q, d = alpha.base, alpha.coeff, alpha.d
    if q == 0:
        r = is_rational_square(p)
        if r is not None:
            return QuadElem(r, 0, d)
        r = is_rational_square(p / d)
        if r is not None:
            return QuadElem(0, r, d)
        return None
    disc = is_rational_square(p * p - d * q * q)
    if disc is None:
        return None
    for x2 in ((p + disc) / 2, (p - disc) / 2):
        x = is_rational_square(x2)
        if x is not None and x != 0:
            beta = QuadElem(x, q / (2 * x), d)
            if beta * beta == alpha:
                return abs(beta)
    return None
