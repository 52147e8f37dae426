"""Elliptic curves over Q: long Weierstrass arithmetic, invariants, and the
classical transformation from V^2 = quartic (with a rational point) to a cubic
model, with explicit point maps in both directions.

Coordinates are affine Fractions throughout; the point at infinity is a
dedicated sentinel.  No rank, torsion, or descent machinery lives here:
infinite-order inputs are taken as given and only sanity-checked by callers.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .exactmath import format_rational, is_rational_square


class SingularCurve(ValueError):
    """Weierstrass coefficients with vanishing discriminant."""


class SingularQuartic(ValueError):
    """Quartic with a repeated root (genus drop)."""


class OffCurve(ValueError):
    """A point that was required to lie on a curve does not."""


class PullbackUndefined(ValueError):
    """The backward quartic map is undefined at this point."""


class ECPoint:
    """Affine rational point or the point at infinity ("O")."""

    __slots__ = ("x", "y")

    def __init__(self, x=None, y=None):
        if x is None:
            self.x = None
            self.y = None
        else:
            self.x = Fraction(x)
            self.y = Fraction(y)

    @classmethod
    def infinity(cls) -> "ECPoint":
        return cls()

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def pair(self) -> tuple[Fraction, Fraction]:
        if self.is_infinity:
            raise ValueError("point at infinity has no affine coordinates")
        return self.x, self.y

    def __eq__(self, other):
        if not isinstance(other, ECPoint):
            return NotImplemented
        return (self.x, self.y) == (other.x, other.y)

    def __hash__(self):
        return hash((self.x, self.y))

    def __repr__(self):
        return "O" if self.is_infinity else f"({self.x}, {self.y})"

    def to_json(self):
        if self.is_infinity:
            return "O"
        return [format_rational(self.x), format_rational(self.y)]


O = ECPoint.infinity()


class ECurve:
    """y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6 with nonzero discriminant."""

    __slots__ = ("a1", "a2", "a3", "a4", "a6", "b2", "b4", "b6", "b8",
                 "discriminant", "c4", "c6")

    def __init__(self, a1, a2, a3, a4, a6):
        self.a1, self.a2, self.a3 = Fraction(a1), Fraction(a2), Fraction(a3)
        self.a4, self.a6 = Fraction(a4), Fraction(a6)
        a1, a2, a3, a4, a6 = self.a1, self.a2, self.a3, self.a4, self.a6
        self.b2 = a1 * a1 + 4 * a2
        self.b4 = 2 * a4 + a1 * a3
        self.b6 = a3 * a3 + 4 * a6
        self.b8 = (a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4
                   + a2 * a3 * a3 - a4 * a4)
        self.discriminant = (-self.b2 ** 2 * self.b8 - 8 * self.b4 ** 3
                             - 27 * self.b6 ** 2 + 9 * self.b2 * self.b4 * self.b6)
        if self.discriminant == 0:
            raise SingularCurve(f"discriminant vanishes: {self}")
        self.c4 = self.b2 ** 2 - 24 * self.b4
        self.c6 = -self.b2 ** 3 + 36 * self.b2 * self.b4 - 216 * self.b6

    @classmethod
    def short(cls, A, B) -> "ECurve":
        return cls(0, 0, 0, A, B)

    @property
    def j(self) -> Fraction:
        return self.c4 ** 3 / self.discriminant

    def invariants(self) -> tuple[Fraction, Fraction]:
        """(discriminant, j-invariant)."""
        return self.discriminant, self.j

    def on_curve(self, P: ECPoint) -> bool:
        if P.is_infinity:
            return True
        x, y = P.x, P.y
        return (y * y + self.a1 * x * y + self.a3 * y
                == x ** 3 + self.a2 * x * x + self.a4 * x + self.a6)

    def require(self, P: ECPoint) -> ECPoint:
        if not self.on_curve(P):
            raise OffCurve(f"{P} not on {self}")
        return P

    def neg(self, P: ECPoint) -> ECPoint:
        if P.is_infinity:
            return P
        return ECPoint(P.x, -P.y - self.a1 * P.x - self.a3)

    def add(self, P: ECPoint, Q: ECPoint) -> ECPoint:
        self.require(P)
        self.require(Q)
        if P.is_infinity:
            return Q
        if Q.is_infinity:
            return P
        x1, y1 = P.x, P.y
        x2, y2 = Q.x, Q.y
        if x1 == x2 and y2 == -y1 - self.a1 * x1 - self.a3:
            return O
        if x1 == x2:
            lam = ((3 * x1 * x1 + 2 * self.a2 * x1 + self.a4 - self.a1 * y1)
                   / (2 * y1 + self.a1 * x1 + self.a3))
        else:
            lam = (y2 - y1) / (x2 - x1)
        nu = y1 - lam * x1
        x3 = lam * lam + self.a1 * lam - self.a2 - x1 - x2
        y3 = -(lam + self.a1) * x3 - nu - self.a3
        return ECPoint(x3, y3)

    def mul(self, n: int, P: ECPoint) -> ECPoint:
        self.require(P)
        if n < 0:
            return self.mul(-n, self.neg(P))
        out = O
        base = P
        while n:
            if n & 1:
                out = self._add_unchecked(out, base)
            base = self._add_unchecked(base, base)
            n >>= 1
        return out

    def _add_unchecked(self, P, Q):
        if P.is_infinity:
            return Q
        if Q.is_infinity:
            return P
        x1, y1 = P.x, P.y
        x2, y2 = Q.x, Q.y
        if x1 == x2 and y2 == -y1 - self.a1 * x1 - self.a3:
            return O
        if x1 == x2:
            lam = ((3 * x1 * x1 + 2 * self.a2 * x1 + self.a4 - self.a1 * y1)
                   / (2 * y1 + self.a1 * x1 + self.a3))
        else:
            lam = (y2 - y1) / (x2 - x1)
        nu = y1 - lam * x1
        x3 = lam * lam + self.a1 * lam - self.a2 - x1 - x2
        y3 = -(lam + self.a1) * x3 - nu - self.a3
        return ECPoint(x3, y3)

    def short_model(self):
        """Short form y^2 = x^3 + A x + B plus the point maps to/from it."""
        A = -self.c4 / 48
        B = -self.c6 / 864
        b2, a1, a3 = self.b2, self.a1, self.a3

        def fwd(P: ECPoint) -> ECPoint:
            if P.is_infinity:
                return P
            return ECPoint(P.x + b2 / 12, P.y + (a1 * P.x + a3) / 2)

        def bwd(P: ECPoint) -> ECPoint:
            if P.is_infinity:
                return P
            x = P.x - b2 / 12
            return ECPoint(x, P.y - (a1 * x + a3) / 2)

        return ECurve.short(A, B), fwd, bwd

    def two_torsion_x(self) -> list[Fraction]:
        """Rational x-coordinates of 2-torsion (rational roots of the 2-division poly)."""
        # roots of 4x^3 + b2 x^2 + 2 b4 x + b6
        return _rational_cubic_roots(Fraction(4), self.b2, 2 * self.b4, self.b6)

    def __eq__(self, other):
        if not isinstance(other, ECurve):
            return NotImplemented
        return (self.a1, self.a2, self.a3, self.a4, self.a6) == \
            (other.a1, other.a2, other.a3, other.a4, other.a6)

    def __repr__(self):
        return (f"ECurve(a1={self.a1}, a2={self.a2}, a3={self.a3}, "
                f"a4={self.a4}, a6={self.a6})")

    def to_json(self):
        return {k: format_rational(getattr(self, k)) for k in ("a1", "a2", "a3", "a4", "a6")}


def _rational_cubic_roots(c3, c2, c1, c0) -> list[Fraction]:
    """All rational roots of c3 x^3 + c2 x^2 + c1 x + c0 (c3 != 0)."""
    den = math.lcm(*[c.denominator for c in (c3, c2, c1, c0)])
    a3, a2, a1, a0 = (int(c * den) for c in (c3, c2, c1, c0))
    roots = []
    poly = [a0, a1, a2, a3]

    def value(x: Fraction) -> Fraction:
        out = Fraction(0)
        for c in reversed(poly):
            out = out * x + c
        return out

    if a0 == 0:
        roots.append(Fraction(0))
        a0, a1, a2 = a1, a2, a3
        # now quadratic a2 x^2 + a1 x + a0
        disc = a1 * a1 - 4 * a2 * a0
        r = is_rational_square(Fraction(disc))
        if r is not None:
            roots.extend({Fraction(-a1 + r.numerator, 2 * a2) if r.denominator == 1 else (-a1 + r) / (2 * a2),
                          (-a1 - r) / (2 * a2)})
        return sorted(set(roots))

    for p in _divisors(abs(a0)):
        for q in _divisors(abs(a3)):
            if math.gcd(p, q) != 1:
                continue
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if value(cand) == 0:
                    roots.append(cand)
    return sorted(set(roots))


def _divisors(n: int) -> list[int]:
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i != n // i:
                out.append(n // i)
        i += 1
    return sorted(out)


def curve_isomorphism(E1: ECurve, E2: ECurve):
    """The Q-isomorphism E1 -> E2 as a point map, or None if none exists.

    Matches short Weierstrass forms: A2 = u^4 A1, B2 = u^6 B1 for a rational
    scaling u.  Quadratic twists (u^2 rational, u not) are rejected.
    """
    S1, f1, _ = E1.short_model()
    S2, _, g2 = E2.short_model()
    A1, B1 = S1.a4, S1.a6
    A2, B2 = S2.a4, S2.a6
    if (A1 == 0) != (A2 == 0) or (B1 == 0) != (B2 == 0):
        return None
    if A1 != 0 and B1 != 0:
        u2 = (A1 * B2) / (A2 * B1)
        if u2 ** 2 != A2 / A1 or u2 ** 3 != B2 / B1:
            return None
    elif A1 != 0:  # j = 1728: need u^4 = A2/A1
        u4 = A2 / A1
        u2 = is_rational_square(u4)
        if u2 is None:
            return None
    else:  # j = 0: need u^6 = B2/B1
        u6 = B2 / B1
        u2 = _rational_cbrt(u6)
        if u2 is None or u2 < 0:
            return None
    u = is_rational_square(u2)
    if u is None:
        return None
    u3 = u2 * u

    def phi(P: ECPoint) -> ECPoint:
        if P.is_infinity:
            return P
        Ps = f1(P)
        return g2(ECPoint(u2 * Ps.x, u3 * Ps.y))

    return phi


def _rational_cbrt(r: Fraction) -> Fraction | None:
    def icbrt(n: int) -> int | None:
        if n < 0:
            c = icbrt(-n)
            return None if c is None else -c
        c = round(n ** (1 / 3)) if n else 0
        for k in (c - 1, c, c + 1):
            if k >= 0 and k ** 3 == n:
                return k
        return None

    n = icbrt(r.numerator)
    d = icbrt(r.denominator)
    if n is None or d is None:
        return None
    return Fraction(n, d)


# ---------------------------------------------------------------------------
# quartic models
# ---------------------------------------------------------------------------

AT_INFINITY = "infinity"


class QuarticCurve:
    """V^2 = c4 q^4 + c3 q^3 + c2 q^2 + c1 q + c0 with a marked rational point.

    The marked point is (q0, v0), or AT_INFINITY (requires c4 to be a rational
    square; the branch with V/q^2 -> +sqrt(c4) is marked).  The quartic must
    be squarefree.
    """

    def __init__(self, coeffs, point):
        cs = tuple(Fraction(c) for c in coeffs)
        if len(cs) != 5 or cs[4] == 0:
            raise ValueError("need coefficients c0..c4 with c4 != 0")
        self.coeffs = cs
        if not self._squarefree():
            raise SingularQuartic("quartic has a repeated root")
        if point == AT_INFINITY:
            if is_rational_square(cs[4]) is None:
                raise ValueError("point at infinity needs square leading coefficient")
            self.point = AT_INFINITY
        else:
            q0, v0 = (Fraction(point[0]), Fraction(point[1]))
            if v0 * v0 != self.value(q0):
                raise OffCurve(f"({q0},{v0}) not on the quartic")
            self.point = (q0, v0)

    def value(self, q) -> Fraction:
        q = Fraction(q)
        out = Fraction(0)
        for c in reversed(self.coeffs):
            out = out * q + c
        return out

    def contains(self, q, v) -> bool:
        return Fraction(v) ** 2 == self.value(q)

    def _squarefree(self) -> bool:
        # gcd(f, f') constant <=> squarefree
        from .symbolic import UniPoly, poly_gcd
        f = UniPoly("q", self.coeffs)
        return poly_gcd(f, f.derivative()).degree() == 0

    def rational_points(self, limit: int = 40):
        """Sweep small-height q and keep perfect-square values (search helper)."""
        out = []
        for den in range(1, limit + 1):
            for num in range(-limit * den, limit * den + 1):
                if math.gcd(abs(num), den) != 1:
                    continue
                q = Fraction(num, den)
                v = is_rational_square(self.value(q))
                if v is not None:
                    out.append((q, v))
                    if len(out) >= limit:
                        return out
        return out

    def __repr__(self):
        return f"QuarticCurve({[str(c) for c in self.coeffs]}, point={self.point})"


class CubicModel:
    """Result of quartic_to_cubic: a Weierstrass model plus both point maps.

    After normalization the marked point sits at local coordinate q = 0
    (translation for a finite marked point; coefficient reversal when the
    marked point is at infinity).  Global/local conversion is handled here so
    callers only ever see coordinates of the original quartic.
    """

    def __init__(self, quartic: QuarticCurve, curve: ECurve, local_coeffs,
                 shift: Fraction, reversed_: bool, v0: Fraction, kind: str):
        self.quartic = quartic
        self.curve = curve
        self._lc = tuple(local_coeffs)
        self._shift = shift
        self._reversed = reversed_
        self._v0 = v0
        self._kind = kind

    # -- local-coordinate core (marked point at u = 0) --

    def _fwd_local(self, u: Fraction, w: Fraction) -> ECPoint:
        c = self._lc
        if self._kind == "connell":
            q0 = self._v0
            if u == 0:
                if w == q0:
                    return O
                # the second point over u=0 lands on 2-torsion
                x = c[1] ** 2 / (4 * q0 * q0) - c[2]
                return ECPoint(x, -(self.curve.a1 * x + self.curve.a3) / 2)
            x = (2 * q0 * (w + q0) + c[1] * u) / (u * u)
            y = (4 * q0 * q0 * (w + q0) + 2 * q0 * (c[1] * u + c[2] * u * u)
                 - c[1] ** 2 * u * u / (2 * q0)) / u ** 3
            return self.curve.require(ECPoint(x, y))
        if u == 0:
            return O  # ramification point (0, 0) is the marked point
        return self.curve.require(ECPoint(c[1] / u, c[1] * w / (u * u)))

    def _fwd_local_infinity(self, branch: int) -> ECPoint:
        """Image of a local point at infinity (w/u^2 -> branch * sqrt(c4)).

        Expanding the maps in 1/u shows x -> 2*v0*sqrt(c4)*branch and y -> 0
        in the marked-value case, and (0, branch*c1*sqrt(c4)) in the v0 = 0
        case.
        """
        c = self._lc
        e = is_rational_square(c[4])
        if e is None:
            raise PullbackUndefined("local infinity is not rational")
        sign = 1 if branch > 0 else -1
        if self._kind == "connell":
            q0 = self._v0
            return self.curve.require(ECPoint(2 * q0 * e * sign, 0))
        return self.curve.require(ECPoint(Fraction(0), sign * c[1] * e))

    def _bwd_local(self, P: ECPoint):
        c = self._lc
        if self._kind == "connell":
            q0 = self._v0
            if P.y == 0:
                raise PullbackUndefined("2-torsion point")
            u = (4 * q0 * q0 * (P.x + c[2]) - c[1] ** 2) / (2 * q0 * P.y)
            if u == 0:
                return Fraction(0), -q0
            w = (P.x * u * u - c[1] * u) / (2 * q0) - q0
            return u, w
        if P.x == 0:
            raise PullbackUndefined("x = 0 has no affine preimage")
        u = c[1] / P.x
        w = P.y * u * u / c[1]
        return u, w

    # -- global wrappers --

    def forward(self, q, v) -> ECPoint:
        """Image on the cubic model of a finite quartic point (q, v)."""
        q, v = Fraction(q), Fraction(v)
        if not self.quartic.contains(q, v):
            raise OffCurve(f"({q},{v}) not on the quartic")
        if self._reversed:
            if q == 0:
                # corresponds to a local point at infinity
                e = is_rational_square(self._lc[4])
                return self._fwd_local_infinity(1 if v == e else -1)
            return self._fwd_local(1 / q, v / (q * q))
        return self._fwd_local(q - self._shift, v)

    def forward_infinity(self, branch: int = 1) -> ECPoint:
        """Image of a global point at infinity (V/q^2 -> branch * sqrt(c4))."""
        if self._reversed:
            # global infinity is the local pair over u = 0
            e = is_rational_square(self.quartic.coeffs[4])
            w = e if branch > 0 else -e
            return self._fwd_local(Fraction(0), w)
        if is_rational_square(self.quartic.coeffs[4]) is None:
            raise PullbackUndefined("quartic has no rational points at infinity")
        return self._fwd_local_infinity(branch)

    def backward(self, P: ECPoint):
        """Preimage (q, v) on the original quartic of a cubic-model point.

        Raises PullbackUndefined where the birational inverse has no finite
        rational value (O over a marked infinity, 2-torsion, blown-up points).
        """
        if P.is_infinity:
            if self.quartic.point == AT_INFINITY:
                raise PullbackUndefined("O corresponds to the marked point at infinity")
            return self.quartic.point
        self.curve.require(P)
        u, w = self._bwd_local(P)
        if self._reversed:
            if u == 0:
                raise PullbackUndefined("preimage is a point at infinity")
            q, v = 1 / u, w / (u * u)
        else:
            q, v = u + self._shift, w
        if not self.quartic.contains(q, v):
            # only the finitely many blown-up points land here
            raise PullbackUndefined("no finite rational preimage")
        return q, v


def _curve_y_at(E: ECurve, x: Fraction) -> list[Fraction]:
    """The rational y values with (x, y) on E."""
    b = E.a1 * x + E.a3
    cc = -(x ** 3 + E.a2 * x * x + E.a4 * x + E.a6)
    disc = b * b - 4 * cc
    r = is_rational_square(disc)
    if r is None:
        return []
    return sorted({(-b + r) / 2, (-b - r) / 2})


def quartic_to_cubic(C: QuarticCurve) -> CubicModel:
    """Weierstrass model of V^2 = quartic with explicit forward/backward maps.

    The marked point is moved to q = 0 (translation, or coefficient reversal
    for a point at infinity).  With marked value v0 != 0 the classical maps

        x = (2 v0 (V + v0) + c1 q) / q^2
        y = (4 v0^2 (V + v0) + 2 v0 (c1 q + c2 q^2) - c1^2 q^2 / (2 v0)) / q^3

    land on  y^2 + (c1/v0) x y + 2 c3 v0 y
               = x^3 + (c2 - c1^2/(4 v0^2)) x^2 - 4 c4 v0^2 x + c4 (c1^2 - 4 c2 v0^2);
    with v0 = 0 the reciprocal substitution gives
    y^2 = x^3 + c2 x^2 + c1 c3 x + c1^2 c4 via (q, v) -> (c1/q, c1 v/q^2).
    """
    cs = list(C.coeffs)
    shift = Fraction(0)
    reversed_ = False
    if C.point == AT_INFINITY:
        cs = cs[::-1]
        v0 = is_rational_square(C.coeffs[4])
        reversed_ = True
        if cs[4] == 0:
            raise SingularQuartic("degree drops under reversal")
    else:
        q0, v0 = C.point
        if q0 != 0:
            shift = q0
            cs = _translate_quartic(cs, q0)
    assert cs[0] == v0 * v0
    c1, c2, c3, c4 = cs[1], cs[2], cs[3], cs[4]
    if v0 != 0:
        E = ECurve(c1 / v0, c2 - c1 ** 2 / (4 * v0 * v0), 2 * c3 * v0,
                   -4 * c4 * v0 * v0, c4 * (c1 * c1 - 4 * c2 * v0 * v0))
        kind = "connell"
    else:
        if c1 == 0:
            raise SingularQuartic("double root at the marked point")
        E = ECurve(0, c2, 0, c1 * c3, c1 * c1 * c4)
        kind = "reciprocal"
    return CubicModel(C, E, cs, shift, reversed_, v0, kind)


def _translate_quartic(cs, q0):
    out = [Fraction(0)] * 5
    for i in range(5):
        for k in range(i + 1):
            out[k] += cs[i] * math.comb(i, k) * q0 ** (i - k)
    return out
