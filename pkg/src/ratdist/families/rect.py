"""Rational-distance families for rectangles: the critical quartic, its conic
degeneration and parametrization, the derived two-parameter solution family,
the Q(sqrt 2) unit-square family, interior points via Pythagorean pairs, and
elliptic generation of interior solutions.
"""

from __future__ import annotations

from fractions import Fraction

from ..exactmath import QuadElem, Rational
from ..geometry import Point3, VertexSet, distance_report, point2
from ..elliptic import (ECPoint, ECurve, O, PullbackUndefined, QuarticCurve,
                        curve_isomorphism, quartic_to_cubic)
from ..symbolic import (MultiPoly, RatFunc, mp_ratfunc, parse_poly, poly_sqrt,
                        subst)
from .base import ParamFamily

_FVARS = ("X", "Y", "Z", "A", "T")


def _build_F() -> MultiPoly:
    """The quartic form cut out by the rectangle distance system, after the
    slope-T parametrization of the difference equation; width enters as A."""
    X, Y, Z, A, T = (MultiPoly.var(_FVARS, v) for v in _FVARS)
    one = MultiPoly.const(_FVARS, 1)
    c1 = (one - 4 * T ** 2 + 6 * T ** 4 + 16 * A ** 2 * T ** 4 - 4 * T ** 6 + T ** 8)
    c2 = 4 * (T ** 2 - one) ** 3 * (T ** 2 + one)
    c3 = -8 * A ** 2 * T ** 2 * (one + T ** 2) ** 2
    c5 = 2 * (3 * one - 4 * T ** 2 + 2 * T ** 4 - 16 * A ** 2 * T ** 4 - 4 * T ** 6 + 3 * T ** 8)
    F = (c1 * (X ** 4 + Y ** 4)
         + c2 * (X ** 2 + Y ** 2) * X * Y
         + c3 * (X ** 2 + Y ** 2) * Z ** 2
         + 16 * A ** 2 * T ** 2 * Z ** 2 * ((one - T ** 4) * X * Y + (one + A ** 2) * T ** 2 * Z ** 2)
         + c5 * X ** 2 * Y ** 2)
    return F


_F_GENERIC = _build_F()


def build_rect_quartic(a, t) -> MultiPoly:
    """The quartic form F(X, Y, Z) for rectangle width a and slope t (t != 0)."""
    a, t = Fraction(a), Fraction(t)
    if t == 0:
        raise ZeroDivisionError("slope parameter t must be nonzero")
    out = subst(_F_GENERIC, {"A": a, "T": t}, ("X", "Y", "Z"))
    assert out.is_poly()
    return out.num * (1 / out.den.const_value())


def rect_quartic_critical() -> MultiPoly:
    """F with the width specialized to a = (1 - t^2)/(2t): a polynomial in
    (X, Y, Z, t), which factors as the square of the conic form."""
    vars4 = ("X", "Y", "Z", "t")
    tnum = parse_poly("1 - t^2", vars4)
    tden = parse_poly("2*t", vars4)
    out = subst(_F_GENERIC, {"A": RatFunc(tnum, tden),
                             "T": MultiPoly.var(vars4, "t")}, vars4)
    assert out.is_poly()
    return out.num * (1 / out.den.const_value())


def rect_conic() -> MultiPoly:
    """The conic form G(X, Y, Z; t) with F = G^2 at the critical width."""
    return _conic(("X", "Y", "Z", "t"))


def _conic(vars4) -> MultiPoly:
    X, Y, Z = (MultiPoly.var(vars4, v) for v in ("X", "Y", "Z"))
    t = MultiPoly.var(vars4, "t")
    one = MultiPoly.const(vars4, 1)
    return (t ** 2 - one) * ((t ** 2 + one) * X ** 2 + 2 * (t ** 2 - one) * X * Y
                             + (t ** 2 + one) * Y ** 2 - (t ** 2 + one) * Z ** 2)


# parametrization of the conic through its rational point (0, 1, 1);
# written generically so it also evaluates over Q(sqrt 2)
def param_X(t, u, v):
    return 2 * u * ((1 - t * t) * u + (t * t + 1) * v)


def param_Y(t, u, v):
    return (t * t + 1) * (u * u - v * v)


def param_Z(t, u, v):
    return (t * t + 1) * (u * u + v * v) - 2 * (t * t - 1) * u * v


def roots_PQRS(t, u, v):
    """The four distance values of the derived family, in vertex order."""
    X, Y, Z = param_X(t, u, v), param_Y(t, u, v), param_Z(t, u, v)
    P = X / Z
    Q = Y / Z
    R = ((P + Q) * t * t + P - Q) / (2 * t)
    S = ((P + Q) * t * t - P + Q) / (2 * t)
    return P, Q, R, S


def family_xy(t, u, v):
    """Solution coordinates for width a = (1 - t^2)/(2t), over any field."""
    a = (1 - t * t) / (2 * t)
    P, Q, R, S = roots_PQRS(t, u, v)
    x = (a * a + P * P - R * R) / (2 * a)
    y = (P * P - Q * Q + 1) / 2
    return a, x, y


def rect_family(t, u, v):
    """Evaluate the two-parameter rectangle family: (width a, planar point)."""
    t, u, v = Fraction(t), Fraction(u), Fraction(v)
    if t in (0, 1, -1):
        raise ZeroDivisionError("t in {0, 1, -1} is excluded")
    Z = param_Z(t, u, v)
    if Z == 0:
        from ..symbolic import EvaluationAtPole
        raise EvaluationAtPole(f"parametrization denominator vanishes at u={u}, v={v}")
    a, x, y = family_xy(t, u, v)
    return a, point2(x, y)


def rect_family_symbolic() -> ParamFamily:
    """The family as exact rational functions in (t, u, v)."""
    vars3 = ("t", "u", "v")
    t = mp_ratfunc(MultiPoly.var(vars3, "t"))
    u = mp_ratfunc(MultiPoly.var(vars3, "u"))
    v = mp_ratfunc(MultiPoly.var(vars3, "v"))
    a, x, y = family_xy(t, u, v)
    return ParamFamily(
        name="rect_two_param",
        params=vars3,
        coords={"x": x, "y": y},
        target=("rectangle", a),
        excluded=("t in {0, 1, -1}",
                  "(t^2+1)u^2 - 2(t^2-1)uv + (t^2+1)v^2 = 0"),
    )


def printed_family_xy():
    """The closed-form x, y as printed, for cross-checking the derivation."""
    vars3 = ("t", "u", "v")
    den = parse_poly("t^2*u^2 + u^2 - 2*t^2*u*v + 2*u*v + t^2*v^2 + v^2", vars3)
    xnum = parse_poly("4*t*u", vars3) * parse_poly("v^2 - u^2", vars3) * \
        parse_poly("t^2*u - u - t^2*v - v", vars3)
    ynum = 2 * MultiPoly.var(vars3, "u") * \
        parse_poly("t*u - u - t*v - v", vars3) * \
        parse_poly("t*u + u - t*v + v", vars3) * \
        parse_poly("t^2*u - u - t^2*v - v", vars3)
    return RatFunc(xnum, den ** 2), RatFunc(ynum, den ** 2)


def negativity_identity_holds() -> bool:
    """x(a-x)y(1-y) equals minus an explicit square, identically in (t,u,v)."""
    vars3 = ("t", "u", "v")
    t = mp_ratfunc(MultiPoly.var(vars3, "t"))
    u = mp_ratfunc(MultiPoly.var(vars3, "u"))
    v = mp_ratfunc(MultiPoly.var(vars3, "v"))
    a, x, y = family_xy(t, u, v)
    lhs = x * (a - x) * y * (1 - y)
    one = mp_ratfunc(MultiPoly.const(vars3, 1))
    inner = (((one - t ** 2) * u + (one + t ** 2) * v)
             * ((one + 2 * t - t ** 2) * u + (one + t ** 2) * v)
             * ((one - 2 * t - t ** 2) * u + (one + t ** 2) * v))
    den = ((one + t ** 2) * u ** 2 + 2 * (one - t ** 2) * u * v + (one + t ** 2) * v ** 2) ** 4
    sq = (u * (u ** 2 - v ** 2)
          * ((one - t) * u + (one + t) * v) * ((one + t) * u + (one - t) * v)
          * inner / den)
    return lhs == -4 * sq ** 2


# ---------------------------------------------------------------------------
# the unit square over Q(sqrt 2)
# ---------------------------------------------------------------------------

def rect_sqrt2_family(u):
    """Unit-square solution over Q(sqrt 2) at parameter u.

    Uses the conic parametrization at t = 1 + sqrt(2), v = 1 (where the
    critical width degenerates to +-1) and mirrors onto the unit square.
    Returns a dict with the point coordinates and the four distance values,
    all QuadElem over sqrt(2); the identities x^2+y^2 = P^2 etc. are exact.
    """
    if not isinstance(u, QuadElem):
        u = QuadElem.of(Fraction(u), 2)
    if u.d != 2:
        raise ValueError("parameter must lie in Q(sqrt 2)")
    t = QuadElem(1, 1, 2)  # 1 + sqrt 2
    one = QuadElem.of(1, 2)
    # exclusion: sqrt2*u^2 - 2u + sqrt2 != 0, i.e. u^2 - sqrt2 u + 1 != 0
    excl = u * u - QuadElem(0, 1, 2) * u + one
    if excl.is_zero():
        raise ZeroDivisionError("excluded parameter: sqrt2*u^2 - 2u + sqrt2 = 0")
    P, Q, R, S = roots_PQRS(t, u, one)
    a, x, y = family_xy(t, u, one)
    assert a == QuadElem.of(-1, 2)
    xs = -x  # mirror the width -1 solution onto the unit square
    return {
        "x": xs, "y": y,
        "P": abs(P), "Q": abs(Q), "R": abs(R), "S": abs(S),
        "identities": (
            xs * xs + y * y == P * P,
            xs * xs + (one - y) * (one - y) == Q * Q,
            (one - xs) * (one - xs) + y * y == R * R,
            (one - xs) * (one - xs) + (one - y) * (one - y) == S * S,
        ),
    }


# ---------------------------------------------------------------------------
# interior solutions via Pythagorean pairs
# ---------------------------------------------------------------------------

def shute_yocom_point(U, V):
    """Interior-rectangle candidate from two Pythagorean parameters.

    Width a = A/B with A = 2(U+V)(1-UV), B = (1+U-(1-U)V)(1-U+(1+U)V); the
    point is (p1 q2 / B, q1 q2 / B).  The interior flag evaluates the four
    printed sign conditions.
    """
    U, V = Fraction(U), Fraction(V)
    A = 2 * (U + V) * (1 - U * V)
    B = (1 + U - (1 - U) * V) * (1 - U + (1 + U) * V)
    if B == 0:
        raise ZeroDivisionError("denominator form B(U, V) vanishes")
    p1, q1 = 1 - U * U, 2 * U
    p2, q2 = 1 - V * V, 2 * V
    point = point2(p1 * q2 / B, q1 * q2 / B)
    conds = (V * (1 - U * U) / B, U * (1 - V * V) / B,
             U * V / B, (1 - U * U) * (1 - V * V) / B)
    interior = all(c > 0 for c in conds)
    return A / B, point, interior


def interior_quartic(t) -> QuarticCurve:
    """The hyperelliptic quartic W^2 = ((t^2-1)U^2-4tU+1-t^2)^2 + 4(tU^2-(t^2-1)U-t)^2
    carrying the Pythagorean-parameter curve, with marked point (0, t^2+1)."""
    t = Fraction(t)
    a2, a1, a0 = t * t - 1, -4 * t, 1 - t * t
    b2, b1, b0 = t, -(t * t - 1), -t
    c = [Fraction(0)] * 5
    for (f2, f1, f0), s in (((a2, a1, a0), 1), ((b2, b1, b0), 4)):
        c[4] += s * f2 * f2
        c[3] += s * 2 * f2 * f1
        c[2] += s * (2 * f2 * f0 + f1 * f1)
        c[1] += s * 2 * f1 * f0
        c[0] += s * f0 * f0
    return QuarticCurve(c, (0, t * t + 1))


def interior_cubic(t) -> tuple[ECurve, ECPoint]:
    """The published cubic model Y^2 = X(X+(t^2-2t-1)^2)(X+(t^2+2t-1)^2) and
    its infinite-order point H = (-(1+t^2)^2, 4t(1-t^4))."""
    t = Fraction(t)
    e1 = (t * t - 2 * t - 1) ** 2
    e2 = (t * t + 2 * t - 1) ** 2
    E = ECurve(0, e1 + e2, 0, e1 * e2, 0)
    H = ECPoint(-(1 + t * t) ** 2, 4 * t * (1 - t ** 4))
    return E, E.require(H)


def pythagorean_pair_from_quartic(t, U, W):
    """Recover the second Pythagorean parameter from a quartic point."""
    t, U, W = Fraction(t), Fraction(U), Fraction(W)
    den = 2 * (t - U) * (1 + t * U)
    if den == 0:
        raise ZeroDivisionError("branch point: V is undefined")
    return (W - ((t - 1) * U - t - 1) * ((t + 1) * U + t - 1)) / den


def on_pythagorean_curve(t, U, V) -> bool:
    """Defining identity A(U,V) = a(t) B(U,V) with a(t) = 2t/(1-t^2)."""
    t, U, V = Fraction(t), Fraction(U), Fraction(V)
    A = 2 * (U + V) * (1 - U * V)
    B = (1 + U - (1 - U) * V) * (1 - U + (1 + U) * V)
    return A * (1 - t * t) == 2 * t * B


def interior_rect_generate(t, n: int):
    """Rational points (U, V) on the Pythagorean-parameter curve from
    multiples of the published point, pulled back through the quartic model.

    Walks +-m times the transported point for m <= n, including 2-torsion
    translates (these sweep all real components).  Every returned pair
    satisfies the defining curve identity exactly.
    """
    t = Fraction(t)
    if t in (0, 1, -1):
        from ..elliptic import SingularQuartic
        raise SingularQuartic("t in {0, 1, -1} degenerates the quartic")
    if n < 1:
        return []
    model = quartic_to_cubic(interior_quartic(t))
    Epr, H = interior_cubic(t)
    phi = curve_isomorphism(Epr, model.curve)
    if phi is None:
        raise RuntimeError("published cubic model is not isomorphic to ours")
    base = phi(H)
    for m in range(1, 13):
        if model.curve.mul(m, base).is_infinity:
            raise RuntimeError("transported point is torsion; cannot generate")
    torsion = [O] + [phi(ECPoint(xx, 0)) for xx in Epr.two_torsion_x()]
    seen = set()
    out = []
    for m in range(1, n + 1):
        for sgn in (1, -1):
            base_m = model.curve.mul(sgn * m, base)
            for T in torsion:
                P = model.curve.add(base_m, T)
                if P.is_infinity:
                    continue
                try:
                    U, W = model.backward(P)
                    V = pythagorean_pair_from_quartic(t, U, W)
                except (PullbackUndefined, ZeroDivisionError):
                    continue
                if (U, V) in seen:
                    continue
                seen.add((U, V))
                assert on_pythagorean_curve(t, U, V)
                out.append((U, V))
    return out


def rect_conic_identities() -> dict:
    """The symbolic identities of the critical degeneration, each checked exactly."""
    vars4 = ("X", "Y", "Z", "t")
    F = rect_quartic_critical()
    G = _conic(vars4)
    vars3 = ("t", "u", "v")
    t = mp_ratfunc(MultiPoly.var(vars3, "t"))
    u = mp_ratfunc(MultiPoly.var(vars3, "u"))
    v = mp_ratfunc(MultiPoly.var(vars3, "v"))
    Xp, Yp, Zp = param_X(t, u, v), param_Y(t, u, v), param_Z(t, u, v)
    G_on_param = subst(G, {"X": Xp, "Y": Yp, "Z": Zp,
                           "t": t}, vars3)
    a, x, y = family_xy(t, u, v)
    P, Q, R, S = roots_PQRS(t, u, v)
    one = mp_ratfunc(MultiPoly.const(vars3, 1))
    return {
        "F_equals_G_squared": F == G * G,
        "parametrization_on_conic": G_on_param.is_zero(),
        "dist1": x * x + y * y == P * P,
        "dist2": x * x + (one - y) ** 2 == Q * Q,
        "dist3": (a - x) ** 2 + y * y == R * R,
        "dist4": (a - x) ** 2 + (one - y) ** 2 == S * S,
    }
