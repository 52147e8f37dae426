"""Points at rational distance to six unit-cube vertices on the plane x = 1/2,
the elliptic generation of further such points, the integer surface governing
the x = y two-point configuration, and the known sporadic points.
"""

from __future__ import annotations

import math
from fractions import Fraction

from ..exactmath import is_rational_square
from ..geometry import Point3, VertexSet, distance_report
from ..elliptic import (AT_INFINITY, ECPoint, ECurve, O, PullbackUndefined,
                        QuarticCurve, curve_isomorphism, quartic_to_cubic)
from ..symbolic import EvaluationAtPole, RatFunc, UniPoly, poly_sqrt
from .base import ParamFamily

CUBE_SIX = VertexSet.cube_six()

# numerator coefficient lists (degree 48, constant term first); the y
# numerator is stored oracle-corrected: the sign of the whole y displayed in
# the source fails the second distance condition, its negative passes.
_Y_NUM = [
    1, 8, 20, -8, -24, 1528, 6684, 4872, -69302, -96040, 771532, 2467368,
    -4047800, -22047704, 12635044, 107433944, -23948593, -342788016,
    24622088, 780080048, -638000, -1324015696, -37969832, 1716035152,
    57538508, -1716035152, -37969832, 1324015696, -638000, -780080048,
    24622088, 342788016, -23948593, -107433944, 12635044, 22047704,
    -4047800, -2467368, 771532, 96040, -69302, -4872, 6684, -1528, -24, 8,
    20, -8, 1,
]
_Z_NUM = [
    3, 16, 56, 32, 1096, 5696, 15928, -11472, 51710, 551056, 1282392,
    -3181248, -11188440, 701152, 39387992, 55013168, -75669523, -272885472,
    75471984, 744371648, 210064, -1377115648, -116092816, 1850031968,
    173321252, -1850031968, -116092816, 1377115648, 210064, -744371648,
    75471984, 272885472, -75669523, -55013168, 39387992, -701152,
    -11188440, 3181248, 1282392, -551056, 51710, 11472, 15928, -5696, 1096,
    -32, 56, -16, 3,
]


def _delta_poly() -> UniPoly:
    t = UniPoly.x("t")
    one = UniPoly.const("t", 1)
    f1 = UniPoly("t", [1, 4, 10, -12, -14, 12, 10, -4, 1][::-1])
    f2 = UniPoly("t", [1, 0, -4, 0, 168, 0, -492, 0, 718, 0, -492, 0, 168, 0,
                       -4, 0, 1][::-1])
    f3 = UniPoly("t", [1, 0, 4, -32, 232, 160, -756, -320, 1102, 320, -756,
                       -160, 232, 32, 4, 0, 1][::-1])
    return 4 * (t - one) * (t + one) * (t ** 2 + one) ** 2 * f1 * f2 * f3


_DELTA = _delta_poly()


def cube_six_symbolic() -> ParamFamily:
    """(1/2, y(t), z(t)) with all six distances to the cube_six vertices
    rational; y carries the oracle-corrected sign."""
    t = UniPoly.x("t")
    half = RatFunc(UniPoly.const("t", 1), UniPoly.const("t", 2))
    y = RatFunc(-1 * UniPoly("t", _Y_NUM[::-1]), 2 * t * _DELTA)
    z = RatFunc(UniPoly("t", _Z_NUM[::-1]), (t * t - 1) * _DELTA)
    return ParamFamily(
        name="cube_six",
        params=("t",),
        coords={"x": half, "y": y, "z": z},
        target=CUBE_SIX,
        excluded=("t in {0, 1, -1}", "zeros of the degree-46 denominator"),
    )


_FAMILY = None


def cube_six_family(t) -> Point3:
    """Evaluate the six-distance family at a rational parameter."""
    global _FAMILY
    if _FAMILY is None:
        _FAMILY = cube_six_symbolic()
    t = Fraction(t)
    if t in (0, 1, -1):
        raise EvaluationAtPole("t in {0, 1, -1} excluded")
    pt, _ = _FAMILY.evaluate(t)
    return pt


def cube_six_identities() -> dict:
    """The three squared-distance values admit square roots in Q(t).

    Built over the explicit common denominator to keep the arithmetic lean;
    the verdicts are exact.
    """
    t = UniPoly.x("t")
    one = UniPoly.const("t", 1)
    N1 = -1 * UniPoly("t", _Y_NUM[::-1])       # y = N1 / (2 t D)
    N2 = UniPoly("t", _Z_NUM[::-1])            # z = N2 / ((t^2-1) D)
    D = _DELTA
    common = 2 * t * (t * t - one) * D         # y = N1(t^2-1)/common, z = 2t N2/common
    ynum = N1 * (t * t - one)
    znum = 2 * t * N2
    c2 = common * common
    out = {}
    # 1/4 + y^2 + z^2
    d1 = c2 + 4 * ynum * ynum + 4 * znum * znum
    out["root1"] = _sqrt_over(d1, common)
    # 1/4 + (1-y)^2 + z^2
    d2 = c2 + 4 * (common - ynum) ** 2 + 4 * znum * znum
    out["root2"] = _sqrt_over(d2, common)
    # 1/4 + y^2 + (1-z)^2
    d3 = c2 + 4 * ynum * ynum + 4 * (common - znum) ** 2
    out["root3"] = _sqrt_over(d3, common)
    return out


def _sqrt_over(num: UniPoly, common: UniPoly) -> RatFunc | None:
    r = poly_sqrt(num)
    if r is None:
        return None
    return RatFunc(r, 2 * common)


# ---------------------------------------------------------------------------
# elliptic generation
# ---------------------------------------------------------------------------

def cube_six_quartic(t) -> QuarticCurve:
    """The genus-1 quartic in q for the plane-section parameter a = (t^2+1)/(2t),
    marked at its rational point at infinity (a^2 - 1 is a square there)."""
    t = Fraction(t)
    if t in (0, 1, -1):
        raise EvaluationAtPole("t in {0, 1, -1} excluded")
    a = (t * t + 1) / (2 * t)
    a2 = a * a
    coeffs = [
        a2 * (3 * a2 * a2 - 6 * a2 + 2),
        2 * a2 * (3 * a2 - 2),
        -((2 * a2 - 1) ** 2),
        -2 * (a2 - 1),
        a2 - 1,
    ]
    return QuarticCurve(coeffs, AT_INFINITY)


def cube_six_cubic(t):
    """The published short Weierstrass model and its infinite-order point."""
    t = Fraction(t)
    A = -108 * (13 * t ** 16 - 20 * t ** 12 + 78 * t ** 8 - 20 * t ** 4 + 13)
    B = 864 * (23 * t ** 24 - 132 * t ** 20 + 129 * t ** 16 - 296 * t ** 12
               + 129 * t ** 8 - 132 * t ** 4 + 23)
    E = ECurve.short(A, B)
    Z = ECPoint(12 * (2 * t ** 8 + 3 * t ** 6 - 2 * t ** 4 + 3 * t ** 2 + 2),
                108 * t * (t * t + 1) * (t ** 8 - 1))
    return E, E.require(Z)


def cube_six_point_identity() -> bool:
    """The published point satisfies the published model identically in t."""
    t = UniPoly.x("t")
    A = -108 * (13 * t ** 16 - 20 * t ** 12 + 78 * t ** 8 - 20 * t ** 4 + 13)
    B = 864 * (23 * t ** 24 - 132 * t ** 20 + 129 * t ** 16 - 296 * t ** 12
               + 129 * t ** 8 - 132 * t ** 4 + 23)
    X = 12 * (2 * t ** 8 + 3 * t ** 6 - 2 * t ** 4 + 3 * t ** 2 + 2)
    Y = 108 * t * (t * t + 1) * (t ** 8 - 1)
    return Y * Y == X ** 3 + A * X + B


def point_from_quartic(t, qv, W) -> Point3:
    """Recover the plane point (1/2, y, z) from a quartic point (q, W)."""
    t, qv, W = Fraction(t), Fraction(qv), Fraction(W)
    a = (t * t + 1) / (2 * t)
    a2 = a * a
    coef = (qv ** 4 - 2 * (a2 + 1) * qv * qv + 3 * a2 * a2 + 2) / 2
    if coef == 0:
        raise ZeroDivisionError("branch point: p undefined")
    p = (W - (qv ** 3 - qv * qv - (a2 + 1) * qv + 2)) / coef
    P = p + 1
    Q = p * qv + 1
    T = a * p
    if T == 0:
        raise ZeroDivisionError("T = 0: projective point at infinity")
    y = ((P * P - Q * Q) / (T * T) + 1) / 2
    z = ((P * P - 1) / (T * T) + 1) / 2
    return Point3(Fraction(1, 2), y, z)


def cube_six_generate(t, n: int):
    """Oracle-valid six-distance points from multiples of the published point.

    m = 1 reproduces the marked point at infinity (no affine contribution);
    m = 2 recovers the closed-form family; higher multiples give new points.
    Returns a list of (m, Point3 | None).
    """
    t = Fraction(t)
    model = quartic_to_cubic(cube_six_quartic(t))
    E, Zpt = cube_six_cubic(t)
    phi = curve_isomorphism(E, model.curve)
    if phi is None:
        raise RuntimeError("published model not isomorphic to the quartic model")
    base = phi(Zpt)
    for m in range(1, 13):
        if model.curve.mul(m, base).is_infinity:
            raise RuntimeError("transported point is torsion")
    out = []
    for m in range(1, n + 1):
        P = model.curve.mul(m, base)
        try:
            qv, W = model.backward(P)
            pt = point_from_quartic(t, qv, W)
        except (PullbackUndefined, ZeroDivisionError):
            out.append((m, None))
            continue
        if not distance_report(pt, CUBE_SIX).all_rational:
            raise AssertionError(f"generated point fails the oracle at m={m}")
        out.append((m, pt))
    return out


# ---------------------------------------------------------------------------
# the x = y surface and known sporadic points
# ---------------------------------------------------------------------------

def cube_surface_residual(m, t, U) -> Fraction:
    """2(t^2-8m^2)(-t^2+2(1-m^2)^2) - (t^2 + (1+m^2)^2 - U^2)^2 (zero on the surface)."""
    m, t, U = Fraction(m), Fraction(t), Fraction(U)
    return (2 * (t * t - 8 * m * m) * (-t * t + 2 * (1 - m * m) ** 2)
            - (t * t + (1 + m * m) ** 2 - U * U) ** 2)


def cube_point_from_surface(m, t, U):
    """The diagonal-plane point (x, x, z) encoded by a surface point (m, t, U).

    x = 1/2 - 2m(1-m^2)/t^2 and z = (1 + ((1+m^2)^2 - U^2)/t^2)/2; six of the
    distances to the cube vertices are rational when (m, t, U) is integral on
    the surface.
    """
    m, t, U = Fraction(m), Fraction(t), Fraction(U)
    if t == 0:
        raise ZeroDivisionError("t = 0")
    if cube_surface_residual(m, t, U) != 0:
        raise ValueError("(m, t, U) is not on the surface")
    x = Fraction(1, 2) - 2 * m * (1 - m * m) / (t * t)
    z = (1 + ((1 + m * m) ** 2 - U * U) / (t * t)) / 2
    return Point3(x, x, z)


def cube_known_points() -> list[dict]:
    """The known sporadic points with six or five rational cube distances."""
    out = []
    six = VertexSet.cube_subset([(1, 0, 1), (0, 1, 1)])
    for x in (Fraction(31, 108), Fraction(77, 108)):
        pt = Point3(x, x, Fraction(1519, 1080))
        out.append({"point": pt, "kind": "six_distances",
                    "report": distance_report(pt, six)})
    five = VertexSet.cube_subset([(0, 0, 1)])
    for coords in ((Fraction(77, 108), Fraction(41, 27), Fraction(-28, 27)),
                   (Fraction(83, 125), Fraction(-49, 500), Fraction(-14, 75))):
        pt = Point3(*coords)
        out.append({"point": pt, "kind": "five_distances",
                    "report": distance_report(pt, five)})
    return out
