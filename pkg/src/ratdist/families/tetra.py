"""Rational-distance points for tetrahedra: the quartic threefold, its forty
singular points, the double-point parametrization pipeline, collinear
configurations, and the family of tetrahedra with rational edges, face areas,
and volume.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from ..exactmath import is_rational_square
from ..geometry import (DegenerateTetrahedron, Point3, VertexSet,
                        cayley_menger_volume_sq, det3, distance_report,
                        heron_area_sq, squared_distance)
from ..symbolic import MultiPoly, RatFunc, mp_ratfunc, subst
from .base import ParamFamily, TangentConstructionTrace

_RVARS = ("R0", "R1", "R2", "R3", "R4")


def _vertex_matrix(tetra: VertexSet):
    if tetra.kind != "tetrahedron":
        raise DegenerateTetrahedron("expected a tetrahedron vertex set")
    p1, p2, p3 = tetra.vertices[1], tetra.vertices[2], tetra.vertices[3]
    rows = [[p1.x, p1.y, p1.z], [p2.x, p2.y, p2.z], [p3.x, p3.y, p3.z]]
    d = det3(p1, p2, p3)
    if d == 0:
        raise DegenerateTetrahedron("vertex matrix is singular")
    return rows, d


def _det3_rows(rows):
    (a, b, c), (d, e, f), (g, h, i) = rows
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def _cramer_columns(rows, rhs):
    """Solutions x_i * detA of the 3x3 system, with symbolic right-hand side."""
    out = []
    for i in range(3):
        m = [list(r) for r in rows]
        for r in range(3):
            m[r][i] = rhs[r]
        out.append(_det3_rows(m))
    return out


def coordinate_forms(tetra: VertexSet):
    """x, y, z as quadratic forms in (R0..R4) over detA.

    These are the Cramer solutions of the linear relations
    a_i1 x + a_i2 y + a_i3 z = (Q0^2 - Qi^2 + |P_i|^2)/2 after homogenizing
    Q_i = R_i / R4.  Returned as (numerator MultiPoly list, detA).
    """
    rows, detA = _vertex_matrix(tetra)
    R = [MultiPoly.var(_RVARS, v) for v in _RVARS]
    d0 = [squared_distance(tetra.vertices[0], tetra.vertices[i]) for i in (1, 2, 3)]
    rhs = [(R[0] ** 2 - R[i + 1] ** 2 + d0[i] * R[4] ** 2) * Fraction(1, 2)
           for i in range(3)]
    rows_mp = [[MultiPoly.const(_RVARS, c) for c in row] for row in rows]
    nums = _cramer_columns(rows_mp, rhs)
    return nums, detA


def quartic_threefold(tetra: VertexSet) -> MultiPoly:
    """The homogeneous quartic F(R0..R4) = N1^2 + N2^2 + N3^2 - detA^2 R0^2 R4^2
    whose rational points encode rational-distance points for the tetrahedron."""
    nums, detA = coordinate_forms(tetra)
    R = [MultiPoly.var(_RVARS, v) for v in _RVARS]
    F = nums[0] ** 2 + nums[1] ** 2 + nums[2] ** 2 - detA ** 2 * R[0] ** 2 * R[4] ** 2
    return F


def point_from_distances(tetra: VertexSet, Q):
    """Solve the linear system for (x, y, z) given distance values Q0..Q3."""
    rows, detA = _vertex_matrix(tetra)
    Q = [Fraction(c) for c in Q]
    d0 = [squared_distance(tetra.vertices[0], tetra.vertices[i]) for i in (1, 2, 3)]
    rhs = [(Q[0] ** 2 - Q[i + 1] ** 2 + d0[i]) / 2 for i in range(3)]
    xyz = [c / detA for c in _cramer_columns(rows, rhs)]
    return Point3(*xyz)


@dataclass
class SingularPointReport:
    """The forty isolated singular points of the quartic threefold."""

    dist_sq: dict
    roots: dict
    points: list | None   # literal projective 5-tuples when all roots rational
    all_annihilate: bool | None


def tetra_singular_points(tetra: VertexSet) -> SingularPointReport:
    """Singular locus of the quartic threefold for a generic tetrahedron.

    The points are (0,±d01,±d02,±d03,1), (±d01,0,±d12,±d13,1),
    (±d02,±d12,0,±d23,1), (±d03,±d13,±d23,0,1), (1,±1,±1,±1,0): the distance
    vectors of the four vertices themselves plus the infinity orbit.  Literal
    points require every pairwise distance to be rational; squared distances
    are always reported.
    """
    rows, detA = _vertex_matrix(tetra)
    verts = tetra.vertices
    d2 = {}
    for i, j in itertools.combinations(range(4), 2):
        d2[(i, j)] = squared_distance(verts[i], verts[j])
    if len(set(d2.values())) != 6 or any(v == 0 for v in d2.values()):
        raise DegenerateTetrahedron("need all six pairwise distances distinct and nonzero")
    roots = {k: is_rational_square(v) for k, v in d2.items()}
    if any(r is None for r in roots.values()):
        return SingularPointReport(d2, roots, None, None)
    d = roots
    patterns = [
        (0, d[(0, 1)], d[(0, 2)], d[(0, 3)], 1),
        (d[(0, 1)], 0, d[(1, 2)], d[(1, 3)], 1),
        (d[(0, 2)], d[(1, 2)], 0, d[(2, 3)], 1),
        (d[(0, 3)], d[(1, 3)], d[(2, 3)], 0, 1),
        (1, 1, 1, 1, 0),
    ]
    points = []
    for base in patterns:
        # projective normalization fixes the first nonzero coordinate's sign
        free = [i for i, c in enumerate(base[:4]) if c != 0][-3:]
        for signs in itertools.product((1, -1), repeat=len(free)):
            pt = list(base)
            for i, s in zip(free, signs):
                pt[i] = s * pt[i]
            points.append(tuple(pt))
    F = quartic_threefold(tetra)
    grads = [F.derivative(v) for v in _RVARS]
    ok = True
    for pt in points:
        vals = dict(zip(_RVARS, pt))
        if F.eval(vals) != 0 or any(g.eval(vals) != 0 for g in grads):
            ok = False
            break
    return SingularPointReport(d2, roots, points, ok)


def tetra_construct(tetra: VertexSet):
    """Three-parameter rational solution family through the double point
    (1,1,1,1,0) of the quartic threefold.

    Substituting R0 = T+1, Ri = (pi+1)T+1, R4 = p4 T turns F = 0 into
    T^2 (C2 + C3 T + C4 T^2) = 0 with C_i homogeneous of degree i in
    p1..p4.  The quadric C2 = 0 is parametrized by lines through its point
    (a11, a21, a31, 1); substituting the resulting quadratic forms X_i and
    solving C3' + C4' T = 0 for T gives the family.
    """
    rows, detA = _vertex_matrix(tetra)
    F = quartic_threefold(tetra)
    pvars = ("p1", "p2", "p3", "p4")
    tv = ("T",) + pvars
    T = MultiPoly.var(tv, "T")
    one = MultiPoly.const(tv, 1)
    p_ = [MultiPoly.var(tv, v) for v in pvars]
    sub = {"R0": T + one, "R4": p_[3] * T}
    for i in range(3):
        sub[f"R{i + 1}"] = (p_[i] + one) * T + one
    FT = subst(F, sub, tv)
    assert FT.is_poly()
    FT = FT.num * (1 / FT.den.const_value())
    coeffs = FT.as_unipoly_in("T")
    assert coeffs[0].is_zero() and coeffs[1].is_zero(), "double point expansion failed"
    C2 = coeffs[2].drop_var("T")
    C3 = coeffs[3].drop_var("T")
    C4 = coeffs[4].drop_var("T")

    # C2(0,0,0,p4) = -(detA)^2 p4^2
    probe = C2.subst({"p1": 0, "p2": 0, "p3": 0})
    expected = -(detA ** 2) * MultiPoly.var(pvars, "p4") ** 2
    assert probe == expected, "quadric normalization violated"

    # parametrize the quadric through Y1 = (a11, a21, a31, 1) by lines in the
    # directions (q1, q2, q3, 0)
    Y1 = [rows[0][0], rows[1][0], rows[2][0], Fraction(1)]
    assert C2.eval(dict(zip(pvars, Y1))) == 0, "base point not on the quadric"
    qvars = ("q1", "q2", "q3")
    sv = ("s",) + qvars
    s = MultiPoly.var(sv, "s")
    qdir = [MultiPoly.var(sv, v) for v in qvars] + [MultiPoly.zero(sv)]
    line = {p: MultiPoly.const(sv, Y1[i]) + s * qdir[i] for i, p in enumerate(pvars)}
    C2line = subst(C2, line, sv)
    assert C2line.is_poly()
    C2line = C2line.num * (1 / C2line.den.const_value())
    lin = C2line.as_unipoly_in("s")
    assert lin[0].is_zero()
    L = lin[1].drop_var("s")   # linear form in q
    Qf = lin[2].drop_var("s")  # quadratic form in q
    if Qf.is_zero():
        raise DegenerateTetrahedron("quadric parametrization degenerates")
    # s = -L/Q; X_i = Y1_i * Q - L * dir_i (homogeneous quadratics in q)
    qd = [MultiPoly.var(qvars, v) for v in qvars] + [MultiPoly.zero(qvars)]
    X = [MultiPoly.const(qvars, Y1[i]) * Qf - L * qd[i] for i in range(4)]

    C3p = subst(C3, dict(zip(pvars, X)), qvars)
    C4p = subst(C4, dict(zip(pvars, X)), qvars)
    assert C3p.is_poly() and C4p.is_poly()
    C3p = C3p.num * (1 / C3p.den.const_value())
    C4p = C4p.num * (1 / C4p.den.const_value())
    if C3p.is_zero() or C4p.is_zero():
        raise DegenerateTetrahedron("tangency coefficient vanishes identically")
    T_rf = RatFunc(-C3p, C4p)

    one_q = mp_ratfunc(MultiPoly.const(qvars, 1))
    X_rf = [mp_ratfunc(Xi) for Xi in X]
    inv_phi = one_q / T_rf
    Q0 = (one_q + inv_phi) / X_rf[3]
    Qs = [Q0] + [(one_q + X_rf[i] + inv_phi) / X_rf[3] for i in range(3)]

    # recover x, y, z by Cramer on the linear system
    d0 = [squared_distance(tetra.vertices[0], tetra.vertices[i]) for i in (1, 2, 3)]
    rhs = [(Qs[0] ** 2 - Qs[i + 1] ** 2 + d0[i]) * Fraction(1, 2) for i in range(3)]
    rows_rf = [[mp_ratfunc(MultiPoly.const(qvars, c)) for c in row] for row in rows]
    nums = _cramer_columns(rows_rf, rhs)
    coords = {name: nums[i] / detA for i, name in enumerate(("x", "y", "z"))}

    trace = TangentConstructionTrace({
        "C2": C2, "C3": C3, "C4": C4,
        "X": X, "C3p": C3p, "C4p": C4p, "T": T_rf,
        "Q": Qs, "detA": detA,
    })
    fam = ParamFamily(
        name="tetra_double_point",
        params=qvars,
        coords=coords,
        target=tetra,
        excluded=("zeros of C4'(q)", "zeros of X4(q)", "zeros of C3'(q)"),
    )
    return fam, trace


def tetra_family_specializations(tetra: VertexSet, count: int = 10,
                                 seed: int = 0, bound: int = 9):
    """Random oracle-verified specializations of the double-point family."""
    fam, trace = tetra_construct(tetra)
    rng = random.Random(seed)
    out = []
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 300 * count:
            raise RuntimeError("could not find enough non-degenerate specializations")
        vals = {p: Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
                for p in fam.params}
        try:
            rep = fam.oracle(**vals)
        except (ZeroDivisionError, ValueError):
            continue
        if rep.all_rational:
            out.append((vals, rep))
        else:
            raise AssertionError(f"family point fails the oracle at {vals}")
    return fam, out


# ---------------------------------------------------------------------------
# collinear configurations
# ---------------------------------------------------------------------------

def collinear_family(a, b, c, p, q, u):
    """Point at rational distances to four collinear points 0, P1, p P1, q P1.

    Needs |P1| = sqrt(a^2+b^2+c^2) rational.  Returns (point, (Q0..Q3)) with
    distance values |Q_i|.
    """
    a, b, c, p, q, u = (Fraction(v) for v in (a, b, c, p, q, u))
    d = is_rational_square(a * a + b * b + c * c)
    if d is None or d == 0:
        raise ValueError("direction length must be a nonzero rational")
    f = (d - 2 * u) / (2 * d)
    point = Point3(a * f, b * f, c * f)
    Q = ((d - 2 * u) / 2, (d + 2 * u) / 2,
         d * p - (d - 2 * u) / 2, d * q - (d - 2 * u) / 2)
    return point, Q


# ---------------------------------------------------------------------------
# tetrahedra with rational edges, faces, and volume
# ---------------------------------------------------------------------------

def heron_triangle(u, v, w):
    """Triangle sides ((v+w)(u^2-vw), v(u^2+w^2), w(u^2+v^2)): rational area."""
    u, v, w = Fraction(u), Fraction(v), Fraction(w)
    p = (v + w) * (u * u - v * w)
    q = v * (u * u + w * w)
    r = w * (u * u + v * v)
    if p <= 0 or q <= 0 or r <= 0:
        raise ValueError("parameters give a nonpositive side")
    assert is_rational_square(heron_area_sq(p, q, r)) is not None
    return p, q, r


def heron_triangle_square_identity() -> bool:
    """16 * area^2 of the parametrized triangle is a polynomial square in (u,v,w)."""
    vars3 = ("u", "v", "w")
    u, v, w = (MultiPoly.var(vars3, n) for n in vars3)
    p = (v + w) * (u ** 2 - v * w)
    q = v * (u ** 2 + w ** 2)
    r = w * (u ** 2 + v ** 2)
    prod = (p + q + r) * (-p + q + r) * (p - q + r) * (p + q - r)
    from ..symbolic import poly_sqrt
    return poly_sqrt(prod) is not None


def heron_tetra_vertices(m):
    """The published four vertices of the equal-opposite-edge tetrahedron."""
    m = Fraction(m)
    P1 = Point3(0, 0, 0)
    P2 = Point3(10 * (m ** 4 - 1) * (m ** 4 + 3 * m ** 2 + 1), 0, 0)
    P3 = Point3(
        Fraction(2, 5) * (m ** 2 - 1) * (m ** 2 + 4) * (3 * m ** 2 + 2) ** 2,
        Fraction(1, 5) * (m ** 2 + 4) * (2 * m ** 2 + 3) * (3 * m ** 2 + 2) * (4 * m ** 2 + 1),
        0)
    P4 = Point3(
        Fraction(2, 5) * (m ** 2 - 1) * (2 * m ** 2 + 3) ** 2 * (4 * m ** 2 + 1),
        -Fraction(1, 5) * (2 * m ** 2 + 3) * (2 * m ** 2 - 5 * m - 2) * (2 * m ** 2 + 5 * m - 2) * (3 * m ** 2 + 2),
        4 * (m ** 2 - 1) * m * (2 * m ** 2 + 3) * (3 * m ** 2 + 2))
    return P1, P2, P3, P4


def heron_tetra_printed_forms(m) -> dict:
    """The published closed forms for edges, face area, and volume.

    The volume form as published is smaller than the actual volume of the
    published vertices by the constant factor 82944 (an inconsistency in the
    source); the corrected value 82944 * form is reported alongside.
    """
    m = Fraction(m)
    p = 10 * (m ** 4 - 1) * (m ** 4 + 3 * m ** 2 + 1)
    q = (m ** 2 + 4) * (3 * m ** 2 + 2) * (2 * m ** 4 + 2 * m ** 2 + 1)
    r = (2 * m ** 2 + 3) * (4 * m ** 2 + 1) * (m ** 4 + 2 * m ** 2 + 2)
    area = ((m ** 4 - 1) * (m ** 2 + 4) * (4 * m ** 2 + 1) * (2 * m ** 2 + 3)
            * (3 * m ** 2 + 2) * (1 + 3 * m ** 2 + m ** 4))
    vol_published = (Fraction(1, 62208) * m * (m ** 2 - 1) * (m ** 4 - 1)
                     * (m ** 2 + 4) * (4 * m ** 2 + 1) * (2 * m ** 2 + 3) ** 2
                     * (3 * m ** 2 + 2) ** 2 * (1 + 3 * m ** 2 + m ** 4))
    return {"p": p, "q": q, "r": r, "area": area,
            "volume_published": vol_published,
            "volume_corrected": 82944 * vol_published,
            "volume_correction_factor": 82944}


def heron_tetra(m):
    """The published tetrahedron with rational edges, face areas, and volume.

    Returns (VertexSet, report) where the report verifies every closed form
    exactly: the six edges fall into three equal opposite pairs matching the
    published (p, q, r) up to sign, all four faces have the published area,
    and the Cayley-Menger volume equals the published form times 82944.
    """
    m = Fraction(m)
    if m in (0, 1, -1):
        raise ValueError("m in {0, +-1} degenerates the tetrahedron")
    pts = heron_tetra_vertices(m)
    tetra = VertexSet.tetrahedron(*pts)
    forms = heron_tetra_printed_forms(m)
    edge_sq = {}
    for i, j in itertools.combinations(range(4), 2):
        edge_sq[(i, j)] = squared_distance(pts[i], pts[j])
    edges = {k: is_rational_square(v) for k, v in edge_sq.items()}
    assert all(v is not None for v in edges.values())
    opposite = [((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))]
    pairs_equal = all(edges[a] == edges[b] for a, b in opposite)
    edge_match = {
        "p": edges[(0, 1)] == abs(forms["p"]),
        "q": edges[(0, 2)] == abs(forms["q"]),
        "r": edges[(0, 3)] == abs(forms["r"]),
    }
    faces = []
    for f in itertools.combinations(range(4), 3):
        a = edges[tuple(sorted((f[0], f[1])))]
        b = edges[tuple(sorted((f[1], f[2])))]
        c = edges[tuple(sorted((f[0], f[2])))]
        faces.append(is_rational_square(heron_area_sq(a, b, c)))
    area_match = all(fa == abs(forms["area"]) for fa in faces)
    vol = is_rational_square(cayley_menger_volume_sq(pts))
    vol_match = vol == abs(forms["volume_corrected"])
    report = {
        "edges": edges,
        "three_equal_pairs": pairs_equal,
        "edge_forms_match": edge_match,
        "face_areas": faces,
        "face_area_match": area_match,
        "volume": vol,
        "volume_match_corrected": vol_match,
        "volume_published_form": forms["volume_published"],
        "volume_correction_factor": forms["volume_correction_factor"],
    }
    return tetra, report
