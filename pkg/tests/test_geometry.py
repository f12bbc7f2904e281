import random

import pytest

from galois_locus.errors import DegreeTooSmall, LineMissesPoint, PointNotOnBoth, PointOnCurve, SingularMatrix
from galois_locus.expr import parse_form
from galois_locus.field import field_make
from galois_locus.geometry import (
    ProjLine,
    ProjPoint,
    ProjTransform,
    apply_transform,
    curve_make,
    fiber_polynomial,
    fiber_polynomial_at,
    line_intersection_multiplicity,
    move_point_to_vertex,
    multiplicity,
    pencil_points,
    plane_points,
    singular_points,
    tangent_line,
    total_inflexions,
)
from galois_locus.poly import Poly, poly_factor

from conftest import pt
from oracles import restriction_by_interpolation


def line(F, *c):
    return ProjLine.from_ints(F, c)


def test_curve_make_examples(F7, F13, fermat_cubic, takahashi4):
    assert fermat_cubic.degree == 3 and fermat_cubic.coprime
    assert takahashi4.degree == 4 and takahashi4.coprime
    with pytest.raises(DegreeTooSmall):
        curve_make(parse_form("X^2+Y*Z", F7))


def test_point_normalization(F7):
    assert pt(F7, 2, 4, 2) == pt(F7, 1, 2, 1)
    assert pt(F7, 3, 0, 0).coords == (1, 0, 0)
    assert pt(F7, 3, 6, 0).coords == (4, 1, 0)


def test_fiber_polynomial_examples(F7, fermat_cubic):
    P = pt(F7, 1, 0, 0)
    assert fiber_polynomial(fermat_cubic, P, line(F7, 0, 1, -1)) == Poly.from_ints(F7, [2, 0, 0, 1])
    assert fiber_polynomial(fermat_cubic, P, line(F7, 0, 0, 1)) == Poly.from_ints(F7, [1, 0, 0, 1])
    with pytest.raises(PointOnCurve):
        fiber_polynomial(fermat_cubic, pt(F7, -1, 1, 0), line(F7, 0, 0, 1))
    with pytest.raises(LineMissesPoint):
        fiber_polynomial(fermat_cubic, P, line(F7, 1, 0, 0))


def test_multiplicity_examples(F7, F13, fermat_cubic, takahashi4):
    assert multiplicity(takahashi4, pt(F13, 0, 0, 1)) == 2
    assert multiplicity(fermat_cubic, pt(F7, -1, 1, 0)) == 1
    assert multiplicity(fermat_cubic, pt(F7, 1, 1, 1)) == 0


def test_singular_points_examples(F13, fermat_cubic, takahashi4, takahashi6):
    assert singular_points(fermat_cubic) == []
    assert singular_points(takahashi4) == [pt(F13, 0, 0, 1)]
    assert singular_points(takahashi6) == [pt(F13, 0, 0, 1)]


def test_intersection_multiplicity_examples(F7, F13, fermat_cubic, takahashi4):
    Q = pt(F7, -1, 1, 0)
    T = tangent_line(fermat_cubic, Q)
    assert T == line(F7, 1, 1, 0)
    assert line_intersection_multiplicity(fermat_cubic, T, Q) == 3
    R = pt(F13, 5, 0, 1)
    assert line_intersection_multiplicity(takahashi4, tangent_line(takahashi4, R), R) == 4
    # a secant line through two distinct curve points meets transversally at each
    pts = fermat_cubic.points()
    A, B = pts[0], next(p for p in pts[1:] if ProjLine.through(pts[0], p) != tangent_line(fermat_cubic, pts[0]))
    L = ProjLine.through(A, B)
    assert line_intersection_multiplicity(fermat_cubic, L, A) == 1
    with pytest.raises(PointNotOnBoth):
        line_intersection_multiplicity(fermat_cubic, L, pt(F7, 1, 1, 1))


def test_total_inflexions(F7, F13, fermat_cubic, takahashi4):
    assert set(total_inflexions(takahashi4)) == {pt(F13, 5, 0, 1), pt(F13, 8, 0, 1)}
    infl = set(total_inflexions(fermat_cubic))
    assert len(infl) == 9
    assert all(0 in p.coords for p in infl)


def _inflexion_oracle(curve):
    """Brute force: a nonsingular point is a total inflexion iff every other point
    of its tangent line over F_q is off the curve and the restriction has a d-fold root."""
    F = curve.field
    out = set()
    for P in curve.points():
        g = curve.gradient(P)
        if not any(g):
            continue
        L = ProjLine(F, g)
        other = next(R for R in plane_points(F) if L.contains(R) and R != P)
        vals = restriction_by_interpolation(curve.form, P.coords, other.coords, F)
        # F(P + t R) = c t^d  <=> values are c * t^d for all t
        c = curve(other.coords)
        if c and all(v == F.mul(c, F.pow(t, curve.degree)) for t, v in zip(F.elements(), vals)):
            out.add(P)
    return out


@pytest.mark.parametrize("form,q", [("X^4+X*Y^3+2*Y*Z^3+Z^4+X^2*Y*Z", 13), ("X^4+Y^4+Z^4", 13), ("X^4+X^2*Z^2+Y^4", 13)])
def test_total_inflexions_vs_oracle(form, q):
    F = field_make(q)
    C = curve_make(parse_form(form, F))
    assert set(total_inflexions(C)) == _inflexion_oracle(C)


@pytest.mark.parametrize("curve_name", ["fermat_cubic", "takahashi4", "takahashi6"])
def test_multiplicity_iff_singular(curve_name, request):
    C = request.getfixturevalue(curve_name)
    sing = set(singular_points(C))
    for P in C.points():
        assert (multiplicity(C, P) >= 2) == (P in sing)


@pytest.mark.parametrize("curve_name", ["fermat_cubic", "control_cubic", "takahashi4", "takahashi6"])
def test_fiber_degree_all_lines(curve_name, request):
    C = request.getfixturevalue(curve_name)
    F = C.field
    for P in [pt(F, 1, 0, 0), pt(F, 0, 1, 0)]:
        if C.contains(P):
            continue
        for R in pencil_points(P):
            L = ProjLine.through(P, R)
            f = fiber_polynomial(C, P, L)
            assert f.degree == C.degree
            assert f.lc == C(P.coords)
            vals = restriction_by_interpolation(C.form, R.coords, P.coords, F)
            assert [f(t) for t in F.elements()] == vals


@pytest.mark.parametrize("curve_name", ["fermat_cubic", "takahashi4", "takahashi6"])
def test_bezout_on_lines(curve_name, request, rng):
    C = request.getfixturevalue(curve_name)
    F = C.field
    pts = list(plane_points(F))
    lines = set()
    while len(lines) < 25:
        A, B = rng.sample(pts, 2)
        lines.add(ProjLine.through(A, B))
    for L in lines:
        on = [p for p in pts if L.contains(p)]
        A, B = on[0], on[1]
        # parametrize L by A + t B, with B at t = infinity
        vals = restriction_by_interpolation(C.form, A.coords, B.coords, F)
        g = fiber_polynomial_at(C, B, A)
        assert [g(t) for t in F.elements()] == vals
        if g.is_zero():
            continue
        total = C.degree - g.degree  # multiplicity of B
        if C.contains(B):
            assert total == line_intersection_multiplicity(C, L, B)
        for h, e in poly_factor(g).factors:
            total += h.degree * e
            if h.degree == 1:
                root = F.neg(h.coeffs[0])
                Q = ProjPoint(F, [F.add(a, F.mul(root, b)) for a, b in zip(A.coords, B.coords)])
                assert line_intersection_multiplicity(C, L, Q) == e
        assert total == C.degree


def _proportional(f, g):
    if set(f.terms) != set(g.terms):
        return False
    F = f.field
    k = next(iter(f.terms))
    r = F.div(g.terms[k], f.terms[k])
    return all(g.terms[m] == F.mul(r, c) for m, c in f.terms.items())


def _random_transform(F, rng):
    while True:
        try:
            return ProjTransform(F, [[rng.randrange(F.q) for _ in range(3)] for _ in range(3)])
        except SingularMatrix:
            continue


def test_apply_transform_group_action(F13, takahashi4, rng):
    for _ in range(20):
        M1, M2 = _random_transform(F13, rng), _random_transform(F13, rng)
        lhs = apply_transform(takahashi4, M1 @ M2)
        rhs = apply_transform(apply_transform(takahashi4, M2), M1)
        assert _proportional(lhs.form, rhs.form)
        # image curve contains the images of curve points
        for P in takahashi4.points()[:5]:
            assert lhs.contains((M1 @ M2)(P))


def test_apply_transform_identity_and_singular(F7, fermat_cubic):
    assert apply_transform(fermat_cubic, ProjTransform.identity(F7)) == fermat_cubic
    with pytest.raises(SingularMatrix):
        ProjTransform.from_ints(F7, [[1, 0, 0], [1, 0, 0], [0, 0, 1]])


def test_move_point_to_vertex(F7, fermat_cubic):
    assert move_point_to_vertex(pt(F7, 1, 0, 0)).is_identity()
    P = pt(F7, 1, 1, 1)
    M = move_point_to_vertex(P)
    assert M(P) == pt(F7, 1, 0, 0)
    moved = apply_transform(fermat_cubic, M)
    assert moved((1, 0, 0)) == fermat_cubic(P.coords) == 3
    for Q in plane_points(F7):
        M = move_point_to_vertex(Q)
        assert M(Q) == pt(F7, 1, 0, 0)
