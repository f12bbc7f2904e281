"""Plane projective curves over finite fields: points, lines, transforms, and
the local invariants used by the Galois-point machinery (fiber polynomials,
multiplicities, intersection orders with lines, total inflexions)."""

from __future__ import annotations

import math
from functools import cached_property
from typing import Iterator, Optional, Sequence

from .errors import (
    DegreeTooSmall,
    LineComponent,
    LineMissesPoint,
    NotHomogeneous,
    PointNotOnBoth,
    PointOnCurve,
    SingularMatrix,
    SingularPoint,
)
from .field import FiniteField
from .mpoly import MPoly
from .poly import Poly


def _normalize_last(field: FiniteField, coords: Sequence[int]) -> tuple[int, int, int]:
    for c in reversed(coords):
        if c:
            inv = field.inv(c)
            return tuple(field.mul(x, inv) for x in coords)
    raise ValueError("all coordinates are zero")


class ProjPoint:
    """A point of P^2, normalized so its last nonzero coordinate is 1."""

    __slots__ = ("field", "coords")

    def __init__(self, field: FiniteField, coords: Sequence[int]):
        if len(coords) != 3:
            raise ValueError("a plane point has three coordinates")
        self.field = field
        self.coords = _normalize_last(field, coords)

    @classmethod
    def from_ints(cls, field: FiniteField, ints: Sequence[int]) -> ProjPoint:
        return cls(field, [field.from_int(i) for i in ints])

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __eq__(self, other):
        if not isinstance(other, ProjPoint):
            return NotImplemented
        return self.field == other.field and self.coords == other.coords

    def __hash__(self):
        return hash((self.field, self.coords))

    def __lt__(self, other: ProjPoint):
        return sort_key(self) < sort_key(other)

    @property
    def anchor(self) -> int:
        """Index of the coordinate normalized to 1."""
        return max(i for i, c in enumerate(self.coords) if c)

    def embed(self, ext) -> ProjPoint:
        return ProjPoint(ext.field, [ext.embed[c] for c in self.coords])

    def __str__(self):
        return ":".join(self.field.to_str(c) for c in self.coords)

    def __repr__(self):
        return f"({self})"

    def to_json(self) -> list[int]:
        return list(self.coords)


def sort_key(pt: ProjPoint):
    # (1:0:0), (x:1:0), (x:y:1): the order of plane_points()
    a = pt.anchor
    return (a, tuple(reversed(pt.coords)))


class ProjLine:
    """A line aX + bY + cZ = 0, dual coordinates normalized like points."""

    __slots__ = ("field", "coords")

    def __init__(self, field: FiniteField, coords: Sequence[int]):
        self.field = field
        self.coords = _normalize_last(field, coords)

    @classmethod
    def from_ints(cls, field: FiniteField, ints: Sequence[int]) -> ProjLine:
        return cls(field, [field.from_int(i) for i in ints])

    @classmethod
    def through(cls, p: ProjPoint, r: ProjPoint) -> ProjLine:
        F = p.field
        a, b = p.coords, r.coords
        cross = (
            F.sub(F.mul(a[1], b[2]), F.mul(a[2], b[1])),
            F.sub(F.mul(a[2], b[0]), F.mul(a[0], b[2])),
            F.sub(F.mul(a[0], b[1]), F.mul(a[1], b[0])),
        )
        return cls(F, cross)

    def contains(self, pt: ProjPoint) -> bool:
        F = self.field
        acc = 0
        for a, x in zip(self.coords, pt.coords):
            acc = F.add(acc, F.mul(a, x))
        return acc == 0

    def __eq__(self, other):
        if not isinstance(other, ProjLine):
            return NotImplemented
        return self.field == other.field and self.coords == other.coords

    def __hash__(self):
        return hash(("line", self.field, self.coords))

    def __str__(self):
        return "[" + ":".join(self.field.to_str(c) for c in self.coords) + "]"

    __repr__ = __str__


def _det3(F: FiniteField, m) -> int:
    mul, add, sub = F.mul, F.add, F.sub
    t0 = mul(m[0][0], sub(mul(m[1][1], m[2][2]), mul(m[1][2], m[2][1])))
    t1 = mul(m[0][1], sub(mul(m[1][0], m[2][2]), mul(m[1][2], m[2][0])))
    t2 = mul(m[0][2], sub(mul(m[1][0], m[2][1]), mul(m[1][1], m[2][0])))
    return add(sub(t0, t1), t2)


class ProjTransform:
    """An element of PGL(3, F_q), scaled so its first nonzero entry is 1."""

    __slots__ = ("field", "matrix")

    def __init__(self, field: FiniteField, matrix: Sequence[Sequence[int]]):
        rows = [tuple(r) for r in matrix]
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ValueError("expected a 3x3 matrix")
        if _det3(field, rows) == 0:
            raise SingularMatrix("matrix is not invertible")
        first = next(c for r in rows for c in r if c)
        inv = field.inv(first)
        self.field = field
        self.matrix = tuple(tuple(field.mul(c, inv) for c in r) for r in rows)

    @classmethod
    def identity(cls, field: FiniteField) -> ProjTransform:
        return cls(field, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])

    @classmethod
    def from_ints(cls, field: FiniteField, rows) -> ProjTransform:
        return cls(field, [[field.from_int(c) for c in r] for r in rows])

    def is_identity(self) -> bool:
        return self.matrix == ((1, 0, 0), (0, 1, 0), (0, 0, 1))

    def apply_coords(self, v: Sequence[int]) -> list[int]:
        F = self.field
        out = []
        for row in self.matrix:
            acc = 0
            for a, x in zip(row, v):
                if a and x:
                    acc = F.add(acc, F.mul(a, x))
            out.append(acc)
        return out

    def __call__(self, pt: ProjPoint) -> ProjPoint:
        return ProjPoint(self.field, self.apply_coords(pt.coords))

    def __matmul__(self, other: ProjTransform) -> ProjTransform:
        F = self.field
        a, b = self.matrix, other.matrix
        out = [[0] * 3 for _ in range(3)]
        for i in range(3):
            for j in range(3):
                acc = 0
                for k in range(3):
                    acc = F.add(acc, F.mul(a[i][k], b[k][j]))
                out[i][j] = acc
        return ProjTransform(F, out)

    def inverse(self) -> ProjTransform:
        F = self.field
        m = self.matrix
        mul, sub = F.mul, F.sub

        def minor(r0, r1, c0, c1):
            return sub(mul(m[r0][c0], m[r1][c1]), mul(m[r0][c1], m[r1][c0]))

        # adjugate; the scalar 1/det is dropped (projective)
        adj = [
            [minor(1, 2, 1, 2), F.neg(minor(0, 2, 1, 2)), minor(0, 1, 1, 2)],
            [F.neg(minor(1, 2, 0, 2)), minor(0, 2, 0, 2), F.neg(minor(0, 1, 0, 2))],
            [minor(1, 2, 0, 1), F.neg(minor(0, 2, 0, 1)), minor(0, 1, 0, 1)],
        ]
        return ProjTransform(F, adj)

    def linear_forms(self) -> list[MPoly]:
        return [MPoly.linear(self.field, row) for row in self.matrix]

    def __eq__(self, other):
        if not isinstance(other, ProjTransform):
            return NotImplemented
        return self.field == other.field and self.matrix == other.matrix

    def __hash__(self):
        return hash((self.field, self.matrix))

    def __repr__(self):
        rows = ["[" + " ".join(self.field.to_str(c) for c in r) + "]" for r in self.matrix]
        return "ProjTransform(" + " ".join(rows) + ")"


class PlaneCurve:
    """Curve F = 0 for a ternary form F of degree d >= 3."""

    def __init__(self, form: MPoly):
        self.form = form
        self.field = form.field
        self.degree = form.total_degree
        self.coprime = math.gcd(self.degree, self.field.p) == 1

    @cached_property
    def gradient_forms(self) -> tuple[MPoly, MPoly, MPoly]:
        return tuple(self.form.partial(i) for i in range(3))

    def __call__(self, pt) -> int:
        coords = pt.coords if isinstance(pt, ProjPoint) else pt
        return self.form(coords)

    def contains(self, pt: ProjPoint) -> bool:
        return self.form(pt.coords) == 0

    def gradient(self, pt: ProjPoint) -> tuple[int, int, int]:
        return tuple(g(pt.coords) for g in self.gradient_forms)

    def is_singular_at(self, pt: ProjPoint) -> bool:
        return self.contains(pt) and not any(self.gradient(pt))

    def points(self) -> list[ProjPoint]:
        return [pt for pt in plane_points(self.field) if self.contains(pt)]

    def outer_points(self) -> list[ProjPoint]:
        return [pt for pt in plane_points(self.field) if not self.contains(pt)]

    def to_str(self) -> str:
        return self.form.to_str("XYZ")

    def __eq__(self, other):
        return isinstance(other, PlaneCurve) and self.form == other.form

    def __hash__(self):
        return hash(self.form)

    def __repr__(self):
        return f"PlaneCurve({self.to_str()} over {self.field!r})"


def curve_make(form: MPoly) -> PlaneCurve:
    if form.nvars != 3:
        raise ValueError("a plane curve needs a form in three variables")
    if form.is_zero():
        raise NotHomogeneous("the zero form defines no curve")
    if not form.is_homogeneous():
        raise NotHomogeneous("form is not homogeneous")
    if form.total_degree < 3:
        raise DegreeTooSmall(f"degree {form.total_degree} < 3")
    return PlaneCurve(form)


def plane_points(field: FiniteField) -> Iterator[ProjPoint]:
    """All points of P^2(F_q): (1:0:0), then (x:1:0), then (x:y:1)."""
    yield ProjPoint(field, (1, 0, 0))
    for x in field.elements():
        yield ProjPoint(field, (x, 1, 0))
    for y in field.elements():
        for x in field.elements():
            yield ProjPoint(field, (x, y, 1))


def line_points(line: ProjLine) -> list[ProjPoint]:
    return [pt for pt in plane_points(line.field) if line.contains(pt)]


def pencil_base(P: ProjPoint) -> int:
    """Index i of the coordinate line X_i = 0 used to parametrize lines through P."""
    return P.anchor


def pencil_point(P: ProjPoint, line: ProjLine) -> ProjPoint:
    """The point where ``line`` meets X_i = 0 (i = :func:`pencil_base`)."""
    if not line.contains(P):
        raise LineMissesPoint(f"{line} does not pass through {P}")
    i = pencil_base(P)
    j, k = [x for x in range(3) if x != i]
    F = P.field
    coords = [0, 0, 0]
    coords[j] = line.coords[k]
    coords[k] = F.neg(line.coords[j])
    return ProjPoint(F, coords)


def pencil_points(P: ProjPoint, field: Optional[FiniteField] = None) -> list[ProjPoint]:
    """Points R on X_i = 0 over ``field``; each gives the line through P and R."""
    F = field or P.field
    i = pencil_base(P)
    j, k = [x for x in range(3) if x != i]
    out = []
    for a in F.elements():
        c = [0, 0, 0]
        c[j] = a
        c[k] = 1
        out.append(ProjPoint(F, c))
    c = [0, 0, 0]
    c[j] = 1
    out.append(ProjPoint(F, c))
    return out


def _restrict(form: MPoly, base: Sequence[int], direction: Sequence[int], var="T") -> Poly:
    F = form.field
    images = [Poly(F, [b, d], var) for b, d in zip(base, direction)]
    return form.substitute_univariate(images)


def fiber_polynomial(curve: PlaneCurve, P: ProjPoint, L: ProjLine) -> Poly:
    """Restriction of the form to L, parametrized as T*P + R with R on X_i = 0.

    T = infinity corresponds to P itself, so the result has degree exactly d
    with leading coefficient F(P) when P is outer.
    """
    if curve.contains(P):
        raise PointOnCurve(f"{P} lies on the curve")
    R = pencil_point(P, L)
    return _restrict(curve.form, R.coords, P.coords)


def fiber_polynomial_at(curve: PlaneCurve, P: ProjPoint, R: ProjPoint) -> Poly:
    """Fiber polynomial on the line through P and a pencil point R."""
    return _restrict(curve.form, R.coords, P.coords)


def multiplicity(curve: PlaneCurve, pt: ProjPoint) -> int:
    """Multiplicity of the curve at pt (0 if pt is not on the curve)."""
    if not curve.contains(pt):
        return 0
    F = curve.field
    k = pt.anchor
    # X = U_k * pt + sum_{j != k} U_j e_j
    images = []
    for i in range(3):
        terms = {}
        e = [0, 0, 0]
        e[k] = 1
        if pt.coords[i]:
            terms[tuple(e)] = pt.coords[i]
        if i != k:
            e2 = [0, 0, 0]
            e2[i] = 1
            terms[tuple(e2)] = F.add(terms.get(tuple(e2), 0), 1)
        images.append(MPoly(F, 3, terms))
    moved = curve.form.substitute(images)
    return curve.degree - max(e[k] for e in moved.terms)


def singular_points(curve: PlaneCurve) -> list[ProjPoint]:
    return [pt for pt in plane_points(curve.field) if curve.is_singular_at(pt)]


def tangent_line(curve: PlaneCurve, pt: ProjPoint) -> ProjLine:
    if not curve.contains(pt):
        raise PointNotOnBoth(f"{pt} is not on the curve")
    grad = curve.gradient(pt)
    if not any(grad):
        raise SingularPoint(f"{pt} is a singular point")
    return ProjLine(curve.field, grad)


def line_intersection_multiplicity(curve: PlaneCurve, L: ProjLine, pt: ProjPoint) -> int:
    """Vanishing order at pt of the form restricted to L."""
    if not (curve.contains(pt) and L.contains(pt)):
        raise PointNotOnBoth(f"{pt} is not on both the curve and {L}")
    R = pencil_point(pt, L)
    restricted = _restrict(curve.form, pt.coords, R.coords)
    if restricted.is_zero():
        raise LineComponent(f"{L} is a component of the curve")
    return next(i for i, c in enumerate(restricted.coeffs) if c)


def total_inflexions(curve: PlaneCurve) -> list[ProjPoint]:
    """Rational nonsingular points whose tangent meets the curve with multiplicity d."""
    out = []
    for pt in curve.points():
        if not any(curve.gradient(pt)):
            continue
        L = tangent_line(curve, pt)
        try:
            if line_intersection_multiplicity(curve, L, pt) == curve.degree:
                out.append(pt)
        except LineComponent:
            continue
    return out


def transform_form(form: MPoly, M: ProjTransform) -> MPoly:
    """The form X -> form(M X)."""
    return form.substitute(M.linear_forms())


def apply_transform(curve: PlaneCurve, M: ProjTransform) -> PlaneCurve:
    """Image curve M(C), defined by F(M^-1 X)."""
    return PlaneCurve(transform_form(curve.form, M.inverse()))


def move_point_to_vertex(P: ProjPoint) -> ProjTransform:
    """A transform sending P to (1:0:0); the identity class when P already is."""
    F = P.field
    k = P.anchor
    others = [i for i in range(3) if i != k]
    # inverse has columns P, e_j, e_l
    cols = [list(P.coords)]
    for j in others:
        e = [0, 0, 0]
        e[j] = 1
        cols.append(e)
    inv = [[cols[c][r] for c in range(3)] for r in range(3)]
    return ProjTransform(F, inv).inverse()
