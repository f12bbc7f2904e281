"""Curve families with their designated points and known generators."""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from typing import Optional

from .errors import BadParameters, ParseError
from .expr import parse_form
from .field import FiniteField, field_make, is_prime
from .geometry import PlaneCurve, ProjPoint, curve_make
from .maps import MapRecipe
from .poly import roots_of_unity


@dataclass(frozen=True)
class FamilySpec:
    kind: str  # fermat | takahashi | hermitian | genfermat | custom
    d: int = 0
    m: int = 0
    q: int = 0
    form: str = ""

    @property
    def name(self) -> str:
        if self.kind in ("fermat", "takahashi"):
            return f"{self.kind}:{self.d}"
        if self.kind == "hermitian":
            return f"hermitian:{self.q}"
        if self.kind == "genfermat":
            return f"genfermat:{self.m}:{self.d}"
        return f"custom:{self.form}"


def parse_family(text: str) -> FamilySpec:
    parts = text.split(":")
    kind = parts[0].strip().lower()
    try:
        if kind in ("fermat", "takahashi") and len(parts) == 2:
            return FamilySpec(kind, d=int(parts[1]))
        if kind == "hermitian" and len(parts) == 2:
            return FamilySpec(kind, q=int(parts[1]))
        if kind == "genfermat" and len(parts) == 3:
            return FamilySpec(kind, m=int(parts[1]), d=int(parts[2]))
        if kind == "custom" and len(parts) >= 2:
            return FamilySpec(kind, form=":".join(parts[1:]))
    except ValueError as exc:
        raise ParseError(f"bad family {text!r}") from exc
    raise ParseError(f"unknown family {text!r}; use fermat:d, takahashi:d, hermitian:q, genfermat:m:d or custom:<form>")


def const_expr(F: FiniteField, c: int) -> str:
    """A field constant written in the expression grammar."""
    if F.k == 1:
        return str(c)
    if c == 0:
        return "0"
    return f"g^{F.log(c)}"


@dataclass
class FamilyInstance:
    spec: FamilySpec
    field: FiniteField
    curve: PlaneCurve
    points: list[ProjPoint]
    registered: dict[tuple[int, int, int], list[MapRecipe]] = dc_field(default_factory=dict)

    @property
    def label(self) -> str:
        return f"{self.spec.name} over F_{self.field.q}"


def _scaling(F: FiniteField, which: int, z: int, name: str) -> MapRecipe:
    zs = const_expr(F, z)
    if which == 0:
        return MapRecipe(f"{zs}*x", "y", (f"{zs}*X", "Y", "Z"), f"{name}=({zs}x, y)")
    return MapRecipe("x", f"{zs}*y", ("X", f"{zs}*Y", "Z"), f"{name}=(x, {zs}y)")


def hermitian_field(q: int) -> FiniteField:
    p = next((f for f in range(2, q + 1) if q % f == 0), q)
    k = round(math.log(q, p))
    if not is_prime(p) or p ** k != q:
        raise BadParameters(f"q = {q} is not a prime power")
    return field_make(p, 2 * k)


def _check_coprime(spec: FamilySpec, F: FiniteField):
    d = spec.d
    if d % F.p == 0:
        raise BadParameters(f"p = {F.p} divides d = {d}")
    if (F.q - 1) % d:
        raise BadParameters(f"d = {d} does not divide q - 1 = {F.q - 1}")


def family_curve(spec: FamilySpec, field: Optional[FiniteField] = None) -> FamilyInstance:
    kind = spec.kind
    if kind == "hermitian":
        q = spec.q
        F = hermitian_field(q)
        if field is not None and field != F:
            raise BadParameters(f"the Hermitian curve for q = {q} lives over F_{q * q}")
        form = parse_form(f"X^{q + 1} - Y^{q}*Z - Y*Z^{q}", F)
        return FamilyInstance(spec, F, curve_make(form), [])
    if field is None:
        raise BadParameters(f"family {spec.name} needs a field")
    F = field
    d = spec.d
    P1 = ProjPoint(F, (1, 0, 0))
    P2 = ProjPoint(F, (0, 1, 0))
    if kind == "fermat":
        if d < 3:
            raise BadParameters("degree must be at least 3")
        _check_coprime(spec, F)
        zeta = roots_of_unity(F, d)[0].code
        curve = curve_make(parse_form(f"X^{d} + Y^{d} + Z^{d}", F))
        reg = {P1.coords: [_scaling(F, 0, zeta, "zeta")], P2.coords: [_scaling(F, 1, zeta, "zeta")]}
        return FamilyInstance(spec, F, curve, [P1, P2], reg)
    if kind == "takahashi":
        if d < 4 or d % 2:
            raise BadParameters(f"Takahashi curves need an even degree >= 4, got {d}")
        _check_coprime(spec, F)
        h = d // 2
        eta = roots_of_unity(F, h)[0].code
        zeta = roots_of_unity(F, d)[0].code
        curve = curve_make(parse_form(f"X^{d} + X^{h}*Z^{h} + Y^{d}", F))
        tau = MapRecipe("y^2/x", "y", ("Y^2", "X*Y", "X*Z"), "tau=(y^2/x, y)")
        reg = {
            P1.coords: [_scaling(F, 0, eta, "sigma"), tau],
            P2.coords: [_scaling(F, 1, zeta, "gamma")],
        }
        return FamilyInstance(spec, F, curve, [P1, P2], reg)
    if kind == "genfermat":
        m = spec.m
        if m < 1 or d < 3 or d % m:
            raise BadParameters(f"generalized Fermat needs m | d, got m = {m}, d = {d}")
        _check_coprime(spec, F)
        zeta = roots_of_unity(F, d)[0].code
        curve = curve_make(parse_form(f"X^{m}*Z^{d - m} + Y^{d} - Z^{d}", F))
        return FamilyInstance(spec, F, curve, [P2], {P2.coords: [_scaling(F, 1, zeta, "zeta")]})
    if kind == "custom":
        curve = curve_make(parse_form(spec.form, F))
        return FamilyInstance(spec, F, curve, [])
    raise BadParameters(f"unknown family kind {kind!r}")
