"""Ramification and genus bookkeeping for superelliptic models w^d = c(t)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import Union

from .errors import (
    CharDividesD,
    CharDividesM,
    NoStructure,
    NotABranchPoint,
    NotSuperelliptic,
    ParityViolation,
    SizeExceeded,
)
from .field import DEFAULT_BOUND, FieldElement, FiniteField, divisors
from .funcfield import CurveModel
from .poly import Poly, poly_factor, poly_mth_root_shifted, poly_roots


@dataclass(frozen=True)
class BranchRoot:
    code: int  # element of the splitting field
    exponent: int
    gcd: int
    factor_degree: int


@dataclass(frozen=True)
class KummerData:
    d: int
    c: Poly
    base_name: str
    split_field: FiniteField
    roots: tuple[BranchRoot, ...]
    factors: tuple[tuple[Poly, int], ...]
    r_inf: int

    @property
    def field(self) -> FiniteField:
        return self.c.field

    def to_json(self) -> dict:
        v = self.base_name
        return {
            "d": self.d,
            "c": self.c.to_str(v),
            "factors": [{"factor": f.to_str(v), "e": e} for f, e in self.factors],
            "split_degree": self.split_field.k // self.field.k,
            "roots": [
                {"root": self.split_field.to_str(r.code), "e": r.exponent, "r": r.gcd}
                for r in self.roots
            ],
            "r_inf": self.r_inf,
        }


@dataclass(frozen=True)
class RamificationLedger:
    genus: int
    contributions: tuple[tuple[str, int, int, int], ...]  # (place, e, r, d - r)
    infinity: int
    total: int

    def to_json(self) -> dict:
        return {
            "g": self.genus,
            "contributions": [
                {"place": p, "e": e, "r": r, "d_minus_r": c} for p, e, r, c in self.contributions
            ],
            "infinity": self.infinity,
            "total": self.total,
        }


@dataclass(frozen=True)
class BranchStructure:
    m: int
    h: Poly
    s: int
    beta_rational: bool
    base_name: str = "x"

    def to_json(self) -> dict:
        F = self.h.field
        return {
            "m": self.m,
            "h": self.h.to_str(self.base_name),
            "s": F.to_str(self.s),
            "beta_rational": self.beta_rational,
        }


def superelliptic_c(model: CurveModel) -> Poly:
    """c with f = w^d - c(t), or NotSuperelliptic."""
    d = model.d
    if any(not model.fcoeffs[k].is_zero() for k in range(1, d)):
        raise NotSuperelliptic("the model has mixed terms in the fiber variable")
    return -model.fcoeffs[0]


def kummer_data(model: CurveModel, bound: int = DEFAULT_BOUND) -> KummerData:
    F = model.field
    d = model.d
    if d % F.p == 0:
        raise CharDividesD(f"p = {F.p} divides d = {d}")
    c = superelliptic_c(model)
    if c.degree < 1:
        raise NotSuperelliptic("c is constant")
    fac = poly_factor(c)
    degs = [g.degree for g, _ in fac.factors]
    L = reduce(lambda a, b: a * b // math.gcd(a, b), degs, 1)
    if F.q ** L > bound:
        raise SizeExceeded(f"splitting field F_{F.q}^{L} exceeds the size bound")
    ext = F.extension(L)
    roots = []
    for g, e in fac.factors:
        for r in poly_roots(g.embed(ext)):
            roots.append(BranchRoot(r, e, math.gcd(d, e), g.degree))
    roots.sort(key=lambda r: r.code)
    base = model.pencil_name
    return KummerData(d, Poly(F, c.coeffs, base), base, ext.field, tuple(roots),
                      tuple(fac.factors), math.gcd(d, c.degree))


def ramification_ledger(kd: KummerData) -> RamificationLedger:
    d = kd.d
    contrib = tuple(
        (kd.split_field.to_str(r.code), r.exponent, r.gcd, d - r.gcd) for r in kd.roots
    )
    inf = d - kd.r_inf
    total = sum(c[3] for c in contrib) + inf
    two_g = total - 2 * d + 2
    if two_g % 2:
        raise ParityViolation(f"ledger total {total} gives odd 2g")
    return RamificationLedger(two_g // 2, contrib, inf, total)


def kummer_genus(kd: KummerData) -> int:
    return ramification_ledger(kd).genus


def places_over(kd: KummerData, a: Union[int, FieldElement]) -> int:
    """Number of places of the smooth model over the branch point t = a."""
    code = a.code if isinstance(a, FieldElement) else a
    if isinstance(a, FieldElement) and a.field != kd.split_field:
        ext = a.field.extension(kd.split_field.k // a.field.k)
        code = ext.embed[a.code]
    for r in kd.roots:
        if r.code == code:
            return r.gcd
    raise NotABranchPoint(f"{a} is not a root of c")


def branch_structure(kd: KummerData) -> BranchStructure:
    """Largest m > 1 with -c + s = h^m; s plays the role of beta^d."""
    d = kd.d
    F = kd.field
    if kd.c.degree != d:
        raise NoStructure(f"deg c = {kd.c.degree} differs from d = {d}")
    for m in sorted(divisors(d), reverse=True):
        if m == 1:
            break
        try:
            res = poly_mth_root_shifted(kd.c, d, m)
        except CharDividesM:
            continue
        if res is not None:
            h, s = res
            return BranchStructure(m, Poly(F, h.coeffs, kd.base_name), s.code,
                                   F.is_nth_power(s.code, d), kd.base_name)
    raise NoStructure("only m = 1 admits a shifted m-th root")


def rh_consistency(g: int, d: int, m: int) -> tuple[bool, bool]:
    """(2g-2+2d == d(d - d/m), 2g-2 >= -2d + d(d - d/m))."""
    if d % m:
        raise ValueError("m must divide d")
    rhs = d * (d - d // m)
    return (2 * g - 2 + 2 * d == rhs, 2 * g - 2 >= -2 * d + rhs)


def unramified_cover_consistent(g_cover: int, g_base: int, degree: int) -> bool:
    """Riemann-Hurwitz for an unramified cover: 2g_C - 2 = n (2g_F - 2)."""
    return 2 * g_cover - 2 == degree * (2 * g_base - 2)
