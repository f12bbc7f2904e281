"""Deciding whether an outer point is a Galois point.

Two independent routes are combined.  The statistical one specializes the
projection at many lines through P and factors the fiber polynomial: if the
extension is Galois of degree d, every unramified specialization splits into
factors of one common degree.  The algebraic one exhibits d fiber-preserving
automorphisms (linear ones found by search plus registered nonlinear ones)
and closes them into a group.
"""

from __future__ import annotations

import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Iterator, Optional, Sequence, Union

from .errors import PointOnCurve, RootsOfUnityMissing
from .field import DEFAULT_BOUND, FiniteField, field_make
from .funcfield import CurveModel, curve_model
from .geometry import PlaneCurve, ProjPoint, ProjTransform, pencil_base, plane_points
from .maps import (
    CurveMap,
    MapGroup,
    MapRecipe,
    group_closure,
    group_structure,
    map_from_transform,
    map_make,
    preserves_fibers,
    transport_map,
)
from .mpoly import MPoly
from .poly import Poly, factor_degrees, poly_gcd, squarefree_decomposition

MapSpec = Union[CurveMap, MapRecipe, tuple[str, str], str]


@dataclass(frozen=True)
class FactorPattern:
    degrees: tuple[int, ...]
    ramified: bool = False

    @property
    def mixed(self) -> bool:
        return not self.ramified and len(set(self.degrees)) > 1

    def __str__(self):
        return "[" + ",".join(map(str, self.degrees)) + "]"


@dataclass(frozen=True)
class SampleLine:
    """A line through P, given by its pencil point R over F_{q^j}."""

    index: int
    level: int
    coords: tuple[int, int, int]

    def describe(self, q: int) -> str:
        field = f"F_{q}" if self.level == 1 else f"F_{q}^{self.level}"
        return f"line through P and ({':'.join(map(str, self.coords))}) over {field}, sample #{self.index}"


@dataclass
class SampleReport:
    samples: int
    unramified: int
    ramified: int
    histogram: dict[str, int]
    witness: Optional[str] = None
    witness_pattern: Optional[str] = None
    seed: int = 0

    def to_json(self) -> dict:
        out = {
            "samples": self.samples,
            "unramified": self.unramified,
            "ramified": self.ramified,
            "histogram": dict(sorted(self.histogram.items())),
            "seed": self.seed,
        }
        if self.witness:
            out["witness_line"] = self.witness
            out["witness_pattern"] = self.witness_pattern
        return out


class FiberSampler:
    """Fiber polynomials of projection from P, over F_q and its small extensions.

    The form restricted to the line through P and R is sum_k Phi_k(R) T^k,
    where the polar forms Phi_k are computed once.
    """

    def __init__(self, curve: PlaneCurve, P: ProjPoint, bound: int = DEFAULT_BOUND):
        if curve.contains(P):
            raise PointOnCurve(f"{P} lies on the curve")
        F = curve.field
        self.curve, self.P, self.field = curve, P, F
        self.d = curve.degree
        images = [
            MPoly(F, 4, {tuple(int(j == i) for j in range(4)): 1, (0, 0, 0, 1): P.coords[i]})
            for i in range(3)
        ]
        shifted = curve.form.substitute(images)
        polar: list[dict] = [dict() for _ in range(self.d + 1)]
        for e, c in shifted.terms.items():
            polar[e[3]][e[:3]] = c
        self.polar = [MPoly(F, 3, t) for t in polar]
        self.base = pencil_base(P)
        self.levels = [j for j in (1, 2, 3) if F.q ** j <= bound]
        self._ext = {j: F.extension(j) for j in self.levels}
        self._polar_ext = {
            j: [f.map_coeffs(self._ext[j].field, self._ext[j].embed) for f in self.polar]
            for j in self.levels
        }

    def pencil_coords(self, a: int) -> tuple[int, int, int]:
        """Pencil point with free parameter a (a = None-like sentinel -1 gives the point at infinity)."""
        j, k = [x for x in range(3) if x != self.base]
        c = [0, 0, 0]
        if a < 0:
            c[j] = 1
        else:
            c[j], c[k] = a, 1
        return tuple(c)

    def fiber(self, level: int, coords: Sequence[int]) -> Poly:
        forms = self._polar_ext[level]
        return Poly(self._ext[level].field, [f(coords) for f in forms])

    def lines(self, rng: random.Random) -> Iterator[SampleLine]:
        """Rational lines (shuffled), then F_{q^2} lines without replacement, then
        F_{q^3} lines with replacement; the last available level repeats."""
        F = self.field
        idx = 0
        rational = [-1] + list(F.elements())
        rng.shuffle(rational)
        for a in rational:
            yield SampleLine(idx, 1, self.pencil_coords(a))
            idx += 1
        if 2 in self.levels:
            ext = self._ext[2]
            sub = set(ext.embed)
            params = [a for a in ext.field.elements() if a not in sub]
            rng.shuffle(params)
            for a in params:
                yield SampleLine(idx, 2, self.pencil_coords(a))
                idx += 1
        top = self.levels[-1]
        ext = self._ext[top]
        sub = set(ext.embed)
        while True:
            a = rng.randrange(ext.field.q)
            if top > 1 and a in sub:
                continue
            yield SampleLine(idx, top, self.pencil_coords(a))
            idx += 1

    def pattern(self, line: SampleLine) -> FactorPattern:
        f = self.fiber(line.level, line.coords)
        df = f.derivative()
        if df.is_zero() or poly_gcd(f, df).degree > 0:
            return FactorPattern(tuple(), True)
        return FactorPattern(tuple(sorted(factor_degrees(f))), False)


def _check_outer(curve: PlaneCurve, P: ProjPoint):
    if curve.contains(P):
        raise PointOnCurve(f"{P} lies on the curve")


def sample_fiber_patterns(curve: PlaneCurve, P: ProjPoint, N: int, seed: int = 0,
                          stop_on_mixed: bool = False, unramified_target: bool = False,
                          sampler: Optional[FiberSampler] = None) -> SampleReport:
    """Factor the fiber polynomial on N lines through P.

    With ``unramified_target`` the loop runs until N unramified samples are
    collected instead of N lines.
    """
    if N < 1:
        raise ValueError("need at least one sample")
    _check_outer(curve, P)
    sampler = sampler or FiberSampler(curve, P)
    rng = random.Random(f"{seed}:{P}")
    hist: Counter = Counter()
    ramified = unram = taken = 0
    witness = wpattern = None
    q = curve.field.q
    for line in sampler.lines(rng):
        if (unram if unramified_target else taken) >= N:
            break
        if unramified_target and taken > 50 * N + 1000:
            break
        taken += 1
        pat = sampler.pattern(line)
        if pat.ramified:
            ramified += 1
            continue
        unram += 1
        hist[str(pat)] += 1
        if pat.mixed and witness is None:
            witness, wpattern = line.describe(q), str(pat)
            if stop_on_mixed:
                break
    return SampleReport(taken, unram, ramified, dict(hist), witness, wpattern, seed)


@dataclass
class GaloisVerdict:
    kind: str  # "NotGalois" | "ProbablyGalois" | "Certified"
    point: ProjPoint
    report: Optional[SampleReport] = None
    group: Optional[MapGroup] = dc_field(default=None, repr=False)
    note: str = ""

    @property
    def certified(self) -> bool:
        return self.kind == "Certified"

    @property
    def witness(self) -> Optional[str]:
        return self.report.witness if self.report else None

    def to_json(self) -> dict:
        out = {"point": list(self.point.coords), "verdict": self.kind, "samples": self.report.samples if self.report else 0}
        if self.group is not None:
            st = group_structure(self.group)
            out["group_order"] = self.group.order
            out["structure"] = st.to_json()
            out["generators"] = [g.to_json() for g in self.group.generators]
        if self.report is not None:
            out["sample_report"] = self.report.to_json()
            if self.report.witness:
                out["witness_line"] = self.report.witness
        if self.note:
            out["note"] = self.note
        return out


def _require_roots_of_unity(curve: PlaneCurve):
    q, d = curve.field.q, curve.degree
    if (q - 1) % d:
        raise RootsOfUnityMissing(f"{d} does not divide q - 1 = {q - 1}")


def monte_carlo_galois(curve: PlaneCurve, P: ProjPoint, N: int, seed: int = 0,
                       sampler: Optional[FiberSampler] = None) -> GaloisVerdict:
    _check_outer(curve, P)
    _require_roots_of_unity(curve)
    rep = sample_fiber_patterns(curve, P, N, seed, stop_on_mixed=True, sampler=sampler)
    if rep.witness:
        return GaloisVerdict("NotGalois", P, rep, note=f"mixed pattern {rep.witness_pattern}")
    return GaloisVerdict("ProbablyGalois", P, rep, note=f"no mixed pattern in {rep.unramified} unramified samples")


def linear_fiber_automorphisms(curve: PlaneCurve, P: ProjPoint,
                               model: Optional[CurveModel] = None) -> list[CurveMap]:
    """All linear transformations fixing every line through P and preserving the curve.

    In chart coordinates, where P is a coordinate vertex with index i, these
    are the matrices equal to the identity outside row i.
    """
    _check_outer(curve, P)
    model = model or curve_model(curve, P)
    F = curve.field
    G = model.chart_form
    d = curve.degree
    i = model.fiber
    others = [j for j in range(3) if j != i]
    lead = G.terms.get(tuple(d if j == i else 0 for j in range(3)))
    # X_i^(d-1) coefficient as a linear form in the other two variables
    sub = {}
    for e, c in G.terms.items():
        if e[i] == d - 1:
            sub[next(j for j in others if e[j] == 1)] = c
    found = []

    def try_row(row):
        mat = [[int(a == b) for b in range(3)] for a in range(3)]
        mat[i] = list(row)
        lin = [MPoly.linear(F, r) for r in mat]
        moved = G.substitute(lin)
        lam = F.pow(row[i], d)
        if moved == G.scale(lam):
            found.append((tuple(row), ProjTransform(F, mat)))

    dd = F.from_int(d)
    for alpha in range(1, F.q):
        if dd:
            scale = F.div(F.sub(alpha, 1), F.mul(lead, dd))
            row = [0, 0, 0]
            row[i] = alpha
            for j in others:
                row[j] = F.mul(scale, sub.get(j, 0))
            try_row(row)
        else:
            for b in range(F.q):
                for c in range(F.q):
                    row = [0, 0, 0]
                    row[i] = alpha
                    row[others[0]], row[others[1]] = b, c
                    try_row(row)
    T = model.transform
    Tinv = T.inverse()
    maps = []
    for row, A in found:
        orig = A if T.is_identity() else Tinv @ A @ T
        label = "lin(" + ",".join(F.to_str(c) for c in row) + ")"
        maps.append(map_from_transform(model, orig, label))
    return maps


def registered_maps(model: CurveModel, registered: Sequence[MapSpec]) -> list[CurveMap]:
    from .expr import parse_map

    out = []
    for r in registered:
        if isinstance(r, CurveMap):
            out.append(transport_map(r, model))
        elif isinstance(r, MapRecipe):
            out.append(r.build(model))
        elif isinstance(r, str):
            (nu, du), (nv, dv) = parse_map(r, model.field)
            out.append(map_make(model, (nu, du), (nv, dv), label=r))
        else:
            out.append(map_make(model, r[0], r[1], label=f"({r[0]}, {r[1]})"))
    return out


def _generating_subset(maps: list[CurveMap], model: CurveModel) -> list[CurveMap]:
    """Drop maps already generated by earlier ones (keeps closures cheap)."""
    chosen: list[CurveMap] = []
    seen = set()
    for m in maps:
        if m.is_identity() or m.key in seen:
            continue
        chosen.append(m)
        G = group_closure(chosen, model=model)
        seen = {e.key for e in G.elements}
    return chosen


def certify_galois(curve: PlaneCurve, P: ProjPoint, registered: Sequence[MapSpec] = (),
                   N: int = 200, seed: int = 0, model: Optional[CurveModel] = None) -> GaloisVerdict:
    _check_outer(curve, P)
    model = model or curve_model(curve, P)
    d = curve.degree
    lin = linear_fiber_automorphisms(curve, P, model)
    extra = [m for m in registered_maps(model, registered) if preserves_fibers(m)]
    gens = _generating_subset(lin + extra, model)
    G = group_closure(gens, cap=4 * d * d, model=model)
    if G.order == d:
        return GaloisVerdict("Certified", P, group=G, note=f"{d} fiber-preserving automorphisms")
    if (curve.field.q - 1) % d:
        return GaloisVerdict("ProbablyGalois", P, group=None,
                             note=f"only {G.order} of {d} automorphisms found; pattern test unavailable")
    v = monte_carlo_galois(curve, P, N, seed)
    if v.kind == "ProbablyGalois":
        v.note = f"only {G.order} of {d} automorphisms found; " + v.note
    return v


@dataclass(frozen=True)
class PointVerdict:
    """Compact per-point result used by scans (picklable)."""

    point: tuple[int, int, int]
    kind: str
    samples: int
    group_order: Optional[int] = None
    structure: Optional[str] = None
    cyclic: Optional[bool] = None
    witness: Optional[str] = None

    def to_json(self) -> dict:
        out = {"point": list(self.point), "verdict": self.kind, "samples": self.samples}
        if self.group_order is not None:
            out["group_order"] = self.group_order
            out["structure"] = self.structure
            out["cyclic"] = self.cyclic
        if self.witness:
            out["witness_line"] = self.witness
        return out


@dataclass
class ScanReport:
    field: FiniteField
    curve: PlaneCurve
    verdicts: list[PointVerdict]
    rational_points: int

    @property
    def outer_count(self) -> int:
        return len(self.verdicts)

    def of_kind(self, kind: str) -> list[tuple[int, int, int]]:
        return [v.point for v in self.verdicts if v.kind == kind]

    @property
    def certified(self) -> list[tuple[int, int, int]]:
        return self.of_kind("Certified")

    @property
    def summary(self) -> dict[str, int]:
        c = Counter(v.kind for v in self.verdicts)
        return {k: c.get(k, 0) for k in ("Certified", "ProbablyGalois", "NotGalois")}

    def to_json(self) -> dict:
        q = self.field.q
        return {
            "field": q,
            "curve": self.curve.to_str(),
            "plane_points": q * q + q + 1,
            "curve_points": self.rational_points,
            "outer_points": self.outer_count,
            "summary": self.summary,
            "verdicts": [v.to_json() for v in self.verdicts],
        }


def examine_point(curve: PlaneCurve, P: ProjPoint, N: int, seed: int,
                  registered: Sequence[MapSpec] = ()) -> PointVerdict:
    """Pattern filter first, then a certification attempt."""
    mc = monte_carlo_galois(curve, P, N, seed)
    if mc.kind == "NotGalois":
        return PointVerdict(P.coords, "NotGalois", mc.report.samples, witness=mc.report.witness)
    v = certify_galois(curve, P, registered, N, seed)
    if v.certified:
        st = group_structure(v.group)
        return PointVerdict(P.coords, "Certified", mc.report.samples, v.group.order, st.tag, st.is_cyclic)
    return PointVerdict(P.coords, v.kind, mc.report.samples, witness=v.witness)


def _scan_worker(args) -> PointVerdict:
    p, k, terms, coords, N, seed, registered = args
    F = field_make(p, k)
    curve = PlaneCurve(MPoly(F, 3, dict(terms)))
    return examine_point(curve, ProjPoint(F, coords), N, seed, registered)


def scan_outer_galois_points(curve: PlaneCurve, N: int = 200, seed: int = 0,
                             registered: Optional[dict] = None, threads: int = 1) -> ScanReport:
    """Examine every rational outer point; ``registered`` maps point coords to map specs."""
    _require_roots_of_unity(curve)
    F = curve.field
    registered = registered or {}
    points = [pt for pt in plane_points(F)]
    outer = [pt for pt in points if not curve.contains(pt)]
    on_curve = len(points) - len(outer)
    reg = {tuple(k): [r for r in v if not isinstance(r, CurveMap)] for k, v in registered.items()}
    if threads > 1:
        terms = tuple(curve.form.terms.items())
        jobs = [(F.p, F.k, terms, pt.coords, N, seed, tuple(reg.get(pt.coords, ()))) for pt in outer]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            verdicts = list(pool.map(_scan_worker, jobs, chunksize=max(1, len(jobs) // (4 * threads))))
    else:
        verdicts = [
            examine_point(curve, pt, N, seed, registered.get(pt.coords, ())) for pt in outer
        ]
    return ScanReport(F, curve, verdicts, on_curve)


@dataclass
class RamificationCensus:
    """Repeated-root profiles of fiber polynomials over lines through P."""

    lines: int
    ramified: int
    profiles: dict[str, int]
    min_index: Optional[int]

    def to_json(self) -> dict:
        return {
            "lines": self.lines,
            "ramified": self.ramified,
            "profiles": dict(sorted(self.profiles.items())),
            "min_index": self.min_index,
        }


def ramification_census(curve: PlaneCurve, P: ProjPoint, max_size: int = 5000) -> RamificationCensus:
    """Exhaust lines over F_{q^j} (q^j <= max_size) and record root multiplicities.

    ``min_index`` is the smallest, over ramified lines, of the largest root
    multiplicity on that line.
    """
    s = FiberSampler(curve, P, bound=max(max_size, curve.field.q))
    profiles: Counter = Counter()
    lines = ramified = 0
    best = None
    for level in s.levels:
        ext = s._ext[level]
        sub = set(ext.embed) if level > 1 else set()
        params = [-1] if level == 1 else []
        params += [a for a in ext.field.elements() if a not in sub]
        for a in params:
            f = s.fiber(level, s.pencil_coords(a))
            lines += 1
            mults = sorted((m for g, m in squarefree_decomposition(f) for _ in range(g.degree)), reverse=True)
            if mults and mults[0] > 1:
                ramified += 1
                profiles["[" + ",".join(map(str, mults)) + "]"] += 1
                best = mults[0] if best is None else min(best, mults[0])
    return RamificationCensus(lines, ramified, dict(profiles), best)
