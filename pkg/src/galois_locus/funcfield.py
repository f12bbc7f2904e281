"""The function field K(C) = F_q(t)[w]/(f) of a plane curve seen from an outer point.

``t`` is the coordinate of the pencil of lines through the point and ``w`` is
the fiber coordinate, so f is monic of degree d in w.  Elements are stored as
d polynomial numerators over one monic denominator with no common factor,
which makes equality syntactic.
"""

from __future__ import annotations

from functools import cached_property
from typing import Optional, Sequence

from .errors import DenominatorVanishes, NotInvertible, PointOnCurve, ReducibleModel
from .field import FiniteField
from .geometry import PlaneCurve, ProjPoint, ProjTransform, move_point_to_vertex, transform_form
from .mpoly import MPoly
from .poly import Poly, poly_gcd


class RatFunc:
    """A reduced fraction of polynomials in t with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Optional[Poly] = None, reduced: bool = False):
        F = num.field
        if den is None:
            den = Poly(F, [1])
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num, self.den = num, Poly(F, [1])
            return
        if not reduced:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
        lc = den.lc
        if lc != 1:
            inv = F.inv(lc)
            num, den = num.scale(inv), den.scale(inv)
        self.num, self.den = num, den

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, o: RatFunc) -> RatFunc:
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    def __neg__(self) -> RatFunc:
        return RatFunc(-self.num, self.den, reduced=True)

    def __sub__(self, o: RatFunc) -> RatFunc:
        return self + (-o)

    def __mul__(self, o: RatFunc) -> RatFunc:
        if self.is_zero() or o.is_zero():
            return RatFunc(Poly(self.num.field, []))
        return RatFunc(self.num * o.num, self.den * o.den)

    def inverse(self) -> RatFunc:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.den, self.num, reduced=True)

    def __truediv__(self, o: RatFunc) -> RatFunc:
        return self * o.inverse()

    def __eq__(self, o):
        return isinstance(o, RatFunc) and self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        if self.den.is_one():
            return self.num.to_str("t")
        return f"({self.num.to_str('t')})/({self.den.to_str('t')})"


class CurveModel:
    """Affine chart of a curve adapted to projection from an outer point P.

    The plane is first moved so that P becomes (1:0:0) unless P already is
    (1:0:0) or (0:1:0).  In the chart Z = 1 with coordinates (x, y), the fiber
    coordinate w is x when P = (1:0:0) and y when P = (0:1:0); the other one is
    the pencil coordinate t.  ``transform`` maps original coordinates to chart
    coordinates (identity for the two vertices).
    """

    def __init__(self, curve: PlaneCurve, P: ProjPoint):
        if curve.contains(P):
            raise PointOnCurve(f"{P} lies on the curve")
        F = curve.field
        self.curve = curve
        self.point = P
        self.field = F
        self.d = curve.degree
        if P.coords == (1, 0, 0):
            self.fiber = 0
            self.transform = ProjTransform.identity(F)
            form = curve.form
        elif P.coords == (0, 1, 0):
            self.fiber = 1
            self.transform = ProjTransform.identity(F)
            form = curve.form
        else:
            self.fiber = 0
            self.transform = move_point_to_vertex(P)
            form = transform_form(curve.form, self.transform.inverse())
        self.chart_form = form
        # f(x, y) = form(x, y, 1), made monic in the fiber variable
        terms = {}
        for (a, b, c), v in form.terms.items():
            terms[(a, b)] = F.add(terms.get((a, b), 0), v)
        f = MPoly(F, 2, terms)
        lead = {e: v for e, v in f.terms.items() if e[self.fiber] == self.d}
        # the w^d coefficient is form(P') with P' the vertex, a nonzero constant
        lc = next(iter(lead.values()))
        self.f = f.scale(F.inv(lc))
        self.base = 1 - self.fiber
        coeffs = [[0] * (self.d + 1) for _ in range(self.d + 1)]
        for e, v in self.f.terms.items():
            coeffs[e[self.fiber]][e[self.base]] = v
        self.fcoeffs = [Poly(F, c, "t") for c in coeffs]  # f = sum fcoeffs[k] w^k
        self._inv_cache: dict = {}

    @property
    def names(self) -> tuple[str, str]:
        return ("x", "y")

    @property
    def pencil_name(self) -> str:
        return self.names[self.base]

    @property
    def fiber_name(self) -> str:
        return self.names[self.fiber]

    def same_chart(self, other: CurveModel) -> bool:
        return self.curve == other.curve and self.transform == other.transform

    # elements ------------------------------------------------------------

    def zero(self) -> FunctionFieldElement:
        return FunctionFieldElement(self, [Poly(self.field, [], "t")] * self.d, Poly(self.field, [1], "t"))

    def const(self, c: int) -> FunctionFieldElement:
        nums = [Poly(self.field, [c], "t")] + [Poly(self.field, [], "t")] * (self.d - 1)
        return FunctionFieldElement(self, nums, Poly(self.field, [1], "t"))

    def from_ratfunc(self, r: RatFunc) -> FunctionFieldElement:
        nums = [r.num] + [Poly(self.field, [], "t")] * (self.d - 1)
        return FunctionFieldElement(self, nums, r.den, reduced=True)

    @cached_property
    def t(self) -> FunctionFieldElement:
        nums = [Poly(self.field, [0, 1], "t")] + [Poly(self.field, [], "t")] * (self.d - 1)
        return FunctionFieldElement(self, nums, Poly(self.field, [1], "t"))

    @cached_property
    def w(self) -> FunctionFieldElement:
        nums = [Poly(self.field, [], "t")] * self.d
        nums[1] = Poly(self.field, [1], "t")
        return FunctionFieldElement(self, nums, Poly(self.field, [1], "t"))

    @cached_property
    def coords(self) -> tuple[FunctionFieldElement, FunctionFieldElement]:
        """The chart coordinates (x, y) as elements."""
        return (self.w, self.t) if self.fiber == 0 else (self.t, self.w)

    def evaluate(self, mp: MPoly, images: Sequence[FunctionFieldElement]) -> FunctionFieldElement:
        """Evaluate a polynomial in (x, y) at two elements."""
        cache = [{0: self.const(1), 1: images[0]}, {0: self.const(1), 1: images[1]}]

        def power(i, k):
            c = cache[i]
            if k not in c:
                half = power(i, k // 2)
                sq = half * half
                c[k] = sq * images[i] if k % 2 else sq
            return c[k]

        acc = self.zero()
        # group by power of the first variable to share products
        for e, c in mp.terms.items():
            term = power(0, e[0]) * power(1, e[1]) if e[0] and e[1] else (
                power(0, e[0]) if e[0] else power(1, e[1])
            )
            acc = acc + term.scale(c)
        return acc

    def evaluate_rational(self, num: MPoly, den: MPoly,
                          images: Optional[Sequence[FunctionFieldElement]] = None) -> FunctionFieldElement:
        images = images or self.coords
        d = self.evaluate(den, images)
        if d.is_zero():
            raise DenominatorVanishes("denominator vanishes identically on the curve")
        return self.evaluate(num, images) / d

    def reduce_vector(self, vec: list[Poly]) -> list[Poly]:
        """Reduce a coefficient vector in w modulo f (entries in F_q[t])."""
        d = self.d
        vec = list(vec)
        for k in range(len(vec) - 1, d - 1, -1):
            c = vec[k]
            if c.is_zero():
                continue
            # w^k = w^{k-d} * w^d = -w^{k-d} * sum_{j<d} f_j w^j
            for j in range(d):
                fj = self.fcoeffs[j]
                if not fj.is_zero():
                    vec[k - d + j] = vec[k - d + j] - c * fj
        vec = vec[:d]
        while len(vec) < d:
            vec.append(Poly(self.field, [], "t"))
        return vec

    def __repr__(self):
        return f"CurveModel(f = {self.f.to_str(self.names)}, t = {self.pencil_name})"


def curve_model(curve: PlaneCurve, P: ProjPoint) -> CurveModel:
    return CurveModel(curve, P)


class FunctionFieldElement:
    __slots__ = ("model", "nums", "den")

    def __init__(self, model: CurveModel, nums: Sequence[Poly], den: Poly, reduced: bool = False):
        self.model = model
        nums = list(nums)
        F = model.field
        if all(n.is_zero() for n in nums):
            self.nums = tuple(Poly(F, [], "t") for _ in nums)
            self.den = Poly(F, [1], "t")
            return
        if not reduced and den.degree > 0:
            g = den
            for n in nums:
                if g.degree == 0:
                    break
                if not n.is_zero():
                    g = poly_gcd(g, n)
            if g.degree > 0:
                nums = [n // g for n in nums]
                den = den // g
        lc = den.lc
        if lc != 1:
            inv = F.inv(lc)
            nums = [n.scale(inv) for n in nums]
            den = den.scale(inv)
        self.nums = tuple(nums)
        self.den = den

    @property
    def key(self):
        return (tuple(n.coeffs for n in self.nums), self.den.coeffs)

    def is_zero(self) -> bool:
        return all(n.is_zero() for n in self.nums)

    def is_w_free(self) -> bool:
        return all(n.is_zero() for n in self.nums[1:])

    def __eq__(self, other):
        if not isinstance(other, FunctionFieldElement):
            return NotImplemented
        return self.model is other.model and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __add__(self, o: FunctionFieldElement) -> FunctionFieldElement:
        if self.den == o.den:
            return FunctionFieldElement(self.model, [a + b for a, b in zip(self.nums, o.nums)], self.den)
        nums = [a * o.den + b * self.den for a, b in zip(self.nums, o.nums)]
        return FunctionFieldElement(self.model, nums, self.den * o.den)

    def __neg__(self) -> FunctionFieldElement:
        return FunctionFieldElement(self.model, [-a for a in self.nums], self.den, reduced=True)

    def __sub__(self, o: FunctionFieldElement) -> FunctionFieldElement:
        return self + (-o)

    def scale(self, c: int) -> FunctionFieldElement:
        if c == 1:
            return self
        return FunctionFieldElement(self.model, [a.scale(c) for a in self.nums], self.den, reduced=True)

    def __mul__(self, o: FunctionFieldElement) -> FunctionFieldElement:
        m = self.model
        F = m.field
        zero = Poly(F, [], "t")
        prod = [zero] * (2 * m.d - 1)
        for i, a in enumerate(self.nums):
            if a.is_zero():
                continue
            for j, b in enumerate(o.nums):
                if not b.is_zero():
                    prod[i + j] = prod[i + j] + a * b
        return FunctionFieldElement(m, m.reduce_vector(prod), self.den * o.den)

    def __pow__(self, n: int) -> FunctionFieldElement:
        if n < 0:
            return self.inverse() ** (-n)
        result = self.model.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def inverse(self) -> FunctionFieldElement:
        m = self.model
        if self.is_zero():
            raise NotInvertible("zero has no inverse")
        if self.is_w_free():
            r = RatFunc(self.den, self.nums[0], reduced=True)
            return m.from_ratfunc(r)
        key = self.key
        hit = m._inv_cache.get(key)
        if hit is not None:
            return hit
        inv = self._solve_inverse()
        m._inv_cache[key] = inv
        return inv

    def _solve_inverse(self) -> FunctionFieldElement:
        # multiplication-by-A matrix over F_q(t); solve A * b = 1
        m = self.model
        d = m.d
        F = m.field
        zero = Poly(F, [], "t")
        cols = []
        vec = list(self.nums)
        for j in range(d):
            cols.append(vec)
            vec = m.reduce_vector([zero] + vec)
        rows = [[RatFunc(cols[j][i]) for j in range(d)] + [RatFunc(Poly(F, [1 if i == 0 else 0], "t"))]
                for i in range(d)]
        for c in range(d):
            piv = next((r for r in range(c, d) if not rows[r][c].is_zero()), None)
            if piv is None:
                raise ReducibleModel("element is a zero divisor: f is reducible over F_q(t)")
            rows[c], rows[piv] = rows[piv], rows[c]
            inv = rows[c][c].inverse()
            rows[c] = [x * inv for x in rows[c]]
            for r in range(d):
                if r != c and not rows[r][c].is_zero():
                    fac = rows[r][c]
                    rows[r] = [a - fac * b for a, b in zip(rows[r], rows[c])]
        sol = [rows[i][d] for i in range(d)]
        # common denominator, then multiply back by self.den
        den = Poly(F, [1], "t")
        for s in sol:
            den = den * (s.den // poly_gcd(den, s.den))
        nums = [s.num * (den // s.den) * self.den for s in sol]
        return FunctionFieldElement(m, nums, den)

    def __truediv__(self, o: FunctionFieldElement) -> FunctionFieldElement:
        return self * o.inverse()

    def to_mpolys(self) -> tuple[MPoly, MPoly]:
        """This element as a quotient of polynomials in the chart coordinates (x, y)."""
        m = self.model
        F = m.field
        terms = {}
        for k, n in enumerate(self.nums):
            for j, c in enumerate(n.coeffs):
                if c:
                    e = [0, 0]
                    e[m.fiber] = k
                    e[m.base] = j
                    terms[tuple(e)] = c
        dterms = {}
        for j, c in enumerate(self.den.coeffs):
            if c:
                e = [0, 0]
                e[m.base] = j
                dterms[tuple(e)] = c
        return MPoly(F, 2, terms), MPoly(F, 2, dterms)

    def evaluate(self, t0: int, w0: int, ext=None) -> Optional[int]:
        """Value at the chart point with pencil coordinate t0 and fiber coordinate w0.

        Coordinates may live in an extension given by ``ext``.  Returns None
        when the denominator vanishes there.
        """
        F = ext.field if ext else self.model.field
        den = self.den.embed(ext) if ext else self.den
        dv = den(t0)
        if dv == 0:
            return None
        acc = 0
        wp = 1
        for n in self.nums:
            nn = n.embed(ext) if ext else n
            acc = F.add(acc, F.mul(nn(t0), wp))
            wp = F.mul(wp, w0)
        return F.div(acc, dv)

    def to_str(self) -> str:
        m = self.model
        t, w = m.pencil_name, m.fiber_name
        parts = []
        for k, n in enumerate(self.nums):
            if n.is_zero():
                continue
            s = n.to_str(t)
            mono = "" if k == 0 else (w if k == 1 else f"{w}^{k}")
            if not mono:
                parts.append(s)
            elif n.is_one():
                parts.append(mono)
            elif len(n.coeffs) - sum(1 for c in n.coeffs if c == 0) == 1 and "+" not in s:
                parts.append(f"{s}*{mono}")
            else:
                parts.append(f"({s})*{mono}")
        num = " + ".join(parts) or "0"
        if self.den.is_one():
            return num
        if len(parts) > 1:
            num = f"({num})"
        return f"{num}/({self.den.to_str(t)})"

    def __repr__(self):
        return self.to_str()
