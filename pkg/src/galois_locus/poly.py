"""Dense univariate polynomials over a finite field and their factorization.

Coefficients are integer element codes (see :mod:`galois_locus.field`), stored
low degree first.  Factorization is squarefree decomposition followed by
distinct-degree and equal-degree splitting; the Frobenius map is applied
through a precomputed matrix of ``T^(q*i) mod f``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import (
    BothZero,
    CharDivides,
    CharDividesM,
    DegreeMismatch,
    FieldMismatch,
    NotRational,
    ZeroPolynomial,
)
from .field import FieldElement, FiniteField


# -- list-level kernels ---------------------------------------------------------

def _strip(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def _add(F: FiniteField, a: Sequence[int], b: Sequence[int]) -> list:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    if F.k == 1:
        p = F.p
        for i, c in enumerate(b):
            out[i] = (out[i] + c) % p
    else:
        add = F.add
        for i, c in enumerate(b):
            if c:
                out[i] = add(out[i], c)
    return _strip(out)


def _neg(F: FiniteField, a: Sequence[int]) -> list:
    neg = F.neg
    return [neg(c) for c in a]


def _sub(F: FiniteField, a: Sequence[int], b: Sequence[int]) -> list:
    return _add(F, a, _neg(F, b))


def _scale(F: FiniteField, a: Sequence[int], c: int) -> list:
    if c == 0:
        return []
    if c == 1:
        return list(a)
    mul = F.mul
    return [mul(x, c) for x in a]


def _mul(F: FiniteField, a: Sequence[int], b: Sequence[int]) -> list:
    if not a or not b:
        return []
    n = len(a) + len(b) - 1
    if F.k == 1:
        p = F.p
        res = [0] * n
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    res[i + j] += x * y
        return _strip([c % p for c in res])
    exp, log, add = F._exp, F._log, F.add
    res = [0] * n
    lb = [(j, log[y]) for j, y in enumerate(b) if y]
    for i, x in enumerate(a):
        if x:
            lx = log[x]
            for j, ly in lb:
                res[i + j] = add(res[i + j], exp[lx + ly])
    return _strip(res)


def _divmod(F: FiniteField, a: Sequence[int], b: Sequence[int]) -> tuple[list, list]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    if len(a) <= db:
        return [], _strip(a)
    inv = F.inv(b[-1])
    quot = [0] * (len(a) - db)
    if F.k == 1:
        p = F.p
        for i in range(len(a) - 1, db - 1, -1):
            c = a[i] * inv % p
            if c:
                quot[i - db] = c
                base = i - db
                for j in range(db + 1):
                    a[base + j] = (a[base + j] - c * b[j]) % p
    else:
        mul, sub = F.mul, F.sub
        for i in range(len(a) - 1, db - 1, -1):
            c = mul(a[i], inv)
            if c:
                quot[i - db] = c
                base = i - db
                for j in range(db + 1):
                    if b[j]:
                        a[base + j] = sub(a[base + j], mul(c, b[j]))
    return _strip(quot), _strip(a[:db])


def _mod(F: FiniteField, a: Sequence[int], b: Sequence[int]) -> list:
    return _divmod(F, a, b)[1]


def _monic(F: FiniteField, a: Sequence[int]) -> list:
    if not a or a[-1] == 1:
        return list(a)
    return _scale(F, a, F.inv(a[-1]))


def _gcd(F: FiniteField, a: Sequence[int], b: Sequence[int]) -> list:
    a, b = _strip(list(a)), _strip(list(b))
    while b:
        a, b = b, _mod(F, a, b)
    return _monic(F, a)


def _powmod(F: FiniteField, a: Sequence[int], e: int, m: Sequence[int]) -> list:
    result = [1]
    base = _mod(F, a, m)
    while e:
        if e & 1:
            result = _mod(F, _mul(F, result, base), m)
        e >>= 1
        if e:
            base = _mod(F, _mul(F, base, base), m)
    return result


def _deriv(F: FiniteField, a: Sequence[int]) -> list:
    out = []
    for i in range(1, len(a)):
        out.append(F.mul(F.from_int(i), a[i]))
    return _strip(out)


def _eval(F: FiniteField, a: Sequence[int], x: int) -> int:
    acc = 0
    mul, add = F.mul, F.add
    for c in reversed(a):
        acc = add(mul(acc, x), c)
    return acc


class Poly:
    """Immutable univariate polynomial over a finite field.

    ``coeffs`` holds element codes, constant term first, without trailing
    zeros; the zero polynomial has ``coeffs == ()``.  ``var`` is cosmetic.
    """

    __slots__ = ("field", "coeffs", "var")

    def __init__(self, field: FiniteField, coeffs: Sequence[int] = (), var: str = "T"):
        self.field = field
        c = list(coeffs)
        _strip(c)
        self.coeffs = tuple(c)
        self.var = var

    @classmethod
    def from_ints(cls, field: FiniteField, ints: Sequence[int], var: str = "T") -> Poly:
        return cls(field, [field.from_int(i) for i in ints], var)

    @classmethod
    def monomial(cls, field: FiniteField, n: int, c: int = 1, var: str = "T") -> Poly:
        return cls(field, [0] * n + [c], var)

    @classmethod
    def const(cls, field: FiniteField, c: int, var: str = "T") -> Poly:
        return cls(field, [c], var)

    def _new(self, coeffs) -> Poly:
        return Poly(self.field, coeffs, self.var)

    def _check(self, other: Poly):
        if other.field != self.field:
            raise FieldMismatch(f"{other.field!r} vs {self.field!r}")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (1,)

    def __add__(self, other: Poly) -> Poly:
        self._check(other)
        return self._new(_add(self.field, self.coeffs, other.coeffs))

    def __sub__(self, other: Poly) -> Poly:
        self._check(other)
        return self._new(_sub(self.field, self.coeffs, other.coeffs))

    def __neg__(self) -> Poly:
        return self._new(_neg(self.field, self.coeffs))

    def __mul__(self, other: Poly) -> Poly:
        self._check(other)
        return self._new(_mul(self.field, self.coeffs, other.coeffs))

    def scale(self, c: int) -> Poly:
        return self._new(_scale(self.field, self.coeffs, c))

    def __pow__(self, n: int) -> Poly:
        result = self._new([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __divmod__(self, other: Poly) -> tuple[Poly, Poly]:
        self._check(other)
        q, r = _divmod(self.field, self.coeffs, other.coeffs)
        return self._new(q), self._new(r)

    def __floordiv__(self, other: Poly) -> Poly:
        return divmod(self, other)[0]

    def __mod__(self, other: Poly) -> Poly:
        return divmod(self, other)[1]

    def powmod(self, e: int, m: Poly) -> Poly:
        return self._new(_powmod(self.field, self.coeffs, e, m.coeffs))

    def monic(self) -> Poly:
        return self._new(_monic(self.field, self.coeffs))

    def derivative(self) -> Poly:
        return self._new(_deriv(self.field, self.coeffs))

    def __call__(self, x: int) -> int:
        return _eval(self.field, self.coeffs, x)

    def compose(self, inner: Poly) -> Poly:
        acc = self._new([])
        for c in reversed(self.coeffs):
            acc = acc * inner + self._new([c])
        return acc

    def embed(self, ext) -> Poly:
        """Image under a field embedding (:class:`~galois_locus.field.Extension`)."""
        table = ext.embed
        return Poly(ext.field, [table[c] for c in self.coeffs], self.var)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        return f"Poly({self.to_str()}, {self.field!r})"

    def to_str(self, var: Optional[str] = None) -> str:
        var = var or self.var
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            cs = self.field.to_str(c)
            if self.field.k > 1 and "+" in cs:
                cs = f"({cs})"
            if i == 0:
                terms.append(cs)
                continue
            mono = var if i == 1 else f"{var}^{i}"
            terms.append(mono if c == 1 else f"{cs}*{mono}")
        return " + ".join(terms)


def int_gcd(a: int, b: int) -> int:
    return math.gcd(a, b)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd; raises BothZero for gcd(0, 0)."""
    a._check(b)
    if a.is_zero() and b.is_zero():
        raise BothZero("gcd of two zero polynomials")
    return a._new(_gcd(a.field, a.coeffs, b.coeffs))


def poly_xgcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Return (g, s, t) with s*a + t*b = g monic."""
    F = a.field
    r0, r1 = list(a.coeffs), list(b.coeffs)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = _divmod(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _sub(F, s0, _mul(F, q, s1))
        t0, t1 = t1, _sub(F, t0, _mul(F, q, t1))
    if not r0:
        raise BothZero("gcd of two zero polynomials")
    inv = F.inv(r0[-1])
    return (
        a._new(_scale(F, r0, inv)),
        a._new(_scale(F, s0, inv)),
        a._new(_scale(F, t0, inv)),
    )


# -- factorization ----------------------------------------------------------------

@dataclass(frozen=True)
class PolyFactorization:
    field: FiniteField
    unit: int
    factors: tuple[tuple[Poly, int], ...]

    def expand(self) -> Poly:
        acc = Poly(self.field, [self.unit])
        for g, e in self.factors:
            acc = acc * g**e
        return acc

    def degrees(self) -> list[int]:
        return sorted(g.degree for g, e in self.factors for _ in range(e))


def _pth_root(F: FiniteField, a: Sequence[int]) -> list:
    """Inverse Frobenius on a polynomial whose exponents are multiples of p."""
    p = F.p
    e = F.q // p  # x -> x^(q/p) inverts x -> x^p on F_q
    return _strip([F.pow(a[i], e) for i in range(0, len(a), p)])


def squarefree_decomposition(f: Poly) -> list[tuple[Poly, int]]:
    """Monic squarefree factors with multiplicities (Yun, adapted to char p)."""
    if f.is_zero():
        raise ZeroPolynomial("squarefree decomposition of zero")
    F = f.field
    out: dict[int, list] = {}

    def rec(a: list, mult: int):
        if len(a) <= 1:
            return
        da = _deriv(F, a)
        if not da:
            rec(_pth_root(F, a), mult * F.p)
            return
        c = _gcd(F, a, da)
        w = _divmod(F, a, c)[0]
        i = 1
        while len(w) > 1:
            y = _gcd(F, w, c)
            fac = _divmod(F, w, y)[0]
            if len(fac) > 1:
                key = i * mult
                out[key] = _mul(F, out[key], fac) if key in out else fac
            i += 1
            w = y
            c = _divmod(F, c, y)[0]
        if len(c) > 1:
            rec(_pth_root(F, c), mult * F.p)

    rec(_monic(F, f.coeffs), 1)
    return [(f._new(_monic(F, g)), m) for m, g in sorted(out.items())]


class _Frobenius:
    """Matrix of the q-power map on F_q[T]/(f)."""

    def __init__(self, F: FiniteField, f: Sequence[int]):
        self.F = F
        self.f = list(f)
        n = len(f) - 1
        xq = _powmod(F, [0, 1], F.q, f)
        rows = [[1]]
        for _ in range(1, n):
            rows.append(_mod(F, _mul(F, rows[-1], xq), f))
        self.rows = rows
        self.xq = xq

    def __call__(self, g: Sequence[int]) -> list:
        F = self.F
        n = len(self.f) - 1
        acc = [0] * n
        if F.k == 1:
            p = F.p
            for c, row in zip(g, self.rows):
                if c:
                    for j, r in enumerate(row):
                        acc[j] += c * r
            return _strip([x % p for x in acc])
        mul, add = F.mul, F.add
        for c, row in zip(g, self.rows):
            if c:
                for j, r in enumerate(row):
                    if r:
                        acc[j] = add(acc[j], mul(c, r))
        return _strip(acc)


def distinct_degree(f: Poly) -> list[tuple[Poly, int]]:
    """Split a monic squarefree polynomial by the degree of its irreducible factors."""
    F = f.field
    f0 = list(_monic(F, f.coeffs))
    if len(f0) <= 1:
        return []
    frob = _Frobenius(F, f0)
    rest = f0
    out = []
    h = [0, 1]
    r = 0
    while len(rest) - 1 >= 2 * (r + 1):
        r += 1
        h = frob(h)
        g = _gcd(F, rest, _mod(F, _sub(F, h, [0, 1]), rest) if len(rest) > 1 else [])
        if len(g) > 1:
            out.append((f._new(g), r))
            rest = _divmod(F, rest, g)[0]
    if len(rest) > 1:
        out.append((f._new(rest), len(rest) - 1))
    return out


def _random_poly(F: FiniteField, n: int, rng: random.Random) -> list:
    return _strip([rng.randrange(F.q) for _ in range(n)])


def equal_degree(f: Poly, r: int, rng: random.Random) -> list[Poly]:
    """Split a monic squarefree product of degree-r irreducibles (Cantor-Zassenhaus)."""
    F = f.field
    n = f.degree
    if n == r:
        return [f.monic()]
    if n % r:
        raise ValueError("degree not a multiple of the factor degree")
    fl = list(_monic(F, f.coeffs))
    frob = _Frobenius(F, fl)
    while True:
        a = _random_poly(F, n, rng)
        if len(a) <= 1:
            continue
        if F.p == 2:
            # absolute trace to F_2 of F_{q^r}: sum of a^(2^i), i < k*r
            t = list(a)
            cur = list(a)
            for _ in range(F.k * r - 1):
                cur = _mod(F, _mul(F, cur, cur), fl)
                t = _add(F, t, cur)
            b = t
        else:
            # a^((q^r - 1)/2) = (a * a^q * ... * a^(q^(r-1)))^((q-1)/2)
            norm = list(a)
            cur = list(a)
            for _ in range(r - 1):
                cur = frob(cur)
                norm = _mod(F, _mul(F, norm, cur), fl)
            b = _sub(F, _powmod(F, norm, (F.q - 1) // 2, fl), [1])
        g = _gcd(F, fl, b)
        if 1 < len(g) < len(fl):
            g_poly = f._new(g)
            h_poly = f._new(_divmod(F, fl, g)[0])
            return equal_degree(g_poly, r, rng) + equal_degree(h_poly, r, rng)


def _sort_key(item):
    g = item[0] if isinstance(item, tuple) else item
    return (g.degree, tuple(reversed(g.coeffs)))


def poly_factor(f: Poly, rng: Optional[random.Random] = None, seed: int = 0) -> PolyFactorization:
    """Complete factorization into monic irreducibles.

    Equal-degree splitting draws from ``rng`` (or a fresh ``Random(seed)``);
    the factor list is sorted, so the result does not depend on the draws.
    """
    if f.is_zero():
        raise ZeroPolynomial("cannot factor the zero polynomial")
    if rng is None:
        rng = random.Random(seed)
    factors = []
    for part, mult in squarefree_decomposition(f):
        for block, r in distinct_degree(part):
            for g in equal_degree(block, r, rng):
                factors.append((g, mult))
    factors.sort(key=_sort_key)
    return PolyFactorization(f.field, f.lc, tuple(factors))


def factor_degrees(f: Poly) -> list[int]:
    """Degrees of the irreducible factors of a squarefree polynomial (no splitting)."""
    out = []
    for block, r in distinct_degree(f.monic()):
        out.extend([r] * (block.degree // r))
    return sorted(out)


def is_squarefree(f: Poly) -> bool:
    if f.degree <= 0:
        return True
    return poly_gcd(f, f.derivative()).degree == 0


def is_irreducible(f: Poly) -> bool:
    if f.degree <= 0:
        return False
    if not is_squarefree(f):
        return False
    dd = distinct_degree(f.monic())
    return len(dd) == 1 and dd[0][1] == f.degree


def poly_roots(f: Poly, rng: Optional[random.Random] = None) -> list[int]:
    """Distinct roots of f in its coefficient field, sorted by code."""
    if f.is_zero():
        raise ZeroPolynomial("every element is a root of zero")
    if f.degree <= 0:
        return []
    F = f.field
    rng = rng or random.Random(0)
    fm = list(_monic(F, f.coeffs))
    xq = _powmod(F, [0, 1], F.q, fm)
    g = f._new(_gcd(F, fm, _sub(F, xq, [0, 1])))
    if g.degree <= 0:
        return []
    roots = [F.neg(h.coeffs[0]) for h in equal_degree(g, 1, rng)]
    return sorted(roots)


def roots_of_unity(field: FiniteField, d: int) -> list[FieldElement]:
    """The d-th roots of unity as powers of a primitive one.

    The list is ``[z, z^2, ..., z^(d-1), 1]`` with ``z = g^((q-1)/d)`` for the
    field's primitive element ``g``, so the first entry is primitive.
    """
    if d < 1:
        raise ValueError("d must be positive")
    if d % field.p == 0:
        raise CharDivides(f"characteristic {field.p} divides {d}")
    if (field.q - 1) % d:
        raise NotRational(f"{d} does not divide q - 1 = {field.q - 1}")
    z = field.exp((field.q - 1) // d)
    return [FieldElement(field, field.pow(z, i)) for i in range(1, d + 1)]


def poly_mth_root_shifted(c: Poly, d: int, m: int) -> Optional[tuple[Poly, FieldElement]]:
    """Find h of degree d/m and a constant s with ``-c + s == h**m``.

    h is built top-down by matching the coefficients of x^(d-1) .. x^(d-d/m)
    of ``-c``; its leading coefficient is the least m-th root of the leading
    coefficient of ``-c``.  Returns None when no such pair exists over the
    coefficient field.
    """
    F = c.field
    if c.degree != d:
        raise DegreeMismatch(f"deg c = {c.degree}, expected {d}")
    if m < 1 or d % m:
        raise DegreeMismatch(f"{m} does not divide {d}")
    if m % F.p == 0:
        raise CharDividesM(f"characteristic {F.p} divides m = {m}")
    target = -c
    n = d // m
    lead_roots = F.nth_roots(target.lc, m)
    if not lead_roots:
        return None
    h = [0] * n + [lead_roots[0]]
    # coefficient of x^(d-j) in h^m is m*h_n^(m-1)*h_{n-j} + (terms in h_{n-1..n-j+1})
    denom = F.mul(F.from_int(m), F.pow(h[n], m - 1))
    for j in range(1, n + 1):
        partial = Poly(F, h) ** m
        have = partial.coeffs[d - j] if d - j < len(partial.coeffs) else 0
        want = target.coeffs[d - j] if d - j < len(target.coeffs) else 0
        h[n - j] = F.div(F.sub(want, have), denom)
    hp = Poly(F, h, c.var)
    diff = hp**m - target
    if diff.degree > 0:
        return None
    s = diff.coeffs[0] if diff.coeffs else 0
    return hp, FieldElement(F, s)
