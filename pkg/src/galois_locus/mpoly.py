"""Sparse multivariate polynomials over a finite field (exponent tuple -> code)."""

from __future__ import annotations

from typing import Mapping, Optional, Sequence

from .errors import FieldMismatch
from .field import FiniteField
from .poly import Poly


class MPoly:
    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field: FiniteField, nvars: int, terms: Optional[Mapping[tuple, int]] = None):
        self.field = field
        self.nvars = nvars
        self.terms = {e: c for e, c in (terms or {}).items() if c}

    @classmethod
    def var(cls, field: FiniteField, nvars: int, i: int) -> MPoly:
        e = [0] * nvars
        e[i] = 1
        return cls(field, nvars, {tuple(e): 1})

    @classmethod
    def const(cls, field: FiniteField, nvars: int, c: int) -> MPoly:
        return cls(field, nvars, {(0,) * nvars: c})

    @classmethod
    def linear(cls, field: FiniteField, coeffs: Sequence[int]) -> MPoly:
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            e = [0] * n
            e[i] = 1
            terms[tuple(e)] = c
        return cls(field, n, terms)

    def _check(self, other: MPoly):
        if other.field != self.field or other.nvars != self.nvars:
            raise FieldMismatch("incompatible multivariate polynomials")

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def __add__(self, other: MPoly) -> MPoly:
        self._check(other)
        add = self.field.add
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = add(out.get(e, 0), c)
        return MPoly(self.field, self.nvars, out)

    def __neg__(self) -> MPoly:
        neg = self.field.neg
        return MPoly(self.field, self.nvars, {e: neg(c) for e, c in self.terms.items()})

    def __sub__(self, other: MPoly) -> MPoly:
        return self + (-other)

    def __mul__(self, other: MPoly) -> MPoly:
        self._check(other)
        mul, add = self.field.mul, self.field.add
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = add(out.get(e, 0), mul(c1, c2))
        return MPoly(self.field, self.nvars, out)

    def scale(self, c: int) -> MPoly:
        mul = self.field.mul
        return MPoly(self.field, self.nvars, {e: mul(v, c) for e, v in self.terms.items()})

    def __pow__(self, n: int) -> MPoly:
        result = MPoly.const(self.field, self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __call__(self, point: Sequence[int]) -> int:
        F = self.field
        mul, add = F.mul, F.add
        powers = []
        for i, x in enumerate(point):
            top = self.degree_in(i)
            pw = [1]
            for _ in range(max(top, 0)):
                pw.append(mul(pw[-1], x))
            powers.append(pw)
        acc = 0
        for e, c in self.terms.items():
            v = c
            for i, k in enumerate(e):
                if k:
                    v = mul(v, powers[i][k])
            acc = add(acc, v)
        return acc

    def partial(self, i: int) -> MPoly:
        F = self.field
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = F.mul(c, F.from_int(e[i]))
        return MPoly(F, self.nvars, out)

    def substitute(self, images: Sequence[MPoly]) -> MPoly:
        """Replace variable i by ``images[i]`` (all images share one ring)."""
        ring_vars = images[0].nvars
        F = self.field
        cache: list[dict] = [{0: MPoly.const(F, ring_vars, 1)} for _ in images]

        def power(i, k):
            c = cache[i]
            if k not in c:
                c[k] = power(i, k - 1) * images[i]
            return c[k]

        acc = MPoly(F, ring_vars)
        for e, c in self.terms.items():
            term = MPoly.const(F, ring_vars, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            acc = acc + term
        return acc

    def substitute_univariate(self, images: Sequence[Poly]) -> Poly:
        """Evaluate with univariate polynomial arguments."""
        F = self.field
        cache: list[dict] = [{0: Poly(F, [1])} for _ in images]

        def power(i, k):
            c = cache[i]
            if k not in c:
                c[k] = power(i, k - 1) * images[i]
            return c[k]

        acc = Poly(F, [])
        for e, c in self.terms.items():
            term = Poly(F, [c])
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            acc = acc + term
        return acc

    def map_coeffs(self, field: FiniteField, table: Sequence[int]) -> MPoly:
        return MPoly(field, self.nvars, {e: table[c] for e, c in self.terms.items()})

    def to_univariate(self, i: int, var: str = "T") -> Poly:
        coeffs = [0] * (self.degree_in(i) + 1)
        for e, c in self.terms.items():
            if any(k for j, k in enumerate(e) if j != i):
                raise ValueError("not univariate")
            coeffs[e[i]] = c
        return Poly(self.field, coeffs, var)

    def __eq__(self, other):
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.field == other.field and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.field, self.nvars, frozenset(self.terms.items())))

    def to_str(self, names: Sequence[str]) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=lambda e: (-sum(e), tuple(-k for k in e))):
            c = self.terms[e]
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k
            )
            cs = self.field.to_str(c)
            if self.field.k > 1 and "+" in cs:
                cs = f"({cs})"
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        names = "XYZ" if self.nvars == 3 else ("xy" if self.nvars == 2 else [f"v{i}" for i in range(self.nvars)])
        return f"MPoly({self.to_str(names)}, {self.field!r})"
