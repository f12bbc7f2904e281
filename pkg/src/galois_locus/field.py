"""Finite fields F_{p^k} with integer-coded elements.

An element of F_{p^k} is stored as the integer ``sum(c_i * p**i)`` where
``c_0 + c_1 t + ... + c_{k-1} t^{k-1}`` is its residue modulo the field's
defining polynomial.  Prime-field elements therefore keep their usual integer
value in every extension.  Multiplication goes through exp/log tables built
from the least primitive element; addition in proper extensions uses Zech
logarithms.
"""

from __future__ import annotations

import functools
import math
import random
from dataclasses import dataclass

from .errors import FieldMismatch, NotPrime, SizeExceeded

DEFAULT_BOUND = 1 << 20


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    r = math.isqrt(n)
    f = 3
    while f <= r:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def divisors(n: int) -> list[int]:
    return [k for k in range(1, n + 1) if n % k == 0]


# -- dense polynomial helpers over F_p (lists, low degree first) ------------
# Used only to find moduli and primitive elements before a field exists.

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, m, p):
    a = list(a)
    dm = len(m) - 1
    inv = pow(m[-1], p - 2, p)
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] * inv % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return _trim(a[:dm] if len(a) > dm else a)


def _pmulmod(a, b, m, p):
    if not a or not b:
        return []
    res = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                res[i + j] += x * y
    return _pmod([c % p for c in res], m, p)


def _ppowmod(a, e, m, p):
    result = [1]
    base = _pmod(a, m, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, m, p)
        e >>= 1
        if e:
            base = _pmulmod(base, base, m, p)
    return result


def _pgcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _psub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def _is_irreducible_fp(m, p):
    """Rabin's test for a monic polynomial over F_p."""
    k = len(m) - 1
    x = [0, 1]
    if _psub(_ppowmod(x, p**k, m, p), x, p):
        return False
    for r in prime_factors(k):
        h = _psub(_ppowmod(x, p ** (k // r), m, p), x, p)
        if len(_pgcd(m, h, p)) != 1:
            return False
    return True


def least_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Least monic irreducible of degree k over F_p.

    Candidates are ordered by the integer code of their lower coefficients,
    so the comparison is lexicographic with the highest coefficient first.
    """
    if k == 1:
        return (0, 1)
    for code in range(p**k):
        low = [(code // p**i) % p for i in range(k)]
        if low[0] == 0:
            continue
        m = low + [1]
        if _is_irreducible_fp(m, p):
            return tuple(m)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class FiniteField:
    """The field F_{p^k}; construct through :func:`field_make`."""

    def __init__(self, p: int, k: int, modulus: tuple[int, ...]):
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = tuple(modulus)
        self._extensions: dict[int, Extension] = {}
        self._build_tables()

    # construction --------------------------------------------------------

    def _digits(self, a: int) -> list[int]:
        p = self.p
        out = []
        for _ in range(self.k):
            out.append(a % p)
            a //= p
        return _trim(out)

    def _code(self, digits) -> int:
        p = self.p
        c = 0
        for d in reversed(digits):
            c = c * p + d
        return c

    def _build_tables(self):
        p, q, k = self.p, self.q, self.k
        n = q - 1
        facs = prime_factors(n) if n > 1 else []
        m = list(self.modulus)
        g = None
        for cand in range(1, q):
            digs = self._digits(cand)
            if not digs:
                continue
            if all(_ppowmod(digs, n // r, m, p) != [1] for r in facs):
                g = cand
                break
        assert g is not None
        self.primitive = g
        exp = [0] * (2 * n + 1)
        log = [0] * q
        if k == 1:
            x = 1
            for i in range(n):
                exp[i] = x
                log[x] = i
                x = x * g % p
        else:
            gd = self._digits(g)
            cur = [1]
            for i in range(n):
                c = self._code(cur)
                exp[i] = c
                log[c] = i
                cur = _pmulmod(cur, gd, m, p)
        for i in range(n, 2 * n + 1):
            exp[i] = exp[i - n]
        self._exp = exp
        self._log = log
        self._half = n // 2 if p != 2 else 0
        if k == 1:
            self.add = self._add_prime
            self.sub = self._sub_prime
            self.neg = self._neg_prime
            self.mul = self._mul_prime
        else:
            zech = [-1] * n
            for i in range(n):
                c = exp[i]
                c0 = c % p
                one_plus = c - c0 + (c0 + 1) % p
                zech[i] = log[one_plus] if one_plus else -1
            self._zech = zech

    # arithmetic on codes ---------------------------------------------------

    def _add_prime(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def _sub_prime(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def _neg_prime(self, a: int) -> int:
        return -a % self.p

    def _mul_prime(self, a: int, b: int) -> int:
        return a * b % self.p

    def add(self, a: int, b: int) -> int:
        if a == 0:
            return b
        if b == 0:
            return a
        log = self._log
        la = log[a]
        z = self._zech[(log[b] - la) % (self.q - 1)]
        if z < 0:
            return 0
        return self._exp[la + z]

    def neg(self, a: int) -> int:
        if a == 0 or self.p == 2:
            return a
        return self._exp[self._log[a] + self._half]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return self._exp[self.q - 1 - self._log[a]]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("zero to a negative power")
            return 1 if e == 0 else 0
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def log(self, a: int) -> int:
        """Discrete log to the base of :attr:`primitive`."""
        if a == 0:
            raise ValueError("log of zero")
        return self._log[a]

    def exp(self, e: int) -> int:
        return self._exp[e % (self.q - 1)]

    def from_int(self, n: int) -> int:
        return n % self.p

    def nth_roots(self, a: int, n: int) -> list[int]:
        """All x in the field with x**n == a, in increasing code order."""
        if a == 0:
            return [0]
        order = self.q - 1
        g = math.gcd(n, order)
        la = self._log[a]
        if la % g:
            return []
        step = order // g
        e0 = (la // g) * pow(n // g, -1, step) % step if step > 1 else 0
        return sorted(self._exp[e0 + i * step] for i in range(g))

    def is_nth_power(self, a: int, n: int) -> bool:
        return bool(self.nth_roots(a, n))

    def random(self, rng: random.Random) -> int:
        return rng.randrange(self.q)

    def elements(self) -> range:
        return range(self.q)

    def __call__(self, n: int) -> FieldElement:
        return FieldElement(self, self.from_int(n))

    def element(self, code: int) -> FieldElement:
        if not 0 <= code < self.q:
            raise ValueError(f"code {code} outside {self!r}")
        return FieldElement(self, code)

    def to_str(self, a: int) -> str:
        if self.k == 1:
            return str(a)
        digs = self._digits(a)
        if not digs:
            return "0"
        terms = []
        for i, c in enumerate(digs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("a" if i == 1 else f"a^{i}")
            if i == 0:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}*{mono}")
        return "+".join(terms)

    # towers ----------------------------------------------------------------

    def extension(self, j: int) -> Extension:
        """The degree-j extension together with an embedding of this field.

        The embedding sends the class of ``t`` to the least root of this
        field's modulus inside the bigger field.
        """
        if j == 1:
            return Extension(self, tuple(range(self.q)), 1)
        ext = self._extensions.get(j)
        if ext is None:
            big = field_make(self.p, self.k * j)
            if self.k == 1:
                table = tuple(range(self.q))
            else:
                m = self.modulus
                r = None
                for x in big.elements():
                    acc = 0
                    for c in reversed(m):
                        acc = big.add(big.mul(acc, x), c)
                    if acc == 0:
                        r = x
                        break
                assert r is not None
                table = []
                for a in range(self.q):
                    acc = 0
                    for c in reversed(self._digits(a)):
                        acc = big.add(big.mul(acc, r), c)
                    table.append(acc)
                table = tuple(table)
            ext = Extension(big, table, j)
            self._extensions[j] = ext
        return ext

    # identity ----------------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.k, self.modulus) == (
            other.p,
            other.k,
            other.modulus,
        )

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __reduce__(self):
        return (field_make, (self.p, self.k))

    def __repr__(self):
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"


@dataclass(frozen=True)
class Extension:
    field: FiniteField
    embed: tuple[int, ...]
    degree: int


@functools.lru_cache(maxsize=None)
def _field_make_cached(p: int, k: int) -> FiniteField:
    return FiniteField(p, k, least_irreducible(p, k))


def field_make(p: int, k: int = 1, bound: int = DEFAULT_BOUND) -> FiniteField:
    """Return F_{p^k} with the lexicographically least irreducible modulus.

    >>> field_make(3, 2).modulus
    (1, 0, 1)
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if k < 1:
        raise ValueError("extension degree must be positive")
    if p**k > bound:
        raise SizeExceeded(f"{p}^{k} exceeds the field size bound {bound}")
    return _field_make_cached(p, k)


def parse_field(text: str) -> FiniteField:
    """Parse ``p`` or ``p^k`` as used on the command line."""
    try:
        if "^" in text:
            p, k = text.split("^", 1)
            return field_make(int(p), int(k))
        return field_make(int(text))
    except ValueError as exc:
        if isinstance(exc, (NotPrime, SizeExceeded)):
            raise
        from .errors import ParseError

        raise ParseError(f"bad field specification {text!r}") from exc


class FieldElement:
    """A field element with operator overloading, for the public API."""

    __slots__ = ("field", "code")

    def __init__(self, field: FiniteField, code: int):
        self.field = field
        self.code = code

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch(f"{other.field!r} vs {self.field!r}")
            return other.code
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        return FieldElement(self.field, self.field.add(self.code, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        return FieldElement(self.field, self.field.sub(self.code, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        return FieldElement(self.field, self.field.sub(b, self.code))

    def __mul__(self, other):
        b = self._coerce(other)
        return FieldElement(self.field, self.field.mul(self.code, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        return FieldElement(self.field, self.field.div(self.code, b))

    def __rtruediv__(self, other):
        b = self._coerce(other)
        return FieldElement(self.field, self.field.div(b, self.code))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.code))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.code, e))

    def inverse(self) -> FieldElement:
        return FieldElement(self.field, self.field.inv(self.code))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.code == other.code
        if isinstance(other, int):
            return self.code == self.field.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.code))

    def __int__(self):
        return self.code

    def __bool__(self):
        return self.code != 0

    def __repr__(self):
        return self.field.to_str(self.code)
