import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from galois_locus.errors import BothZero, CharDividesM, DegreeMismatch, NotRational, ZeroPolynomial
from galois_locus.field import field_make
from galois_locus.poly import (
    Poly,
    poly_factor,
    poly_gcd,
    poly_mth_root_shifted,
    poly_roots,
    roots_of_unity,
    squarefree_decomposition,
)

from oracles import brute_roots, expand_power, no_small_roots_irreducible, sympy_factor_degrees


def P(F, *ints):
    """Polynomial from integer coefficients, low degree first."""
    return Poly.from_ints(F, ints)


def test_factor_fourth_roots_f5():
    F = field_make(5)
    fac = poly_factor(P(F, -1, 0, 0, 0, 1))
    assert fac.unit == 1
    assert sorted(g.coeffs for g, _ in fac.factors) == [(1, 1), (2, 1), (3, 1), (4, 1)]
    assert sorted(g(0) for g, _ in fac.factors) == [1, 2, 3, 4]


def test_factor_irreducible_cubic_f7():
    F = field_make(7)
    f = P(F, 2, 0, 0, 1)
    fac = poly_factor(f)
    assert len(fac.factors) == 1 and fac.factors[0] == (f, 1)
    # cubes in F_7^* are {1, 6}
    assert {pow(x, 3, 7) for x in range(1, 7)} == {1, 6}


def test_factor_t3_plus_1_f7():
    F = field_make(7)
    fac = poly_factor(P(F, 1, 0, 0, 1))
    assert sorted(g.coeffs for g, _ in fac.factors) == [(1, 1), (2, 1), (4, 1)]
    for r in (6, 5, 3):  # -1, -2, -4
        assert pow(r, 3, 7) == 6


def test_factor_zero():
    with pytest.raises(ZeroPolynomial):
        poly_factor(Poly(field_make(7), []))


def test_gcd_examples():
    F = field_make(7)
    assert poly_gcd(P(F, -1, 0, 1), P(F, -1, 1)) == P(F, -1, 1)
    f = P(F, -2, 1) * P(F, -2, 1) * P(F, -3, 1)
    assert poly_gcd(f, f.derivative()) == P(F, -2, 1)
    assert poly_gcd(P(F, 2, 0, 0, 1), P(F, 1, 1)).is_one()
    with pytest.raises(BothZero):
        poly_gcd(Poly(F, []), Poly(F, []))


def test_roots_of_unity_examples():
    F7, F13 = field_make(7), field_make(13)
    r = roots_of_unity(F7, 3)
    assert {e.code for e in r} == {1, 2, 4}
    r = roots_of_unity(F13, 4)
    assert {e.code for e in r} == {1, 5, 12, 8}
    with pytest.raises(NotRational):
        roots_of_unity(F7, 5)


@pytest.mark.parametrize("pk,d", [((7, 1), 6), ((13, 1), 12), ((3, 2), 8), ((2, 4), 5), ((11, 1), 5)])
def test_roots_of_unity_property(pk, d):
    F = field_make(*pk)
    r = roots_of_unity(F, d)
    assert len({e.code for e in r}) == d
    assert all(F.pow(e.code, d) == 1 for e in r)
    z = r[0].code
    assert all(F.pow(z, j) != 1 for j in range(1, d))


def test_mth_root_shifted_examples():
    F13, F7 = field_make(13), field_make(7)
    h, s = poly_mth_root_shifted(P(F13, 0, 0, -1, 0, -1), 4, 2)
    assert h == P(F13, 7, 0, 1) and s.code == 10
    h, s = poly_mth_root_shifted(P(F7, -1, 0, 0, -1), 3, 3)
    assert h == P(F7, 0, 1) and s.code == 6
    assert poly_mth_root_shifted(P(F7, 0, 1, 0, 1), 3, 3) is None


def test_mth_root_shifted_errors():
    F7 = field_make(7)
    with pytest.raises(DegreeMismatch):
        poly_mth_root_shifted(P(F7, 0, 1, 0, 1), 4, 2)
    with pytest.raises(DegreeMismatch):
        poly_mth_root_shifted(P(F7, 0, 1, 0, 1), 3, 2)
    F3 = field_make(3)
    with pytest.raises(CharDividesM):
        poly_mth_root_shifted(P(F3, 1, 0, 0, 1), 3, 3)


def _brute_shift_root_exists(c, d, m):
    F = c.field
    n = d // m
    target = -c
    for s in F.elements():
        goal = target + Poly(F, [s])
        for lead in F.nth_roots(goal.lc, m):
            for tail in itertools.product(range(F.q), repeat=n):
                h = Poly(F, list(tail) + [lead])
                if expand_power(h, m) == goal:
                    return True
    return False


@pytest.mark.parametrize("q,d,m", [(7, 3, 3), (7, 6, 3), (7, 6, 2), (13, 4, 2), (13, 4, 4), (5, 4, 2), (11, 5, 5)])
def test_mth_root_shifted_against_bruteforce(q, d, m):
    F = field_make(q)
    rnd = random.Random(q * 31 + d * 7 + m)
    cases = []
    # random c, plus c built to have a structure
    for _ in range(8):
        cases.append(Poly(F, [rnd.randrange(q) for _ in range(d)] + [rnd.randrange(1, q)]))
    for _ in range(4):
        h = Poly(F, [rnd.randrange(q) for _ in range(d // m)] + [rnd.randrange(1, q)])
        cases.append(-(expand_power(h, m) - Poly(F, [rnd.randrange(q)])))
    for c in cases:
        res = poly_mth_root_shifted(c, d, m)
        if res is None:
            if q ** (d // m) * q <= 20000:
                assert not _brute_shift_root_exists(c, d, m)
        else:
            h, s = res
            assert h.degree == d // m
            assert -c + Poly(F, [s.code]) == expand_power(h, m)


FACTOR_FIELDS = [(7, 1), (11, 1), (13, 1), (2, 2), (3, 2)]


@pytest.mark.parametrize("pk", FACTOR_FIELDS)
def test_factor_roundtrip_and_irreducible(pk):
    F = field_make(*pk)
    rnd = random.Random(sum(pk))
    for _ in range(150):
        n = rnd.randrange(1, 13)
        f = Poly(F, [rnd.randrange(F.q) for _ in range(n)] + [rnd.randrange(1, F.q)])
        fac = poly_factor(f)
        assert fac.expand() == f
        seen = set()
        for g, e in fac.factors:
            assert g.lc == 1 and e >= 1
            assert g.coeffs not in seen
            seen.add(g.coeffs)
            assert no_small_roots_irreducible(g)


@pytest.mark.parametrize("p", [7, 11, 13])
def test_factor_degrees_match_sympy(p):
    F = field_make(p)
    rnd = random.Random(p)
    for _ in range(60):
        n = rnd.randrange(1, 11)
        f = Poly(F, [rnd.randrange(p) for _ in range(n)] + [1])
        mine = sorted((g.degree, e) for g, e in poly_factor(f).factors)
        assert mine == sympy_factor_degrees(f)


def test_squarefree_decomposition():
    F = field_make(7)
    a, b = P(F, 1, 1), P(F, 3, 0, 1)
    f = a * b * b * b
    parts = squarefree_decomposition(f)
    prod = Poly(F, [1])
    for g, e in parts:
        for _ in range(e):
            prod = prod * g
    assert prod == f.monic()
    assert {e for _, e in parts} == {1, 3}


def test_squarefree_char_p_power():
    F = field_make(3)
    f = P(F, 1, 0, 0, 1) * P(F, 2, 1)  # (T+1)^3 (T+2)
    fac = poly_factor(f)
    assert fac.expand() == f
    assert sorted((g.coeffs, e) for g, e in fac.factors) == [((1, 1), 3), ((2, 1), 1)]


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(FACTOR_FIELDS), st.lists(st.integers(0, 100), min_size=2, max_size=10))
def test_roots_match_bruteforce(pk, ints):
    F = field_make(*pk)
    coeffs = [c % F.q for c in ints]
    if coeffs[-1] == 0:
        coeffs[-1] = 1
    f = Poly(F, coeffs)
    assert sorted(poly_roots(f)) == brute_roots(f)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(FACTOR_FIELDS), st.lists(st.integers(0, 100), min_size=1, max_size=7),
       st.lists(st.integers(0, 100), min_size=1, max_size=7))
def test_divmod_identity(pk, a, b):
    F = field_make(*pk)
    A = Poly(F, [c % F.q for c in a])
    B = Poly(F, [c % F.q for c in b])
    if B.is_zero():
        return
    qt, r = divmod(A, B)
    assert qt * B + r == A
    assert r.is_zero() or r.degree < B.degree
