"""Parsing curve and map expressions.

The grammar is ordinary arithmetic in the variables (``X, Y, Z`` for forms,
``x, y`` for affine maps) with integer or rational coefficients, ``^`` or
``**`` for powers and ``/`` for division.  The symbol ``g`` stands for the
field's primitive element, which is how non-prime-field constants are
written.  Coefficients are reduced into the field given separately.
"""

from __future__ import annotations

import sympy
from sympy.parsing.sympy_parser import parse_expr, standard_transformations

from .errors import ParseError
from .field import FiniteField
from .mpoly import MPoly

_G = sympy.Symbol("g")


def _sympify(text: str, names: tuple[str, ...]):
    local = {n: sympy.Symbol(n) for n in names}
    local["g"] = _G
    try:
        expr = parse_expr(text.replace("^", "**"), local_dict=local,
                          transformations=standard_transformations, evaluate=True)
    except Exception as exc:  # sympy raises a zoo of exception types
        raise ParseError(f"cannot parse {text!r}: {exc}") from exc
    if isinstance(expr, sympy.Basic) and expr.has(sympy.zoo, sympy.nan, sympy.oo):
        raise ParseError(f"division by zero in {text!r}")
    return expr


def _to_mpoly(expr, names: tuple[str, ...], field: FiniteField) -> MPoly:
    syms = [sympy.Symbol(n) for n in names]
    free = expr.free_symbols - set(syms) - {_G}
    if free:
        raise ParseError(f"unknown symbols {sorted(map(str, free))}")
    try:
        poly = sympy.Poly(sympy.expand(expr), *syms, _G)
    except sympy.PolynomialError as exc:
        raise ParseError(f"not a polynomial: {expr}") from exc
    F = field
    out: dict = {}
    for monom, coeff in poly.terms():
        coeff = sympy.Rational(coeff)
        num, den = int(coeff.p), int(coeff.q)
        if den % F.p == 0:
            raise ParseError(f"coefficient {coeff} is not defined in characteristic {F.p}")
        c = F.div(F.from_int(num), F.from_int(den))
        c = F.mul(c, F.pow(F.primitive, monom[-1]))
        e = tuple(monom[:-1])
        out[e] = F.add(out.get(e, 0), c)
    return MPoly(F, len(names), out)


def parse_form(text: str, field: FiniteField) -> MPoly:
    """Ternary polynomial in X, Y, Z."""
    expr = _sympify(text, ("X", "Y", "Z"))
    num, den = sympy.fraction(sympy.together(expr))
    if den.free_symbols - {_G}:
        raise ParseError("a curve equation cannot have a denominator")
    return _to_mpoly(expr, ("X", "Y", "Z"), field)


def parse_rational(text_or_expr, field: FiniteField, names=("x", "y")) -> tuple[MPoly, MPoly]:
    expr = _sympify(text_or_expr, names) if isinstance(text_or_expr, str) else text_or_expr
    num, den = sympy.fraction(sympy.together(expr))
    n = _to_mpoly(num, names, field)
    d = _to_mpoly(den, names, field)
    if d.is_zero():
        raise ParseError("zero denominator")
    return n, d


def parse_map(text: str, field: FiniteField) -> tuple[tuple[MPoly, MPoly], tuple[MPoly, MPoly]]:
    """Parse ``"(u(x,y), v(x,y))"`` into two (numerator, denominator) pairs."""
    expr = _sympify(text, ("x", "y"))
    if not isinstance(expr, sympy.Tuple) and not isinstance(expr, tuple):
        raise ParseError(f"a map is a pair '(u, v)', got {text!r}")
    if len(expr) != 2:
        raise ParseError(f"a map is a pair '(u, v)', got {len(expr)} components")
    return parse_rational(expr[0], field), parse_rational(expr[1], field)


def parse_point(text: str, field: FiniteField) -> tuple[int, int, int]:
    """Parse ``a:b:c`` with integer entries (element codes, negatives allowed)."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ParseError(f"a point is written a:b:c, got {text!r}")
    try:
        vals = [int(s) for s in parts]
    except ValueError as exc:
        raise ParseError(f"bad point {text!r}") from exc
    out = []
    for v in vals:
        if field.k == 1:
            out.append(v % field.p)
        elif 0 <= v < field.q:
            out.append(v)
        elif -field.p < v < 0:
            out.append(field.from_int(v))
        else:
            raise ParseError(f"coordinate {v} is not an element code of {field!r}")
    if not any(out):
        raise ParseError("(0:0:0) is not a projective point")
    return tuple(out)
