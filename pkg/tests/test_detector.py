import random

import pytest

from galois_locus.detector import (
    certify_galois,
    linear_fiber_automorphisms,
    monte_carlo_galois,
    ramification_census,
    sample_fiber_patterns,
    scan_outer_galois_points,
)
from galois_locus.errors import PointOnCurve, RootsOfUnityMissing, SingularMatrix
from galois_locus.expr import parse_form
from galois_locus.families import family_curve, parse_family
from galois_locus.field import field_make
from galois_locus.geometry import ProjLine, ProjTransform, apply_transform, curve_make, fiber_polynomial, pencil_points
from galois_locus.maps import MapRecipe, group_closure, group_structure, preserves_fibers

from conftest import pt
from oracles import sympy_factor_degrees


def oracle_patterns(curve, P):
    """Factor-degree multisets of all squarefree rational fibers, via sympy."""
    out = set()
    for R in pencil_points(P):
        f = fiber_polynomial(curve, P, ProjLine.through(P, R))
        degs = sympy_factor_degrees(f)
        if any(e > 1 for _, e in degs):
            continue
        out.add(tuple(sorted(d for d, _ in degs)))
    return out


def test_sample_patterns_fermat(F7, fermat_cubic):
    P = pt(F7, 1, 0, 0)
    rep = sample_fiber_patterns(fermat_cubic, P, 30)
    assert set(rep.histogram) <= {"[3]", "[1,1,1]"}
    assert rep.witness is None
    assert sum(rep.histogram.values()) == rep.unramified
    assert rep.unramified + rep.ramified == rep.samples == 30
    assert oracle_patterns(fermat_cubic, P) <= {(3,), (1, 1, 1)}


def test_sample_patterns_control(F7, control_cubic):
    P = pt(F7, 1, 0, 0)
    assert any(len(set(p)) > 1 for p in oracle_patterns(control_cubic, P))
    rep = sample_fiber_patterns(control_cubic, P, 30)
    assert rep.witness is not None
    assert rep.witness_pattern == "[1,2]"


def test_sample_patterns_errors(F7, fermat_cubic):
    with pytest.raises(ValueError):
        sample_fiber_patterns(fermat_cubic, pt(F7, 1, 0, 0), 0)
    with pytest.raises(PointOnCurve):
        sample_fiber_patterns(fermat_cubic, pt(F7, -1, 1, 0), 10)


def test_sampling_is_deterministic(F7, fermat_cubic, control_cubic):
    P = pt(F7, 1, 0, 0)
    for C in (fermat_cubic, control_cubic):
        a = sample_fiber_patterns(C, P, 40, seed=3)
        b = sample_fiber_patterns(C, P, 40, seed=3)
        assert a.to_json() == b.to_json()


def test_monte_carlo_examples(F7, fermat_cubic, control_cubic):
    assert monte_carlo_galois(fermat_cubic, pt(F7, 1, 0, 0), 50).kind == "ProbablyGalois"
    v = monte_carlo_galois(control_cubic, pt(F7, 1, 0, 0), 50)
    assert v.kind == "NotGalois" and v.witness
    assert monte_carlo_galois(fermat_cubic, pt(F7, 1, 1, 0), 50).kind == "NotGalois"
    F5 = field_make(5)
    with pytest.raises(RootsOfUnityMissing):
        monte_carlo_galois(curve_make(parse_form("X^3+Y^3+Z^3", F5)), pt(F5, 1, 0, 0), 10)


def test_linear_automorphism_examples(F7, F13, fermat_cubic, takahashi6):
    lin = linear_fiber_automorphisms(fermat_cubic, pt(F7, 1, 0, 0))
    assert len(lin) == 3
    assert {m.U.to_str() for m in lin} == {"x", "2*x", "4*x"}
    assert len(linear_fiber_automorphisms(takahashi6, pt(F13, 0, 1, 0))) == 6
    lin = linear_fiber_automorphisms(takahashi6, pt(F13, 1, 0, 0))
    assert len(lin) == 3
    assert all(preserves_fibers(m) for m in lin)


def test_certify_examples(F7, F13, fermat_cubic, control_cubic, takahashi6):
    v = certify_galois(takahashi6, pt(F13, 1, 0, 0), [MapRecipe("y^2/x", "y")])
    assert v.certified and v.group.order == 6
    st = group_structure(v.group)
    assert st.dihedral is not None and not st.is_abelian
    fq = curve_make(parse_form("X^4+Y^4+Z^4", F13))
    v = certify_galois(fq, pt(F13, 1, 0, 0))
    assert v.certified and group_structure(v.group).tag == "C4"
    assert certify_galois(control_cubic, pt(F7, 1, 0, 0)).kind == "NotGalois"
    # without tau the Takahashi P1 only has its linear part
    v = certify_galois(takahashi6, pt(F13, 1, 0, 0))
    assert v.kind == "ProbablyGalois" and "3 of 6" in v.note


def test_certified_group_properties(F13, takahashi6):
    inst = family_curve(parse_family("takahashi:6"), F13)
    for P in inst.points:
        v = certify_galois(inst.curve, P, inst.registered[P.coords])
        assert v.group.order == 6
        assert all(preserves_fibers(e) for e in v.group.elements)


def _random_transform(F, rng):
    while True:
        try:
            return ProjTransform(F, [[rng.randrange(F.q) for _ in range(3)] for _ in range(3)])
        except SingularMatrix:
            continue


@pytest.mark.parametrize("curve_name,P", [("fermat_cubic", (1, 0, 0)), ("takahashi6", (0, 1, 0)), ("takahashi6", (1, 0, 0))])
def test_linear_search_conjugation_invariant(curve_name, P, request):
    C = request.getfixturevalue(curve_name)
    F = C.field
    P = pt(F, *P)
    base = linear_fiber_automorphisms(C, P)
    tag = group_structure(group_closure(base)).tag
    rng = random.Random(len(base))
    for _ in range(3):
        M = _random_transform(F, rng)
        C2, P2 = apply_transform(C, M), M(P)
        moved = linear_fiber_automorphisms(C2, P2)
        assert len(moved) == len(base)
        assert group_structure(group_closure(moved)).tag == tag


def test_monotonicity(F13, takahashi4):
    # a valid registered group of order d always yields Certified, even in a moved configuration
    P = pt(F13, 1, 0, 0)
    v = certify_galois(takahashi4, P, [MapRecipe("12*x", "y"), MapRecipe("y^2/x", "y")])
    assert v.certified
    for seed in range(5):
        v = certify_galois(takahashi4, P, [MapRecipe("y^2/x", "y")], N=20, seed=seed)
        assert v.kind != "NotGalois"


def test_scan_takahashi4(F13, takahashi4):
    inst = family_curve(parse_family("takahashi:4"), F13)
    rep = scan_outer_galois_points(inst.curve, 60, 0, inst.registered)
    assert set(rep.certified) == {(1, 0, 0), (0, 1, 0)}
    assert rep.outer_count == 13 * 13 + 13 + 1 - rep.rational_points
    assert rep.summary["ProbablyGalois"] == 0


def test_scan_fermat_quintic():
    F = field_make(11)
    inst = family_curve(parse_family("fermat:5"), F)
    rep = scan_outer_galois_points(inst.curve, 40, 0, inst.registered)
    assert set(rep.certified) == {(1, 0, 0), (0, 1, 0), (0, 0, 1)}


def test_scan_thread_determinism(F7, fermat_cubic):
    a = scan_outer_galois_points(fermat_cubic, 30, 1, threads=1)
    b = scan_outer_galois_points(fermat_cubic, 30, 1, threads=2)
    assert a.to_json() == b.to_json()


def test_ramification_census(F13, takahashi6, fermat_cubic, F7):
    c = ramification_census(takahashi6, pt(F13, 1, 0, 0))
    assert c.min_index == 2
    c = ramification_census(fermat_cubic, pt(F7, 1, 0, 0))
    assert c.min_index == 3
