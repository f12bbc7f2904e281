"""Birational self-maps of a curve, finite groups of them, and product analysis.

A map is stored by the images (U, V) of the chart coordinates (x, y) as
function-field elements; that canonical pair decides equality.  Composition
``map_compose(outer, inner)`` applies ``inner`` first.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field as dc_field
from typing import Optional, Sequence, Union

from .errors import (
    BasePoint,
    CapExceeded,
    DenominatorVanishes,
    ModelMismatch,
    NotInvertible,
    NotOnCurve,
    SingularPoint,
)
from .expr import parse_rational
from .field import prime_factors
from .funcfield import CurveModel, FunctionFieldElement
from .geometry import ProjPoint, ProjTransform, transform_form
from .mpoly import MPoly

Rational = tuple[MPoly, MPoly]


def dehomogenize(form: MPoly) -> MPoly:
    """form(x, y, 1) as a polynomial in two variables."""
    F = form.field
    out: dict = {}
    for (a, b, _), c in form.terms.items():
        out[(a, b)] = F.add(out.get((a, b), 0), c)
    return MPoly(F, 2, out)


class CurveMap:
    """A rational self-map of the curve, with an optional projective presentation.

    ``forms`` live in the coordinates of the original plane (before the
    model's vertex-moving transform), ``defining`` in chart coordinates.
    """

    __slots__ = ("model", "U", "V", "defining", "forms", "label")

    def __init__(self, model: CurveModel, U: FunctionFieldElement, V: FunctionFieldElement,
                 defining: Optional[tuple[Rational, Rational]] = None,
                 forms: Optional[tuple[MPoly, MPoly, MPoly]] = None, label: Optional[str] = None):
        self.model = model
        self.U = U
        self.V = V
        self.defining = defining or (U.to_mpolys(), V.to_mpolys())
        self.forms = forms
        self.label = label

    @property
    def key(self):
        return (self.U.key, self.V.key)

    def __eq__(self, other):
        if not isinstance(other, CurveMap):
            return NotImplemented
        return self.model is other.model and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def is_identity(self) -> bool:
        x, y = self.model.coords
        return self.U == x and self.V == y

    def evaluate_at(self, x0: int, y0: int, ext=None) -> Optional[tuple[int, int]]:
        """Image of the chart point (x0, y0), possibly over an extension; None off the domain."""
        m = self.model
        t0, w0 = (y0, x0) if m.fiber == 0 else (x0, y0)
        u = self.U.evaluate(t0, w0, ext)
        v = self.V.evaluate(t0, w0, ext)
        if u is None or v is None:
            return None
        return u, v

    def pair_str(self) -> str:
        return f"({self.U.to_str()}, {self.V.to_str()})"

    def defining_str(self) -> str:
        names = self.model.names
        parts = []
        for num, den in self.defining:
            n = num.to_str(names)
            if den.terms == {(0, 0): 1}:
                parts.append(n)
            else:
                parts.append(f"({n})/({den.to_str(names)})")
        return "(" + ", ".join(parts) + ")"

    def to_json(self) -> dict:
        out = {"map": self.pair_str()}
        if self.label:
            out["label"] = self.label
        if self.forms is not None:
            out["forms"] = [f.to_str("XYZ") for f in self.forms]
        return out

    def __repr__(self):
        tag = f"{self.label}: " if self.label else ""
        return f"CurveMap({tag}{self.pair_str()})"


@dataclass(frozen=True)
class MapRecipe:
    """A map given by expressions: affine pair on the model chart, optional forms."""

    u: str
    v: str
    forms: Optional[tuple[str, str, str]] = None
    label: Optional[str] = None

    def build(self, model: CurveModel) -> CurveMap:
        from .expr import parse_form

        forms = None
        if self.forms is not None:
            forms = [parse_form(f, model.field) for f in self.forms]
        return map_make(model, self.u, self.v, forms=forms, label=self.label or f"({self.u}, {self.v})")


def _as_rational(model: CurveModel, expr: Union[str, Rational]) -> Rational:
    if isinstance(expr, str):
        return parse_rational(expr, model.field)
    return expr


def _check_on_curve(model: CurveModel, U: FunctionFieldElement, V: FunctionFieldElement):
    if not model.evaluate(model.f, (U, V)).is_zero():
        raise NotOnCurve("the image does not satisfy the curve equation")


def identity_map(model: CurveModel) -> CurveMap:
    x, y = model.coords
    F = model.field
    forms = tuple(MPoly.var(F, 3, i) for i in range(3))
    return CurveMap(model, x, y, forms=forms, label="id")


def _chart_forms(model: CurveModel, forms: Sequence[MPoly]) -> list[MPoly]:
    """Conjugate a projective presentation into chart coordinates."""
    M = model.transform
    if M.is_identity():
        return list(forms)
    pulled = [transform_form(g, M.inverse()) for g in forms]
    out = []
    for row in M.matrix:
        acc = MPoly(model.field, 3)
        for a, g in zip(row, pulled):
            if a:
                acc = acc + g.scale(a)
        out.append(acc)
    return out


def _check_forms(forms: Sequence[MPoly]):
    if len(forms) != 3:
        raise ValueError("a projective presentation has three forms")
    degs = {f.total_degree for f in forms if not f.is_zero()}
    if len(degs) != 1 or not all(f.is_homogeneous() for f in forms):
        raise ValueError("projective presentation needs forms of one common degree")


def map_make(model: CurveModel, u_expr: Union[str, Rational], v_expr: Union[str, Rational],
             forms: Optional[Sequence[MPoly]] = None, label: Optional[str] = None) -> CurveMap:
    """Build and verify the map (x, y) -> (u, v) on the model's chart."""
    nu, du = _as_rational(model, u_expr)
    nv, dv = _as_rational(model, v_expr)
    U = model.evaluate_rational(nu, du)
    V = model.evaluate_rational(nv, dv)
    _check_on_curve(model, U, V)
    if forms is not None:
        _check_forms(forms)
        h0, h1, h2 = (dehomogenize(g) for g in _chart_forms(model, forms))
        H0, H1, H2 = (model.evaluate(h, model.coords) for h in (h0, h1, h2))
        if H2.is_zero():
            raise DenominatorVanishes("projective presentation has Z-image vanishing on the curve")
        if U * H2 != H0 or V * H2 != H1:
            raise NotOnCurve("projective presentation disagrees with the affine pair")
        forms = tuple(forms)
    return CurveMap(model, U, V, ((nu, du), (nv, dv)), forms, label)


def map_from_forms(model: CurveModel, forms: Sequence[MPoly], label: Optional[str] = None) -> CurveMap:
    """The map given by a projective presentation in original coordinates."""
    _check_forms(forms)
    h0, h1, h2 = (dehomogenize(g) for g in _chart_forms(model, forms))
    U = model.evaluate_rational(h0, h2)
    V = model.evaluate_rational(h1, h2)
    _check_on_curve(model, U, V)
    return CurveMap(model, U, V, ((h0, h2), (h1, h2)), tuple(forms), label)


def map_from_transform(model: CurveModel, A: ProjTransform, label: Optional[str] = None) -> CurveMap:
    return map_from_forms(model, A.linear_forms(), label)


def _compose_forms(outer: Sequence[MPoly], inner: Sequence[MPoly]) -> Optional[tuple]:
    # only kept when the degree stays at most the larger input degree
    if min(outer[0].total_degree, inner[0].total_degree) > 1:
        return None
    out = tuple(g.substitute(list(inner)) for g in outer)
    if all(g.is_zero() for g in out):
        return None
    return out


def map_compose(outer: CurveMap, inner: CurveMap) -> CurveMap:
    if outer.model is not inner.model:
        raise ModelMismatch("maps live on different models")
    model = outer.model
    (nu, du), (nv, dv) = outer.defining
    images = (inner.U, inner.V)
    U = model.evaluate_rational(nu, du, images)
    V = model.evaluate_rational(nv, dv, images)
    forms = None
    if outer.forms is not None and inner.forms is not None:
        forms = _compose_forms(outer.forms, inner.forms)
    return CurveMap(model, U, V, forms=forms)


def preserves_fibers(m: CurveMap) -> bool:
    image = m.U if m.model.base == 0 else m.V
    return image == m.model.t


def map_order(m: CurveMap, cap: int = 1000) -> int:
    k, cur = 1, m
    while not cur.is_identity():
        cur = map_compose(m, cur)
        k += 1
        if k > cap:
            raise CapExceeded(f"map order exceeds {cap}")
    return k


def map_inverse(m: CurveMap, cap: int = 1000) -> CurveMap:
    prev, cur = identity_map(m.model), m
    k = 1
    while not cur.is_identity():
        prev, cur = cur, map_compose(m, cur)
        k += 1
        if k > cap:
            raise NotInvertible(f"no finite order within {cap}")
    return prev


def relative_conjugate(g: CurveMap, h: CurveMap) -> CurveMap:
    """The map a with h^-1 g h = a g, i.e. a = h^-1 g h g^-1."""
    hinv = map_inverse(h)
    ginv = map_inverse(g)
    return map_compose(map_compose(hinv, map_compose(g, h)), ginv)


# groups ------------------------------------------------------------------


@dataclass
class MapGroup:
    """Finite group of maps with its Cayley table (``table[i][j]`` = e_i o e_j)."""

    model: CurveModel
    generators: list[CurveMap]
    elements: list[CurveMap]
    words: list[tuple[int, ...]]
    table: list[list[int]]
    identity: int = 0
    inverses: list[int] = dc_field(default_factory=list)

    def __post_init__(self):
        self.index = {e.key: i for i, e in enumerate(self.elements)}

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def find(self, m: CurveMap) -> Optional[int]:
        return self.index.get(m.key)

    def power(self, i: int, k: int) -> int:
        r = self.identity
        for _ in range(k):
            r = self.table[i][r]
        return r

    def element_order(self, i: int) -> int:
        k, r = 1, i
        while r != self.identity:
            r = self.table[i][r]
            k += 1
        return k

    def point_image(self, i: int, Q: ProjPoint) -> ProjPoint:
        """Image of a point of the original plane under element i, via generator forms."""
        coords = Q.coords
        F = Q.field
        for g in reversed(self.words[i]):
            forms = self.generators[g].forms
            if forms is None:
                raise ModelMismatch("generator has no projective presentation")
            new = [f(coords) for f in forms]
            if not any(new):
                raise BasePoint(f"map undefined at {ProjPoint(F, coords)}")
            coords = new
        return ProjPoint(F, coords)


def group_closure(generators: Sequence[CurveMap], cap: Optional[int] = None,
                  model: Optional[CurveModel] = None) -> MapGroup:
    """Close a set of maps under composition (breadth first)."""
    gens = list(generators)
    if model is None:
        if not gens:
            raise ValueError("need a model or at least one generator")
        model = gens[0].model
    if any(g.model is not model for g in gens):
        raise ModelMismatch("generators live on different models")
    if cap is None:
        cap = 4 * model.d ** 2
    ident = identity_map(model)
    elements = [ident]
    words: list[tuple[int, ...]] = [()]
    index = {ident.key: 0}
    left = [[-1] for _ in gens]  # left[g][i] = index of gens[g] o elements[i]
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for gi, g in enumerate(gens):
            prod = map_compose(g, elements[i])
            k = index.get(prod.key)
            if k is None:
                k = len(elements)
                if k >= cap:
                    raise CapExceeded(f"closure exceeded {cap} elements")
                elements.append(prod)
                words.append((gi,) + words[i])
                index[prod.key] = k
                for row in left:
                    row.append(-1)
                queue.append(k)
            left[gi][i] = k
    n = len(elements)
    table = []
    for i in range(n):
        row = []
        for j in range(n):
            k = j
            for g in reversed(words[i]):
                k = left[g][k]
            row.append(k)
        table.append(row)
    inverses = []
    for i in range(n):
        try:
            inverses.append(table[i].index(0))
        except ValueError:
            raise NotInvertible(f"element {elements[i]} has no inverse in the closure") from None
    for i, e in enumerate(elements):
        if i and e.label is None:
            e.label = "*".join(gens[g].label or f"g{g}" for g in words[i])
    return MapGroup(model, gens, elements, words, table, 0, inverses)


def check_group_axioms(G: MapGroup, triples: Optional[int] = None) -> bool:
    """Closure, identity, inverses and associativity read off the Cayley table."""
    n = G.order
    e = G.identity
    rng = range(n)
    if any(not (0 <= G.table[i][j] < n) for i in rng for j in rng):
        return False
    if any(G.table[e][i] != i or G.table[i][e] != i for i in rng):
        return False
    if any(G.table[i][G.inverses[i]] != e or G.table[G.inverses[i]][i] != e for i in rng):
        return False
    t = G.table
    if triples is None or n ** 3 <= triples:
        return all(t[t[a][b]][c] == t[a][t[b][c]] for a in rng for b in rng for c in rng)
    import random

    rnd = random.Random(0)
    for _ in range(triples):
        a, b, c = rnd.randrange(n), rnd.randrange(n), rnd.randrange(n)
        if t[t[a][b]][c] != t[a][t[b][c]]:
            return False
    return True


@dataclass(frozen=True)
class GroupStructure:
    order: int
    is_abelian: bool
    is_cyclic: bool
    dihedral: Optional[tuple[int, int]]
    invariants: tuple[int, ...]
    tag: str
    order_census: tuple[tuple[int, int], ...]

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "abelian": self.is_abelian,
            "cyclic": self.is_cyclic,
            "dihedral_witness": self.dihedral is not None,
            "invariants": list(self.invariants),
            "tag": self.tag,
        }


def _abelian_invariants(orders: list[int]) -> tuple[int, ...]:
    n = len(orders)
    parts_by_prime = {}
    for p in prime_factors(n):
        sylow = 1
        while n % (sylow * p) == 0:
            sylow *= p
        # c_i = #{x : x^(p^i) = 1}; log_p(c_i / c_(i-1)) counts p-parts of exponent >= i
        ge, prev, i = [], 1, 1
        while prev < sylow:
            c = sum(1 for o in orders if (p ** i) % o == 0)
            if c == prev:
                break
            ratio, k = c // prev, 0
            while ratio > 1:
                ratio //= p
                k += 1
            ge.append(k)
            prev, i = c, i + 1
        exps = []
        for i, k in enumerate(ge, start=1):
            nxt = ge[i] if i < len(ge) else 0
            exps += [i] * (k - nxt)
        parts_by_prime[p] = sorted(exps, reverse=True)
    rank = max((len(v) for v in parts_by_prime.values()), default=0)
    factors = []
    for r in range(rank):
        f = 1
        for p, exps in parts_by_prime.items():
            if r < len(exps):
                f *= p ** exps[r]
        factors.append(f)
    return tuple(sorted(factors))


def group_structure(G: MapGroup) -> GroupStructure:
    n = G.order
    t = G.table
    abelian = all(t[i][j] == t[j][i] for i in range(n) for j in range(i + 1, n))
    orders = [G.element_order(i) for i in range(n)]
    cyclic = n in orders
    dihedral = None
    if n >= 4 and n % 2 == 0:
        half = n // 2
        for r in (i for i in range(n) if orders[i] == half):
            powers = set()
            k = G.identity
            for _ in range(half):
                powers.add(k)
                k = t[r][k]
            rinv = G.inverses[r]
            for s in range(n):
                if orders[s] == 2 and s not in powers and t[t[s][r]][s] == rinv:
                    dihedral = (r, s)
                    break
            if dihedral:
                break
    invariants: tuple[int, ...] = ()
    if abelian:
        invariants = _abelian_invariants(orders)
        tag = "x".join(f"C{m}" for m in invariants) if invariants else "C1"
    elif dihedral:
        tag = f"D{n}"
    else:
        tag = f"G{n}"
    census = tuple(sorted(Counter(orders).items()))
    return GroupStructure(n, abelian, cyclic, dihedral, invariants, tag, census)


# products ------------------------------------------------------------------


@dataclass
class ProductReport:
    size: int
    is_group: bool
    g1_normal: bool
    g2_normal: bool
    intersection: int
    is_direct: bool
    is_semidirect: bool
    order1: int
    order2: int
    tag: str = ""
    closure: Optional[MapGroup] = dc_field(default=None, repr=False)

    @property
    def normal(self) -> list[str]:
        return [name for name, flag in (("G1", self.g1_normal), ("G2", self.g2_normal)) if flag]

    def to_json(self) -> dict:
        return {
            "size": self.size,
            "is_group": self.is_group,
            "normal": self.normal,
            "intersection": self.intersection,
            "is_direct": self.is_direct,
            "is_semidirect": self.is_semidirect,
            "orders": [self.order1, self.order2],
            "tag": self.tag,
        }


def transport_map(m: CurveMap, model: CurveModel) -> CurveMap:
    """Re-express a map on another model of the same curve."""
    if m.model is model:
        return m
    if m.model.same_chart(model):
        (nu, du), (nv, dv) = m.defining
        return map_make(model, (nu, du), (nv, dv), forms=m.forms, label=m.label)
    if m.forms is None:
        raise ModelMismatch("map has no projective presentation to transport")
    if m.model.curve != model.curve:
        raise ModelMismatch("maps live on different curves")
    return map_from_forms(model, m.forms, m.label)


def transport_group(G: MapGroup, model: CurveModel) -> MapGroup:
    if G.model is model:
        return G
    gens = [transport_map(g, model) for g in G.generators]
    H = group_closure(gens, cap=G.order + 1, model=model)
    if H.order != G.order:
        raise ModelMismatch("transported group has a different order")
    return H


def _structure_tag(G: MapGroup) -> str:
    return group_structure(G).tag


def product_analysis(G1: MapGroup, G2: MapGroup) -> ProductReport:
    model = G1.model
    G2m = transport_group(G2, model)
    n1, n2 = G1.order, G2m.order
    gens = list(G1.generators) + list(G2m.generators)
    try:
        H = group_closure(gens, cap=n1 * n2 + 1, model=model)
    except CapExceeded:
        H = None
    if H is not None:
        idx1 = [H.find(e) for e in G1.elements]
        idx2 = [H.find(e) for e in G2m.elements]
        t = H.table
        s12 = {t[a][b] for a in idx1 for b in idx2}
        s21 = {t[b][a] for a in idx1 for b in idx2}
        is_group = s12 == s21 and len(s12) == H.order
        inter = len(set(idx1) & set(idx2))

        def normal(idx):
            members = set(idx)
            for g in range(H.order):
                gi = H.inverses[g]
                if any(t[t[g][a]][gi] not in members for a in idx):
                    return False
            return True

        nm1 = normal(idx1) if is_group else False
        nm2 = normal(idx2) if is_group else False
        size = len(s12)
    else:
        keys = {map_compose(a, b).key for a in G1.elements for b in G2m.elements}
        size = len(keys)
        is_group = False
        nm1 = nm2 = False
        k1 = {e.key for e in G1.elements}
        inter = sum(1 for e in G2m.elements if e.key in k1)
    semidirect = is_group and inter == 1 and (nm1 or nm2)
    direct = semidirect and nm1 and nm2
    t1, t2 = _structure_tag(G1), _structure_tag(G2m)
    if direct:
        tag = f"{t1} x {t2}"
    elif semidirect:
        tag = f"{t1} : {t2}" if nm1 else f"{t2} : {t1}"
    else:
        tag = ""
    return ProductReport(size, is_group, nm1, nm2, inter, direct, semidirect, n1, n2, tag, H)


def orbit(G: MapGroup, Q: ProjPoint) -> Counter:
    return Counter(G.point_image(i, Q) for i in range(G.order))


def orbit_divisor_equal(G1: MapGroup, G2: MapGroup, Q: ProjPoint) -> bool:
    """Whether the G1-orbit and G2-orbit of Q agree as divisors (multisets)."""
    curve = G1.model.curve
    if not curve.contains(Q):
        raise NotOnCurve(f"{Q} is not on the curve")
    if curve.is_singular_at(Q):
        raise SingularPoint(f"{Q} is a singular point")
    return orbit(G1, Q) == orbit(G2, Q)
