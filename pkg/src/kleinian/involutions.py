"""Anti-Poisson involutions of Kleinian singularities and their fixed loci."""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, lcm

from .cyclo import CycloNumber, ZERO, ONE, I, as_cyclo, zeta
from .poly import Polynomial, XYZ, UV, poisson_bracket_uv
from .groups import (
    Check, GammaType, SL2Element, KleinianPresentation, presentation, generators,
    group_elements, group_act,
)

T = ("t",)


@dataclass
class AntiPoissonInvolution:
    gamma: GammaType
    case: str
    images: tuple[Polynomial, Polynomial, Polynomial]
    realizing_matrix: SL2Element | None = None
    diagram_perm: dict[int, int] = field(default_factory=dict)

    @property
    def pres(self) -> KleinianPresentation:
        return presentation(self.gamma, "working")

    def apply(self, p: Polynomial) -> Polynomial:
        """theta on C[x,y,z] (as a ring map)."""
        x, y, z = self.images
        return p.substitute({"x": x, "y": y, "z": z}, XYZ)

    def label(self) -> str:
        return f"{self.gamma} case {self.case}"


@dataclass
class Component:
    kind: str                       # line | cusp | point
    equation: Polynomial | None     # factor of the curve equation, in the surviving coordinates
    parametrization: tuple[Polynomial, Polynomial, Polynomial]

    def as_dict(self):
        return {
            "kind": self.kind,
            "equation": None if self.equation is None else str(self.equation),
            "parametrization": [str(p) for p in self.parametrization],
        }


@dataclass
class FixedLocusDescription:
    ideal_generators: list[Polynomial]
    curve: Polynomial | None
    components: list[Component]
    reduced: bool
    reduced_reason: str

    def as_dict(self):
        return {
            "ideal": [str(g) for g in self.ideal_generators],
            "curve": None if self.curve is None else str(self.curve),
            "components": [c.as_dict() for c in self.components],
            "reduced": self.reduced,
            "reduced_reason": self.reduced_reason,
        }


class InvolutionError(AssertionError):
    pass


def _xyz():
    return Polynomial.gens(XYZ)


# -- catalog --------------------------------------------------------------------

def involution_catalog(gamma: GammaType) -> list[AntiPoissonInvolution]:
    x, y, z = _xyz()
    n = gamma.n
    out = []

    def add(case, images, matrix, perm=None):
        degs = gamma.degrees
        imgs = tuple(p.with_weights(degs) for p in images)
        out.append(AntiPoissonInvolution(gamma, case, imgs, matrix, perm or {}))

    swap = SL2Element(0, 1, 1, 0)
    flip = SL2Element.diag(-1, 1)
    if gamma.family == "A":
        mirror = {i: n + 1 - i for i in range(1, n + 1)}
        add("I", (y, x, z), swap, mirror)
        if n % 2:
            e = zeta(2 * n + 2)
            add("II", (x, y, -z), flip)
            add("III", (-x, -y, -z), SL2Element.diag(e, -e.inverse()))
        else:
            add("II", (-x, y, -z), flip)
    elif gamma.family == "D":
        e = zeta(4 * n - 8)
        arms = {n - 1: n, n: n - 1}
        if n % 2 == 0:
            m = (n - 2) // 2
            add("I", (x, y, -z), flip)
            add("II", (x, x ** m - y, z), SL2Element.diag(e, -e.inverse()), arms)
        else:
            k = (n - 1) // 2
            add("I", (x, -y, z), SL2Element.diag(e, -e.inverse()))
            add("II", (x, y, x ** k - z), flip, arms)
    elif gamma.family == "E6":
        e8 = zeta(8)
        add("I", (-x, y, z), flip)
        add("II", (x, y, -z - x ** 2), SL2Element.diag(e8, -e8.inverse()), {3: 5, 5: 3, 4: 6, 6: 4})
    elif gamma.family == "E7":
        add("I", (x, y, -z), flip)
    else:
        add("I", (x, y, -z), SL2Element.diag(I, I))
    return out


def get_involution(gamma: GammaType, case: str) -> AntiPoissonInvolution:
    for inv in involution_catalog(gamma):
        if inv.case == case.upper():
            return inv
    raise KeyError(f"{gamma} has no involution case {case!r}")


# -- verification -----------------------------------------------------------------

def verify_involution(inv: AntiPoissonInvolution) -> list[Check]:
    pres = inv.pres
    checks = []
    names = ("x", "y", "z")
    rel = pres.pullback(inv.apply(pres.relation))
    checks.append(Check("preserves F", rel.is_zero(), "" if rel.is_zero() else f"theta(F) = {rel}"))
    bad = []
    for name, g in zip(names, _xyz()):
        back = pres.pullback(inv.apply(inv.apply(g)))
        if back != pres.pullback(g):
            bad.append(name)
    checks.append(Check("involutive", not bad, "" if not bad else f"theta^2 moves {','.join(bad)}"))
    bad = []
    for name, img, d in zip(names, inv.images, pres.degrees):
        degs = img.weighted_degrees()
        if degs and degs != {d}:
            bad.append(f"{name}: {sorted(degs)}")
    checks.append(Check("graded", not bad, "; ".join(bad)))
    pulled = [pres.pullback(img) for img in inv.images]
    pairs = ((0, 1), (0, 2), (1, 2))
    bad = []
    for (i, j), entry in zip(pairs, pres.bracket_table):
        lhs = pres.pullback(inv.apply(entry))
        rhs = -poisson_bracket_uv(pulled[i], pulled[j])
        if lhs != rhs:
            bad.append(f"{{{names[i]},{names[j]}}}")
    checks.append(Check("anti-Poisson", not bad, "" if not bad else "fails on " + ", ".join(bad)))
    return checks


def involution_ok(inv: AntiPoissonInvolution) -> bool:
    return all(c.passed for c in verify_involution(inv))


def _common_order(g: SL2Element, gamma: GammaType) -> int:
    order = gamma.conductor
    for t in g.entries():
        order = lcm(order, t.order)
    return order


def normalizes(g: SL2Element, gamma: GammaType) -> bool:
    order = _common_order(g, gamma)
    keys = {h.key(order) for h in group_elements(gamma)}
    gi = g.inverse()
    return all((g * h * gi).key(order) in keys for h in generators(gamma))


def realize_by_matrix(inv: AntiPoissonInvolution) -> SL2Element:
    g = inv.realizing_matrix
    if g is None:
        raise InvolutionError(f"{inv.label()} has no realizing matrix")
    if g.det() != -ONE:
        raise InvolutionError(f"{inv.label()}: det g = {g.det()}, expected -1")
    if not normalizes(g, inv.gamma):
        raise InvolutionError(f"{inv.label()}: g does not normalize the group")
    order = _common_order(g, inv.gamma)
    keys = {h.key(order) for h in group_elements(inv.gamma)}
    if (g * g).key(order) not in keys:
        raise InvolutionError(f"{inv.label()}: g^2 is not in the group")
    pres = inv.pres
    for name, f, img in zip("xyz", pres.invariants, inv.images):
        if group_act(g, f) != pres.pullback(img):
            raise InvolutionError(f"{inv.label()}: g.{name} differs from theta({name})")
    return g


def diagram_involution(inv: AntiPoissonInvolution) -> dict[int, int]:
    """Vertex permutation of the finite Dynkin diagram (vertices 1..n)."""
    return {i: inv.diagram_perm.get(i, i) for i in range(1, inv.gamma.n + 1)}


# -- fixed loci ---------------------------------------------------------------------

def _param(px, py, pz):
    conv = lambda p: p if isinstance(p, Polynomial) else Polynomial(T, {(0,): p} if p else {})
    return (conv(px), conv(py), conv(pz))


def classify_parametrization(param) -> str:
    nonconst = [p for p in param if not p.is_zero() and p.total_degree() > 0]
    if not nonconst:
        return "point"
    if any(len(p.terms) != 1 for p in nonconst):
        return "invalid"
    exps = [next(iter(p.terms))[0] for p in nonconst]
    if 1 in exps:
        return "line"
    g = 0
    for e in exps:
        g = gcd(g, e)
    return "cusp" if g == 1 and len(exps) >= 2 else "invalid"


def _locus_data(inv: AntiPoissonInvolution):
    """(ideal generators, eliminated (var, expr) or None, curve, components)."""
    x, y, z = _xyz()
    t = Polynomial.var("t", T)
    gamma, n, case = inv.gamma, inv.gamma.n, inv.case
    fam = gamma.family
    half = Polynomial.const(1, T) / 2

    if fam == "A":
        if case == "I":
            if n % 2:
                m = (n + 1) // 2
                comps = [
                    Component("line", x - z ** m, _param(t ** m, t ** m, t)),
                    Component("line", x + z ** m, _param(-(t ** m), -(t ** m), t)),
                ]
            else:
                comps = [Component("cusp", x ** 2 - z ** (n + 1), _param(t ** (n + 1), t ** (n + 1), t ** 2))]
            return [x - y], ("y", x), x ** 2 - z ** (n + 1), comps
        if case == "II" and n % 2:
            comps = [Component("line", x, _param(0, t, 0)), Component("line", y, _param(t, 0, 0))]
            return [z], ("z", Polynomial(XYZ, {})), x * y, comps
        if case == "II":
            return [x, z], None, None, [Component("line", None, _param(0, t, 0))]
        return [x, y, z], None, None, [Component("point", None, _param(0, 0, 0))]
    if fam == "D":
        if n % 2 == 0:
            m = (n - 2) // 2
            if case == "I":
                comps = [
                    Component("line", x, _param(0, t, 0)),
                    Component("line", y, _param(t, 0, 0)),
                    Component("line", y - x ** m, _param(t, t ** m, 0)),
                ]
                return [z], ("z", Polynomial(XYZ, {})), x * y * (y - x ** m), comps
            s = -1 if m % 2 else 1
            comps = [Component("cusp", x ** (n - 1) + 4 * z ** 2,
                               _param(-(t ** 2), s * t ** (2 * m) / 2, t ** (n - 1) / 2))]
            return [2 * y - x ** m], ("y", x ** m / 2), x ** (n - 1) + 4 * z ** 2, comps
        k = (n - 1) // 2
        if case == "I":
            comps = [Component("line", z, _param(t, 0, 0)), Component("line", z - x ** k, _param(t, 0, t ** k))]
            return [y], ("y", Polynomial(XYZ, {})), z * (z - x ** k), comps
        s = -1 if k % 2 else 1
        comps = [
            Component("line", x, _param(0, t, 0)),
            Component("cusp", 4 * y ** 2 + x ** (n - 2), _param(-(t ** 2), t ** (n - 2) / 2, s * t ** (2 * k) / 2)),
        ]
        return [2 * z - x ** k], ("z", x ** k / 2), x * (4 * y ** 2 + x ** (n - 2)), comps
    if fam == "E6":
        if case == "I":
            return [x], ("x", Polynomial(XYZ, {})), y ** 3 + z ** 2, [Component("cusp", y ** 3 + z ** 2, _param(0, -(t ** 2), t ** 3))]
        comps = [Component("cusp", x ** 4 - 4 * y ** 3, _param(4 * t ** 3, 4 * t ** 4, -8 * t ** 6))]
        return [2 * z + x ** 2], ("z", -(x ** 2) / 2), x ** 4 - 4 * y ** 3, comps
    if fam == "E7":
        comps = [Component("line", y, _param(t, 0, 0)), Component("cusp", x ** 3 + y ** 2, _param(-(t ** 2), t ** 3, 0))]
        return [z], ("z", Polynomial(XYZ, {})), y * (x ** 3 + y ** 2), comps
    comps = [Component("cusp", x ** 5 + y ** 3, _param(-(t ** 3), t ** 5, 0))]
    return [z], ("z", Polynomial(XYZ, {})), x ** 5 + y ** 3, comps


EXPECTED_COMPONENTS = {
    ("A", 1, "I"): 2, ("A", 1, "II"): 2, ("A", 1, "III"): 1,
    ("A", 0, "I"): 1, ("A", 0, "II"): 1,
    ("D", 0, "I"): 3, ("D", 0, "II"): 1,
    ("D", 1, "I"): 2, ("D", 1, "II"): 2,
    ("E6", None, "I"): 1, ("E6", None, "II"): 1,
    ("E7", None, "I"): 2, ("E8", None, "I"): 1,
}


def expected_component_count(inv: AntiPoissonInvolution) -> int:
    fam = inv.gamma.family
    parity = inv.gamma.n % 2 if fam in ("A", "D") else None
    return EXPECTED_COMPONENTS[(fam, parity, inv.case)]


def proportional(p: Polynomial, q: Polynomial) -> bool:
    if p.is_zero() or q.is_zero():
        return p.is_zero() and q.is_zero()
    e, c = next(iter(q.terms.items()))
    lam = p.coefficient(e) / c
    return not lam.is_zero() and p == q * lam


def _ideal_matches(inv: AntiPoissonInvolution, gens: list[Polynomial]) -> bool:
    diffs = [inv.apply(g) - g for g in _xyz()]
    diffs = [d for d in diffs if not d.is_zero()]
    covered = all(any(proportional(d, g) for g in gens) for d in diffs)
    generated = all(any(proportional(d, g) for d in diffs) for g in gens)
    return covered and generated


def fixed_locus(inv: AntiPoissonInvolution) -> FixedLocusDescription:
    pres = inv.pres
    gens, elim, curve, comps = _locus_data(inv)
    if not _ideal_matches(inv, gens):
        raise InvolutionError(f"{inv.label()}: stated ideal does not match theta(g) - g")
    if len(comps) != expected_component_count(inv):
        raise InvolutionError(f"{inv.label()}: {len(comps)} components, catalog says {expected_component_count(inv)}")
    x, y, z = _xyz()
    for comp in comps:
        sub = dict(zip("xyz", comp.parametrization))
        for g in [pres.relation] + gens:
            if not g.substitute(sub, T).is_zero():
                raise InvolutionError(f"{inv.label()}: parametrization {comp.as_dict()['parametrization']} misses {g}")
        kind = classify_parametrization(comp.parametrization)
        if kind != comp.kind:
            raise InvolutionError(f"{inv.label()}: parametrization classified as {kind}, stated {comp.kind}")
    if curve is None:
        reason = "maximal ideal (x,y,z)" if len(gens) == 3 else "linear ideal, quotient is a polynomial ring"
        return FixedLocusDescription(gens, None, comps, True, reason)
    var, expr = elim
    restricted = pres.relation.with_weights(None).substitute({var: expr}, XYZ)
    if not proportional(restricted, curve):
        raise InvolutionError(f"{inv.label()}: F restricted to J is {restricted}, not a multiple of {curve}")
    product = Polynomial.const(1, XYZ)
    for comp in comps:
        product = product * comp.equation
    if not proportional(product, curve):
        raise InvolutionError(f"{inv.label()}: product of components {product} differs from {curve}")
    surviving = [v for v in XYZ if v != var]
    ok, reason = squarefree_certificate(curve, surviving[0], surviving[1])
    if not ok:
        ok, reason = squarefree_certificate(curve, surviving[1], surviving[0])
    return FixedLocusDescription(gens, curve, comps, ok, reason)


# -- squarefree certificate -----------------------------------------------------------
# univariate polynomials are lists of CycloNumber, lowest degree first

def _trim(p):
    p = list(p)
    while p and p[-1].is_zero():
        p.pop()
    return p


def _udivmod(a, b):
    a, b = _trim(a), _trim(b)
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    q = [ZERO] * max(len(a) - len(b) + 1, 1)
    inv = ONE / b[-1]
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        c = a[-1] * inv
        q[shift] = c
        for i, bc in enumerate(b):
            a[i + shift] = a[i + shift] - c * bc
        a = _trim(a)
    return _trim(q), a


def _ugcd(a, b):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _udivmod(a, b)[1]
    if not a:
        return a
    inv = ONE / a[-1]
    return [c * inv for c in a]


def _uderiv(a):
    return _trim([c * i for i, c in enumerate(a)][1:])


def _usquarefree(a) -> bool:
    a = _trim(a)
    if len(a) <= 1:
        return True
    return len(_ugcd(a, _uderiv(a))) == 1


def _ueval(a, c):
    s = ZERO
    for coef in reversed(a):
        s = s * c + coef
    return s


def squarefree_certificate(g: Polynomial, main: str, other: str, tries: int = 50) -> tuple[bool, str]:
    """Certify that a bivariate g is squarefree.

    Write g = c(other) * p with c the content with respect to `main`. g is
    squarefree when c is, and p(main, other=c0) is squarefree of full degree for
    some c0 not killing the leading coefficient (a repeated factor of p would
    have positive degree in main and survive the specialization).
    """
    im, io = g.variables.index(main), g.variables.index(other)
    coeffs: dict[int, list] = {}
    for e, c in g.terms.items():
        row = coeffs.setdefault(e[im], [])
        while len(row) <= e[io]:
            row.append(ZERO)
        row[e[io]] = row[e[io]] + c
    rows = {k: _trim(v) for k, v in coeffs.items()}
    content = []
    for r in rows.values():
        content = _ugcd(content, r) if content else _ugcd(r, r)
    if not _usquarefree(content):
        return False, f"content in {other} has a repeated factor"
    prim = {k: _udivmod(r, content)[0] for k, r in rows.items()}
    top = max(prim)
    for c0 in range(tries):
        c0 = as_cyclo(c0)
        lead = _ueval(prim[top], c0)
        if lead.is_zero():
            continue
        spec = [ZERO] * (top + 1)
        for k, r in prim.items():
            spec[k] = _ueval(r, c0)
        if _usquarefree(spec):
            return True, f"content squarefree; primitive part squarefree at {other}={c0}"
    return False, "no squarefree specialization found"
