import cmath

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from kleinian import groups
from kleinian.groups import GammaType, presentation
from kleinian.poly import Polynomial, UV, XYZ, poisson_bracket_uv

TYPES = (
    [GammaType("A", n) for n in range(1, 13)]
    + [GammaType("D", n) for n in range(4, 11)]
    + [GammaType("E6", 6), GammaType("E7", 7), GammaType("E8", 8)]
)
IDS = [g.label for g in TYPES]


@pytest.mark.parametrize("g", TYPES, ids=IDS)
def test_group_order(g):
    assert len(groups.group_elements(g)) == g.order


def test_listed_icosahedral_generators_do_not_close():
    g = GammaType("E8", 8)
    with pytest.raises(groups.GroupClosureError):
        groups.closure(groups.stated_generators(g), g.conductor, 10 * g.order)


def test_parse_types():
    assert GammaType.parse("d6") == GammaType("D", 6)
    assert GammaType.parse("A", n=7) == GammaType("A", 7)
    assert GammaType.parse("E7").order == 48
    for bad in ("A", "F4", "E9", "bogus"):
        with pytest.raises(ValueError):
            GammaType.parse(bad)


def molien_dimension(g: GammaType, d: int) -> int:
    """Average over the group of the trace on degree-d forms, from eigenvalues."""
    total = 0
    for el in groups.group_elements(g):
        a, b, c, dd = (x.to_complex() for x in el.entries())
        tr = a + dd
        disc = cmath.sqrt(tr * tr - 4)
        lam = (tr + disc) / 2
        if abs(lam - 1 / lam) < 1e-9:
            total += (d + 1) * lam ** d
        else:
            total += (lam ** (d + 1) - lam ** (-(d + 1))) / (lam - 1 / lam)
    val = total / g.order
    assert abs(val.imag) < 1e-6
    return round(val.real)


@pytest.mark.parametrize("g", [GammaType("A", 4), GammaType("D", 5), GammaType("D", 6), GammaType("E6", 6),
                               GammaType("E7", 7), GammaType("E8", 8)], ids=lambda g: g.label)
def test_invariant_dimensions_match_molien(g):
    pres = presentation(g, "working")
    cap = max(2 * pres.degrees[2], pres.degrees[0] + pres.degrees[1])
    for d in range(0, cap + 1, 2 if g.family != "A" else 1):
        want = molien_dimension(g, d)
        assert len(groups.invariant_basis(pres, d)) == want
        nf = groups.weighted_monomials(pres.degrees, d, groups.normal_form_filter(g))
        assert len(nf) == want


uv_polys = st.dictionaries(
    st.tuples(st.integers(0, 7), st.integers(0, 7)), st.integers(-5, 5), max_size=4
).map(lambda d: Polynomial(UV, d))


@settings(max_examples=60)
@given(uv_polys, st.sampled_from([GammaType("A", 3), GammaType("D", 5), GammaType("E6", 6)]))
def test_reynolds_matches_bruteforce_and_is_invariant(f, g):
    r = groups.reynolds_group(g, f)
    assert r == groups.reynolds_bruteforce(g, f)
    assert groups.reynolds_group(g, r) == r
    for s in groups.generators(g):
        assert groups.group_act(s, r) == r


@pytest.mark.parametrize("g", TYPES, ids=IDS)
def test_working_presentation(g):
    pres = presentation(g, "working")
    assert all(c.passed for c in groups.check_presentation(pres))
    assert all(c.passed for c in groups.check_bracket_table(pres))


@pytest.mark.parametrize("g", TYPES, ids=IDS)
def test_working_table_is_hypersurface_bracket(g):
    """{x,y}, {x,z}, {y,z} = c (F_z, -F_y, F_x) for one constant c."""
    x, y, z = sympy.symbols("x y z")
    pres = presentation(g, "working")

    def s(p):
        return sympy.sympify(str(p).replace("^", "**"))

    F = s(pres.relation)
    want = (sympy.diff(F, z), -sympy.diff(F, y), sympy.diff(F, x))
    got = [s(p) for p in pres.bracket_table]
    ratio = sympy.cancel(got[0] / want[0])
    assert ratio.is_number and ratio != 0
    assert all(sympy.expand(a - ratio * b) == 0 for a, b in zip(got, want))


@pytest.mark.parametrize("n", [5, 7, 9])
def test_stated_odd_dihedral_bracket_sign(n):
    """The listed {y,z} differs from the computed one in the sign of the z term."""
    g = GammaType("D", n)
    pres = presentation(g, "stated")
    checks = {c.name: c for c in groups.check_bracket_table(pres)}
    assert checks["{x,y}"].passed and checks["{x,z}"].passed
    assert not checks["{y,z}"].passed
    x, y, z = Polynomial.gens(XYZ)
    k = (n - 1) // 2
    computed = -(n - 2) * ((n - 1) * x ** (k - 1) * z + 2 * y ** 2)
    assert poisson_bracket_uv(pres.inv_y, pres.inv_z) == pres.pullback(computed)


@pytest.mark.parametrize("g", [t for t in TYPES if t.family in ("A", "D") and not (t.family == "D" and t.n % 2)],
                         ids=lambda g: g.label)
def test_stated_presentation_passes_where_consistent(g):
    pres = presentation(g, "stated")
    assert all(c.passed for c in groups.check_presentation(pres))
    assert all(c.passed for c in groups.check_bracket_table(pres))


@pytest.mark.parametrize("g", TYPES, ids=IDS)
def test_coordinate_change_to_classical_form(g):
    sub = groups.coordinate_change(g)
    image = groups.classical_relation(g).substitute(sub, XYZ)
    assert groups._proportionality(image, presentation(g, "working").relation) is not None


@pytest.mark.parametrize("g", [GammaType("D", 6), GammaType("E7", 7)], ids=lambda g: g.label)
def test_express_in_generators_round_trip(g):
    pres = presentation(g, "working")
    x, y, z = Polynomial.gens(XYZ)
    h = x * y + z * x ** 2 if g.family == "D" else x ** 3 + 7 * z
    for p in (h, x * z):
        same_degree = len(p.with_weights(pres.degrees).weighted_degrees()) == 1
        if same_degree:
            assert groups.express_in_generators(pres, pres.pullback(p)).with_weights(None) == p


def test_non_invariant_has_no_representation():
    pres = presentation(GammaType("E6", 6), "working")
    u, v = Polynomial.gens(UV)
    with pytest.raises(groups.NoRepresentation):
        groups.express_in_generators(pres, u ** 7 * v)
