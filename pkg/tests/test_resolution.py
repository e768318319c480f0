import json

import pytest
import sympy
from hypothesis import given, strategies as st

from kleinian import resolution
from kleinian.groups import GammaType
from kleinian.involutions import involution_catalog, get_involution, diagram_involution
from kleinian.poly import parse_polynomial
from kleinian.resolution import (
    AmbiguousConfiguration, ConfigurationError, NonIntegral, cartan, divisor_description, closed_form,
    propagate_fixed, solve_multiplicities, typeA_chart_pullback,
)

TYPES = (
    [GammaType("A", n) for n in range(1, 13)]
    + [GammaType("D", n) for n in range(4, 11)]
    + [GammaType("E6", 6), GammaType("E7", 7), GammaType("E8", 8)]
)
CASES = [(g, inv.case) for g in TYPES for inv in involution_catalog(g)]
CASE_IDS = [f"{g.label}-{c}" for g, c in CASES]


@pytest.mark.parametrize("g", TYPES, ids=[g.label for g in TYPES])
def test_cartan_inverse_matches_sympy(g):
    data = cartan(g)
    inv = sympy.Matrix(data.cartan).inv()
    assert [[sympy.Rational(x.numerator, x.denominator) for x in row] for row in data.cartan_inverse] == inv.tolist()
    det = {"A": g.n + 1, "D": 4, "E6": 3, "E7": 2, "E8": 1}[g.family]
    assert sympy.Matrix(data.cartan).det() == det
    # highest root is dominant and C theta picks out the affine attachment
    theta = data.max_root
    ct = [sum(data.cartan[i][j] * theta[j] for j in range(g.n)) for i in range(g.n)]
    assert min(ct) >= 0 and sum(ct) == 2 if g.family == "A" else sorted(ct) == [0] * (g.n - 1) + [1]


@pytest.mark.parametrize("g,case", CASES, ids=CASE_IDS)
def test_divisors_match_closed_forms(g, case):
    d = divisor_description(g, case)
    assert d.multiplicities == closed_form(g, case)
    data = cartan(g)
    if d.principal:
        # C a = b exactly
        assert [sum(data.cartan[i][j] * d.multiplicities[j] for j in range(g.n)) for i in range(g.n)] == d.b
        for i in resolution.meets_three(d, data):
            assert d.multiplicities[i - 1] > 1


def test_reducedness_flags():
    assert divisor_description(GammaType("A", 5), "III").reduced is True
    assert divisor_description(GammaType("A", 5), "II").reduced is True
    assert divisor_description(GammaType("A", 4), "II").reduced is None
    assert divisor_description(GammaType("A", 4), "II").generically_reduced
    assert divisor_description(GammaType("E8", 8), "I").reduced is False


def test_attachments():
    d = divisor_description(GammaType("D", 6), "II")
    assert d.strict_transforms == [("L1", (4,))]
    d = divisor_description(GammaType("A", 6), "I")
    assert d.strict_transforms == [("L1", (3, 4))]
    d = divisor_description(GammaType("E7", 7), "I")
    assert sorted(att for _, att in d.strict_transforms) == [(6,), (7,)]


def test_even_rotation_case_needs_pin():
    g = GammaType("A", 4)
    data = cartan(g)
    with pytest.raises(AmbiguousConfiguration):
        propagate_fixed(data, diagram_involution(get_involution(g, "II")), 1)


def test_propagate_rejects_bad_input():
    data = cartan(GammaType("A", 3))
    with pytest.raises(ConfigurationError):
        propagate_fixed(data, {1: 2, 2: 3, 3: 1}, 1)
    with pytest.raises(ConfigurationError):
        propagate_fixed(data, {1: 2, 2: 1}, 1)
    with pytest.raises(ConfigurationError):
        propagate_fixed(data, {}, 7)


def test_integrality_check():
    data = cartan(GammaType("A", 3))
    with pytest.raises(NonIntegral):
        solve_multiplicities(data, [1, 0, 0])
    assert solve_multiplicities(data, [0, 2, 0]) == [1, 2, 1]
    with pytest.raises(ValueError):
        solve_multiplicities(data, [-1, 0, 0])


@pytest.mark.parametrize("n", range(1, 13))
def test_chart_oracle(n):
    assert typeA_chart_pullback(n, parse_polynomial("x - y")) == [min(i, n + 1 - i) for i in range(1, n + 1)]
    assert typeA_chart_pullback(n, parse_polynomial("z")) == [1] * n
    assert typeA_chart_pullback(n, parse_polynomial("x")) == list(range(n, 0, -1))
    assert typeA_chart_pullback(n, parse_polynomial("y")) == list(range(1, n + 1))


@given(st.integers(1, 8), st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))
def test_chart_orders_are_additive(n, a, b, c):
    f = parse_polynomial(f"x^{a}*y^{b}*z^{c}")
    if a + b + c == 0:
        return
    ox = typeA_chart_pullback(n, parse_polynomial("x"))
    oy = typeA_chart_pullback(n, parse_polynomial("y"))
    want = [a * p + b * q + c for p, q in zip(ox, oy)]
    assert typeA_chart_pullback(n, f) == want


def test_chart_rejections():
    with pytest.raises(ValueError):
        typeA_chart_pullback(3, parse_polynomial("x*y - z^4"))
    with pytest.raises(ValueError):
        typeA_chart_pullback(3, parse_polynomial("x + 1"))


def test_dot_output():
    dot = resolution.to_dot(divisor_description(GammaType("E7", 7), "I"))
    nodes = [l for l in dot.splitlines() if "[label=" in l]
    assert len(nodes) == 9
    assert sum("shape=box" in l for l in nodes) == 2
    assert 'C3 [label="C3\\n9"' in dot
    assert dot.startswith("graph ") and dot.rstrip().endswith("}")


def test_json_and_text():
    d = divisor_description(GammaType("D", 6), "II")
    data = json.loads(json.dumps(d.as_dict()))
    assert data["attachments"] == {"L1": ["C4"]}
    assert [c["multiplicity"] for c in data["components"][:6]] == [1, 2, 3, 4, 2, 2]
    text = resolution.to_text(divisor_description(GammaType("A", 7), "III"))
    assert "reduced exceptional fiber, all multiplicities 1" in text
