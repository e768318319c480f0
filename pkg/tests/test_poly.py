from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from kleinian.poly import (
    Polynomial, PolynomialError, UV, XYZ, parse_polynomial, poisson_bracket_uv, poly_diff, monomial,
)

SX, SY, SZ = sympy.symbols("x y z")


def terms_strategy(variables, max_deg=4):
    exps = st.tuples(*[st.integers(0, max_deg)] * len(variables))
    coeffs = st.fractions(min_value=-9, max_value=9, max_denominator=4)
    return st.dictionaries(exps, coeffs, max_size=5).map(lambda d: Polynomial(variables, d))


xyz_polys = terms_strategy(XYZ)
uv_polys = terms_strategy(UV, 5)


def to_sympy(p: Polynomial):
    syms = sympy.symbols(" ".join(p.variables))
    out = 0
    for e, c in p.terms.items():
        m = sympy.Rational(c.to_fraction().numerator, c.to_fraction().denominator)
        for s, k in zip(syms, e):
            m *= s ** k
        out += m
    return sympy.expand(out)


@given(xyz_polys, xyz_polys)
def test_arithmetic_matches_sympy(f, g):
    assert to_sympy(f * g) == sympy.expand(to_sympy(f) * to_sympy(g))
    assert to_sympy(f - g) == sympy.expand(to_sympy(f) - to_sympy(g))
    assert to_sympy(f.diff("y")) == sympy.diff(to_sympy(f), SY)


@given(xyz_polys)
def test_parse_round_trip(f):
    assert parse_polynomial(str(f)) == f


@given(terms_strategy(XYZ, 2), terms_strategy(XYZ, 2), terms_strategy(XYZ, 1), terms_strategy(XYZ, 1))
def test_substitution_is_a_ring_map(f, e, g, h):
    sub = {"x": g, "y": h, "z": g * h}
    assert (f * e).substitute(sub) == f.substitute(sub) * e.substitute(sub)
    assert (f + e).substitute(sub) == f.substitute(sub) + e.substitute(sub)


@settings(max_examples=150)
@given(uv_polys, uv_polys, uv_polys)
def test_uv_bracket_axioms(f, g, h):
    br = poisson_bracket_uv
    assert br(f, g) == -br(g, f)
    assert br(f, g * h) == br(f, g) * h + g * br(f, h)
    assert (br(f, br(g, h)) + br(g, br(h, f)) + br(h, br(f, g))).is_zero()


def test_basic_values():
    u, v = Polynomial.gens(UV)
    assert poly_diff(u ** 2 * v, "u") == 2 * u * v
    assert poisson_bracket_uv(u ** 2, v ** 2) == 4 * u * v
    assert str(parse_polynomial("x*y - z^4")) == "-z^4 + x*y"
    assert parse_polynomial("x/2 + 1/3") == Polynomial(XYZ, {(1, 0, 0): Fraction(1, 2), (0, 0, 0): Fraction(1, 3)})


def test_weighted_degrees():
    f = parse_polynomial("x^2 + y*z").with_weights((4, 6, 2))
    assert f.weighted_degrees() == {8}
    assert f.is_homogeneous()
    assert monomial((1, 1, 1), XYZ).with_weights((1, 2, 3)).weighted_degree() == 6


@pytest.mark.parametrize("bad", ["x +", "w*x", "x^y", "x/y", "x^-1", "sin(x)", "1.5*x"])
def test_parse_rejects(bad):
    with pytest.raises(PolynomialError):
        parse_polynomial(bad)


def test_variable_mismatch():
    with pytest.raises(PolynomialError):
        Polynomial.var("u", UV) + Polynomial.var("x", XYZ)
    with pytest.raises(PolynomialError):
        poisson_bracket_uv(Polynomial.var("x", XYZ), Polynomial.var("x", XYZ))
