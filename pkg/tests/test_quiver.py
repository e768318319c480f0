import json
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from kleinian import quiver
from kleinian.cyclo import as_cyclo
from kleinian.groups import GammaType, presentation
from kleinian.quiver import (
    build_setting, exact_sample_points, gauge_act, moment_map, random_gauge, trace_generators,
)

SAMPLE_TYPES = [GammaType("A", n) for n in (1, 2, 3, 4, 7)] + [GammaType("D", n) for n in (4, 5, 6, 7, 8)] + [
    GammaType("E6", 6), GammaType("E7", 7), GammaType("E8", 8)]
IDS = [g.label for g in SAMPLE_TYPES]


@pytest.mark.parametrize("g", SAMPLE_TYPES, ids=IDS)
def test_setting_dimension_vector(g):
    s = build_setting(g)
    assert s.affine_cartan_null()
    assert s.delta[0] == 1
    assert sum(s.delta) == {"A": g.n + 1, "D": 2 * g.n - 2, "E6": 12, "E7": 18, "E8": 30}[g.family]


@pytest.mark.parametrize("g", SAMPLE_TYPES, ids=IDS)
def test_sample_points_on_zero_fiber(g):
    s = build_setting(g)
    rel = presentation(g, "working").relation
    for p in exact_sample_points(g):
        assert all(quiver.is_zero_matrix(m, True) for m in moment_map(s, p))
        assert quiver.is_semistable(s, p)
        assert quiver.exceptional_membership(s, p) == set()
        tg = trace_generators(s, p)
        assert rel.evaluate({k: tg[k] for k in "xyz"}).is_zero()


def test_tabulated_values():
    for label, want in (("E7", [(-8, 16, 64), (4, -8, -32)]), ("E8", [(-32, 256, -4096), (-8, -32, -256)])):
        g = GammaType.parse(label)
        s = build_setting(g)
        got = [tuple(trace_generators(s, p)[k] for k in "xyz") for p in quiver.tabulated_points(g)]
        assert got == [tuple(as_cyclo(v) for v in w) for w in want]


def test_type_a_family():
    for n in (1, 3, 6):
        s = build_setting(GammaType("A", n))
        for t in (2, -3, Fraction(1, 2)):
            p = quiver.typeA_family_point(n, t)
            tg = trace_generators(s, p)
            assert tg["x"] * tg["y"] == tg["z"] ** (n + 1)
            assert all(zi == tg["z"] for zi in tg["z_i"])


def test_auxiliary_trace_identities_exact():
    g = GammaType("E6", 6)
    s = build_setting(g)
    for p in exact_sample_points(g):
        tg = trace_generators(s, p)
        assert tg["x'"] == -tg["x"]
        assert tg["y''"] == tg["y"]
        assert tg["z"] + tg["z'"] == -tg["x"] ** 2
    for n in (5, 6, 7, 8):
        g = GammaType("D", n)
        s = build_setting(g)
        for p in exact_sample_points(g):
            tg = trace_generators(s, p)
            x, y, yp, z, zp = tg["x"], tg["y"], tg["y'"], tg["z"], tg["z'"]
            assert z * zp == x * y * yp
            if n % 2 == 0:
                assert y + yp == x ** ((n - 2) // 2)
            else:
                assert z + zp == x ** ((n - 1) // 2)
            for r in (1, 2, 3):
                want = x ** ((r + 1) // 2) if r % 2 else as_cyclo(0)
                for w in quiver.dn_induction_words(n, r):
                    assert quiver.evaluate_word(p, w) == want


@settings(max_examples=25)
@given(st.integers(0, 10 ** 6), st.sampled_from(["E7", "E8", "D6", "E6"]))
def test_gauge_invariance_of_traces(seed, label):
    g = GammaType.parse(label)
    s = build_setting(g)
    rng = random.Random(seed)
    p = exact_sample_points(g)[0]
    q = gauge_act(p, random_gauge(s, rng))
    assert trace_generators(s, q) == trace_generators(s, p)
    assert all(quiver.is_zero_matrix(m, True) for m in moment_map(s, q))


@settings(max_examples=25)
@given(st.integers(0, 10 ** 6), st.sampled_from(["A3", "D5", "E6"]))
def test_pairing_antisymmetric(seed, label):
    s = build_setting(GammaType.parse(label))
    rng = random.Random(seed)
    p, q = quiver.random_exact_point(s, rng), quiver.random_exact_point(s, rng)
    assert quiver.symplectic_pairing(p, q) == -quiver.symplectic_pairing(q, p)


@pytest.mark.parametrize("g", SAMPLE_TYPES, ids=IDS)
def test_lifts(g):
    s = build_setting(g)
    pts = exact_sample_points(g)
    for case in quiver.lift_cases(g):
        spec = quiver.lift_catalog(g, case)
        assert all(c.passed for c in quiver.verify_lift(spec, s, pts, random.Random(1)))


@pytest.mark.parametrize("n", [1, 3, 5])
def test_literal_odd_rotation_lift_squares_to_gauge(n):
    g = GammaType("A", n)
    spec = quiver.stated_form_A_III(n)
    assert quiver.verify_gauge_square(spec, build_setting(g), exact_sample_points(g))


def test_exceptional_membership_detects_degenerate_vertex():
    g = GammaType("A", 2)
    s = build_setting(g)
    # x = y = z = 0; vertex 2 has no nonzero outgoing map
    p = quiver.make_point(s, {"B1<-0": [[1]], "B2<-1": [[1]]})
    assert all(quiver.is_zero_matrix(m, True) for m in moment_map(s, p))
    assert quiver.is_semistable(s, p)
    assert quiver.exceptional_membership(s, p) == {2}
    assert quiver.exceptional_membership(s, quiver.typeA_family_point(2, 0)) == set()


def test_not_semistable_rejected():
    s = build_setting(GammaType("D", 4))
    with pytest.raises(quiver.NotSemistable):
        quiver.exceptional_membership(s, quiver.zero_point(s))


def test_mixed_arithmetic_rejected():
    s = build_setting(GammaType("A", 2))
    p = quiver.typeA_family_point(2, 2)
    with pytest.raises(quiver.MixedArithmetic):
        quiver.symplectic_pairing(p, p.to_float())


def test_json_round_trip():
    for g in (GammaType("E7", 7), GammaType("A", 3)):
        for p in exact_sample_points(g):
            data = json.loads(quiver.dumps_point(p))
            assert quiver.point_from_json(data) == p
            fp = p.to_float()
            assert quiver.point_from_json(json.loads(quiver.dumps_point(fp))) == fp


def test_bad_shapes_rejected():
    s = build_setting(GammaType("A", 2))
    p = quiver.zero_point(s)
    ent = dict(p.entries)
    ent["l0"] = [[as_cyclo(1)], [as_cyclo(0)]]
    with pytest.raises(ValueError):
        quiver.QuiverPoint(s, ent, True)
