import cmath
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qdgeo.qdclass import (
    DegenerateInputError,
    NormalizedQD,
    classification_json,
    classify,
    delta,
    detect_degenerate,
    heights,
    imag_pos_sqrt,
    leading_coeffs,
    order_zeros,
    region_of,
    sigma,
    spiral_behavior,
    spiral_mode,
)

B2_ANCHOR = NormalizedQD(2j, -0.5 + 0.5j)


def test_zero_ordering():
    assert order_zeros(1j, 2j) == (2j, 1j)
    assert order_zeros(-0.5, 0.5) == (0.5, -0.5)
    assert order_zeros(-0.3 + 1j, 0.4 + 1j) == (0.4 + 1j, -0.3 + 1j)


def test_imag_pos_sqrt_branch():
    assert imag_pos_sqrt(-1.0).imag == 1.0
    assert imag_pos_sqrt(4.0) == 2.0
    w = imag_pos_sqrt(0.5 - 3.5j)
    assert w.imag > 0
    assert abs(w * w - (0.5 - 3.5j)) < 1e-12


def test_leading_coeffs_examples():
    assert leading_coeffs(NormalizedQD(1j, -1j)) == (2 + 0j, 2 + 0j)
    c1, cm1 = leading_coeffs(NormalizedQD(0.5, -0.5))
    assert abs(c1 - 0.75) < 1e-15 and abs(cm1 - 0.75) < 1e-15
    c1, cm1 = leading_coeffs(B2_ANCHOR)
    assert abs(c1 - (0.5 - 3.5j)) < 1e-12
    assert abs(cm1 - (-0.5 + 1.5j)) < 1e-12


def test_leading_coeffs_reject_degenerate():
    with pytest.raises(DegenerateInputError):
        leading_coeffs(NormalizedQD(1.0, 0.5))
    with pytest.raises(DegenerateInputError):
        leading_coeffs(NormalizedQD(0.3, 0.3))


def test_heights_conjugate_pair_collapse():
    pl = heights(NormalizedQD(1j, -1j))
    assert pl.hplus == 0.0 and pl.hminus == 0.0


def test_heights_frozen_anchor():
    pl = heights(B2_ANCHOR)
    assert abs(pl.hplus - 0.615988423788623) < 1e-12
    assert abs(pl.hminus - 0.5100415216043923) < 1e-12
    assert abs(pl.h1 - 0.05297345109211532) < 1e-12
    assert abs(pl.h - 0.5630149726965077) < 1e-12
    assert pl.h2 == pl.hminus

    # reflecting p2 across the imaginary axis swaps the two pole products
    mirror = heights(NormalizedQD(2j, 0.5 + 0.5j))
    assert abs(mirror.hplus - pl.hminus) < 1e-12
    assert abs(mirror.hminus - pl.hplus) < 1e-12


coord = st.floats(-3, 3, allow_nan=False, allow_subnormal=False)
zero_pair = st.tuples(
    st.builds(complex, coord, coord), st.builds(complex, coord, coord)
).filter(
    lambda ab: abs(ab[0] - ab[1]) > 1e-3
    and all(abs(p - 1) > 1e-3 and abs(p + 1) > 1e-3 for p in ab)
)


@settings(max_examples=60, deadline=None)
@given(zero_pair)
def test_height_identities(pair):
    pl = heights(NormalizedQD.from_pair(*pair))
    assert pl.hplus >= 0 and pl.hminus >= 0
    assert abs(pl.h - 0.5 * (pl.hplus + pl.hminus)) < 1e-12
    assert abs(pl.h1 + pl.h2 - pl.h) < 1e-12


def test_spiral_mode_cases():
    assert spiral_mode(0.75) == "circle"
    assert spiral_mode(-1.0) == "radial"
    assert spiral_mode(0.5 - 3.5j) == "ccw"
    assert spiral_mode(0.5 + 3.5j) == "cw"


def test_spiral_behavior_anchor():
    assert spiral_behavior(B2_ANCHOR) == ("ccw", "cw")
    assert spiral_behavior(NormalizedQD(1j, -1j)) == ("circle", "circle")
    # p1=2, p2=0: C1 = (2-1)(0-1) = -1 radial at +1, Cm1 = 3 circle at -1
    assert spiral_behavior(NormalizedQD(2.0, 0.0)) == ("radial", "circle")


def test_region_examples():
    assert region_of(2j, 0.5 + 0.5j).label == "E1+"
    assert region_of(2j, (2j).conjugate()).label == "conj"
    # focal ray at -1: arg(p2+1) = -arg(p1+1) makes Cm1 positive real
    p1 = 2j
    p2 = -1 + 0.5 * cmath.exp(-1j * cmath.phase(p1 + 1))
    assert region_of(p1, p2).label == "lm1+"
    assert region_of(2j, -0.5 + 0.5j).label == "Em1+"


def test_region_requires_complex_p1():
    with pytest.raises(ValueError):
        region_of(0.5, 2j)


def test_region_conic_arcs(conic_points):
    ellipse_point, hyperbola_point = conic_points
    p1 = 0.6 + 1.1j
    a = sigma(p1) / 2
    d = delta(p1) / 2
    on_l = ellipse_point(a, 2.2)
    lab = region_of(p1, on_l)
    assert lab.label in ("L+", "L-")
    assert (lab.label == "L+") == (delta(on_l) < delta(p1))
    on_h = hyperbola_point(d, -0.8)
    lab = region_of(p1, on_h)
    assert lab.label in ("H+", "H-")
    assert (lab.label == "H+") == (sigma(on_h) < sigma(p1))


def test_conic_membership_matches_height_equality(conic_points):
    ellipse_point, hyperbola_point = conic_points
    p1 = -0.4 + 0.9j
    a = sigma(p1) / 2
    d = delta(p1) / 2
    for t in (0.5, 1.9, 2.8):
        pl = heights(NormalizedQD.from_pair(p1, ellipse_point(a, t)))
        assert abs(pl.hplus - pl.hminus) < 1e-8
        pl = heights(NormalizedQD.from_pair(p1, hyperbola_point(d, t - 1.5)))
        assert abs(pl.hplus - pl.hminus) < 1e-8
    # and strictly off the conics the heights split
    pl = heights(NormalizedQD.from_pair(p1, 0.2 - 0.7j))
    assert abs(pl.hplus - pl.hminus) > 1e-6


def test_classify_three_circles():
    t = classify(NormalizedQD(0.5, -0.5))
    assert t.variant == "ThreeCircles_a"
    t = classify(NormalizedQD(3.0, 2.0))
    assert t.variant == "ThreeCircles_b"
    assert t.circled_pole == 1
    t = classify(NormalizedQD(-2.0, -3.0))
    assert t.variant == "ThreeCircles_b"
    assert t.circled_pole == -1
    t = classify(NormalizedQD(1j, -1j))
    assert t.variant == "ThreeCircles_c"
    # every three-circle stratum is measure zero, so the sample is flagged
    # as tolerance-adjacent by construction
    assert t.boundary_marker


def test_classify_two_circles():
    p1 = -1 + 2 * cmath.exp(1j * math.pi / 4)
    p2 = -1 + cmath.exp(-1j * math.pi / 4)
    t = classify(NormalizedQD.from_pair(p1, p2))
    assert t.variant == "TwoCircles"
    assert t.second_pole == -1
    assert t.zero_on_dinf == "p1"


def test_classify_two_strips_anchor():
    t = classify(B2_ANCHOR)
    assert t.variant == "OneCircleTwoStrips"
    assert t.orientation == "b2"
    assert t.zero_on_dinf == "p1"
    assert t.region == "Em1+"
    assert t.pole_attachments == ((-1, "p2"),)
    assert not t.boundary_marker


def test_classify_single_strip_boundaries(conic_points):
    ellipse_point, hyperbola_point = conic_points
    p1 = 0.6 + 1.1j
    on_l = ellipse_point(sigma(p1) / 2, 2.2)
    t = classify(NormalizedQD.from_pair(p1, on_l))
    assert t.variant == "OneCircleOneStrip_a"
    on_h = hyperbola_point(delta(p1) / 2, -0.8)
    t = classify(NormalizedQD.from_pair(p1, on_h))
    assert t.variant == "OneCircleOneStrip_b1"


def test_classify_degenerate_reroute():
    t = classify(NormalizedQD(1.0, -1.0))
    assert t.variant == "Degenerate"
    assert t.degenerate.kind == "both_at_poles_opposite"


def test_detect_degenerate_kinds():
    assert detect_degenerate(NormalizedQD(0.3, 0.3)).kind == "p1_eq_p2_interior"
    assert detect_degenerate(NormalizedQD(2.5, 2.5)).kind == "p1_eq_p2_real_outside"
    assert detect_degenerate(NormalizedQD(1 + 1j, 1 + 1j)).kind == "p1_eq_p2_complex"
    assert detect_degenerate(NormalizedQD(1.0, -1.0)).kind == "both_at_poles_opposite"
    d = detect_degenerate(NormalizedQD(1.0, 1.0))
    assert d.kind == "both_at_poles_same" and d.pole == 1
    d = detect_degenerate(NormalizedQD(2j, -1.0))
    assert d.kind == "p2_at_pole" and d.pole == -1 and d.sub == "complex"
    d = detect_degenerate(NormalizedQD.from_pair(0.5, 1.0))
    assert d.kind == "p2_at_pole" and d.pole == 1 and d.sub == "real_interior"
    d = detect_degenerate(NormalizedQD.from_pair(-3.0, 1.0))
    assert d.kind == "p2_at_pole" and d.pole == 1 and d.sub == "real_outside"
    assert detect_degenerate(B2_ANCHOR) is None


def test_mirror_swaps_pole_roles(rng):
    from conftest import sample_two_strip

    for qd in sample_two_strip(rng, 8):
        t = classify(qd)
        pl = heights(qd)
        mirror_qd = NormalizedQD.from_pair(-qd.p1, -qd.p2)
        mt = classify(mirror_qd)
        mpl = heights(mirror_qd)
        assert mt.variant == t.variant
        assert {t.orientation, mt.orientation} == {"b2", "b3"}
        assert mpl.spiral_plus == pl.spiral_minus
        assert mpl.spiral_minus == pl.spiral_plus
        assert abs(mpl.hplus - pl.hminus) < 1e-12


def test_conjugation_reverses_spirals(rng):
    from conftest import sample_two_strip

    for qd in sample_two_strip(rng, 8):
        t = classify(qd)
        pl = heights(qd)
        conj_qd = NormalizedQD.from_pair(qd.p1.conjugate(), qd.p2.conjugate())
        ct = classify(conj_qd)
        cpl = heights(conj_qd)
        assert ct.variant == t.variant
        assert ct.orientation == t.orientation
        flip = {"cw": "ccw", "ccw": "cw", "circle": "circle", "radial": "radial"}
        assert cpl.spiral_plus == flip[pl.spiral_plus]
        assert cpl.spiral_minus == flip[pl.spiral_minus]


def test_swap_of_zero_arguments_is_canonicalized():
    a = NormalizedQD.from_pair(2j, -0.5 + 0.5j)
    b = NormalizedQD.from_pair(-0.5 + 0.5j, 2j)
    assert a == b
    assert classify(a) == classify(b)


def test_classification_json_shape():
    doc = classification_json(B2_ANCHOR)
    for key in ("variant", "boundary_marker", "p1", "p2", "C1", "Cm1", "heights", "spiral", "regions"):
        assert key in doc
    assert doc["variant"] == "OneCircleTwoStrips"
    assert doc["spiral"] == {"plus": "ccw", "minus": "cw"}
    assert doc["pole_attachments"] == [[-1, "p2"]]

    deg = classification_json(NormalizedQD(1.0, -1.0))
    assert deg["degenerate"]["kind"] == "both_at_poles_opposite"
    assert "heights" not in deg
