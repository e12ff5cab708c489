import cmath
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qdgeo.jacobi import ParamSequence, root_cloud_sequence
from qdgeo.limitfield import (
    DegenerateQD,
    LimitParams,
    degenerate_limit_check,
    eq12_residual,
    limit_cauchy_branches,
    limit_configuration,
    limit_discriminant,
    theorem2_differential,
)
from qdgeo.polyroots import Poly, evaluate, find_roots
from qdgeo.qdclass import DegenerateConfig, NormalizedQD

slope = st.complex_numbers(max_magnitude=2.5, allow_nan=False, allow_infinity=False)


def make_params(A, B):
    if abs(1 + A + B) <= 1e-6:
        A = A + 0.5
    return LimitParams(A, B)


def test_params_reject_degenerate_sum():
    with pytest.raises(ValueError):
        LimitParams(0.0, -1.0)
    with pytest.raises(ValueError):
        LimitParams(0.3 + 0.2j, -1.3 - 0.2j)


def test_discriminant_frozen_examples():
    d = limit_discriminant(LimitParams(0.0, 0.0))
    assert [complex(c) for c in d.coeffs] == [-4 + 0j, 0j, 4 + 0j]
    d = limit_discriminant(LimitParams(1.0, -1.0))
    assert [complex(c) for c in d.coeffs] == [0j, 0j, 4 + 0j]
    d = limit_discriminant(LimitParams(1.0, 1.0))
    assert [complex(c) for c in d.coeffs] == [-12 + 0j, 0j, 16 + 0j]


@settings(max_examples=60, deadline=None)
@given(slope, slope, st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False))
def test_discriminant_matches_defining_expression(A, B, z):
    lp = make_params(A, B)
    A, B = lp.A, lp.B
    want = ((A + B) * z + A - B) ** 2 - 4 * (1 - z * z) * (A + B + 1)
    got = evaluate(limit_discriminant(lp), z)
    assert abs(got - want) <= 1e-10 * (1 + abs(want))


@settings(max_examples=60, deadline=None)
@given(slope, slope, st.complex_numbers(min_magnitude=1.5, max_magnitude=6, allow_nan=False, allow_infinity=False))
def test_branches_satisfy_vieta(A, B, z):
    lp = make_params(A, B)
    A, B = lp.A, lp.B
    pair = limit_cauchy_branches(lp, z)
    s = pair.principal + pair.secondary
    p = pair.principal * pair.secondary
    want_s = ((A + B) * z + A - B) / (1 - z * z)
    want_p = (A + B + 1) / (1 - z * z)
    assert abs(s - want_s) <= 1e-10 * (1 + abs(want_s))
    assert abs(p - want_p) <= 1e-10 * (1 + abs(want_p))


def test_branch_values_and_ordering():
    pair = limit_cauchy_branches(LimitParams(0.0, 0.0), 2.0)
    assert abs(pair.principal - 1 / math.sqrt(3)) < 1e-12
    assert not pair.near_branch_point

    pair = limit_cauchy_branches(LimitParams(1.0, 1.0), 0.0)
    got = sorted((pair.principal, pair.secondary), key=lambda w: w.imag)
    assert abs(got[0] + 1j * math.sqrt(3)) < 1e-12
    assert abs(got[1] - 1j * math.sqrt(3)) < 1e-12

    # principal branch is the probability-measure normalization at infinity
    far = limit_cauchy_branches(LimitParams(0.4 - 0.3j, 0.2j), 1e6)
    assert abs(1e6 * far.principal - 1) < 1e-3


def test_branch_pole_rejection():
    lp = LimitParams(0.5, 0.25)
    for z in (1.0, -1.0):
        with pytest.raises(ValueError):
            limit_cauchy_branches(lp, z)


def test_branch_point_vicinity_flag():
    lp = LimitParams(1.0, 1.0)
    z0 = math.sqrt(3) / 2
    assert limit_cauchy_branches(lp, z0 + 1e-8).near_branch_point
    assert not limit_cauchy_branches(lp, z0 + 0.1).near_branch_point


def test_differential_normal_form():
    qd = theorem2_differential(LimitParams(1.0, 1.0))
    assert isinstance(qd, NormalizedQD)
    assert abs(qd.p1 - math.sqrt(3) / 2) < 1e-12
    assert abs(qd.p2 + math.sqrt(3) / 2) < 1e-12
    d = limit_discriminant(LimitParams(1.0, 1.0))
    assert abs(evaluate(d, qd.p1)) < 1e-10
    assert abs(evaluate(d, qd.p2)) < 1e-10


@settings(max_examples=40, deadline=None)
@given(slope)
def test_equal_slopes_give_symmetric_zeros(A):
    lp = make_params(A, A)
    if abs(lp.A + lp.A + 2) < 1e-6:
        return
    qd = theorem2_differential(lp)
    assert isinstance(qd, NormalizedQD)
    assert abs(qd.p1 + qd.p2) <= 1e-8 * (1 + abs(qd.p1))


def test_differential_degree_drop():
    qd = theorem2_differential(LimitParams(-3.0, 1.0))
    assert isinstance(qd, DegenerateQD)
    coeffs = [complex(c) for c in qd.numerator.coeffs]
    assert coeffs == [-20 + 0j, -16 + 0j]


def test_legendre_configuration_is_degenerate():
    cfg = limit_configuration(LimitParams(0.0, 0.0))
    assert isinstance(cfg, DegenerateConfig)
    assert cfg.kind == "both_at_poles_opposite"


def test_eq12_residual_decays_for_legendre():
    probes = [2 * cmath.exp(2j * cmath.pi * k / 64) for k in range(64)]
    lp = LimitParams(0.0, 0.0)
    medians = []
    for mu in root_cloud_sequence(ParamSequence(0.0, 0.0), [20, 40, 60]):
        medians.append(eq12_residual(lp, mu, probes)["median"])
    frozen = [0.006277572442699752, 0.003099124995580246, 0.002057410263576452]
    for got, want in zip(medians, frozen):
        assert abs(got - want) <= 1e-6 * want
    assert medians[0] > medians[1] > medians[2]


def test_eq12_residual_requires_probes():
    lp = LimitParams(0.0, 0.0)
    mu = find_roots(Poly.from_coeffs([0j, 1 + 0j]))
    with pytest.raises(ValueError):
        eq12_residual(lp, mu, [])


def test_degenerate_limit_singletons():
    mu0 = find_roots(Poly.from_coeffs([0j, 1 + 0j]))
    st0 = degenerate_limit_check("delta0", mu0, [2.0, 1j, -0.5 - 0.5j])
    assert st0["max"] < 1e-12

    kappa = 0.7 - 0.2j
    muk = find_roots(Poly.from_coeffs([-kappa, 1 + 0j]))
    stk = degenerate_limit_check("delta_kappa", muk, [2.0, 1j], kappa=kappa)
    assert stk["max"] < 1e-12

    with pytest.raises(ValueError):
        degenerate_limit_check("delta1", mu0, [2.0])
