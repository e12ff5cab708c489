import cmath

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qdgeo.polyroots import (
    OnSupportError,
    Poly,
    RootCountingMeasure,
    derivative,
    empirical_cauchy,
    empirical_potential,
    evaluate,
    evaluate_many,
    find_roots,
    find_roots_mp,
    roots_csv_rows,
    roots_json_pairs,
)


def poly_from_roots(roots):
    p = Poly.from_coeffs([1.0])
    for r in roots:
        p = p * Poly.from_coeffs([-r, 1.0])
    return p


def test_poly_algebra_round_trip():
    p = Poly.from_coeffs([1, 2, 3])
    q = Poly.from_coeffs([-1, 1])
    s = p * q + p
    for z in (0.3, -1.2 + 0.7j, 2j):
        assert abs(s(z) - (p(z) * q(z) + p(z))) < 1e-12


def test_trailing_zero_coefficients_are_trimmed():
    p = Poly.from_coeffs([1, 2, 0, 0])
    assert p.degree == 1


def test_zero_polynomial():
    z = Poly.from_coeffs([0.0])
    assert z.is_zero
    assert (z * Poly.from_coeffs([3, 1])).is_zero


def test_derivative_reduces_degree():
    p = Poly.from_coeffs([5, 0, 0, 2])
    dp = derivative(p)
    assert dp.degree == 2
    assert abs(dp(1.5) - 6 * 1.5**2) < 1e-14


def test_evaluate_many_matches_scalar():
    p = Poly.from_coeffs([1, -2, 0.5, 1j])
    zs = np.array([0.1, -3.0 + 1j, 2.2j, 17.0])
    vals = evaluate_many(p, zs)
    for z, v in zip(zs, vals):
        assert abs(v - evaluate(p, complex(z))) < 1e-10 * (1 + abs(v))


def test_find_roots_recovers_known_roots():
    roots = [0.5, -1.5 + 0.5j, 2j, -0.25 - 0.75j]
    mu = find_roots(poly_from_roots(roots))
    assert mu.n == 4
    got = sorted(mu.roots, key=lambda z: (z.real, z.imag))
    want = sorted(roots, key=lambda z: (complex(z).real, complex(z).imag))
    for g, w in zip(got, want):
        assert abs(g - w) < 1e-8


def test_find_roots_legendre2():
    # degree-2 orthogonal case with roots at +-1/sqrt(3)
    p = Poly.from_coeffs([-0.5, 0.0, 1.5])
    mu = find_roots(p)
    got = sorted(r.real for r in mu.roots)
    want = 0.5773502691896257
    assert abs(got[0] + want) < 1e-12 and abs(got[1] - want) < 1e-12
    assert all(abs(r.imag) < 1e-12 for r in mu.roots)


def test_find_roots_rejects_constants():
    with pytest.raises(ValueError):
        find_roots(Poly.from_coeffs([3.0]))


def test_find_roots_mp_handles_tight_cluster():
    # (z - 1)^3 (z + 2): the cluster at 1 defeats plain float64 deflation
    p = poly_from_roots([1.0, 1.0, 1.0, -2.0])
    mu = find_roots_mp(p.coeffs, prec_bits=200)
    near_one = [r for r in mu.roots if abs(r - 1) < 1e-3]
    assert len(near_one) == 3


def test_empirical_cauchy_is_log_derivative():
    roots = [0.3, -0.4 + 0.2j, 1.1j]
    p = poly_from_roots(roots)
    mu = RootCountingMeasure(tuple(roots))
    dp = derivative(p)
    for z in (2.0, -1.5 + 1.5j, 3j):
        want = dp(z) / (len(roots) * p(z))
        assert abs(empirical_cauchy(mu, z) - want) < 1e-12


def test_empirical_cauchy_guards_support():
    mu = RootCountingMeasure((0.5 + 0j,))
    with pytest.raises(OnSupportError):
        empirical_cauchy(mu, 0.5 + 1e-15j)


def test_empirical_potential_monotone_far_away():
    mu = RootCountingMeasure((0j, 1j, -1j))
    assert empirical_potential(mu, 10.0) < empirical_potential(mu, 100.0)


def test_serialization_helpers_agree():
    mu = RootCountingMeasure((0.25 + 0.5j, -1j))
    assert roots_csv_rows(mu) == [(0.25, 0.5), (0.0, -1.0)]
    assert roots_json_pairs(mu) == [[0.25, 0.5], [0.0, -1.0]]


coord = st.floats(-3, 3, allow_nan=False, allow_subnormal=False).map(
    lambda x: 0.0 if abs(x) < 1e-6 else x
)
finite_complex = st.builds(complex, coord, coord)


@settings(max_examples=40, deadline=None)
@given(st.lists(finite_complex, min_size=2, max_size=6))
def test_vieta_sum_and_product(roots):
    p = poly_from_roots(roots)
    n = len(roots)
    scale = max(1.0, max(abs(r) for r in roots)) ** n
    assert abs(p.coeffs[n - 1] - (-sum(roots))) < 1e-9 * scale
    prod = 1.0 + 0j
    for r in roots:
        prod *= -r
    assert abs(p.coeffs[0] - prod) < 1e-9 * scale


@settings(max_examples=30, deadline=None)
@given(st.lists(finite_complex, min_size=3, max_size=6))
def test_gauss_lucas_from_found_roots(roots):
    """Roots of p' stay inside the convex hull of the roots of p."""
    p = poly_from_roots(roots)
    crit = find_roots(derivative(p))
    hull = np.array(roots, dtype=complex)
    for w in crit.roots:
        # distance from w to the hull is at most the distance to the
        # farthest-point average; a cheap sufficient check is that w is
        # within the hull's circumradius of the centroid
        c = hull.mean()
        assert abs(w - c) <= max(abs(z - c) for z in hull) + 1e-6
