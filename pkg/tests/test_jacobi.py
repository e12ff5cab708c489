import cmath

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qdgeo.jacobi import (
    JacobiParams,
    ParamSequence,
    _jacobi_coeffs,
    complex_binomial,
    degree_dropped,
    derivative_measure_distance,
    jacobi_poly,
    jacobi_rodrigues_check,
    jacobi_value,
    leading_coefficient,
    ode_residual,
    root_cloud_sequence,
    root_measure,
)
from qdgeo.polyroots import derivative, evaluate, find_roots

GRID = [0.37, -0.81, 1.9, -2.4 + 0.6j, 0.2 - 1.1j]
# Wide grids inflate the residual normalization gap at large n, so the
# high-degree ODE checks stay inside the unit disk.
DISK_GRID = [0.37, -0.81, 0.9, 0.2 - 0.5j, -0.4 + 0.8j]


def three_term_value(n, alpha, beta, z):
    """Independent oracle: the classical three-term recurrence."""
    p_prev = 1.0 + 0j
    if n == 0:
        return p_prev
    p_cur = 0.5 * (alpha - beta + (alpha + beta + 2) * z)
    for k in range(2, n + 1):
        a = 2 * k * (k + alpha + beta) * (2 * k + alpha + beta - 2)
        b = (2 * k + alpha + beta - 1) * (alpha * alpha - beta * beta)
        c = (
            (2 * k + alpha + beta - 2)
            * (2 * k + alpha + beta - 1)
            * (2 * k + alpha + beta)
        )
        d = 2 * (k + alpha - 1) * (k + beta - 1) * (2 * k + alpha + beta)
        p_next = ((b + c * z) * p_cur - d * p_prev) / a
        p_prev, p_cur = p_cur, p_next
    return p_cur


def test_binomial_integer_cases():
    assert complex_binomial(5, 2) == 10
    assert complex_binomial(4, 0) == 1
    assert abs(complex_binomial(0.5, 2) - (-0.125)) < 1e-15


def test_binomial_negative_upper_index():
    # product form must survive negative integer upper arguments
    assert abs(complex_binomial(-1, 3) - (-1)) < 1e-14
    assert abs(complex_binomial(-2.5, 1) + 2.5) < 1e-14


@pytest.mark.parametrize("n,alpha,beta", [
    (0, 0.3, -0.2),
    (1, 1.5 + 0.5j, -0.7),
    (4, 0.0, 0.0),
    (7, 2.0 - 1.0j, 0.5 + 2.0j),
    (12, -0.4, 3.1),
])
def test_matches_three_term_recurrence(n, alpha, beta):
    p = jacobi_poly(JacobiParams(n, alpha, beta))
    for z in GRID:
        want = three_term_value(n, alpha, beta, z)
        assert abs(p(z) - want) <= 1e-9 * (1 + abs(want))


def test_value_at_one_is_binomial():
    for n, alpha, beta in [(3, 0.7, -0.3), (9, 1 + 1j, 2 - 0.5j), (15, -0.9, 0.1), (20, -0.97, 2.6 + 1.2j)]:
        params = JacobiParams(n, alpha, beta)
        want = complex_binomial(n + alpha, n)
        got = jacobi_value(params, 1.0)
        assert abs(got - want) <= 1e-10 * max(1.0, abs(want))


def test_point_value_agrees_with_expanded_poly():
    # two routes to the same number: direct sum vs Horner on the
    # expanded coefficients, compared against the coefficient scale
    # because Horner cancels near the endpoints
    for n, alpha, beta in [(8, 0.4 - 1.1j, 1.7), (17, -0.6, 2.2 + 0.3j)]:
        params = JacobiParams(n, alpha, beta)
        p = jacobi_poly(params)
        scale = max(abs(c) for c in p.coeffs)
        for z in (1.0, -1.0, 0.31, -0.9 + 0.4j):
            assert abs(evaluate(p, z) - jacobi_value(params, z)) <= 1e-12 * scale * (1 + abs(z)) ** n


def test_leading_coefficient_closed_form():
    params = JacobiParams(6, 0.25, -1.75 + 0.5j)
    p = jacobi_poly(params)
    assert abs(p.coeffs[6] - leading_coefficient(params)) < 1e-12


def test_degree_drop_detection():
    # alpha + beta = -n - 1 kills the top coefficient at degree n
    params = JacobiParams(4, -2.0, -3.0)
    assert degree_dropped(params)
    assert jacobi_poly(params).degree < 4
    assert not degree_dropped(JacobiParams(4, 0.3, 0.3))


def test_rodrigues_route_agrees():
    for params in (JacobiParams(5, 0.5, -0.25), JacobiParams(8, 1.0 + 1.0j, -0.5j)):
        assert jacobi_rodrigues_check(params, GRID) < 1e-9


def test_ode_residual_small():
    for n in (1, 6, 17, 33):
        params = JacobiParams(n, 0.8 - 0.3j, 1.4)
        poly = jacobi_poly(params)
        assert ode_residual(params, poly, GRID) <= 1e-8


def test_ode_residual_parameter_box():
    rng = np.random.default_rng(5)
    for _ in range(12):
        n = int(rng.integers(2, 41))
        alpha = complex(*rng.uniform(-3.5, 3.5, 2))
        beta = complex(*rng.uniform(-3.5, 3.5, 2))
        params = JacobiParams(n, alpha, beta)
        assert ode_residual(params, jacobi_poly(params), DISK_GRID) <= 1e-8
    # the corner of the advertised box: degree 40, both moduli at 5
    corner = JacobiParams(40, 5.0 * cmath.exp(0.3j), 5.0 * cmath.exp(-0.21j))
    assert ode_residual(corner, jacobi_poly(corner), DISK_GRID) <= 1e-8


@settings(max_examples=25, deadline=None)
@given(
    st.integers(0, 10),
    st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False),
    st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False),
)
def test_reflection_swaps_parameters(n, alpha, beta):
    p = jacobi_poly(JacobiParams(n, alpha, beta))
    q = jacobi_poly(JacobiParams(n, beta, alpha))
    sign = (-1) ** n
    for z in (0.6, -0.35 + 0.2j):
        lhs = p(-z)
        rhs = sign * q(z)
        assert abs(lhs - rhs) <= 1e-10 * (1 + abs(rhs))


def test_extended_accumulation_is_load_bearing():
    # a float64 accumulation of the sum keeps only ~13 digits at this
    # parameter set; the production coefficients must be correctly
    # rounded, i.e. indistinguishable from a far-higher-precision rerun
    import mpmath as mp

    n = 20
    alpha = 1.2695395631116373 - 0.2717902197260167j
    beta = -1.0679894016760445 - 0.15737391497832665j
    naive = _jacobi_coeffs(n, alpha, beta, 1 + 0j)
    produced = jacobi_poly(JacobiParams(n, alpha, beta)).coeffs
    with mp.workprec(400):
        exact = [complex(c) for c in _jacobi_coeffs(n, mp.mpc(alpha), mp.mpc(beta), mp.mpc(1))]
    scale = max(abs(c) for c in exact)
    worst_naive = max(abs(a - b) for a, b in zip(naive, exact)) / scale
    worst_prod = max(abs(a - b) for a, b in zip(produced, exact)) / scale
    assert worst_prod <= 5e-16
    assert worst_naive > 1e-13


def test_real_classical_roots_stay_in_interval():
    # real parameters above -1: every zero is real and inside (-1, 1)
    rng = np.random.default_rng(9)
    for _ in range(6):
        n = int(rng.integers(3, 26))
        alpha = float(rng.uniform(-0.95, 4.0))
        beta = float(rng.uniform(-0.95, 4.0))
        mu = root_measure(JacobiParams(n, alpha, beta))
        for r in mu.roots:
            assert abs(r.imag) < 1e-8
            assert -1 < r.real < 1


def test_root_measure_legendre_is_real_symmetric():
    mu = root_measure(JacobiParams(9, 0.0, 0.0))
    assert mu.n == 9
    roots = sorted(r.real for r in mu.roots)
    assert all(abs(r.imag) < 1e-10 for r in mu.roots)
    for lo, hi in zip(roots, reversed(roots)):
        assert abs(lo + hi) < 1e-9


def test_root_cloud_sequence_shapes():
    seq = ParamSequence(1.0, 1.0)
    clouds = root_cloud_sequence(seq, [5, 10])
    assert [mu.n for mu in clouds] == [5, 10]


def test_derivative_measure_stays_close():
    # the zero set of p' tracks the zero set of p at moderate degree
    params = JacobiParams(20, 0.5, 0.5)
    p = jacobi_poly(params)
    mu_p = root_measure(params)
    mu_dp = find_roots(derivative(p))
    assert derivative_measure_distance(mu_p, mu_dp) < 0.15
