"""Jacobi polynomials with arbitrary complex parameters.

Construction goes through the explicit binomial sum so one coefficient
carrier feeds evaluation, the ODE residual check, and the root finder
alike. Binomials of complex arguments are products of (gamma - j)/(j + 1)
factors; no gamma functions and therefore no branch cuts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath as mp
import numpy as np

from qdgeo.polyroots import (
    Poly,
    RootCountingMeasure,
    derivative,
    evaluate,
    find_roots,
    find_roots_mp,
)

# Roots in monomial basis lose accuracy from two directions: degree
# (classic Wilkinson conditioning, visible for Legendre past ~30) and
# parameter size (the binomial sum cancels catastrophically once the
# weights dwarf the result). Either trips the extended root-finding path.
# Coefficient construction itself always runs at extended precision: the
# accumulation cancels badly enough that plain float64 loses five or six
# digits already at n = 20 with parameters of modulus two.
EXTENDED_DEGREE_THRESHOLD = 30
EXTENDED_PARAM_THRESHOLD = 20.0
_EXTENDED_PREC_BITS = 120

_LEAD_DROP_RTOL = 1e-12


@dataclass(frozen=True)
class JacobiParams:
    n: int
    alpha: complex
    beta: complex

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("degree must be non-negative")


@dataclass(frozen=True)
class ParamSequence:
    """Degree-linear parameter family alpha_n = A*n + alpha0, beta_n = B*n + beta0."""

    A: complex
    B: complex
    alpha0: complex = 0j
    beta0: complex = 0j

    def at(self, n: int) -> JacobiParams:
        return JacobiParams(n, self.A * n + self.alpha0, self.B * n + self.beta0)


def complex_binomial(gamma: complex, k: int):
    """Binomial coefficient C(gamma, k) for complex gamma and integer k >= 0."""
    if k < 0:
        raise ValueError("lower index must be non-negative")
    acc = gamma * 0 + 1
    for j in range(k):
        acc = acc * (gamma - j) / (j + 1)
    return acc


def _jacobi_coeffs(n: int, alpha, beta, one):
    """Ascending coefficients of the degree-n Jacobi polynomial.

    ``one`` fixes the arithmetic: pass 1+0j for machine precision or
    mp.mpc(1) to run the same accumulation in the active mpmath precision.
    """
    zero = one * 0
    # Powers of (z - 1) and (z + 1), built once each.
    minus = [[one]]
    plus = [[one]]
    for k in range(n):
        prev = minus[-1]
        nxt = [zero] * (len(prev) + 1)
        for i, c in enumerate(prev):
            nxt[i] += -c
            nxt[i + 1] += c
        minus.append(nxt)
        prev = plus[-1]
        nxt = [zero] * (len(prev) + 1)
        for i, c in enumerate(prev):
            nxt[i] += c
            nxt[i + 1] += c
        plus.append(nxt)

    total = [zero] * (n + 1)
    for k in range(n + 1):
        weight = complex_binomial(alpha * 1 + n, n - k) * complex_binomial(beta * 1 + n, k)
        if weight == 0:
            continue
        a = minus[k]
        b = plus[n - k]
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            w = weight * ca
            for j, cb in enumerate(b):
                total[i + j] += w * cb
    half = one / 2
    scale = half**n
    return [c * scale for c in total]


def _needs_extended(params: JacobiParams) -> bool:
    return params.n > EXTENDED_DEGREE_THRESHOLD or max(
        abs(params.alpha), abs(params.beta)
    ) > EXTENDED_PARAM_THRESHOLD


def _extended_prec_bits(params: JacobiParams) -> int:
    # Cancellation in the binomial sum worsens with parameter magnitude;
    # pad the working precision accordingly.
    bulk = 1.0 + abs(params.alpha) + abs(params.beta)
    return _EXTENDED_PREC_BITS + int(8 * math.log2(bulk))


def jacobi_poly(params: JacobiParams) -> Poly:
    """Expanded Jacobi polynomial of the requested degree.

    Coefficients are accumulated at extended precision and rounded once at
    the end, so each returned coefficient is correct to the last float64
    bit. The leading coefficient vanishes exactly on special parameter
    sets (alpha + beta a negative integer in [-2n, -n-1]); the returned
    polynomial then has lower degree. Use ``degree_dropped`` to test for
    that regime explicitly.
    """
    with mp.workprec(_extended_prec_bits(params)):
        coeffs = _jacobi_coeffs(params.n, mp.mpc(params.alpha), mp.mpc(params.beta), mp.mpc(1))
        floats = [complex(c) for c in coeffs]
    scale = max(abs(c) for c in floats) or 1.0
    if abs(floats[-1]) <= _LEAD_DROP_RTOL * scale:
        floats[-1] = 0j
    return Poly.from_coeffs(floats)


def jacobi_value(params: JacobiParams, z: complex) -> complex:
    """Value of the Jacobi polynomial at one point, via the sum form.

    Horner on the expanded coefficients cancels near z = +-1, where the
    polynomial is small against its own coefficient scale; the sum over
    (z-1)^k (z+1)^(n-k) terms keeps full accuracy there. At z = 1 only the
    k = 0 term survives and the value reduces to C(n+alpha, n) exactly.
    """
    n = params.n
    with mp.workprec(_extended_prec_bits(params)):
        zm = mp.mpc(z) - 1
        zp = mp.mpc(z) + 1
        a = mp.mpc(params.alpha)
        b = mp.mpc(params.beta)
        total = mp.mpc(0)
        power_m = mp.mpc(1)
        powers_p = [mp.mpc(1)]
        for _ in range(n):
            powers_p.append(powers_p[-1] * zp)
        for k in range(n + 1):
            total += (
                complex_binomial(a + n, n - k)
                * complex_binomial(b + n, k)
                * power_m
                * powers_p[n - k]
            )
            power_m *= zm
        return complex(total / mp.mpf(2) ** n)


def leading_coefficient(params: JacobiParams) -> complex:
    """Closed-form leading coefficient 2^-n * C(2n + alpha + beta, n)."""
    n = params.n
    return complex_binomial(2 * n + params.alpha + params.beta, n) * 0.5**n


def degree_dropped(params: JacobiParams) -> bool:
    """True when the sum's leading coefficient vanishes and the degree falls below n."""
    if params.n == 0:
        return False
    lead = leading_coefficient(params)
    # Compare against the largest binomial weight that feeds the sum.
    witness = max(
        abs(complex_binomial(params.n + params.alpha, params.n)),
        abs(complex_binomial(params.n + params.beta, params.n)),
        1.0,
    )
    return abs(lead) <= _LEAD_DROP_RTOL * witness


def _rodrigues_poly(params: JacobiParams) -> Poly:
    """Rodrigues construction, exact at small degree.

    Differentiating (z-1)^(n+a) (z+1)^(n+b) n times symbolically keeps the
    form (z-1)^(a) (z+1)^(b) S(z); the polynomial part S divided by 2^n n!
    is the Jacobi polynomial.
    """
    n, a, b = params.n, complex(params.alpha), complex(params.beta)
    s = Poly((1 + 0j,))
    zm = Poly((-1 + 0j, 1 + 0j))
    zp = Poly((1 + 0j, 1 + 0j))
    for k in range(n):
        s = (
            zp.scale(n + a - k) * s
            + zm.scale(n + b - k) * s
            + zm * zp * derivative(s)
        )
    return s.scale(1.0 / (2**n * math.factorial(n)))


def jacobi_rodrigues_check(params: JacobiParams, grid) -> float:
    """Max relative deviation between the sum and Rodrigues constructions on a grid.

    Small degrees only: the symbolic n-fold product differentiation is
    exact there and the comparison is meaningful.
    """
    if params.n > 12:
        raise ValueError("Rodrigues cross-check is limited to n <= 12")
    for z in grid:
        if abs(z - 1) < 1e-12 or abs(z + 1) < 1e-12:
            raise ValueError("grid points at the poles +1/-1 are rejected")
    p = jacobi_poly(params)
    r = _rodrigues_poly(params)
    worst = 0.0
    for z in grid:
        va = evaluate(p, z)
        vb = evaluate(r, z)
        dev = abs(va - vb) / max(1.0, abs(va), abs(vb))
        worst = max(worst, dev)
    return worst


def ode_residual(params: JacobiParams, poly: Poly, grid) -> float:
    """Scaled residual of the hypergeometric-type ODE that characterizes the polynomial.

    Returns max over the grid of
    |(1 - z^2) y'' + (beta - alpha - (alpha + beta + 2) z) y' + lambda y| / (1 + |z|)^n
    with lambda = n (n + alpha + beta + 1).

    The three terms cancel each other almost exactly, so the combination
    is evaluated at extended precision; the result then measures the true
    defect of the float64 coefficients rather than evaluation noise.
    """
    n = params.n
    d1 = derivative(poly)
    d2 = derivative(d1)
    worst = 0.0
    with mp.workprec(_extended_prec_bits(params)):
        a = mp.mpc(params.alpha)
        b = mp.mpc(params.beta)
        lam = n * (n + a + b + 1)

        def horner(p, w):
            acc = mp.mpc(0)
            for c in reversed(p.coeffs):
                acc = acc * w + c
            return acc

        for z in grid:
            w = mp.mpc(z)
            y = horner(poly, w)
            yp = horner(d1, w)
            ypp = horner(d2, w)
            val = (1 - w * w) * ypp + (b - a - (a + b + 2) * w) * yp + lam * y
            worst = max(worst, float(abs(val)) / (1.0 + abs(z)) ** n)
    return worst


def root_cloud_sequence(seq: ParamSequence, degrees, tol: float = 1e-9) -> list[RootCountingMeasure]:
    """Root-counting measures of the parameter family along ascending degrees."""
    degrees = list(degrees)
    if degrees != sorted(degrees):
        raise ValueError("degrees must ascend")
    return [root_measure(seq.at(n), tol) for n in degrees]


def root_measure(params: JacobiParams, tol: float = 1e-9) -> RootCountingMeasure:
    """Root-counting measure of one Jacobi polynomial, extended precision when warranted."""
    if degree_dropped(params):
        raise ValueError(
            "leading coefficient vanishes for these parameters; the degree drops below n"
        )
    if _needs_extended(params):
        bits = _extended_prec_bits(params)
        with mp.workprec(bits):
            coeffs = _jacobi_coeffs(params.n, mp.mpc(params.alpha), mp.mpc(params.beta), mp.mpc(1))
        return find_roots_mp(coeffs, prec_bits=bits)
    return find_roots(jacobi_poly(params), tol)


def derivative_measure_distance(mu_p: RootCountingMeasure, mu_pprime: RootCountingMeasure) -> float:
    """Symmetric Hausdorff distance between two root sets.

    A desk-scale proxy for the weak-limit statement that the zeros of p and
    of p' accumulate on the same set.
    """
    a = mu_p.as_array()
    b = mu_pprime.as_array()
    if len(a) == 0 or len(b) == 0:
        raise ValueError("both measures need at least one atom")
    d = np.abs(a[:, None] - b[None, :])
    return float(max(d.min(axis=1).max(), d.min(axis=0).max()))
