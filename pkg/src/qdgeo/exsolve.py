"""Exactly-solvable quadratic operator pencils and their eigenpolynomials.

The pencil T_lam = Q2(z) d^2/dz^2 + (lam Q1(z) + P1(z)) d/dz
+ (lam^2 + p lam + q) Q0 acts on polynomials without raising degree, so
in the monomial basis it is upper triangular with three nonzero bands.
A monic degree-n eigenpolynomial exists whenever lam kills the last
diagonal entry and no earlier diagonal entry vanishes; everything here
is built by literally applying the operator to monomials rather than by
transcribing the closed-form diagonal, so the banded matrix is correct
by construction and the closed forms are checked against it in tests.

The diagonal entry at column j works out to
    c_jj(lam) = j(j-1) q22 + j (q11 lam + p11) + (lam^2 + p lam + q) Q0
with q22 the z^2 coefficient of Q2 and q11, p11 the z coefficients of
Q1, P1. Dividing c_nn = 0 by n^2 and letting n grow gives the
characteristic polynomial q00 t^2 + q11 t + q22 for t = lam/n with
q00 = Q0, whose roots are the asymptotic eigenvalue slopes.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from qdgeo.polyroots import Poly, derivative, empirical_cauchy, find_roots, find_roots_mp

RESONANCE_RTOL = 1e-10


@dataclass(frozen=True)
class OperatorPencil:
    """Second-order pencil data: Q2, Q1, P1 polynomials; Q0, p, q scalars."""

    Q2: Poly
    Q1: Poly
    P1: Poly
    Q0: complex
    p: complex = 0j
    q: complex = 0j

    def __post_init__(self):
        if self.Q2.degree > 2 or self.Q1.degree > 1 or self.P1.degree > 1:
            raise ValueError("degree profile must be (Q2 <= 2, Q1 <= 1, P1 <= 1)")
        if self.Q2.degree != 2:
            raise ValueError("q22 must be nonzero")
        if self.Q0 == 0:
            raise ValueError("Q0 must be nonzero")

    def coeff(self, poly: Poly, k: int) -> complex:
        return poly.coeffs[k] if k < len(poly.coeffs) else 0j

    @property
    def q22(self) -> complex:
        return self.coeff(self.Q2, 2)

    @property
    def q11(self) -> complex:
        return self.coeff(self.Q1, 1)

    @property
    def p11(self) -> complex:
        return self.coeff(self.P1, 1)


def jacobi_pencil(alpha: float, beta: float) -> OperatorPencil:
    """Embedding of the classical second-order equation as a pencil.

    With Q2 = z^2 - 1, Q1 = 0, P1 = (alpha + beta + 2) z + (alpha - beta),
    Q0 = -1, p = q = 0, the scalar factor lam^2 plays the role of the
    classical eigenvalue n (n + alpha + beta + 1); the sign convention is
    fixed here and verified by that eigenvalue match in tests.
    """
    return OperatorPencil(
        Q2=Poly.from_coeffs([-1, 0, 1]),
        Q1=Poly.from_coeffs([0]),
        P1=Poly.from_coeffs([alpha - beta, alpha + beta + 2]),
        Q0=-1 + 0j,
    )


def apply_pencil(T: OperatorPencil, lam: complex, y: Poly) -> Poly:
    """T_lam acting on y, assembled from the defining differential expression."""
    first = Poly.from_coeffs(
        [lam * T.coeff(T.Q1, k) + T.coeff(T.P1, k) for k in range(2)]
    )
    scalar = (lam * lam + T.p * lam + T.q) * T.Q0
    return T.Q2 * derivative(derivative(y)) + first * derivative(y) + y.scale(scalar)


def diagonal_entry(T: OperatorPencil, lam: complex, j: int) -> complex:
    """c_jj(lam): the z^j coefficient of T_lam(z^j), read off the operator action."""
    mono = Poly.from_coeffs([0j] * j + [1.0 + 0j])
    image = apply_pencil(T, lam, mono)
    return image.coeffs[j] if j < len(image.coeffs) else 0j


def characteristic_poly(T: OperatorPencil) -> tuple[complex, complex, complex]:
    """(q22, q11, q00): coefficients of q22 + q11 t + q00 t^2."""
    return (T.q22, T.q11, complex(T.Q0))


def characteristic_roots(T: OperatorPencil) -> tuple[complex, complex]:
    q22, q11, q00 = characteristic_poly(T)
    disc = q11 * q11 - 4 * q00 * q22
    sq = cmath.sqrt(disc)
    if abs(-q11 + sq) < abs(-q11 - sq):
        sq = -sq
    big = (-q11 + sq) / (2 * q00)
    small = q22 / (q00 * big)
    return big, small


class GenericTypeResult(NamedTuple):
    generic: bool
    rho: complex | None


def generic_type_check(T: OperatorPencil, tol: float = 1e-9) -> GenericTypeResult:
    """Distinct-argument test on the characteristic roots.

    Same arguments happen exactly when q22 q00 = rho q11^2 with real
    rho in [0, 1/4]; rho is reported whenever q11 is nonzero so callers
    can see how close a pencil sits to the degenerate family.
    """
    r1, r2 = characteristic_roots(T)
    d = abs((cmath.phase(r1) - cmath.phase(r2) + math.pi) % (2 * math.pi) - math.pi)
    rho = None
    if T.q11 != 0:
        rho = T.q22 * complex(T.Q0) / (T.q11 * T.q11)
    return GenericTypeResult(generic=d > tol, rho=rho)


class EigenvaluePair(NamedTuple):
    lam1: complex
    lam2: complex
    lam1_over_n: complex
    lam2_over_n: complex
    coincident: bool


def eigenvalues_for_degree(T: OperatorPencil, n: int, tol: float = 1e-9) -> EigenvaluePair:
    """The two roots of c_nn(lam) = 0 for a degree-n eigenpolynomial.

    As a quadratic in lam, c_nn has leading coefficient Q0, middle
    coefficient n q11 + p Q0, and constant term
    n(n-1) q22 + n p11 + q Q0; the roots are computed stably and the
    coincident case is flagged rather than raised.
    """
    if n < 1:
        raise ValueError("degree must be at least 1")
    a = complex(T.Q0)
    b = n * T.q11 + T.p * T.Q0
    c = n * (n - 1) * T.q22 + n * T.p11 + T.q * T.Q0
    disc = b * b - 4 * a * c
    sq = cmath.sqrt(disc)
    if abs(-b + sq) < abs(-b - sq):
        sq = -sq
    lam1 = (-b + sq) / (2 * a)
    lam2 = c / (a * lam1) if lam1 != 0 else (-b - sq) / (2 * a)
    scale = max(abs(lam1), abs(lam2), 1.0)
    return EigenvaluePair(lam1, lam2, lam1 / n, lam2 / n, abs(lam1 - lam2) <= tol * scale)


class ResonanceError(RuntimeError):
    def __init__(self, index: int):
        super().__init__(f"resonant index {index}: diagonal entry vanishes below degree n")
        self.index = index


EXTENDED_EIGEN_THRESHOLD = 30


def _eigen_coeffs_mp(T: OperatorPencil, lam: complex, n: int, prec_bits: int | None = None):
    """Back-substitution in extended precision; returns ascending mpmath coefficients.

    Monic monomial coefficients span a range like 4^n for root sets near
    [-1, 1], which double precision cannot carry past degree thirty or so.
    The diagonal uses the closed form c_jj = j(j-1) q22 + j (q11 lam + p11)
    + (lam^2 + p lam + q) Q0, pinned against ``diagonal_entry`` in tests.
    """
    from mpmath import mp

    if prec_bits is None:
        prec_bits = 120 + 4 * n
    with mp.workprec(prec_bits):
        q22 = mp.mpc(T.q22)
        q12 = mp.mpc(T.coeff(T.Q2, 1))
        q02 = mp.mpc(T.coeff(T.Q2, 0))
        # Re-solve c_nn(lam) = 0 at working precision, keeping the root the
        # caller selected; a machine-precision lam leaves edge roots of the
        # resulting polynomial visibly perturbed at these degrees.
        a = mp.mpc(T.Q0)
        b = n * mp.mpc(T.q11) + mp.mpc(T.p) * a
        c = n * (n - 1) * q22 + n * mp.mpc(T.p11) + mp.mpc(T.q) * a
        sq = mp.sqrt(b * b - 4 * a * c)
        cands = [(-b + sq) / (2 * a), (-b - sq) / (2 * a)]
        lam_mp = min(cands, key=lambda v: abs(v - mp.mpc(lam)))
        l0 = lam_mp * mp.mpc(T.coeff(T.Q1, 0)) + mp.mpc(T.coeff(T.P1, 0))
        l1 = lam_mp * mp.mpc(T.q11) + mp.mpc(T.p11)
        sc = (lam_mp * lam_mp + mp.mpc(T.p) * lam_mp + mp.mpc(T.q)) * mp.mpc(T.Q0)
        coeffs = [mp.mpc(0)] * (n + 1)
        coeffs[n] = mp.mpc(1)
        for i in range(n - 1, -1, -1):
            diag = i * (i - 1) * q22 + i * l1 + sc
            scale = abs(i * (i - 1) * q22) + abs(i * l1) + abs(sc) + 1.0
            if abs(diag) <= RESONANCE_RTOL * scale:
                raise ResonanceError(i)
            acc = mp.mpc(0)
            j = i + 1
            if j <= n:
                acc += (j * (j - 1) * q12 + j * l0) * coeffs[j]
            j = i + 2
            if j <= n:
                acc += (j * (j - 1) * q02) * coeffs[j]
            coeffs[i] = -acc / diag
        return coeffs


def eigenpolynomial(T: OperatorPencil, n: int, which: int = 1, tol: float = 1e-8) -> Poly:
    """Monic degree-n polynomial killed by T at the chosen eigenvalue.

    Back-substitution on the banded upper-triangular system: column j of
    the operator touches rows j-2, j-1, j only, so each coefficient is
    determined by the two above it. The construction is rejected if any
    needed diagonal entry is resonant or if the assembled polynomial
    fails to satisfy the equation to the stated residual.
    """
    if which not in (1, 2):
        raise ValueError("which must be 1 or 2")
    pair = eigenvalues_for_degree(T, n)
    lam = pair.lam1 if which == 1 else pair.lam2
    if n > EXTENDED_EIGEN_THRESHOLD:
        y = Poly.from_coeffs([complex(c) for c in _eigen_coeffs_mp(T, lam, n)])
        resid = apply_pencil(T, lam, y)
        scale = max(abs(v) for v in y.coeffs) * (abs(lam) ** 2 + n * n + 1.0)
        worst = max((abs(v) for v in resid.coeffs), default=0.0)
        if worst > tol * scale:
            raise RuntimeError(f"eigenpolynomial residual {worst:.3g} exceeds tolerance")
        return y
    # Column data: sub2[j] multiplies row j-2, sub1[j] row j-1, diag[j] row j.
    diag = [diagonal_entry(T, lam, j) for j in range(n + 1)]
    q02, q12 = T.coeff(T.Q2, 0), T.coeff(T.Q2, 1)
    l0 = lam * T.coeff(T.Q1, 0) + T.coeff(T.P1, 0)
    l1 = lam * T.q11 + T.p11
    coeffs = [0j] * (n + 1)
    coeffs[n] = 1.0 + 0j
    for i in range(n - 1, -1, -1):
        scale = abs(diag[i]) + abs(i * (i - 1) * T.q22) + abs(i * l1) + 1.0
        if abs(diag[i]) <= RESONANCE_RTOL * scale:
            raise ResonanceError(i)
        acc = 0j
        j = i + 1
        if j <= n:
            acc += (j * (j - 1) * q12 + j * l0) * coeffs[j]
        j = i + 2
        if j <= n:
            acc += (j * (j - 1) * q02) * coeffs[j]
        coeffs[i] = -acc / diag[i]
    y = Poly.from_coeffs(coeffs)
    resid = apply_pencil(T, lam, y)
    scale = max(abs(v) for v in y.coeffs) * (abs(lam) ** 2 + n * n + 1.0)
    worst = max((abs(v) for v in resid.coeffs), default=0.0)
    if worst > tol * scale:
        raise RuntimeError(f"eigenpolynomial residual {worst:.3g} exceeds tolerance")
    return y


def gen_cauchy_residual(
    T: OperatorPencil,
    n_list,
    probes=None,
    which: int = 1,
) -> list[dict]:
    """Empirical residual of the limiting algebraic equation for root Cauchy transforms.

    Writing y'/(n y) = C and letting n grow with lam/n -> alpha turns the
    differential equation into Q2 C^2 + alpha Q1 C + alpha^2 Q0 = 0.
    Dividing by -alpha^2 Q0 = gamma^2 gives the canonical form
        Q2(z) (C/gamma)^2 + (alpha/gamma) Q1(z) (C/gamma) - 1 = 0,
    which collapses to the familiar (z^2-1) C^2 - 1 shape for the
    classical embedding where gamma = alpha. Per degree n this evaluates
    |Q2 (C/g)^2 + (lam/(n g)) Q1 (C/g) - 1| at the probes with the
    finite-degree scale g = sqrt(Lambda_n)/n,
    Lambda_n = n(n-1) q22 + n (q11 lam + p11), square-root branch chosen
    continuously in n. Exploratory statistics: each record carries the
    residual quantiles and max root modulus, never a pass/fail verdict.
    """
    check = generic_type_check(T)
    if not check.generic:
        raise ValueError("generic type required: characteristic roots share an argument")
    if probes is None:
        probes = [2.0 * cmath.exp(2j * math.pi * k / 64) for k in range(64)]
    r1, r2 = characteristic_roots(T)
    out = []
    prev_gamma = None
    for n in sorted(n_list):
        pair = eigenvalues_for_degree(T, n)
        lam = pair.lam1 if which == 1 else pair.lam2
        over = pair.lam1_over_n if which == 1 else pair.lam2_over_n
        alpha = r1 if abs(over - r1) <= abs(over - r2) else r2
        if n > EXTENDED_EIGEN_THRESHOLD:
            # Keep the full-precision coefficients all the way into the root
            # finder; rounding them to machine floats first would re-introduce
            # the monomial-basis conditioning loss at exactly these degrees.
            mu = find_roots_mp(_eigen_coeffs_mp(T, lam, n), prec_bits=120 + 4 * n)
        else:
            mu = find_roots(eigenpolynomial(T, n, which))
        lam_big = n * (n - 1) * T.q22 + n * (T.q11 * lam + T.p11)
        gamma = cmath.sqrt(lam_big) / n
        if prev_gamma is not None and abs(gamma - prev_gamma) > abs(gamma + prev_gamma):
            gamma = -gamma
        prev_gamma = gamma
        mid = lam / (n * gamma)
        res = []
        for z in probes:
            c = empirical_cauchy(mu, z) / gamma
            res.append(abs(T.Q2(z) * c * c + mid * T.Q1(z) * c - 1.0))
        arr = np.asarray(res)
        out.append(
            {
                "n": n,
                "lambda": lam,
                "alpha": alpha,
                "gamma": gamma,
                "max_root_mod": float(max(abs(r) for r in mu.roots)),
                "min_residual": float(arr.min()),
                "median_residual": float(np.median(arr)),
                "max_residual": float(arr.max()),
            }
        )
    return out


def residual_csv(records) -> str:
    rows = ["n,lambda_re,lambda_im,max_root_mod,median_residual"]
    for r in records:
        lam = r["lambda"]
        rows.append(
            f'{r["n"]},{lam.real:.17g},{lam.imag:.17g},'
            f'{r["max_root_mod"]:.17g},{r["median_residual"]:.17g}'
        )
    return "\n".join(rows) + "\n"
