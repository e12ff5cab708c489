"""Dense complex polynomials, simultaneous root finding, and root-counting measures.

Everything downstream (Jacobi construction, discriminants, quadratic
differentials) funnels through the two types defined here: ``Poly`` as the
coefficient carrier and ``RootCountingMeasure`` as the uniform probability
measure on a root multiset.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath as mp
import numpy as np

# Points closer than this (relative) to an atom are rejected by the
# empirical transforms; values there are dominated by one diverging term.
ON_SUPPORT_GUARD = 1e-12

# Relative radius used to merge near-coincident roots into one multiple root.
CLUSTER_RTOL = 1e-8

_ABERTH_MAX_ITER = 400
_NEWTON_POLISH_STEPS = 3


class OnSupportError(ValueError):
    """Evaluation point lies on (or numerically on) the support of the measure."""


class RootFindingError(RuntimeError):
    """Simultaneous iteration did not reach the requested residual bound.

    Attributes
    ----------
    best : ndarray
        The last iterate for all roots.
    residual : float
        Worst normalized residual of ``best``.
    """

    def __init__(self, message: str, best=None, residual: float | None = None):
        super().__init__(message)
        self.best = best
        self.residual = residual


@dataclass(frozen=True)
class Poly:
    """Complex polynomial with dense coefficients, ascending by degree.

    The zero polynomial is represented explicitly as ``(0j,)`` and reports
    degree -1; root finding rejects it.
    """

    coeffs: tuple[complex, ...]

    @staticmethod
    def from_coeffs(seq) -> "Poly":
        c = [complex(v) for v in seq]
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        if not c:
            c = [0j]
        return Poly(tuple(c))

    @property
    def degree(self) -> int:
        if self.is_zero:
            return -1
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == 0

    def __call__(self, z: complex) -> complex:
        return evaluate(self, z)

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] += v
        return Poly.from_coeffs(out)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + other.scale(-1)

    def __mul__(self, other: "Poly") -> "Poly":
        if self.is_zero or other.is_zero:
            return Poly((0j,))
        a = np.asarray(self.coeffs, dtype=complex)
        b = np.asarray(other.coeffs, dtype=complex)
        return Poly.from_coeffs(np.convolve(a, b))

    def scale(self, factor: complex) -> "Poly":
        return Poly.from_coeffs([factor * c for c in self.coeffs])


@dataclass(frozen=True)
class RootCountingMeasure:
    """Uniform probability measure on a root multiset: weight 1/n per atom."""

    roots: tuple[complex, ...]

    @property
    def n(self) -> int:
        return len(self.roots)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.roots, dtype=complex)


def evaluate(poly: Poly, z: complex) -> complex:
    """Horner-scheme value of ``poly`` at ``z``."""
    acc = 0j
    for c in reversed(poly.coeffs):
        acc = acc * z + c
    return acc


def evaluate_many(poly: Poly, z: np.ndarray) -> np.ndarray:
    acc = np.zeros_like(z, dtype=complex)
    for c in reversed(poly.coeffs):
        acc = acc * z + c
    return acc


def derivative(poly: Poly) -> Poly:
    """Coefficient-wise derivative; a constant maps to the explicit zero polynomial."""
    if poly.degree <= 0:
        return Poly((0j,))
    return Poly.from_coeffs(
        [k * c for k, c in enumerate(poly.coeffs)][1:]
    )


def _fujiwara_radius(coeffs: np.ndarray) -> float:
    """Fujiwara upper bound for the modulus of every root."""
    n = len(coeffs) - 1
    lead = abs(coeffs[-1])
    best = 0.0
    for k in range(1, n + 1):
        mag = abs(coeffs[n - k]) / lead
        if k == n:
            mag *= 0.5
        if mag > 0.0:
            best = max(best, mag ** (1.0 / k))
    return 2.0 * best


def _initial_circle(n: int, radius: float) -> np.ndarray:
    # Evenly spread starting points with a deterministic twist so no
    # starting point sits on a symmetry axis of the polynomial.
    if radius <= 0.0:
        radius = 1.0
    k = np.arange(n)
    angles = 2.0 * np.pi * (k + 0.35) / n + 0.42
    stretch = 1.0 + 1e-3 * np.cos(3.1 * k)
    return 0.5 * radius * stretch * np.exp(1j * angles)


def _aberth(coeffs: np.ndarray, max_iter: int = _ABERTH_MAX_ITER) -> np.ndarray:
    """Aberth-Ehrlich simultaneous iteration on all roots at once."""
    n = len(coeffs) - 1
    dcoeffs = coeffs[1:] * np.arange(1, n + 1)
    z = _initial_circle(n, _fujiwara_radius(coeffs))
    for _ in range(max_iter):
        pz = np.polyval(coeffs[::-1], z)
        dpz = np.polyval(dcoeffs[::-1], z)
        dead = np.abs(dpz) == 0.0
        if dead.any():
            z = np.where(dead, z * (1.0 + 1e-8) + 1e-12, z)
            continue
        w = pz / dpz
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        s = np.sum(1.0 / diff, axis=1) - 1.0  # remove the diagonal's 1/1
        denom = 1.0 - w * s
        small = np.abs(denom) < 1e-14
        denom = np.where(small, 1.0, denom)
        step = w / denom
        z = z - step
        if np.max(np.abs(step)) <= 1e-14 * (1.0 + np.max(np.abs(z))):
            break
    for _ in range(_NEWTON_POLISH_STEPS):
        pz = np.polyval(coeffs[::-1], z)
        dpz = np.polyval(dcoeffs[::-1], z)
        safe = np.abs(dpz) > 0.0
        z = np.where(safe, z - pz / np.where(safe, dpz, 1.0), z)
    return z


def _cluster_roots(roots: np.ndarray) -> list[tuple[complex, int]]:
    """Merge roots within the relative clustering radius; returns (center, multiplicity)."""
    order = np.argsort(roots.real, kind="stable")
    items = [complex(r) for r in roots[order]]
    clusters: list[list[complex]] = []
    for r in items:
        placed = False
        for cl in clusters:
            c = sum(cl) / len(cl)
            if abs(r - c) <= CLUSTER_RTOL * max(1.0, abs(c)):
                cl.append(r)
                placed = True
                break
        if not placed:
            clusters.append([r])
    return [(sum(cl) / len(cl), len(cl)) for cl in clusters]


def _residual_bound(coeffs: np.ndarray, roots: np.ndarray, tol: float) -> float:
    scale = np.max(np.abs(coeffs))
    n = len(coeffs) - 1
    vals = np.abs(np.polyval(coeffs[::-1], roots))
    bounds = tol * scale * np.maximum(1.0, np.abs(roots)) ** n
    worst = float(np.max(vals / bounds))
    return worst


def find_roots(poly: Poly, tol: float = 1e-9) -> RootCountingMeasure:
    """All roots of ``poly`` as a root-counting measure.

    Parameters
    ----------
    poly : Poly
        Nonzero polynomial of degree >= 1.
    tol : float
        Residual acceptance threshold: every returned root r must satisfy
        ``|poly(r)| <= tol * max|coeff| * max(1, |r|)**degree``.

    Raises
    ------
    RootFindingError
        If the iteration stalls above the residual bound. The exception
        carries the best iterate and its worst normalized residual.
    """
    if poly.is_zero:
        raise ValueError("cannot find roots of the zero polynomial")
    if poly.degree < 1:
        raise ValueError("root finding needs degree >= 1")
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    coeffs = np.asarray(poly.coeffs, dtype=complex)
    if poly.degree == 1:
        roots = np.array([-coeffs[0] / coeffs[1]])
    else:
        roots = _aberth(coeffs)
    worst = _residual_bound(coeffs, roots, tol)
    if worst > 1.0:
        raise RootFindingError(
            f"root residuals {worst:.3g}x above the acceptance bound",
            best=roots,
            residual=worst,
        )
    flat: list[complex] = []
    for center, mult in _cluster_roots(roots):
        flat.extend([center] * mult)
    return RootCountingMeasure(tuple(flat))


def find_roots_mp(coeffs, tol: float = 1e-20, prec_bits: int = 120) -> RootCountingMeasure:
    """Extended-precision root finding for ill-conditioned coefficient sets.

    ``coeffs`` ascend by degree and may hold mpmath numbers; the returned
    atoms are rounded back to machine complex. Used automatically for
    Jacobi degrees above the double-precision comfort zone.
    """
    c = list(coeffs)
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    if len(c) < 2:
        raise ValueError("root finding needs degree >= 1")
    # A double-precision Aberth pass gives Durand-Kerner a seed that keeps
    # high degrees inside its convergence basin.
    seed = None
    try:
        rough = _aberth([complex(x) for x in c])
        if _residual_bound([complex(x) for x in c], rough, 1e-6) < 1e6:
            seed = [mp.mpc(r) for r in rough]
    except Exception:
        seed = None
    with mp.workprec(prec_bits):
        descending = list(reversed(c))
        try:
            roots = mp.polyroots(descending, maxsteps=400, extraprec=80, roots_init=seed)
        except mp.libmp.NoConvergence:
            roots = mp.polyroots(descending, maxsteps=4000, extraprec=200)
        flat = [complex(r) for r in roots]
    return RootCountingMeasure(tuple(flat))


def empirical_cauchy(mu: RootCountingMeasure, z: complex) -> complex:
    """(1/n) sum of 1/(z - root); equals p'(z) / (n p(z)) for the generating polynomial."""
    d = complex(z) - mu.as_array()
    guard = ON_SUPPORT_GUARD * (1.0 + abs(z))
    if np.min(np.abs(d)) <= guard:
        raise OnSupportError(f"point {z} is within the on-support guard of a root")
    return complex(np.mean(1.0 / d))


def empirical_potential(mu: RootCountingMeasure, z: complex) -> float:
    """(1/n) sum of log|z - root|, the logarithmic potential of the measure."""
    d = complex(z) - mu.as_array()
    guard = ON_SUPPORT_GUARD * (1.0 + abs(z))
    if np.min(np.abs(d)) <= guard:
        raise OnSupportError(f"point {z} is within the on-support guard of a root")
    return float(np.mean(np.log(np.abs(d))))


def roots_csv_rows(mu: RootCountingMeasure) -> list[tuple[float, float]]:
    """Root set as (re, im) rows for CSV emission."""
    return [(r.real, r.imag) for r in mu.roots]


def roots_json_pairs(mu: RootCountingMeasure) -> list[list[float]]:
    """Root set as [re, im] pairs for JSON emission."""
    return [[r.real, r.imag] for r in mu.roots]
