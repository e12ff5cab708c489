"""Quadratic equations for Cauchy transforms and their trajectory-side checks.

An algebraic measure of degree two has a Cauchy transform C obeying
P C^2 + Q C + R = 0 with polynomial coefficients, deg P = n + 2,
deg Q <= n + 1, deg R <= n. Everything checkable about the associated
measure flows through three derived objects: the discriminant
D = Q^2 - 4 P R (branch points of C), the quadratic differential
(4 P R - Q^2) / P^2 dz^2 whose finite critical trajectories must carry
the support, and the residues -Q / P' at the simple roots of P, which
are the masses a candidate measure places at its point supports. The
functions here compute those objects, evaluate the checkable existence
conditions, and drive the tracer for the connectivity condition; the one
inherently global condition (no closed trajectories) is only ever probed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from qdgeo.polyroots import Poly, _cluster_roots, derivative, find_roots
from qdgeo.tracer import (
    RationalQD,
    closed_trajectory_probe,
    trace_critical,
)

COPRIME_TOL = 1e-10
RESIDUE_TOL = 1e-8


@dataclass(frozen=True)
class QuadraticCauchyEquation:
    """P C^2 + Q C + R = 0 with the degree profile (n+2, <= n+1, <= n)."""

    P: Poly
    Q: Poly
    R: Poly

    def __post_init__(self):
        if self.P.degree < 2:
            raise ValueError("P must have degree at least 2 (degree n + 2 with n >= 0)")
        n = self.n
        if self.Q.degree > n + 1:
            raise ValueError(f"deg Q = {self.Q.degree} exceeds n + 1 = {n + 1}")
        if self.R.degree > n:
            raise ValueError(f"deg R = {self.R.degree} exceeds n = {n}")

    @property
    def n(self) -> int:
        return self.P.degree - 2


def discriminant(eq: QuadraticCauchyEquation) -> Poly:
    return eq.Q * eq.Q - (eq.P * eq.R).scale(4)


def _deflate(poly: Poly, root: complex) -> Poly:
    """Divide by (z - root), discarding the remainder."""
    c = list(poly.coeffs)
    out = [0j] * (len(c) - 1)
    acc = c[-1]
    for k in range(len(c) - 2, -1, -1):
        out[k] = acc
        acc = c[k] + root * acc
    return Poly.from_coeffs(out)


def theta_differential(eq: QuadraticCauchyEquation, tol: float = 1e-8) -> RationalQD:
    """(4PR - Q^2) / P^2 dz^2 with shared numerator/denominator roots cancelled."""
    num = (eq.P * eq.R).scale(4) - eq.Q * eq.Q
    den = eq.P * eq.P
    if num.is_zero:
        return RationalQD(num, den)
    num_roots = list(find_roots(num).roots) if num.degree >= 1 else []
    for center, mult in _cluster_roots(find_roots(den).as_array()):
        for _ in range(mult):
            hit = None
            for i, r in enumerate(num_roots):
                if abs(r - center) <= tol * (1.0 + abs(center)):
                    hit = i
                    break
            if hit is None:
                break
            num_roots.pop(hit)
            num = _deflate(num, center)
            den = _deflate(den, center)
    return RationalQD(num, den)


def _relative_min_on_roots(poly: Poly, at_roots) -> float:
    """min over roots of |poly(r)| relative to the coefficient mass at r."""
    best = float("inf")
    coeffs = np.abs(np.asarray(poly.coeffs))
    for r in at_roots:
        mass = float(np.polyval(coeffs[::-1], abs(r)))
        if mass == 0:
            continue
        best = min(best, abs(poly(r)) / mass)
    return best


@dataclass(frozen=True)
class BranchPoints:
    points: tuple[complex, ...]
    infinity_multiplicity: int
    coprime_warning: bool


def branch_points(eq: QuadraticCauchyEquation, tol: float = COPRIME_TOL) -> BranchPoints:
    """Roots of the discriminant plus the branching order at infinity.

    deg D < 2n + 2 makes infinity a branch point of multiplicity
    2n + 2 - deg D. The coprimality of P and Q is judged by the smallest
    relative value of Q on the roots of P (a resultant surrogate that is
    zero exactly when they share a root); falling under tol attaches a
    warning instead of failing, since everything downstream still
    evaluates.
    """
    d = discriminant(eq)
    full = 2 * eq.n + 2
    pts: tuple[complex, ...] = ()
    if d.degree >= 1:
        pts = find_roots(d).roots
    inf_mult = full - max(d.degree, 0) if d.degree < full else 0
    p_roots = find_roots(eq.P).roots
    warn = not eq.Q.is_zero and _relative_min_on_roots(eq.Q, p_roots) < tol
    if eq.Q.is_zero:
        warn = True
    return BranchPoints(points=pts, infinity_multiplicity=inf_mult, coprime_warning=warn)


def pole_residues(eq: QuadraticCauchyEquation, tol: float = 1e-8) -> list[tuple[complex, complex]]:
    """Residues -Q(z0)/P'(z0) of the divergent branch at the simple roots of P."""
    clusters = _cluster_roots(find_roots(eq.P).as_array())
    if any(m > 1 for _, m in clusters):
        raise ValueError("P has a multiple root; the simple-pole residue formula does not apply")
    dp = derivative(eq.P)
    return [(z0, -eq.Q(z0) / dp(z0)) for z0, _ in clusters]


def sufficiency_report(eq: QuadraticCauchyEquation, tol: float = RESIDUE_TOL) -> dict:
    """Per-condition booleans for the checkable motherbody conditions.

    simple_poles: all roots of P simple. residues_real: every residue of
    Q/P is real to tol. asymptotic_real_branch: some solution of
    p a^2 + q a + r = 0 built from the top coefficients is real to tol,
    so one branch behaves like a real multiple of 1/z at infinity.
    Measured deviations ride along so a caller can see margins, and the
    infinity-branching flag plus the coprimality warning are passed
    through from branch_points.
    """
    n = eq.n
    bp = branch_points(eq)
    clusters = _cluster_roots(find_roots(eq.P).as_array())
    simple = all(m == 1 for _, m in clusters)
    residues_real = False
    max_imag = float("nan")
    if simple:
        res = pole_residues(eq)
        max_imag = max((abs(r.imag) for _, r in res), default=0.0)
        residues_real = max_imag <= tol

    def coeff(poly: Poly, k: int) -> complex:
        return poly.coeffs[k] if k < len(poly.coeffs) else 0j

    p = coeff(eq.P, n + 2)
    q = coeff(eq.Q, n + 1)
    r = coeff(eq.R, n)
    disc = q * q - 4 * p * r
    sq = disc ** 0.5
    alphas = [(-q + sq) / (2 * p), (-q - sq) / (2 * p)]
    alpha_imag = min(abs(a.imag) for a in alphas)
    return {
        "simple_poles": simple,
        "residues_real": residues_real,
        "max_residue_imag": max_imag,
        "asymptotic_real_branch": alpha_imag <= tol,
        "alpha_candidates": alphas,
        "infinity_branch_multiplicity": bp.infinity_multiplicity,
        "coprime_warning": bp.coprime_warning,
    }


def dk0_connectivity(
    eq: QuadraticCauchyEquation,
    budget: float = 50.0,
    probe_seeds=None,
) -> dict:
    """Empirical connectivity of the discriminant zeros inside the critical graph.

    Traces the critical graph of the theta differential, then reports
    which discriminant zeros are joined by finite critical trajectories,
    whether every discriminant zero is touched by one, and whether the
    zero-zero subgraph has no isolated vertex. A closed-trajectory probe
    from a few generic seeds is attached as-is; it is a probe, not a
    verification of the no-closed-trajectory condition.
    """
    theta = theta_differential(eq)
    d = discriminant(eq)
    # Distinct zeros only: a multiple zero is one vertex of the graph.
    d_zeros = (
        [center for center, _ in _cluster_roots(find_roots(d).as_array())]
        if d.degree >= 1
        else []
    )
    graph = trace_critical(theta, budget=budget)

    def vertex_for(z: complex) -> int | None:
        v = graph.vertex_by_position(z, tol=1e-5)
        return v.id if v is not None else None

    zero_vids = {}
    for z in d_zeros:
        vid = vertex_for(z)
        if vid is not None:
            zero_vids.setdefault(vid, z)

    adjacency: dict[int, list[dict]] = {vid: [] for vid in zero_vids}
    pole_links: list[dict] = []
    for arc in graph.arcs:
        if arc.end.kind != "critical_point":
            continue
        a, b = arc.start[0], arc.end.id
        if a in zero_vids and b in zero_vids:
            adjacency[a].append({"to": b, "q_length": arc.q_length})
        elif a in zero_vids:
            pole_links.append({"from": a, "to": b, "q_length": arc.q_length})

    touched = len(zero_vids) == len(d_zeros)
    # One vertex (or none) spans trivially; otherwise every vertex needs an edge.
    no_isolated = touched and (
        len(adjacency) <= 1 or all(adjacency[v] for v in adjacency)
    )
    if probe_seeds is None:
        center = sum(d_zeros, 0j) / len(d_zeros) if d_zeros else 0j
        spread = 1.0 + max((abs(z - center) for z in d_zeros), default=1.0)
        probe_seeds = [center + spread * w for w in (0.731 + 0.319j, -0.544 + 0.622j, 0.212 - 0.801j)]
    probe = closed_trajectory_probe(theta, probe_seeds, budget=budget)
    return {
        "d_zeros": d_zeros,
        "adjacency": {
            str(v): [{"to": str(e["to"]), "q_length": e["q_length"]} for e in edges]
            for v, edges in adjacency.items()
        },
        "pole_links": pole_links,
        "all_zeros_touched": touched,
        "spanning_no_isolated": no_isolated,
        "closed_trajectory_probe": {
            "kind": "probe",
            "candidates": probe,
        },
    }
