"""Limiting Cauchy-transform field for degree-linear Jacobi parameter families.

When alpha_n ~ A n and beta_n ~ B n, the Cauchy transforms of the
root-counting measures converge to an algebraic function C(z) solving

    (1 - z^2) C^2 - ((A + B) z + A - B) C + (A + B + 1) = 0,

and the supports organize along trajectories of the quadratic differential
with the negated discriminant of that quadratic over (z^2 - 1)^2. This
module evaluates the field, its discriminant, the induced differential,
and residual diagnostics of empirical root clouds against both the generic
equation and the point-mass degenerations.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from statistics import median
from typing import NamedTuple

from qdgeo.polyroots import Poly, RootCountingMeasure, empirical_cauchy
from qdgeo.qdclass import DegenerateConfig, NormalizedQD, detect_degenerate, order_zeros

NONDEGENERACY_TOL = 1e-12
BRANCH_POINT_VICINITY = 1e-6
_POLE_TOL = 1e-12


@dataclass(frozen=True)
class LimitParams:
    """Slopes of the parameter family; 1 + A + B = 0 has no limit field."""

    A: complex
    B: complex

    def __post_init__(self):
        if abs(1 + self.A + self.B) <= NONDEGENERACY_TOL:
            raise ValueError("1 + A + B vanishes; the limit quadratic degenerates")


class BranchPair(NamedTuple):
    principal: complex
    secondary: complex
    near_branch_point: bool


def _stable_quadratic_roots(a: complex, b: complex, c: complex) -> tuple[complex, complex]:
    """Roots of a z^2 + b z + c, a != 0, avoiding subtractive cancellation."""
    sq = cmath.sqrt(b * b - 4 * a * c)
    if abs(b - sq) > abs(b + sq):
        q = -0.5 * (b - sq)
    else:
        q = -0.5 * (b + sq)
    if q == 0:
        return 0j, 0j
    return q / a, c / q


def limit_discriminant(lp: LimitParams) -> Poly:
    """Discriminant of the limit quadratic as a polynomial in z.

    Coefficients are assembled in closed form: constant (A-B)^2 - 4(A+B+1),
    linear 2(A^2 - B^2), quadratic (A+B+2)^2.
    """
    A, B = lp.A, lp.B
    return Poly.from_coeffs(
        [
            (A - B) ** 2 - 4 * (A + B + 1),
            2 * (A * A - B * B),
            (A + B + 2) ** 2,
        ]
    )


def _discriminant_zeros(lp: LimitParams) -> tuple[complex, ...]:
    d = limit_discriminant(lp)
    c = list(d.coeffs) + [0j] * (3 - len(d.coeffs))
    if abs(c[2]) > 0:
        return _stable_quadratic_roots(c[2], c[1], c[0])
    if abs(c[1]) > 0:
        return (-c[0] / c[1],)
    return ()


def limit_cauchy_branches(lp: LimitParams, z: complex) -> BranchPair:
    """Both solutions of the limit quadratic at z, principal branch first.

    The principal branch is the one behaving like 1/z at infinity, selected
    pointwise by the smaller |z*C - 1|. Within distance 1e-6 of a
    discriminant zero the two branches coalesce and ordering is
    meaningless; the pair is then returned in quadratic-formula order with
    the vicinity flag set.
    """
    z = complex(z)
    if abs(z - 1) <= _POLE_TOL or abs(z + 1) <= _POLE_TOL:
        raise ValueError("the limit field has poles at +1 and -1")
    A, B = lp.A, lp.B
    a = 1 - z * z
    b = -((A + B) * z + A - B)
    c = A + B + 1
    if abs(a) <= _POLE_TOL * max(1.0, abs(z) ** 2):
        # z on the unit-circle degeneracy of the leading coefficient: the
        # quadratic is linear there (only reachable at z = +-1, caught above).
        root = -c / b
        return BranchPair(root, root, True)
    r1, r2 = _stable_quadratic_roots(a, b, c)
    near = any(abs(z - w) < BRANCH_POINT_VICINITY for w in _discriminant_zeros(lp))
    if near:
        return BranchPair(r1, r2, True)
    if abs(z * r2 - 1) < abs(z * r1 - 1):
        r1, r2 = r2, r1
    return BranchPair(r1, r2, False)


@dataclass(frozen=True)
class DegenerateQD:
    """Differential descriptor when the discriminant's degree drops below two."""

    numerator: Poly
    detail: str


def theorem2_differential(lp: LimitParams) -> NormalizedQD | DegenerateQD:
    """Quadratic differential -D(z)/((z-1)^2 (z+1)^2) dz^2 in normalized form.

    Dividing out the leading coefficient (A+B+2)^2 and extracting the two
    zeros of the discriminant D gives the two-parameter normal form. When
    A + B + 2 = 0 the degree drops and no normal form exists; the raw
    numerator is returned instead.
    """
    d = limit_discriminant(lp)
    if abs(lp.A + lp.B + 2) ** 2 <= NONDEGENERACY_TOL:
        return DegenerateQD(
            numerator=d.scale(-1),
            detail="discriminant degree drops below two; no two-zero normal form",
        )
    zeros = _discriminant_zeros(lp)
    p1, p2 = order_zeros(zeros[0], zeros[1])
    return NormalizedQD(p1, p2)


def _residual_stats(values: list[float]) -> dict:
    return {
        "min": min(values),
        "median": float(median(values)),
        "max": max(values),
        "n_probes": len(values),
    }


def eq12_residual(lp: LimitParams, mu: RootCountingMeasure, probes) -> dict:
    """Plug the empirical Cauchy transform into the limit quadratic at each probe.

    Returns {min, median, max, n_probes} of the absolute residual. Small
    values across well-spread probes indicate the root cloud has entered
    the asymptotic regime of its parameter family.
    """
    A, B = lp.A, lp.B
    vals = []
    for z in probes:
        z = complex(z)
        C = empirical_cauchy(mu, z)
        res = (1 - z * z) * C * C - ((A + B) * z + A - B) * C + (A + B + 1)
        vals.append(abs(res))
    if not vals:
        raise ValueError("at least one probe point is required")
    return _residual_stats(vals)


def degenerate_limit_check(kind: str, mu: RootCountingMeasure, probes, kappa: complex = 0j) -> dict:
    """Residuals against the point-mass limit fields.

    kind "delta0" checks z*C - 1 (parameter sums growing superlinearly with
    bounded difference); kind "delta_kappa" checks (z - kappa)*C - 1 (both
    growing superlinearly with difference/sum ratio tending to kappa).
    """
    if kind not in ("delta0", "delta_kappa"):
        raise ValueError("kind must be 'delta0' or 'delta_kappa'")
    center = 0j if kind == "delta0" else complex(kappa)
    vals = []
    for z in probes:
        z = complex(z)
        C = empirical_cauchy(mu, z)
        vals.append(abs((z - center) * C - 1))
    if not vals:
        raise ValueError("at least one probe point is required")
    return _residual_stats(vals)


def limit_configuration(lp: LimitParams) -> NormalizedQD | DegenerateQD | DegenerateConfig:
    """Differential for the family, collapsing to the degenerate taxonomy when apt."""
    qd = theorem2_differential(lp)
    if isinstance(qd, DegenerateQD):
        return qd
    deg = detect_degenerate(qd)
    return deg if deg is not None else qd
