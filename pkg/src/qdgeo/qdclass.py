"""Topological classification of the normalized quadratic differential.

The object under study is Q(z) dz^2 = -(z - p1)(z - p2) / ((z-1)^2 (z+1)^2) dz^2
with two simple zeros and double poles at +1, -1, and infinity. Everything
the trajectory structure does near the finite poles is governed by the two
products C1 = (p1-1)(p2-1) and Cm1 = (p1+1)(p2+1); the global topology is
decided by confocal-conic comparisons against the zero p1.

Region membership reduces to two scalars. With sigma(z) = |z-1| + |z+1|
and delta(z) = |z-1| - |z+1|, the ellipse through p1 with foci +-1 is the
level set of sigma and the hyperbola branch through p1 is the level set of
delta, so the four open components cut out by the two conics are exactly
the four sign patterns of (sigma(p2) - sigma(p1), delta(p2) - delta(p1)).
The component containing +1 minimizes both, the one containing -1
minimizes sigma and maximizes delta, and the two unbounded components
follow by swapping the sigma comparison.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

GENERICITY_TOL = 1e-12
BOUNDARY_TOL = 1e-9


class DegenerateInputError(ValueError):
    """Raised when an operation requires the generic two-zero configuration."""


def order_zeros(a: complex, b: complex) -> tuple[complex, complex]:
    """Canonical zero labeling: p1 has the larger imaginary part, ties broken by real part."""
    a, b = complex(a), complex(b)
    first, second = sorted((a, b), key=lambda w: (-w.imag, -w.real))
    return first, second


def imag_pos_sqrt(c: complex) -> complex:
    """Square root with nonnegative imaginary part; nonnegative real part on the real axis."""
    w = cmath.sqrt(c)
    if w.imag < 0 or (w.imag == 0 and w.real < 0):
        return -w
    return w


def sigma(z: complex) -> float:
    """Elliptic coordinate |z-1| + |z+1|; level sets are ellipses with foci +-1."""
    return abs(z - 1) + abs(z + 1)


def delta(z: complex) -> float:
    """Hyperbolic coordinate |z-1| - |z+1|; level sets are single hyperbola branches."""
    return abs(z - 1) - abs(z + 1)


@dataclass(frozen=True)
class NormalizedQD:
    """The differential -(z - p1)(z - p2)/((z-1)^2 (z+1)^2) dz^2."""

    p1: complex
    p2: complex

    @classmethod
    def from_pair(cls, a: complex, b: complex) -> "NormalizedQD":
        p1, p2 = order_zeros(a, b)
        return cls(p1, p2)

    @property
    def C1(self) -> complex:
        return (self.p1 - 1) * (self.p2 - 1)

    @property
    def Cm1(self) -> complex:
        return (self.p1 + 1) * (self.p2 + 1)

    def is_generic(self, tol: float = GENERICITY_TOL) -> bool:
        ps = (self.p1, self.p2)
        if abs(self.p1 - self.p2) <= tol:
            return False
        return all(abs(p - 1) > tol and abs(p + 1) > tol for p in ps)

    def q(self, z: complex) -> complex:
        """Point evaluation of the differential's coefficient function."""
        return -((z - self.p1) * (z - self.p2)) / ((z - 1) ** 2 * (z + 1) ** 2)


def leading_coeffs(qd: NormalizedQD) -> tuple[complex, complex]:
    """Products controlling the double-pole behavior at +1 and -1."""
    if not qd.is_generic():
        raise DegenerateInputError("leading coefficients need zeros away from the poles")
    return qd.C1, qd.Cm1


def spiral_mode(c: complex, tol: float = BOUNDARY_TOL) -> str:
    """Local trajectory shape near a double pole with Laurent coefficient -c/4.

    Closed circles for positive real c, straight radial approach for
    negative real c, and logarithmic spirals otherwise; the spiral turns
    clockwise exactly when arg c lies in (0, pi).
    """
    scale = max(1.0, abs(c))
    if abs(c.imag) <= tol * scale:
        return "circle" if c.real > 0 else "radial"
    return "cw" if c.imag > 0 else "ccw"


@dataclass(frozen=True)
class PoleLocalData:
    """Pole products, strip heights, and spiral modes in one record."""

    C1: complex
    Cm1: complex
    hplus: float
    hminus: float
    h1: float
    h2: float
    h: float
    spiral_plus: str
    spiral_minus: str


def heights(qd: NormalizedQD) -> PoleLocalData:
    """Normalized strip heights read off the square roots of the pole products.

    hplus = Im(sqrt(C1))/2 and hminus = Im(sqrt(Cm1))/2 with the branches
    of nonnegative imaginary part; h1, h2 split the total height h between
    the two strips of the generic configuration.
    """
    c1, cm1 = leading_coeffs(qd)
    hplus = 0.5 * imag_pos_sqrt(c1).imag
    hminus = 0.5 * imag_pos_sqrt(cm1).imag
    h1 = 0.5 * (hplus - hminus)
    return PoleLocalData(
        C1=c1,
        Cm1=cm1,
        hplus=hplus,
        hminus=hminus,
        h1=h1,
        h2=hminus,
        h=0.5 * (hplus + hminus),
        spiral_plus=spiral_mode(c1),
        spiral_minus=spiral_mode(cm1),
    )


def spiral_behavior(qd: NormalizedQD) -> tuple[str, str]:
    """Spiral modes at the poles +1 and -1, in that order."""
    c1, cm1 = leading_coeffs(qd)
    return spiral_mode(c1), spiral_mode(cm1)


@dataclass(frozen=True)
class DegenerateConfig:
    """Collided or pole-absorbed zero configurations and their limiting pictures."""

    kind: str
    pole: int | None = None
    sub: str | None = None
    detail: str = ""


def detect_degenerate(qd: NormalizedQD, tol: float = GENERICITY_TOL) -> DegenerateConfig | None:
    """Recognize the non-generic configurations; None for a generic pair."""
    p1, p2 = qd.p1, qd.p2
    at1 = [abs(p - 1) <= tol for p in (p1, p2)]
    atm1 = [abs(p + 1) <= tol for p in (p1, p2)]
    if (at1[0] and atm1[1]) or (atm1[0] and at1[1]):
        return DegenerateConfig(
            kind="both_at_poles_opposite",
            detail="single critical trajectory: the open interval (-1, 1)",
        )
    if at1 == [True, True] or atm1 == [True, True]:
        pole = 1 if at1[0] else -1
        return DegenerateConfig(
            kind="both_at_poles_same",
            pole=pole,
            detail=f"single critical trajectory: circle of radius 2 centered at {-pole}",
        )
    for idx, (a1, am1) in enumerate(zip(at1, atm1)):
        if a1 or am1:
            pole = 1 if a1 else -1
            other = p2 if idx == 0 else p1
            if abs(other.imag) > tol:
                sub = "complex"
            elif -1 < other.real < 1:
                sub = "real_interior"
            else:
                sub = "real_outside"
            return DegenerateConfig(
                kind="p2_at_pole",
                pole=pole,
                sub=sub,
                detail="zero absorbed by the pole; remaining simple zero at "
                f"{other!r} ({sub})",
            )
    if abs(p1 - p2) <= tol:
        if abs(p1.imag) > tol:
            sub = "p1_eq_p2_complex"
        elif -1 < p1.real < 1:
            sub = "p1_eq_p2_interior"
        else:
            sub = "p1_eq_p2_real_outside"
        return DegenerateConfig(kind=sub, detail=f"double zero at {p1!r}")
    return None


_REGION_LABELS = ("E1+", "E1-", "Em1+", "Em1-")


@dataclass(frozen=True)
class RegionLabel:
    """Region of p2 relative to the conics through p1, with a tolerance marker."""

    label: str
    boundary_marker: bool = False


def region_of(p1: complex, p2: complex, tol: float = BOUNDARY_TOL) -> RegionLabel:
    """Locate p2 relative to the ellipse, hyperbola branch, and focal rays of p1.

    Labels: the special point "conj" (p2 = conjugate of p1); ellipse arcs
    "L+"/"L-"; hyperbola arcs "H+"/"H-"; focal rays "l1+", "l1-", "lm1+",
    "lm1-" (where C1 resp. Cm1 is real, split by sign); otherwise one of
    the four open components "E1+", "E1-", "Em1+", "Em1-".

    Precedence runs conj, ellipse/hyperbola arcs, rays, open regions: the
    ray through the conjugate point can cross the ellipse, and the strip
    topology is decided by the conic there, not by the ray.
    """
    p1, p2 = complex(p1), complex(p2)
    if abs(p1.imag) <= tol:
        raise ValueError("region labels need Im p1 != 0; real pairs classify by sign logic")
    if abs(p2 - p1.conjugate()) <= tol:
        return RegionLabel("conj")
    s1, s2 = sigma(p1), sigma(p2)
    d1, d2 = delta(p1), delta(p2)
    sig_eq = abs(s2 - s1) <= tol
    del_eq = abs(d2 - d1) <= tol
    if sig_eq and not del_eq:
        return RegionLabel("L+" if d2 < d1 else "L-")
    if del_eq and not sig_eq:
        return RegionLabel("H+" if s2 < s1 else "H-")
    if sig_eq and del_eq:
        # p2 within tolerance of p1 itself or of conj(p1); report the nearer conic.
        return RegionLabel("L+" if d2 < d1 else "L-", boundary_marker=True)
    c1 = (p1 - 1) * (p2 - 1)
    cm1 = (p1 + 1) * (p2 + 1)
    if abs(c1.imag) <= tol * max(1.0, abs(c1)):
        return RegionLabel("l1+" if c1.real > 0 else "l1-")
    if abs(cm1.imag) <= tol * max(1.0, abs(cm1)):
        return RegionLabel("lm1+" if cm1.real > 0 else "lm1-")
    near = min(abs(s2 - s1), abs(d2 - d1)) <= 10 * tol
    if s2 < s1:
        label = "E1+" if d2 < d1 else "Em1+"
    else:
        label = "E1-" if d2 < d1 else "Em1-"
    return RegionLabel(label, boundary_marker=near)


@dataclass(frozen=True)
class TopologicalType:
    """One of the finitely many trajectory-structure types, with attachment data.

    variant names the global picture by its domain census:
    three circle domains (a: zeros on the open interval, b: zeros real
    outside, c: conjugate pair), two circle domains plus one strip family
    in disguise (TwoCircles), one circle domain with one strip
    (OneCircleOneStrip_a via the ellipse, _b1 via the hyperbola), one
    circle domain with two strips (the open generic case), or a
    degenerate collapse.
    """

    variant: str
    boundary_marker: bool = False
    second_pole: int | None = None
    zero_on_dinf: str | None = None
    orientation: str | None = None
    pole_attachments: tuple[tuple[int, str], ...] = ()
    loop_zero: str | None = None
    circled_pole: int | None = None
    region: str | None = None
    degenerate: DegenerateConfig | None = None


def _positive_real(c: complex, tol: float) -> tuple[bool, bool]:
    """(is positive real, was within tolerance of the boundary)."""
    scale = max(1.0, abs(c))
    on_axis = abs(c.imag) <= tol * scale
    near = abs(c.imag) <= 10 * tol * scale or abs(c.real) <= 10 * tol * scale
    return on_axis and c.real > 0, near


def classify(qd: NormalizedQD, tol: float = BOUNDARY_TOL) -> TopologicalType:
    """Decision tree from the pole products and the conic comparisons.

    Both pole products positive real gives the three-circle pictures;
    exactly one positive real gives two circle domains; otherwise the
    ellipse/hyperbola equalities pick out the single-strip boundaries and
    the open case splits by which strip height dominates.
    """
    deg = detect_degenerate(qd)
    if deg is not None:
        return TopologicalType(variant="Degenerate", degenerate=deg)
    p1, p2 = qd.p1, qd.p2
    c1, cm1 = qd.C1, qd.Cm1
    pos1, near1 = _positive_real(c1, tol)
    posm1, nearm1 = _positive_real(cm1, tol)
    marker = near1 or nearm1

    if pos1 and posm1:
        if abs(p1.imag) > tol:
            # Both products positive real off the axis happens only at the
            # conjugate point (the two focal rays meet there and nowhere else).
            off_conj = abs(p2 - p1.conjugate()) > tol
            return TopologicalType(
                variant="ThreeCircles_c", boundary_marker=marker or off_conj, region="conj"
            )
        # Real zeros: inside the open interval or both outside on one side.
        if -1 < p1.real < 1 and -1 < p2.real < 1:
            return TopologicalType(variant="ThreeCircles_a", boundary_marker=marker)
        circled = 1 if p1.real > 1 else -1
        return TopologicalType(
            variant="ThreeCircles_b", boundary_marker=marker, circled_pole=circled
        )

    if pos1 != posm1:
        if posm1:
            second_pole = -1
            zero = "p1" if abs(p2 + 1) < abs(p1 + 1) else "p2"
            near_tie = abs(abs(p2 + 1) - abs(p1 + 1)) <= tol
        else:
            second_pole = 1
            zero = "p1" if abs(p2 - 1) < abs(p1 - 1) else "p2"
            near_tie = abs(abs(p2 - 1) - abs(p1 - 1)) <= tol
        return TopologicalType(
            variant="TwoCircles",
            boundary_marker=marker or near_tie,
            second_pole=second_pole,
            zero_on_dinf=zero,
        )

    # Neither product positive real: one circle domain, strip structure by conics.
    s1, s2 = sigma(p1), sigma(p2)
    d1, d2 = delta(p1), delta(p2)
    sig_eq = abs(s2 - s1) <= tol
    del_eq = abs(d2 - d1) <= tol
    region = None
    if abs(p1.imag) > tol:
        region = region_of(p1, p2, tol).label
    if sig_eq:
        if d2 < d1:
            attach = ((1, "p2"), (-1, "p1"))
        else:
            attach = ((-1, "p2"), (1, "p1"))
        return TopologicalType(
            variant="OneCircleOneStrip_a",
            boundary_marker=marker or del_eq,
            pole_attachments=attach,
            region=region,
        )
    if del_eq:
        loop = "p1" if s2 < s1 else "p2"
        return TopologicalType(
            variant="OneCircleOneStrip_b1",
            boundary_marker=marker,
            loop_zero=loop,
            region=region,
        )
    hplus = 0.5 * imag_pos_sqrt(c1).imag
    hminus = 0.5 * imag_pos_sqrt(cm1).imag
    orientation = "b2" if hplus > hminus else "b3"
    height_tie = abs(hplus - hminus) <= tol
    if s2 < s1:
        zero = "p1"
        attach = ((1, "p2"),) if d2 < d1 else ((-1, "p2"),)
    else:
        zero = "p2"
        attach = ((-1, "p1"),) if d2 < d1 else ((1, "p1"),)
    return TopologicalType(
        variant="OneCircleTwoStrips",
        boundary_marker=marker or height_tie,
        zero_on_dinf=zero,
        orientation=orientation,
        pole_attachments=attach,
        region=region,
    )


def classification_json(qd: NormalizedQD, tol: float = BOUNDARY_TOL) -> dict:
    """Classification plus pole-local data as a JSON-ready dictionary."""
    t = classify(qd, tol)
    out: dict = {
        "variant": t.variant,
        "boundary_marker": t.boundary_marker,
        "p1": [qd.p1.real, qd.p1.imag],
        "p2": [qd.p2.real, qd.p2.imag],
    }
    if t.variant == "Degenerate":
        d = t.degenerate
        out["degenerate"] = {
            "kind": d.kind,
            "pole": d.pole,
            "sub": d.sub,
            "detail": d.detail,
        }
        return out
    pl = heights(qd)
    out["C1"] = [pl.C1.real, pl.C1.imag]
    out["Cm1"] = [pl.Cm1.real, pl.Cm1.imag]
    out["heights"] = {
        "hplus": pl.hplus,
        "hminus": pl.hminus,
        "h1": pl.h1,
        "h2": pl.h2,
        "h": pl.h,
    }
    out["spiral"] = {"plus": pl.spiral_plus, "minus": pl.spiral_minus}
    out["regions"] = {"p2": t.region}
    for key in ("second_pole", "zero_on_dinf", "orientation", "loop_zero", "circled_pole"):
        val = getattr(t, key)
        if val is not None:
            out[key] = val
    if t.pole_attachments:
        out["pole_attachments"] = [[pole, zero] for pole, zero in t.pole_attachments]
    return out
