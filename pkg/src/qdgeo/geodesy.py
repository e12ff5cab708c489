"""Canonical map, strip diagram, and geodesic inventory of the normalized differential.

The metric |Q|^(1/2)|dz| flattens each strip-like domain of the
differential onto a Euclidean strip; the flattening map is
F(z) = Phi(z) - Phi(p1) where Phi is an explicit antiderivative of
sqrt(Q)/(2 pi) in elementary functions. Straight segments in the image
pull back to geodesics, so counting short geodesics and geodesic loops
reduces to plane geometry on a handful of image points, all of which are
rational expressions in the two square roots

    sc1 = sqrt((p1-1)(p2-1)),   scm1 = sqrt((p1+1)(p2+1))

taken with nonnegative imaginary part. Four direction numbers drive
everything:

    S1 = -1/2 + (sc1 - scm1)/4      S2 = 1/2 + (sc1 + scm1)/4
    S3 = -1/2 + (sc1 + scm1)/4      S4 = 1/2 + (sc1 - scm1)/4

S4 is the image of the second zero (bottom-strip corner x2 + i h1), S2
the image of its other boundary copy (x2' + i h), and S1, S3 are the same
points seen from the shifted base corner. Their argument order decides
the nine two-strip subcases; their arguments are the geodesic angles; the
loop angles are half the arguments of the pole products themselves.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple

from qdgeo.qdclass import (
    NormalizedQD,
    TopologicalType,
    classify,
    delta,
    imag_pos_sqrt,
    order_zeros,
)

BOUNDARY_TOL = 1e-9
_CRITICAL_CLEARANCE = 1e-3
_ENDPOINT_SNAP = 1e-12


class BranchError(RuntimeError):
    """Finite-difference validation of the antiderivative's branch failed."""


@dataclass(frozen=True)
class BranchContext:
    """Sheet choices for the two radicals centered at the zeros.

    sign1 and sign2 flip sqrt(z - p1) and sqrt(z - p2); debug switches on
    a finite-difference comparison of the derivative against sqrt(Q)/(2 pi)
    at every evaluation.
    """

    sign1: int = 1
    sign2: int = 1
    debug: bool = False


def sqrt_pair(qd: NormalizedQD) -> tuple[complex, complex]:
    """Height-positive square roots of the two pole products."""
    return imag_pos_sqrt(qd.C1), imag_pos_sqrt(qd.Cm1)


def s_points(qd: NormalizedQD) -> tuple[complex, complex, complex, complex]:
    """The four direction numbers (S1, S2, S3, S4) of the flattened diagram."""
    sc1, scm1 = sqrt_pair(qd)
    d = 0.25 * (sc1 - scm1)
    s = 0.25 * (sc1 + scm1)
    return (-0.5 + d, 0.5 + s, -0.5 + s, 0.5 + d)


def phi(qd: NormalizedQD, z: complex, ctx: BranchContext | None = None) -> complex:
    """Elementary antiderivative of sqrt(Q)/(2 pi) at z.

    The five logarithmic terms share one consistent set of radicals
    (sqrt(p q) is always the product of the individual square roots), so
    the derivative matches a branch of sqrt(Q)/(2 pi) everywhere off the
    critical points and branch cuts. Values are meaningful up to the
    period lattice and a global sign, which is how the trajectory
    geometry consumes them.
    """
    ctx = ctx or BranchContext()
    p1, p2 = qd.p1, qd.p2
    z = complex(z)
    a1 = cmath.sqrt(p1 - 1)
    a2 = cmath.sqrt(p2 - 1)
    b1 = cmath.sqrt(p1 + 1)
    b2 = cmath.sqrt(p2 + 1)
    rc1 = a1 * a2
    rcm1 = b1 * b2
    r1 = ctx.sign1 * cmath.sqrt(z - p1)
    r2 = ctx.sign2 * cmath.sqrt(z - p2)
    val = (
        rc1 * cmath.log(z - 1)
        - rcm1 * cmath.log(z + 1)
        + 4 * cmath.log(r1 + r2)
        + 2 * rcm1 * cmath.log(b1 * r2 - b2 * r1)
        - 2 * rc1 * cmath.log(a1 * r2 - a2 * r1)
    )
    out = val / (4j * math.pi)
    if ctx.debug:
        eps = 1e-5 * (1.0 + abs(z))
        num = (phi(qd, z + eps, BranchContext(ctx.sign1, ctx.sign2)) -
               phi(qd, z - eps, BranchContext(ctx.sign1, ctx.sign2))) / (2 * eps)
        target = cmath.sqrt(qd.q(z)) / (2 * math.pi)
        dev = min(abs(num - target), abs(num + target))
        if dev > 1e-6 * (1.0 + abs(target)):
            raise BranchError(
                f"derivative of the antiderivative deviates by {dev:.3g} at z={z}"
            )
    return out


def phi_base_value(qd: NormalizedQD) -> complex:
    """Closed-form value of the antiderivative at the first zero.

    Direct evaluation degenerates there (two logarithms collapse); in the
    limit the log-divergent parts cancel and what survives is
    (2 - rc1 + rcm1) log(p1 - p2) / (4 pi i) with the same consistent
    radical products as ``phi``, modulo the period lattice.
    """
    p1, p2 = qd.p1, qd.p2
    rc1 = cmath.sqrt(p1 - 1) * cmath.sqrt(p2 - 1)
    rcm1 = cmath.sqrt(p1 + 1) * cmath.sqrt(p2 + 1)
    return (2 - rc1 + rcm1) * cmath.log(p1 - p2) / (4j * math.pi)


def F_p2_closed_form(qd: NormalizedQD) -> complex:
    """Image of the second zero under the flattening map: 1/2 + (sc1 - scm1)/4."""
    sc1, scm1 = sqrt_pair(qd)
    return 0.5 + 0.25 * (sc1 - scm1)


class PathIntegral(NamedTuple):
    value: complex
    error: float


def _gauss_nodes():
    # 12-point Gauss-Legendre on [0, 1].
    from numpy.polynomial.legendre import leggauss

    x, w = leggauss(12)
    return 0.5 * (x + 1.0), 0.5 * w


_GL_NODES, _GL_WEIGHTS = _gauss_nodes()


def F_numeric(
    qd: NormalizedQD,
    z_from: complex,
    z_to: complex,
    path=None,
    abs_tol: float = 1e-9,
) -> PathIntegral:
    """Quadrature of sqrt(Q)/(2 pi) along a polyline with continuous branch tracking.

    The path runs z_from, *path, z_to with straight segments. Interior
    samples must stay at least 1e-3 away from the four critical points;
    an endpoint that coincides with a zero of Q is allowed, and the
    integrable square-root singularity there is removed by a quadratic
    reparametrization. The overall sign of the square root follows the
    value at the first sample, so the result carries the usual global
    sign ambiguity of the flattening map.
    """
    pts = [complex(z_from)] + [complex(w) for w in (path or [])] + [complex(z_to)]
    zeros = (qd.p1, qd.p2)
    criticals = (qd.p1, qd.p2, 1 + 0j, -1 + 0j)

    def q_sqrt_samples(points):
        nonlocal prev
        out = []
        for z in points:
            s = cmath.sqrt(qd.q(z))
            if prev is not None and abs(s - prev) > abs(s + prev):
                s = -s
            prev = s
            out.append(s)
        return out

    def segment_nodes(a, b, panels):
        scale = 1.0 + max(abs(a), abs(b))
        sing_a = any(abs(a - w) <= _ENDPOINT_SNAP * scale for w in zeros)
        sing_b = any(abs(b - w) <= _ENDPOINT_SNAP * scale for w in zeros)
        nodes, weights = [], []
        for k in range(panels):
            lo = k / panels
            hi = (k + 1) / panels
            for t, w in zip(_GL_NODES, _GL_WEIGHTS):
                u = lo + (hi - lo) * t
                # Quadratic clustering toward singular endpoints keeps the
                # integrand bounded: sqrt(z - p) vanishes linearly in the
                # new parameter.
                if sing_a and sing_b:
                    v = 3 * u * u - 2 * u**3
                    dv = 6 * u - 6 * u * u
                elif sing_a:
                    v = u * u
                    dv = 2 * u
                elif sing_b:
                    v = 1 - (1 - u) ** 2
                    dv = 2 * (1 - u)
                else:
                    v = u
                    dv = 1.0
                nodes.append(a + (b - a) * v)
                weights.append(w * dv * (b - a) / panels)
        return nodes, weights, sing_a, sing_b

    def integrate(panels):
        nonlocal prev
        prev = None
        total = 0j
        for a, b in zip(pts[:-1], pts[1:]):
            nodes, weights, sing_a, sing_b = segment_nodes(a, b, panels)
            scale = 1.0 + max(abs(a), abs(b))
            for z in nodes:
                near_ok = (sing_a and abs(z - a) <= 1e-2 * scale) or (
                    sing_b and abs(z - b) <= 1e-2 * scale
                )
                if not near_ok and any(abs(z - c) < _CRITICAL_CLEARANCE for c in criticals):
                    raise ValueError(
                        f"integration path passes within {_CRITICAL_CLEARANCE} of a critical point"
                    )
            vals = q_sqrt_samples(nodes)
            total += sum(w * v for w, v in zip(weights, vals))
        return total / (2 * math.pi)

    prev = None
    panels = 8
    last = integrate(panels)
    for _ in range(9):
        panels *= 2
        cur = integrate(panels)
        err = abs(cur - last)
        last = cur
        if err <= abs_tol:
            return PathIntegral(cur, err)
    return PathIntegral(last, abs(err))


def period_generators(qd: NormalizedQD) -> tuple[complex, complex, complex]:
    """Generators of the period lattice of the flattening map.

    The horizontal strip identification contributes 1; a circuit around
    either finite pole contributes half the corresponding square-rooted
    pole product.
    """
    sc1, scm1 = sqrt_pair(qd)
    return (1 + 0j, 0.5 * sc1, 0.5 * scm1)


def nearest_lattice_deviation(qd: NormalizedQD, value: complex, span: int = 3) -> float:
    """Distance from value (up to global sign) to the nearest small lattice point."""
    g1, g2, g3 = period_generators(qd)
    best = float("inf")
    rng = range(-span, span + 1)
    for sgn in (1, -1):
        v = sgn * value
        for m in rng:
            for k in rng:
                for onear in rng:
                    best = min(best, abs(v - (m * g1 + k * g2 + onear * g3)))
    return best


def _mod_pi(theta: float) -> float:
    t = theta % math.pi
    if t >= math.pi - 1e-15:
        t = 0.0
    return t


def _mod_2pi(theta: float) -> float:
    t = theta % (2 * math.pi)
    if t >= 2 * math.pi - 1e-15:
        t = 0.0
    return t


def _mirror(qd: NormalizedQD) -> tuple[NormalizedQD, dict]:
    """Reflect z -> -z; returns the reflected differential and the zero-name map.

    The map sends pole +1 to -1 and back; zero labels can swap because
    ordering is re-derived on the reflected pair. zero_map translates a
    reflected-frame name back to the caller's frame.
    """
    q1, q2 = order_zeros(-qd.p1, -qd.p2)
    m = NormalizedQD(q1, q2)
    same = abs(q1 - (-qd.p1)) <= abs(q1 - (-qd.p2))
    zero_map = {"p1": "p1", "p2": "p2"} if same else {"p1": "p2", "p2": "p1"}
    return m, zero_map


class Subcase(NamedTuple):
    letter: str
    boundary_marker: bool


def _subcase_from_args(a1: float, a2: float, a3: float, a4: float, tol: float) -> Subcase:
    """Nine-way split by the argument order of (S1, S2, S3, S4)."""
    if abs(a1 - a2) <= tol:
        return Subcase("b", True)
    if abs(a1 - a3) <= tol:
        return Subcase("d", True)
    if abs(a4 - a2) <= tol:
        return Subcase("f", True)
    if abs(a4 - a3) <= tol:
        return Subcase("h", True)
    if a1 < a2:
        return Subcase("a", False)
    if a2 < a1 < a3:
        return Subcase("c", False)
    if a3 < a1 and a4 < a2:
        return Subcase("e", False)
    if a2 < a4 < a3:
        return Subcase("g", False)
    return Subcase("i", False)


def _two_strip_normalized(qd: NormalizedQD) -> tuple[NormalizedQD, dict, bool, TopologicalType]:
    """Reduce to the dominant-first-height orientation, tracking the reflection."""
    t = classify(qd)
    if t.variant != "OneCircleTwoStrips":
        raise ValueError("strip diagram needs the one-circle, two-strip configuration")
    if t.orientation == "b2":
        return qd, {"p1": "p1", "p2": "p2"}, False, t
    m, zero_map = _mirror(qd)
    tm = classify(m)
    if tm.variant != "OneCircleTwoStrips" or tm.orientation != "b2":
        raise ValueError("reflection did not yield the dominant orientation; boundary input")
    return m, zero_map, True, tm


@dataclass(frozen=True)
class StripDiagram:
    """Flattened two-strip picture: corner coordinates and interval data.

    u1..u4 are the abscissas where the four corner-to-corner lines of the
    lower strip cross the top edge of the upper strip; comparing x2prime
    against them reproduces the subcase letter. With the lower corner at
    x2 + i h1 and total height h, similar triangles give
    u1 = (x2 - 1) h / h1, u3 = x2 h / h1, and the unit horizontal period
    shifts each by one to u2, u4.
    """

    x2: float
    h1: float
    x2prime: float
    h: float
    u1: float
    u2: float
    u3: float
    u4: float
    subcase: str
    boundary_marker: bool
    mirrored: bool


def strip_diagram(qd: NormalizedQD, tol: float = BOUNDARY_TOL) -> StripDiagram:
    """Corner data of the flattened picture for a two-strip configuration.

    Inputs in the mirror orientation are reflected (z -> -z) first; the
    mirrored flag records that. The corner formulas are
    x2 + i h1 = 1/2 + (sc1 - scm1)/4 and x2' + i h = 1/2 + (sc1 + scm1)/4.
    """
    norm, _, mirrored_flag, _ = _two_strip_normalized(qd)
    s4 = F_p2_closed_form(norm)
    sc1, scm1 = sqrt_pair(norm)
    top = 0.5 + 0.25 * (sc1 + scm1)
    x2, h1 = s4.real, s4.imag
    x2p, h = top.real, top.imag
    if h1 <= tol:
        raise ValueError("strip height vanishes; not a two-strip configuration")
    ratio = h / h1
    u1 = (x2 - 1.0) * ratio
    u3 = x2 * ratio
    u2, u4 = u1 + 1.0, u3 + 1.0
    if x2p < u1 - tol:
        letter, marker = "a", False
    elif x2p <= u1 + tol:
        letter, marker = "b", True
    elif x2p < u2 - tol:
        letter, marker = "c", False
    elif x2p <= u2 + tol:
        letter, marker = "d", True
    elif x2p < u3 - tol:
        letter, marker = "e", False
    elif x2p <= u3 + tol:
        letter, marker = "f", True
    elif x2p < u4 - tol:
        letter, marker = "g", False
    elif x2p <= u4 + tol:
        letter, marker = "h", True
    else:
        letter, marker = "i", False
    return StripDiagram(
        x2=x2,
        h1=h1,
        x2prime=x2p,
        h=h,
        u1=u1,
        u2=u2,
        u3=u3,
        u4=u4,
        subcase=letter,
        boundary_marker=marker,
        mirrored=mirrored_flag,
    )


def subcase_by_inequalities(qd: NormalizedQD, tol: float = BOUNDARY_TOL) -> Subcase:
    """Subcase letter straight from the argument order of the direction numbers.

    Independent of the interval method in strip_diagram: this one never
    forms the u quotients, so the two must agree wherever both are
    defined; the dual computation is the cross-check the tests lean on.
    """
    norm, _, _, _ = _two_strip_normalized(qd)
    s1, s2, s3, s4 = s_points(norm)
    return _subcase_from_args(
        cmath.phase(s1), cmath.phase(s2), cmath.phase(s3), cmath.phase(s4), tol
    )


@dataclass(frozen=True)
class GeodesicEntry:
    name: str
    endpoints: tuple[str, str]
    w_angle: float
    s: float


@dataclass(frozen=True)
class LoopEntry:
    name: str
    base: str
    pole: str
    w_angle: float
    s: float


@dataclass(frozen=True)
class GeodesicInventory:
    variant: str
    subcase: str | None
    geodesics: tuple[GeodesicEntry, ...]
    loops: tuple[LoopEntry, ...]
    note: str = ""

    @property
    def counts(self) -> tuple[int, int]:
        return len(self.geodesics), len(self.loops)


def _loop(name, base, pole, arg_c) -> LoopEntry:
    ang = _mod_pi(0.5 * arg_c)
    return LoopEntry(name=name, base=base, pole=pole, w_angle=ang, s=_mod_2pi(arg_c))


def _geo(name, ang) -> GeodesicEntry:
    a = _mod_pi(ang)
    return GeodesicEntry(name=name, endpoints=("p1", "p2"), w_angle=a, s=_mod_2pi(2 * a))


def _pole_str(pole: int) -> str:
    return "1" if pole == 1 else "-1"


def geodesic_inventory(qd: NormalizedQD, tol: float = BOUNDARY_TOL) -> GeodesicInventory:
    """Complete list of short geodesics and geodesic loops with angles and s-values.

    Angle conventions: w_angle is the Euclidean angle of the flattened
    image segment in [0, pi); a trajectory arc at that angle belongs to
    the rotated differential with s = 2 * w_angle mod 2 pi. Loop angles
    around the poles +1 / -1 are half the arguments of the corresponding
    pole products; the boundary loop of the outer circle domain always
    sits at s = 0.
    """
    t = classify(qd, tol)
    c1, cm1 = qd.C1, qd.Cm1
    arg1, argm1 = cmath.phase(c1), cmath.phase(cm1)

    if t.variant == "Degenerate":
        return _degenerate_inventory(qd, t)

    if t.variant in ("ThreeCircles_a", "ThreeCircles_b"):
        geos = (_geo("gamma_0", 0.0),)
        if t.variant == "ThreeCircles_a":
            loops = (
                _loop("loop_plus", "p1", "1", 0.0),
                _loop("loop_minus", "p2", "-1", 0.0),
            )
        else:
            circled = t.circled_pole
            # The zero nearer the circled pole carries its loop; the other
            # zero carries the loop bounding the outer circle domain.
            if circled == 1:
                near, far = "p2", "p1"
            else:
                near, far = "p1", "p2"
            loops = (
                _loop("loop_pole", near, _pole_str(circled), 0.0),
                _loop("loop_inf", far, "inf", 0.0),
            )
        return GeodesicInventory(t.variant, None, geos, loops)

    if t.variant == "ThreeCircles_c":
        geos = (_geo("gamma_0", 0.0), _geo("gamma_plus", 0.0), _geo("gamma_minus", 0.0))
        return GeodesicInventory(t.variant, None, geos, ())

    if t.variant == "TwoCircles":
        return _two_circles_inventory(qd, t, tol)

    if t.variant == "OneCircleOneStrip_a":
        s1, s2, s3, s4 = s_points(qd)
        geos = (
            _geo("gamma_0", 0.0),
            _geo("gamma_0_top", 0.0),
            _geo("gamma_12", cmath.phase(s2)),
            _geo("gamma_21", cmath.phase(s3)),
        )
        # Loop bases follow the hyperbolic coordinate: the zero nearer the
        # pole in the delta sense loops around it, matching the collapsed
        # three-circle limits.
        if delta(qd.p2) < delta(qd.p1):
            plus_base, minus_base = "p2", "p1"
        else:
            plus_base, minus_base = "p1", "p2"
        loops = (
            _loop("loop_plus", plus_base, "1", arg1),
            _loop("loop_minus", minus_base, "-1", argm1),
        )
        return GeodesicInventory(t.variant, None, geos, loops)

    if t.variant == "OneCircleOneStrip_b1":
        s1, s2, s3, s4 = s_points(qd)
        geos = (
            _geo("gamma_0", 0.0),
            _geo("gamma_12", cmath.phase(s2)),
            _geo("gamma_21", cmath.phase(s3)),
        )
        loop_zero = t.loop_zero or "p1"
        other = "p2" if loop_zero == "p1" else "p1"
        loops = (
            _loop("loop_inf", loop_zero, "inf", 0.0),
            _loop("loop_plus", other, "1", arg1),
            _loop("loop_minus", other, "-1", argm1),
        )
        return GeodesicInventory(t.variant, None, geos, loops)

    return _two_strips_inventory(qd, t, tol)


def _two_circles_inventory(qd: NormalizedQD, t: TopologicalType, tol: float) -> GeodesicInventory:
    if t.second_pole == -1:
        frame, zero_map, mirrored_flag = qd, {"p1": "p1", "p2": "p2"}, False
    else:
        frame, zero_map, mirrored_flag = *_mirror(qd), True
    tf = classify(frame) if mirrored_flag else t
    s1, s2, s3, s4 = s_points(frame)
    geos = (
        _geo("gamma_12", cmath.phase(s4)),
        _geo("gamma_12_prime", cmath.phase(s2)),
        _geo("gamma_21", cmath.phase(s1)),
        _geo("gamma_21_prime", cmath.phase(s3)),
    )
    z_inf = tf.zero_on_dinf or "p1"
    z_in = "p2" if z_inf == "p1" else "p1"
    arg1_f = cmath.phase(frame.C1)
    cm1_f = frame.Cm1.real
    loops = [
        _loop("loop_inf", zero_map[z_inf], "inf", 0.0),
        _loop("loop_circled", zero_map[z_in], "-1" if not mirrored_flag else "1", 0.0),
    ]
    # The third loop winds the bare pole; it exists unless the two circle
    # boundaries have equal length (pole product = 4), and it is based at
    # the zero on the longer boundary.
    if abs(cm1_f - 4.0) > tol:
        base = z_inf if cm1_f < 4.0 else z_in
        loops.append(
            _loop("loop_bare", zero_map[base], "1" if not mirrored_flag else "-1", arg1_f)
        )
    return GeodesicInventory(t.variant, None, geos, tuple(loops))


def _two_strips_inventory(qd: NormalizedQD, t: TopologicalType, tol: float) -> GeodesicInventory:
    frame, zero_map, mirrored_flag, tf = _two_strip_normalized(qd)
    s1, s2, s3, s4 = s_points(frame)
    sub = _subcase_from_args(
        cmath.phase(s1), cmath.phase(s2), cmath.phase(s3), cmath.phase(s4), tol
    )
    letter = sub.letter
    # Segment directions in the flattened picture: the unprimed/primed pair
    # of each name shares a target corner (lower x2+i*h1, upper x2'+i*h)
    # and starts at w=0 / w=1 respectively.
    geos = [
        _geo("gamma_12", cmath.phase(s4)),
        _geo("gamma_12_prime", cmath.phase(s1)),
        _geo("gamma_21", cmath.phase(s2)),
        _geo("gamma_21_prime", cmath.phase(s3)),
    ]
    if letter == "d":
        # S1 and S3 are collinear: the segment from w=1 to the upper corner
        # runs through the lower corner and stops being simple.
        geos = [g for g in geos if g.name != "gamma_21_prime"]
    elif letter == "f":
        # Same degeneration through w=0 (S2 collinear with S4).
        geos = [g for g in geos if g.name != "gamma_21"]
    z_inf = tf.zero_on_dinf or "p1"
    z_in = "p2" if z_inf == "p1" else "p1"
    pole_plus = "1" if not mirrored_flag else "-1"
    pole_minus = "-1" if not mirrored_flag else "1"
    arg1_f = cmath.phase(frame.C1)
    argm1_f = cmath.phase(frame.Cm1)
    loops = [
        _loop("loop_inf", zero_map[z_inf], "inf", 0.0),
        _loop("loop_far", zero_map[z_in], pole_minus, argm1_f),
    ]
    # Only at letters b and h does the near-pole loop degenerate into a
    # union of geodesics; at d and f a geodesic degenerates instead and
    # the loop survives, based as in the flanking open intervals.
    if letter in ("a", "i"):
        loops.append(_loop("loop_near", zero_map[z_in], pole_plus, arg1_f))
    elif letter in ("c", "d", "e", "f", "g"):
        loops.append(_loop("loop_near", zero_map[z_inf], pole_plus, arg1_f))
    return GeodesicInventory(t.variant, letter, tuple(geos), tuple(loops))


def _degenerate_inventory(qd: NormalizedQD, t: TopologicalType) -> GeodesicInventory:
    kind = t.degenerate.kind
    if kind == "p1_eq_p2_interior":
        loops = (
            _loop("loop_plus", "p1", "1", 0.0),
            _loop("loop_minus", "p1", "-1", 0.0),
        )
        return GeodesicInventory("Degenerate", None, (), loops, note="double zero carries both loops")
    if kind == "p1_eq_p2_real_outside":
        pole = "1" if qd.p1.real > 1 else "-1"
        loops = (
            _loop("loop_pole", "p1", pole, 0.0),
            _loop("loop_inf", "p1", "inf", 0.0),
        )
        return GeodesicInventory("Degenerate", None, (), loops, note="double zero carries both loops")
    if kind in ("both_at_poles_same", "both_at_poles_opposite"):
        return GeodesicInventory("Degenerate", None, (), (), note=t.degenerate.detail)
    raise ValueError(f"no geodesic inventory defined for degenerate kind {kind!r}")


def short_s_values(qd: NormalizedQD, tol: float = BOUNDARY_TOL) -> list[tuple[float, str, int]]:
    """Deduplicated rotation parameters carrying short trajectories or loops.

    Each row is (s, kind, multiplicity) with kind "short_trajectory" or
    "trajectory_loop(pole)"; multiplicity counts arcs realized at that s.
    """
    inv = geodesic_inventory(qd, tol)
    rows: list[tuple[float, str, int]] = []

    def push(s, kind):
        for i, (s0, k0, m0) in enumerate(rows):
            if k0 == kind and (abs(s0 - s) <= tol or abs(abs(s0 - s) - 2 * math.pi) <= tol):
                rows[i] = (s0, k0, m0 + 1)
                return
        rows.append((s, kind, 1))

    for g in inv.geodesics:
        push(g.s, "short_trajectory")
    for lo in inv.loops:
        push(lo.s, f"trajectory_loop({lo.pole})")
    rows.sort(key=lambda r: (r[0], r[1]))
    return rows


def inventory_json(inv: GeodesicInventory) -> dict:
    out = {
        "variant": inv.variant,
        "subcase": inv.subcase,
        "geodesics": [
            {"name": g.name, "angle": g.w_angle, "s": g.s} for g in inv.geodesics
        ],
        "loops": [
            {"name": lo.name, "base": lo.base, "pole": lo.pole, "angle": lo.w_angle, "s": lo.s}
            for lo in inv.loops
        ],
        "counts": list(inv.counts),
    }
    if inv.note:
        out["note"] = inv.note
    return out
