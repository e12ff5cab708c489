"""Numerical trajectory tracing for rational quadratic differentials.

A trajectory of Q(z) dz^2 is a curve along which Q dz^2 stays real and
positive, so its tangent at z makes the angle -arg Q(z) / 2 with the real
axis, up to sign. The tracer integrates that unit direction field in the
Q-metric (unit Q-speed), seeds the correct number of rays at every zero,
and terminates arcs on capture at a critical point, on spiral capture at
a pole, or on exhausting the Q-length budget. The resulting critical
graph is the empirical counterpart to the closed-form classification and
inventory modules, which is exactly what makes it useful as a
cross-check: it knows nothing about the classification.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from qdgeo.polyroots import Poly, RootCountingMeasure, _cluster_roots, derivative, find_roots
from qdgeo.qdclass import NormalizedQD

SEED_OFFSET = 1e-6
CAPTURE_RADIUS = 1e-4
DEFAULT_BUDGET = 50.0
_FAR_FIELD = 1e8
_UNDERFLOW_GUARD = 1e-280
_SPIRAL_WINDING = 4 * math.pi
_SPIRAL_SHRINK = 0.9


@dataclass(frozen=True)
class RationalQD:
    """Quadratic differential numerator/denominator dz^2 with polynomial parts."""

    numerator: Poly
    denominator: Poly

    def __post_init__(self):
        if self.denominator.is_zero:
            raise ValueError("denominator must be nonzero")

    @staticmethod
    def from_zero_pair(p1: complex, p2: complex, tol: float = 1e-9) -> "RationalQD":
        """-(z - p1)(z - p2) / (z^2 - 1)^2 with pole-zero cancellations performed.

        A zero within tol of +1 or -1 is snapped onto the pole and cancels
        one order of it, which is what the degenerate limits produce.
        """
        num_factors: list[complex] = []
        pole_order = {1.0: 2, -1.0: 2}
        for p in (complex(p1), complex(p2)):
            snapped = None
            for pole in (1.0, -1.0):
                if abs(p - pole) <= tol and pole_order[pole] > 0:
                    snapped = pole
                    break
            if snapped is not None:
                pole_order[snapped] -= 1
            else:
                num_factors.append(p)
        num = Poly.from_coeffs([-1])
        for p in num_factors:
            num = num * Poly.from_coeffs([-p, 1])
        den = Poly.from_coeffs([1])
        for pole, order in pole_order.items():
            for _ in range(order):
                den = den * Poly.from_coeffs([-pole, 1])
        return RationalQD(num, den)

    @staticmethod
    def from_normalized(qd: NormalizedQD) -> "RationalQD":
        return RationalQD.from_zero_pair(qd.p1, qd.p2)

    def q(self, z: complex) -> complex:
        return self.numerator(z) / self.denominator(z)

    def rotated(self, s: float) -> "RationalQD":
        """The rotated differential e^{-is} Q dz^2."""
        return RationalQD(self.numerator.scale(cmath.exp(-1j * s)), self.denominator)


@dataclass(frozen=True)
class CriticalPoint:
    id: int
    position: complex
    kind: str  # "zero" or "pole"
    multiplicity: int


@dataclass(frozen=True)
class ArcEnd:
    kind: str  # "critical_point", "pole_spiral", "truncated"
    id: int | None = None


@dataclass
class TrajectoryArc:
    points: list[complex]
    q_length: float
    start: tuple[int, int]  # (vertex id, ray index)
    end: ArcEnd
    im_drift: float = 0.0


@dataclass
class CriticalGraph:
    vertices: list[CriticalPoint]
    arcs: list[TrajectoryArc]

    @property
    def edges(self) -> list[tuple[int, int, float]]:
        """(from vertex, to vertex, q_length) for every arc landing on a vertex."""
        out = []
        for arc in self.arcs:
            if arc.end.kind == "critical_point":
                out.append((arc.start[0], arc.end.id, arc.q_length))
        return out

    def vertex_by_position(self, z: complex, tol: float = 1e-6) -> CriticalPoint | None:
        for v in self.vertices:
            if abs(v.position - z) <= tol * (1.0 + abs(z)):
                return v
        return None


def direction_field(qd: RationalQD, z: complex, prev_dir: complex | None = None) -> complex:
    """Unit tangent of the trajectory through z, branch-matched to prev_dir."""
    q = qd.q(z)
    if abs(q) < _UNDERFLOW_GUARD:
        raise ValueError(f"differential vanishes at {z}; direction undefined")
    d = cmath.exp(-0.5j * cmath.phase(q))
    if prev_dir is not None and d.real * prev_dir.real + d.imag * prev_dir.imag < 0:
        d = -d
    return d


def _critical_points(qd: RationalQD) -> list[CriticalPoint]:
    pts: list[CriticalPoint] = []
    next_id = 0
    if qd.numerator.degree >= 1:
        zeros = find_roots(qd.numerator).as_array()
        for center, mult in _cluster_roots(zeros):
            pts.append(CriticalPoint(next_id, center, "zero", mult))
            next_id += 1
    if qd.denominator.degree >= 1:
        poles = find_roots(qd.denominator).as_array()
        for center, mult in _cluster_roots(poles):
            pts.append(CriticalPoint(next_id, center, "pole", mult))
            next_id += 1
    for z in pts:
        if z.kind != "zero":
            continue
        for p in pts:
            if p.kind == "pole" and abs(z.position - p.position) < 1e-8 * (1 + abs(p.position)):
                raise ValueError("numerator and denominator share a root; reduce first")
    return pts


def _ray_angles(qd: RationalQD, cp: CriticalPoint) -> list[float]:
    """Departure angles: a point of order k carries k + 2 rays.

    Zeros have order = multiplicity; a simple pole has order -1 and hence
    exactly one incoming ray; higher-order poles carry none and are
    handled purely by capture. The angles solve
    arg(lead) + (k + 2) phi = 0 mod 2 pi where lead is the leading local
    coefficient of Q.
    """
    if cp.kind == "zero":
        m = cp.multiplicity
        num = qd.numerator
        fact = 1.0
        for k in range(1, m + 1):
            num = derivative(num)
            fact *= k
        lead = num(cp.position) / fact / qd.denominator(cp.position)
        rays = m + 2
    else:
        if cp.multiplicity != 1:
            return []
        den = derivative(qd.denominator)
        lead = qd.numerator(cp.position) / den(cp.position)
        rays = 1
    base = -cmath.phase(lead)
    return [(base + 2 * math.pi * k) / rays for k in range(rays)]


class _Tracer:
    def __init__(self, qd: RationalQD, points: list[CriticalPoint],
                 budget: float, eps_capture: float):
        self.qd = qd
        self.points = points
        self.budget = budget
        self.eps_capture = eps_capture
        self.poles = [p for p in points if p.kind == "pole"]

    def speed_dir(self, z: complex, prev: complex) -> complex:
        d = direction_field(self.qd, z, prev)
        return d / math.sqrt(abs(self.qd.q(z)))

    def nearest_critical(self, z: complex, skip: int | None = None):
        best, bd = None, float("inf")
        for p in self.points:
            if p.id == skip:
                continue
            d = abs(z - p.position)
            if d < bd:
                best, bd = p, d
        return best, bd

    def run(self, z0: complex, d0: complex, start: tuple[int, int],
            start_vertex: int | None) -> TrajectoryArc:
        z = z0
        prev = d0
        t = 0.0
        h = 1e-4
        pts = [z]
        qlen = 0.0
        im_accum = 0j
        im_drift = 0.0
        sq_prev = None
        armed = start_vertex is None
        wind = {p.id: 0.0 for p in self.poles}
        wind_r0 = {p.id: abs(z - p.position) for p in self.poles}
        last_r = dict(wind_r0)
        end = ArcEnd("truncated")

        def sqrtq(w, ref):
            s = cmath.sqrt(self.qd.q(w))
            if ref is not None and abs(s - ref) > abs(s + ref):
                s = -s
            return s

        while t < self.budget:
            # Bogacki-Shampine 3(2) embedded pair on dz/dt = dir / |Q|^(1/2).
            try:
                k1 = self.speed_dir(z, prev)
                k2 = self.speed_dir(z + 0.5 * h * k1, prev)
                k3 = self.speed_dir(z + 0.75 * h * k2, prev)
                z_new = z + h * (2 * k1 + 3 * k2 + 4 * k3) / 9.0
                k4 = self.speed_dir(z_new, prev)
            except (ValueError, ZeroDivisionError):
                break
            err = abs(h * (-5 * k1 / 72 + k2 / 12 + k3 / 9 - k4 / 8))
            tol = 1e-10 + 1e-8 * abs(z)
            if err > tol and h > 1e-12:
                h = max(1e-12, 0.8 * h * (tol / err) ** (1 / 3))
                continue
            # Clip steps near critical points so capture cannot be jumped over.
            _, dist = self.nearest_critical(z)
            max_adv = max(0.5 * dist, 0.25 * self.eps_capture)
            if abs(z_new - z) > max_adv:
                h *= 0.5
                if h < 1e-13:
                    break
                continue

            seg = z_new - z
            ref = sq_prev if sq_prev is not None else sqrtq(z, (k1 / abs(k1)).conjugate())
            sq_mid = sqrtq(z + 0.5 * seg, ref)
            sq_new = sqrtq(z_new, sq_mid)
            # Simpson along the chord; reject steps that would breach the
            # trajectory-condition drift allowance, since polyline fidelity
            # is what downstream support checks consume.
            step_int = (ref + 4 * sq_mid + sq_new) * seg / 6.0
            step_len = (abs(ref) + 4 * abs(sq_mid) + abs(sq_new)) * abs(seg) / 6.0
            if abs(step_int.imag) > 2.5e-7 * max(step_len, 1e-12) and h > 1e-11:
                h *= 0.5
                continue
            im_accum += step_int
            qlen += step_len
            im_drift = max(im_drift, abs(im_accum.imag))
            sq_prev = sq_new

            t += h
            z = z_new
            prev = k4
            pts.append(z)
            if err > 0:
                h = min(1.0, 0.9 * h * (tol / err) ** (1 / 3))

            if abs(z) > _FAR_FIELD:
                end = ArcEnd("truncated")
                break

            cp, dist = self.nearest_critical(z)
            if not armed and (cp is None or cp.id != start_vertex or dist > 2 * self.eps_capture):
                armed = True
            if cp is not None and dist < self.eps_capture and (armed or cp.id != start_vertex):
                # A pole reached with more than half a turn of monotone
                # winding is a logarithmic spiral whose proximity capture
                # simply beat the winding threshold; radial approaches
                # straighten out and wind a vanishing amount.
                if cp.kind == "pole" and abs(wind.get(cp.id, 0.0)) > math.pi:
                    end = ArcEnd("pole_spiral", cp.id)
                else:
                    end = ArcEnd("critical_point", cp.id)
                break

            caught = False
            for p in self.poles:
                r = abs(z - p.position)
                dphi = cmath.phase((z - p.position) / (pts[-2] - p.position))
                if r <= last_r[p.id] * (1 + 1e-6):
                    wind[p.id] += dphi
                else:
                    wind[p.id] = 0.0
                    wind_r0[p.id] = r
                last_r[p.id] = r
                if abs(wind[p.id]) > _SPIRAL_WINDING and r < _SPIRAL_SHRINK * wind_r0[p.id]:
                    end = ArcEnd("pole_spiral", p.id)
                    caught = True
                    break
            if caught:
                break
        else:
            end = ArcEnd("truncated")

        return TrajectoryArc(points=pts, q_length=qlen, start=start, end=end, im_drift=im_drift)


def trace_critical(
    qd: RationalQD,
    budget: float = DEFAULT_BUDGET,
    eps_seed: float = SEED_OFFSET,
    eps_capture: float = CAPTURE_RADIUS,
) -> CriticalGraph:
    """Critical graph: all rays out of all zeros, integrated to termination."""
    points = _critical_points(qd)
    tracer = _Tracer(qd, points, budget, eps_capture)
    arcs = []
    for cp in points:
        scale = eps_seed * (1.0 + abs(cp.position))
        for ray_index, ang in enumerate(_ray_angles(qd, cp)):
            d = cmath.exp(1j * ang)
            z0 = cp.position + scale * d
            arcs.append(tracer.run(z0, d, (cp.id, ray_index), cp.id))
    return CriticalGraph(vertices=points, arcs=arcs)


def q_length(arc: TrajectoryArc) -> float:
    return arc.q_length


def closed_trajectory_probe(qd: RationalQD, seeds, budget: float = DEFAULT_BUDGET) -> list[dict]:
    """Heuristic search for closed trajectories from non-critical seeds.

    Advisory only: a seed whose orbit returns within the capture radius of
    its start with aligned direction is reported as a closed-trajectory
    candidate with its approximate Q-period.
    """
    points = _critical_points(qd)
    tracer = _Tracer(qd, points, budget, CAPTURE_RADIUS)
    report = []
    for seed in seeds:
        seed = complex(seed)
        try:
            d0 = direction_field(qd, seed)
        except ValueError:
            continue
        z = seed
        prev = d0
        t = 0.0
        h = 1e-3
        closed = None
        while t < budget:
            try:
                k1 = tracer.speed_dir(z, prev)
                k2 = tracer.speed_dir(z + 0.5 * h * k1, prev)
                k3 = tracer.speed_dir(z + 0.75 * h * k2, prev)
                z_new = z + h * (2 * k1 + 3 * k2 + 4 * k3) / 9.0
                k4 = tracer.speed_dir(z_new, prev)
            except (ValueError, ZeroDivisionError):
                break
            err = abs(h * (-5 * k1 / 72 + k2 / 12 + k3 / 9 - k4 / 8))
            tol = 1e-10 + 1e-8 * abs(z)
            if err > tol and h > 1e-12:
                h = max(1e-12, 0.8 * h * (tol / err) ** (1 / 3))
                continue
            _, dist = tracer.nearest_critical(z_new)
            if dist < CAPTURE_RADIUS:
                break
            t += h
            z = z_new
            prev = k4
            if err > 0:
                h = min(1.0, 0.9 * h * (tol / err) ** (1 / 3))
            if t > 0.5 and abs(z - seed) < CAPTURE_RADIUS:
                cur = direction_field(qd, z, prev)
                if cur.real * d0.real + cur.imag * d0.imag > 0.9:
                    closed = t
                    break
        if closed is not None:
            report.append({"seed": seed, "q_period": closed})
    return report


def support_distance(mu: RootCountingMeasure, graph: CriticalGraph) -> dict:
    """Quantiles of root-to-graph distances (distance to nearest polyline)."""
    segments = []
    for arc in graph.arcs:
        p = np.asarray(arc.points, dtype=complex)
        if len(p) >= 2:
            segments.append((p[:-1], p[1:]))
    if not segments:
        raise ValueError("critical graph has no traced arcs")
    a = np.concatenate([s[0] for s in segments])
    b = np.concatenate([s[1] for s in segments])
    ab = b - a
    ab2 = np.abs(ab) ** 2
    ab2[ab2 == 0] = 1.0
    dists = np.empty(mu.n)
    for i, r in enumerate(mu.roots):
        tproj = np.clip(((r - a) * np.conj(ab)).real / ab2, 0.0, 1.0)
        dists[i] = np.min(np.abs(r - (a + tproj * ab)))
    qs = np.quantile(dists, [0.0, 0.5, 0.95, 1.0])
    return {
        "n_roots": mu.n,
        "min": float(qs[0]),
        "median": float(qs[1]),
        "p95": float(qs[2]),
        "max": float(qs[3]),
    }


def graph_svg(graph: CriticalGraph, size: int = 640) -> str:
    """Standalone SVG of the critical graph with zeros filled and poles open."""
    xs, ys = [], []
    for v in graph.vertices:
        xs.append(v.position.real)
        ys.append(v.position.imag)
    for arc in graph.arcs:
        for z in arc.points[:: max(1, len(arc.points) // 512)]:
            xs.append(z.real)
            ys.append(z.imag)
    lo_x, hi_x = min(xs), max(xs)
    lo_y, hi_y = min(ys), max(ys)
    span = max(hi_x - lo_x, hi_y - lo_y, 1e-9)
    pad = 0.08 * span
    lo_x, lo_y = lo_x - pad, lo_y - pad
    span += 2 * pad
    scale = size / span

    def sx(x):
        return (x - lo_x) * scale

    def sy(y):
        return size - (y - lo_y) * scale

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
    ]
    for i, arc in enumerate(graph.arcs):
        step = max(1, len(arc.points) // 1024)
        pts = arc.points[::step]
        if pts[-1] != arc.points[-1]:
            pts.append(arc.points[-1])
        d = "M " + " L ".join(f"{sx(z.real):.3f} {sy(z.imag):.3f}" for z in pts)
        out.append(f'<path d="{d}" fill="none" stroke="#1f6f8b" stroke-width="1.2"/>')
    for v in graph.vertices:
        cx, cy = sx(v.position.real), sy(v.position.imag)
        if v.kind == "zero":
            out.append(f'<circle cx="{cx:.3f}" cy="{cy:.3f}" r="4" fill="#111111"/>')
        else:
            out.append(
                f'<circle cx="{cx:.3f}" cy="{cy:.3f}" r="4" fill="white" '
                f'stroke="#c0392b" stroke-width="1.8"/>'
            )
    out.append("</svg>")
    return "\n".join(out)


def arc_winding(arc: TrajectoryArc, point: complex) -> float:
    """Total signed argument swept by the arc around a point, in radians."""
    total = 0.0
    prev = arc.points[0] - point
    for z in arc.points[1:]:
        cur = z - point
        if prev != 0 and cur != 0:
            total += cmath.phase(cur / prev)
        prev = cur
    return total


def arcs_csv(graph: CriticalGraph) -> str:
    """Polyline CSV: arc id, re, im."""
    rows = ["arc,re,im"]
    for i, arc in enumerate(graph.arcs):
        for z in arc.points:
            rows.append(f"{i},{z.real:.17g},{z.imag:.17g}")
    return "\n".join(rows) + "\n"
