import math

import numpy as np
import pytest

from qdgeo.qdclass import NormalizedQD, classify


@pytest.fixture
def rng():
    return np.random.default_rng(20260816)


def sample_two_strip(rng, count, box=2.5):
    """Deterministic rejection sampler for generic two-strip zero pairs."""
    out = []
    while len(out) < count:
        p1 = complex(rng.uniform(-box, box), rng.uniform(0.1, box))
        p2 = complex(rng.uniform(-box, box), rng.uniform(-box, box))
        if abs(p1 - p2) < 0.2 or min(abs(p2 - 1), abs(p2 + 1)) < 0.15:
            continue
        qd = NormalizedQD.from_pair(p1, p2)
        ty = classify(qd)
        if ty.variant != "OneCircleTwoStrips" or ty.boundary_marker:
            continue
        out.append(qd)
    return out


@pytest.fixture
def two_strip_sampler():
    return sample_two_strip


def detour_path(qd: NormalizedQD, z_from: complex, z_to: complex, clearance: float = 0.05):
    """Waypoints steering the straight segment clear of the critical points.

    Any critical point (zero or finite pole, endpoints excluded) closer to
    the segment than ``clearance`` gets a perpendicular waypoint on the far
    side at twice that distance. Returns the waypoint list for F_numeric.
    """
    a, b = complex(z_from), complex(z_to)
    d = b - a
    length = abs(d)
    if length == 0.0:
        return []
    u = d / length
    n = 1j * u
    scale = 1.0 + max(abs(a), abs(b))
    hits = []
    for c in (qd.p1, qd.p2, 1 + 0j, -1 + 0j):
        if abs(c - a) <= 1e-9 * scale or abs(c - b) <= 1e-9 * scale:
            continue
        t = ((c - a) / u).real
        if 0.0 < t < length:
            foot = a + t * u
            off = c - foot
            if abs(off) < clearance:
                side = -n if (off / n).real > 0 else n
                hits.append((t, foot + 2.0 * clearance * side))
    hits.sort(key=lambda h: h[0])
    return [w for _, w in hits]


def ellipse_point(a: float, theta: float) -> complex:
    """Point on the ellipse with foci -1, 1 and semi-major axis a > 1."""
    b = math.sqrt(a * a - 1.0)
    return complex(a * math.cos(theta), b * math.sin(theta))


def hyperbola_point(d: float, t: float) -> complex:
    """Point on the hyperbola branch |z-1| - |z+1| = 2d, -1 < d < 1, d != 0."""
    b = math.sqrt(1.0 - d * d)
    return complex(-d * math.cosh(t), b * math.sinh(t))


@pytest.fixture
def conic_points():
    return ellipse_point, hyperbola_point


@pytest.fixture
def pole_detour():
    return detour_path
