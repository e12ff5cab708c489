"""Command-line front end with reproducible file outputs.

Every command prints a JSON document (top-level "schema": 1) to stdout
and optionally writes --json / --csv / --svg artifacts. Floating-point
values are always rendered with 17 significant digits so identical
invocations produce identical bytes. Exit codes: 0 success, 1 numerical
failure inside a module (the error class name is reported), 2 usage.
"""

from __future__ import annotations

import argparse
import math
import multiprocessing
import re
import sys

from qdgeo.geodesy import (
    StripDiagram,
    geodesic_inventory,
    inventory_json,
    short_s_values,
    strip_diagram,
)
from qdgeo.jacobi import JacobiParams, ParamSequence, root_cloud_sequence, root_measure
from qdgeo.limitfield import (
    DegenerateQD,
    LimitParams,
    eq12_residual,
    limit_configuration,
    limit_discriminant,
)
from qdgeo.motherbody import (
    QuadraticCauchyEquation,
    branch_points,
    dk0_connectivity,
    pole_residues,
    sufficiency_report,
)
from qdgeo.polyroots import Poly, roots_csv_rows, roots_json_pairs
from qdgeo.qdclass import (
    DegenerateConfig,
    NormalizedQD,
    classification_json,
    classify,
    spiral_behavior,
)
from qdgeo.tracer import RationalQD, arcs_csv, graph_svg, trace_critical
from qdgeo import exsolve


# ---------------------------------------------------------------------------
# flag parsing and deterministic emission


def parse_complex(text: str) -> complex:
    """Shell-safe complex grammar: 'a+bi' with optional parts, or 're,im'."""
    s = text.strip()
    if "," in s:
        re_s, im_s = s.split(",", 1)
        return complex(float(re_s), float(im_s))
    try:
        value = complex(s.replace("i", "j").replace("I", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse complex number {text!r}")
    return value


def parse_coeff_list(text: str) -> list[complex]:
    """Semicolon-separated ascending coefficients, each in complex grammar."""
    items = [t for t in text.split(";") if t.strip()]
    if not items:
        raise argparse.ArgumentTypeError("empty coefficient list")
    return [parse_complex(t) for t in items]


def parse_degrees(text: str) -> list[int]:
    try:
        out = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse degree list {text!r}")
    if not out or any(n < 1 for n in out):
        raise argparse.ArgumentTypeError("degrees must be positive integers")
    return out


def parse_grid(text: str) -> tuple[float, float, float, float]:
    """Rectangle grammar 'xlo..xhi x ylo..yhi' (no spaces required)."""
    try:
        xs, ys = text.split("x", 1)
        xlo, xhi = (float(v) for v in xs.split("..", 1))
        ylo, yhi = (float(v) for v in ys.split("..", 1))
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse grid {text!r}")
    if not (xlo < xhi and ylo < yhi):
        raise argparse.ArgumentTypeError("grid bounds must satisfy lo < hi")
    return xlo, xhi, ylo, yhi


def _g(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError("non-finite value in output")
    return "%.17g" % x


def emit_json(obj, indent: int = 0) -> str:
    """Fixed-format JSON: floats at 17 significant digits, complex as [re, im]."""
    pad = " " * indent
    inner = " " * (indent + 2)
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _g(obj)
    if isinstance(obj, complex):
        return f"[{_g(obj.real)}, {_g(obj.imag)}]"
    if isinstance(obj, str):
        out = obj.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")
        return f'"{out}"'
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        rows = [f'{inner}"{k}": {emit_json(v, indent + 2)}' for k, v in obj.items()]
        return "{\n" + ",\n".join(rows) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        rows = [inner + emit_json(v, indent + 2) for v in obj]
        return "[\n" + ",\n".join(rows) + "\n" + pad + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def write_text(path: str, text: str) -> None:
    with open(path, "w", newline="\n") as f:
        f.write(text)


def _pair(z: complex) -> list[float]:
    return [z.real, z.imag]


# ---------------------------------------------------------------------------
# command handlers; each returns the JSON document and may write artifacts


def cmd_jacobi_roots(args) -> dict:
    if args.n is not None:
        if args.n < 1:
            raise UsageError("--n must be a positive integer")
        params = JacobiParams(args.n, args.alpha, args.beta)
        mu = root_measure(params, tol=args.tol)
        doc = {
            "schema": 1,
            "mode": "single",
            "n": args.n,
            "alpha": _pair(args.alpha),
            "beta": _pair(args.beta),
            "roots": roots_json_pairs(mu),
        }
        if args.csv:
            rows = ["re,im"] + [f"{_g(re)},{_g(im)}" for re, im in roots_csv_rows(mu)]
            write_text(args.csv, "\n".join(rows) + "\n")
        return doc
    if args.degrees is None:
        raise UsageError("need either --n (with --alpha/--beta) or --A/--B with --degrees")
    seq = ParamSequence(args.A, args.B)
    clouds = root_cloud_sequence(seq, args.degrees, tol=args.tol)
    doc = {
        "schema": 1,
        "mode": "sequence",
        "A": _pair(args.A),
        "B": _pair(args.B),
        "degrees": list(args.degrees),
        "clouds": [
            {"n": n, "roots": roots_json_pairs(mu)}
            for n, mu in zip(args.degrees, clouds)
        ],
    }
    if args.csv:
        rows = ["n,re,im"]
        for n, mu in zip(args.degrees, clouds):
            rows += [f"{n},{_g(re)},{_g(im)}" for re, im in roots_csv_rows(mu)]
        write_text(args.csv, "\n".join(rows) + "\n")
    return doc


def _configuration_doc(cfg) -> dict:
    if isinstance(cfg, NormalizedQD):
        return {
            "kind": "differential",
            "p1": _pair(cfg.p1),
            "p2": _pair(cfg.p2),
            "variant": classify(cfg).variant,
        }
    if isinstance(cfg, DegenerateQD):
        return {
            "kind": "degenerate_differential",
            "detail": cfg.detail,
            "numerator_coeffs": [_pair(c) for c in cfg.numerator.coeffs],
        }
    if isinstance(cfg, DegenerateConfig):
        return {"kind": cfg.kind, "pole": cfg.pole, "sub": cfg.sub, "detail": cfg.detail}
    raise TypeError(f"unexpected configuration {type(cfg).__name__}")


def cmd_limit_check(args) -> dict:
    lp = LimitParams(args.A, args.B)
    disc = limit_discriminant(lp)
    doc = {
        "schema": 1,
        "A": _pair(args.A),
        "B": _pair(args.B),
        "discriminant_coeffs": [_pair(c) for c in disc.coeffs],
        "configuration": _configuration_doc(limit_configuration(lp)),
    }
    if args.degrees:
        probes = [2.0 * complex(math.cos(a), math.sin(a))
                  for a in (2 * math.pi * k / 64 for k in range(64))]
        seq = ParamSequence(args.A, args.B)
        decay = []
        for n, mu in zip(args.degrees, root_cloud_sequence(seq, args.degrees)):
            stats = eq12_residual(lp, mu, probes)
            decay.append({"n": n, "min": stats["min"], "median": stats["median"],
                          "max": stats["max"]})
        doc["residual_decay"] = decay
    return doc


def cmd_classify(args) -> dict:
    qd = NormalizedQD.from_pair(args.p1, args.p2)
    doc = {"schema": 1}
    doc.update(classification_json(qd, tol=args.tol))
    if doc["variant"] == "OneCircleTwoStrips":
        doc["subcase"] = strip_diagram(qd, tol=args.tol).subcase
    return doc


def cmd_spiral(args) -> dict:
    qd = NormalizedQD.from_pair(args.p1, args.p2)
    plus, minus = spiral_behavior(qd)
    return {
        "schema": 1,
        "p1": _pair(qd.p1),
        "p2": _pair(qd.p2),
        "plus": plus,
        "minus": minus,
    }


def _strip_svg(sd: StripDiagram, size: int = 640) -> str:
    """Period rectangle with the slit corner, top corner, and u-tick marks."""
    xs = [0.0, 1.0, sd.x2, sd.x2prime, sd.u1, sd.u2, sd.u3, sd.u4]
    lo, hi = min(xs), max(xs)
    pad = 0.06 * (hi - lo + 1.0)
    lo, hi = lo - pad, hi + pad
    w = float(size)
    scale = w / (hi - lo)
    # keep the strip legible even when distant u marks stretch the x-range
    scale_y = max(scale, 140.0 / sd.h)
    hgt = sd.h * scale_y + 40.0

    def sx(x: float) -> float:
        return (x - lo) * scale

    def sy(y: float) -> float:
        return hgt - 20.0 - y * scale_y

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0f}" '
        f'height="{hgt:.0f}" viewBox="0 0 {w:.0f} {hgt:.0f}">',
        f'<rect x="0" y="0" width="{w:.0f}" height="{hgt:.0f}" fill="white"/>',
        f'<rect x="{sx(0):.3f}" y="{sy(sd.h):.3f}" width="{scale:.3f}" '
        f'height="{(sd.h * scale_y):.3f}" fill="none" stroke="#333333" stroke-width="1.5"/>',
    ]
    # slit along the lower-strip ceiling, drawn from the cell edge to its corner
    out.append(
        f'<line x1="{sx(0):.3f}" y1="{sy(sd.h1):.3f}" x2="{sx(sd.x2):.3f}" '
        f'y2="{sy(sd.h1):.3f}" stroke="#c0392b" stroke-width="2"/>'
    )
    # corner-to-corner sight lines that generate the u marks
    for x0, corner, u in ((0.0, sd.x2 - 1.0, sd.u1), (1.0, sd.x2, sd.u4),
                          (0.0, sd.x2, sd.u3), (1.0, sd.x2 + 1.0, sd.u2)):
        out.append(
            f'<line x1="{sx(x0):.3f}" y1="{sy(0.0):.3f}" x2="{sx(u):.3f}" '
            f'y2="{sy(sd.h):.3f}" stroke="#888888" stroke-width="0.8" '
            f'stroke-dasharray="4,3"/>'
        )
        _ = corner
    for name, u in (("u1", sd.u1), ("u2", sd.u2), ("u3", sd.u3), ("u4", sd.u4)):
        out.append(
            f'<line x1="{sx(u):.3f}" y1="{sy(sd.h) - 6:.3f}" x2="{sx(u):.3f}" '
            f'y2="{sy(sd.h) + 6:.3f}" stroke="#111111" stroke-width="1.5"/>'
        )
        out.append(
            f'<text x="{sx(u):.3f}" y="{sy(sd.h) - 10:.3f}" font-size="12" '
            f'text-anchor="middle" font-family="monospace">{name}</text>'
        )
    out.append(
        f'<circle cx="{sx(sd.x2):.3f}" cy="{sy(sd.h1):.3f}" r="4" fill="#c0392b"/>'
    )
    out.append(
        f'<circle cx="{sx(sd.x2prime):.3f}" cy="{sy(sd.h):.3f}" r="4" fill="#2460a7"/>'
    )
    out.append(
        f'<text x="{sx(sd.x2prime):.3f}" y="{sy(sd.h) + 18:.3f}" font-size="12" '
        f'text-anchor="middle" font-family="monospace">x2\'</text>'
    )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def cmd_diagram(args) -> dict:
    qd = NormalizedQD.from_pair(args.p1, args.p2)
    sd = strip_diagram(qd, tol=args.tol)
    doc = {
        "schema": 1,
        "p1": _pair(qd.p1),
        "p2": _pair(qd.p2),
        "x2": sd.x2,
        "h1": sd.h1,
        "x2prime": sd.x2prime,
        "h": sd.h,
        "u": [sd.u1, sd.u2, sd.u3, sd.u4],
        "subcase": sd.subcase,
        "boundary_marker": sd.boundary_marker,
        "mirrored": sd.mirrored,
    }
    if args.svg:
        write_text(args.svg, _strip_svg(sd))
    return doc


def cmd_geodesics(args) -> dict:
    qd = NormalizedQD.from_pair(args.p1, args.p2)
    doc = {"schema": 1}
    doc.update(inventory_json(geodesic_inventory(qd, tol=args.tol)))
    return doc


def cmd_short_s(args) -> dict:
    qd = NormalizedQD.from_pair(args.p1, args.p2)
    values = short_s_values(qd, tol=args.tol)
    return {
        "schema": 1,
        "p1": _pair(qd.p1),
        "p2": _pair(qd.p2),
        "values": [
            {"s": s, "kind": kind, "multiplicity": mult} for s, kind, mult in values
        ],
    }


def cmd_trace(args) -> dict:
    rq = RationalQD.from_zero_pair(args.p1, args.p2)
    graph = trace_critical(rq, budget=args.budget)
    doc = {
        "schema": 1,
        "p1": _pair(args.p1),
        "p2": _pair(args.p2),
        "budget": args.budget,
        "vertices": [
            {"id": v.id, "kind": v.kind, "position": _pair(v.position),
             "multiplicity": v.multiplicity}
            for v in graph.vertices
        ],
        "arcs": [
            {
                "start_vertex": arc.start[0],
                "ray": arc.start[1],
                "end_kind": arc.end.kind,
                "end_vertex": arc.end.id,
                "q_length": arc.q_length,
                "im_drift": arc.im_drift,
                "n_points": len(arc.points),
            }
            for arc in graph.arcs
        ],
    }
    if args.svg:
        write_text(args.svg, graph_svg(graph))
    if args.csv:
        write_text(args.csv, arcs_csv(graph))
    return doc


def _limit_triple(A: complex, B: complex) -> QuadraticCauchyEquation:
    return QuadraticCauchyEquation(
        P=Poly.from_coeffs([1, 0, -1]),
        Q=Poly.from_coeffs([-(A - B), -(A + B)]),
        R=Poly.from_coeffs([1 + A + B]),
    )


def cmd_motherbody(args) -> dict:
    if args.P is not None or args.Q is not None or args.R is not None:
        if not (args.P and args.Q and args.R):
            raise UsageError("--P, --Q, --R must be given together")
        eq = QuadraticCauchyEquation(
            P=Poly.from_coeffs(args.P),
            Q=Poly.from_coeffs(args.Q),
            R=Poly.from_coeffs(args.R),
        )
    elif args.A is not None and args.B is not None:
        eq = _limit_triple(args.A, args.B)
    else:
        raise UsageError("need --P/--Q/--R coefficient lists or the --A/--B shortcut")
    bp = branch_points(eq)
    doc = {
        "schema": 1,
        "n": eq.n,
        "branch_points": [_pair(z) for z in bp.points],
        "infinity_multiplicity": bp.infinity_multiplicity,
        "coprime_warning": bp.coprime_warning,
        "residues": [{"pole": _pair(z), "residue": _pair(r)} for z, r in pole_residues(eq)],
        "sufficiency": sufficiency_report(eq),
    }
    if args.budget > 0:
        doc["dk0"] = dk0_connectivity(eq, budget=args.budget)
    else:
        doc["dk0"] = None
    return doc


def cmd_exsolve(args) -> dict:
    if args.alpha is not None or args.beta is not None:
        a = args.alpha if args.alpha is not None else 0j
        b = args.beta if args.beta is not None else 0j
        if a.imag or b.imag:
            raise UsageError("the classical embedding takes real --alpha/--beta")
        T = exsolve.jacobi_pencil(a.real, b.real)
    elif args.Q2 is not None:
        if args.Q1 is None or args.P1 is None or args.Q0 is None:
            raise UsageError("--Q2 requires --Q1, --P1, --Q0")
        T = exsolve.OperatorPencil(
            Q2=Poly.from_coeffs(args.Q2),
            Q1=Poly.from_coeffs(args.Q1),
            P1=Poly.from_coeffs(args.P1),
            Q0=args.Q0,
            p=args.scalar_p,
            q=args.scalar_q,
        )
    else:
        raise UsageError("need --alpha/--beta (classical embedding) or --Q2/--Q1/--P1/--Q0")
    check = exsolve.generic_type_check(T)
    doc = {
        "schema": 1,
        "char_poly": [_pair(c) for c in exsolve.characteristic_poly(T)],
        "char_roots": [_pair(r) for r in exsolve.characteristic_roots(T)],
        "generic": check.generic,
        "rho": check.rho,
    }
    if args.n is not None:
        pair = exsolve.eigenvalues_for_degree(T, args.n)
        y = exsolve.eigenpolynomial(T, args.n, which=args.which)
        doc.update(
            n=args.n,
            lam1=_pair(pair.lam1),
            lam2=_pair(pair.lam2),
            coincident=pair.coincident,
            which=args.which,
            eigen_coeffs=[_pair(c) for c in y.coeffs],
        )
    elif args.degrees:
        records = exsolve.gen_cauchy_residual(T, args.degrees, which=args.which)
        doc["which"] = args.which
        doc["records"] = [
            {
                "n": r["n"],
                "lambda": r["lambda"],
                "max_root_mod": r["max_root_mod"],
                "min_residual": r["min_residual"],
                "median_residual": r["median_residual"],
                "max_residual": r["max_residual"],
            }
            for r in records
        ]
        if args.csv:
            write_text(args.csv, exsolve.residual_csv(records))
    else:
        raise UsageError("need --n (one eigenpolynomial) or --degrees (residual table)")
    return doc


_SWEEP_PALETTE = {
    # conic sectors of the second zero (the generic type regions)
    "E1+": "#e8f1fa",
    "E1-": "#9dc6e8",
    "Em1+": "#f9e79f",
    "Em1-": "#f5b041",
    "L+": "#52be80",
    "L-": "#1e8449",
    "H+": "#c39bd3",
    "H-": "#7d3c98",
    "l1+": "#e74c3c",
    "l1-": "#943126",
    "lm1+": "#5dade2",
    "lm1-": "#21618c",
    "conj": "#111111",
    # variant fallback for real first zeros, where no sector is defined
    "ThreeCircles_a": "#e8f1fa",
    "ThreeCircles_b": "#9dc6e8",
    "ThreeCircles_c": "#4a90d9",
    "TwoCircles": "#2ecc71",
    "OneCircleOneStrip_a": "#f5b041",
    "OneCircleOneStrip_b1": "#d68910",
    "OneCircleTwoStrips": "#af7ac5",
    "Degenerate": "#333333",
}
_SWEEP_FAIL_COLOR = "#ff00aa"


def _sweep_cell(task):
    """(label, boundary marker, error name) for one grid point.

    The label is the conic sector of the second zero when one is defined
    (complex first zero), the variant otherwise, so a sweep around a
    fixed complex zero paints the type-region map.
    """
    p1, re, im = task
    try:
        t = classify(NormalizedQD.from_pair(p1, complex(re, im)))
        return (t.region or t.variant, t.boundary_marker, None)
    except Exception as e:  # noqa: BLE001 - partial sweeps report per-cell failures
        return (None, False, type(e).__name__)


def cmd_sweep(args) -> dict:
    xlo, xhi, ylo, yhi = args.grid
    res = args.res
    if res < 2:
        raise UsageError("--res must be at least 2")
    dx = (xhi - xlo) / res
    dy = (yhi - ylo) / res
    tasks = []
    for j in range(res):
        im = ylo + (j + 0.5) * dy
        for i in range(res):
            tasks.append((args.p1, xlo + (i + 0.5) * dx, im))
    if args.workers > 1:
        with multiprocessing.Pool(args.workers) as pool:
            cells = pool.map(_sweep_cell, tasks, chunksize=max(1, len(tasks) // (8 * args.workers)))
    else:
        cells = [_sweep_cell(t) for t in tasks]
    counts: dict[str, int] = {}
    failures = []
    for (label, _marked, err), (_, re, im) in zip(cells, tasks):
        key = label if err is None else f"error:{err}"
        counts[key] = counts.get(key, 0) + 1
        if err is not None:
            failures.append({"re": re, "im": im, "error": err})
    doc = {
        "schema": 1,
        "p1": _pair(args.p1),
        "grid": {"xlo": xlo, "xhi": xhi, "ylo": ylo, "yhi": yhi},
        "res": res,
        "seed": args.seed,
        "counts": {k: counts[k] for k in sorted(counts)},
        "failures": failures,
    }
    if args.csv:
        rows = ["re,im,variant,boundary"]
        for (label, marked, err), (_, re, im) in zip(cells, tasks):
            tag = label if err is None else f"error:{err}"
            rows.append(f"{_g(re)},{_g(im)},{tag},{int(marked)}")
        write_text(args.csv, "\n".join(rows) + "\n")
    if args.svg:
        size = 640.0
        cw = size / res
        out = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{size:.0f}" '
            f'height="{size:.0f}" viewBox="0 0 {size:.0f} {size:.0f}">'
        ]
        for (label, marked, err), (_, re, im) in zip(cells, tasks):
            color = _SWEEP_FAIL_COLOR if err else _SWEEP_PALETTE.get(label, "#bbbbbb")
            i = int(round((re - xlo) / dx - 0.5))
            j = int(round((im - ylo) / dy - 0.5))
            x = i * cw
            y = size - (j + 1) * cw
            extra = ' stroke="#000000" stroke-width="0.6"' if marked else ""
            out.append(
                f'<rect x="{x:.3f}" y="{y:.3f}" width="{cw:.3f}" '
                f'height="{cw:.3f}" fill="{color}"{extra}/>'
            )
        out.append("</svg>")
        write_text(args.svg, "\n".join(out) + "\n")
    return doc


# ---------------------------------------------------------------------------
# parser assembly


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qdgeo",
        description="Root asymptotics and critical geodesics of pole-pair quadratic differentials.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    # Values like -0.5+0.5i start with a dash; widen the pattern argparse
    # uses to tell negative-number values apart from option flags.
    minus_value = re.compile(r"^-(?:[\d.]|[ijIJ]$)")
    parser._negative_number_matcher = minus_value

    def add(name, handler, help_text, **flags):
        p = sub.add_parser(name, help=help_text)
        p._negative_number_matcher = minus_value
        p.set_defaults(handler=handler)
        if flags.get("p1"):
            p.add_argument("--p1", type=parse_complex, required=True,
                           help="first zero, e.g. '2i' or '-0.5+0.5i' or 're,im'")
        if flags.get("p2"):
            p.add_argument("--p2", type=parse_complex, required=True, help="second zero")
        if flags.get("AB"):
            p.add_argument("--A", type=parse_complex, default=None)
            p.add_argument("--B", type=parse_complex, default=None)
        p.add_argument("--tol", type=float, default=1e-9)
        p.add_argument("--seed", type=int, default=0,
                       help="recorded for reproducibility of randomized sweeps")
        p.add_argument("--json", default=None, help="also write the JSON document here")
        if flags.get("csv"):
            p.add_argument("--csv", default=None)
        if flags.get("svg"):
            p.add_argument("--svg", default=None)
        return p

    p = add("jacobi-roots", cmd_jacobi_roots, "root clouds of the classical polynomials",
            AB=True, csv=True)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--alpha", type=parse_complex, default=0j)
    p.add_argument("--beta", type=parse_complex, default=0j)
    p.add_argument("--degrees", type=parse_degrees, default=None)

    p = add("limit-check", cmd_limit_check, "limit quadratic, discriminant, configuration",
            AB=True)
    p.add_argument("--degrees", type=parse_degrees, default=None,
                   help="also compute the residual-decay table at these degrees")

    add("classify", cmd_classify, "topological type of the zero pair", p1=True, p2=True)
    add("spiral", cmd_spiral, "local trajectory mode at each pole", p1=True, p2=True)
    add("diagram", cmd_diagram, "flattened two-strip diagram with u-marks",
        p1=True, p2=True, svg=True)
    add("geodesics", cmd_geodesics, "finite critical geodesics and trajectory loops",
        p1=True, p2=True)
    add("short-s", cmd_short_s, "rotation angles with a short trajectory or loop",
        p1=True, p2=True)

    p = add("trace", cmd_trace, "numerically traced critical graph",
            p1=True, p2=True, csv=True, svg=True)
    p.add_argument("--budget", type=float, default=50.0)

    p = add("motherbody", cmd_motherbody, "algebraic-equation diagnostics", AB=True)
    p.add_argument("--P", type=parse_coeff_list, default=None,
                   help="ascending coefficients, semicolon separated")
    p.add_argument("--Q", type=parse_coeff_list, default=None)
    p.add_argument("--R", type=parse_coeff_list, default=None)
    p.add_argument("--budget", type=float, default=50.0,
                   help="trajectory budget for connectivity; 0 skips it")

    p = add("exsolve", cmd_exsolve, "operator-pencil eigenvalues and residual tables",
            csv=True)
    p.add_argument("--alpha", type=parse_complex, default=None)
    p.add_argument("--beta", type=parse_complex, default=None)
    p.add_argument("--Q2", type=parse_coeff_list, default=None)
    p.add_argument("--Q1", type=parse_coeff_list, default=None)
    p.add_argument("--P1", type=parse_coeff_list, default=None)
    p.add_argument("--Q0", type=parse_complex, default=None)
    p.add_argument("--scalar-p", type=parse_complex, default=0j)
    p.add_argument("--scalar-q", type=parse_complex, default=0j)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--which", type=int, choices=(1, 2), default=1)
    p.add_argument("--degrees", type=parse_degrees, default=None)

    p = add("sweep", cmd_sweep, "classification map over a p2 grid", p1=True,
            csv=True, svg=True)
    p.add_argument("--grid", type=parse_grid, required=True,
                   help="rectangle 'xlo..xhi x ylo..yhi', e.g. -3..3x-3..3")
    p.add_argument("--res", type=int, default=100)
    p.add_argument("--workers", type=int, default=1)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        doc = args.handler(args)
    except UsageError as e:
        parser.error(str(e))  # exits 2
    except (ValueError, RuntimeError, ArithmeticError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    text = emit_json(doc) + "\n"
    sys.stdout.write(text)
    if args.json:
        write_text(args.json, text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
