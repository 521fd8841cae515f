"""Sampling a local solution into CSV rows and a static SVG sketch."""

from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass
from fractions import Fraction

from .fchordal import LocalSolution, SimilarityTransform, induced_parametrization
from .implicit import PhiPair
from .series import TruncatedSeries


@dataclass
class LocalArcs:
    """Sampled arcs in the caller's frame.

    ``near_v1`` is gamma itself; ``near_v2_P`` and ``near_v2_Q`` are the
    parametrizations induced through each chordal point.
    """

    ts: list
    near_v1: list
    near_v2_P: list
    near_v2_Q: list
    points: dict
    backend: object


def context_from_document(normalized: dict, backend):
    """Rebuild the phi pair and the similarity from a solution's ``normalized`` block."""
    try:
        x0 = backend.parse(normalized["x0"])
        v2 = backend.parse(normalized["v2"])
        phiP = TruncatedSeries([backend.parse(c) for c in normalized["phi_P"]], backend)
        phiQ = TruncatedSeries([backend.parse(c) for c in normalized["phi_Q"]], backend)
        tr = normalized["transform"]
        transform = SimilarityTransform(
            tuple(backend.parse(c) for c in tr["origin"]),
            tuple(backend.parse(c) for c in tr["half_axis"]),
            backend,
        )
    except (KeyError, TypeError) as exc:
        raise ValueError(f"solution lacks the normalized block: {exc}") from exc
    return x0, v2, PhiPair(phiP, phiQ, x0 - 1, x0 + 1), transform


def t_grid(t_min, t_max, count: int, backend) -> list:
    t_min, t_max = backend.coerce(t_min), backend.coerce(t_max)
    if count < 2:
        return [t_min]
    step = (t_max - t_min) / (count - 1)
    return [t_min + i * step for i in range(count)]


def sample_arcs(sol: LocalSolution, normalized: dict, ts) -> LocalArcs:
    b = sol.backend
    x0, v2, phi, tr = context_from_document(normalized, b)
    gPx, gPy = induced_parametrization(sol.x, sol.y, "P", phi)
    gQx, gQy = induced_parametrization(sol.x, sol.y, "Q", phi)

    def run(xs, ys):
        return [tr.from_normalized((xs.evaluate(t), ys.evaluate(t))) for t in ts]

    points = {
        "V1": tr.from_normalized((x0, 0)),
        "P": tr.from_normalized((1, 0)),
        "Q": tr.from_normalized((-1, 0)),
        "V2": tr.from_normalized((v2, 0)),
    }
    return LocalArcs(list(ts), run(sol.x, sol.y), run(gPx, gPy), run(gQx, gQy), points, b)


def to_csv(arcs: LocalArcs) -> str:
    """Columns ``t,x,y`` for the arc near ``V1``."""
    fmt = arcs.backend.fmt
    lines = ["t,x,y"]
    for t, (x, y) in zip(arcs.ts, arcs.near_v1):
        lines.append(f"{fmt(t)},{fmt(x)},{fmt(y)}")
    return "\n".join(lines) + "\n"


def _f(v) -> float:
    return float(v) if not isinstance(v, Fraction) else v.numerator / v.denominator


def to_svg(arcs: LocalArcs, width: int = 640, height: int = 400, margin: int = 30) -> str:
    pts = [(_f(x), _f(y)) for arc in (arcs.near_v1, arcs.near_v2_P, arcs.near_v2_Q) for x, y in arc]
    pts += [(_f(x), _f(y)) for x, y in arcs.points.values()]
    xs, ys = [p[0] for p in pts], [p[1] for p in pts]
    x_lo, x_hi, y_lo, y_hi = min(xs), max(xs), min(ys), max(ys)
    span = max(x_hi - x_lo, y_hi - y_lo, 1e-12)
    k = min(width - 2 * margin, height - 2 * margin) / span
    cx, cy = (x_lo + x_hi) / 2, (y_lo + y_hi) / 2

    def to_px(p):
        return (width / 2 + (p[0] - cx) * k, height / 2 - (p[1] - cy) * k)

    def coords(seq):
        return " ".join("%.4f,%.4f" % to_px((_f(x), _f(y))) for x, y in seq)

    svg = ET.Element(
        "svg", xmlns="http://www.w3.org/2000/svg", version="1.1",
        width=str(width), height=str(height), viewBox=f"0 0 {width} {height}",
    )
    axis = [arcs.points["V1"], arcs.points["V2"]]
    ET.SubElement(svg, "polyline", points=coords(axis), fill="none", stroke="#999999",
                  **{"stroke-dasharray": "4 3", "id": "axis"})
    for name, arc, color in (
        ("near-V1", arcs.near_v1, "#1f77b4"),
        ("near-V2-P", arcs.near_v2_P, "#d62728"),
        ("near-V2-Q", arcs.near_v2_Q, "#2ca02c"),
    ):
        ET.SubElement(svg, "polyline", id=name, points=coords(arc), fill="none", stroke=color,
                      **{"stroke-width": "1.5"})
    for name, p in arcs.points.items():
        px, py = to_px((_f(p[0]), _f(p[1])))
        ET.SubElement(svg, "circle", cx="%.4f" % px, cy="%.4f" % py, r="3", fill="black")
        label = ET.SubElement(svg, "text", x="%.4f" % (px + 5), y="%.4f" % (py - 5),
                              **{"font-size": "12", "font-family": "sans-serif"})
        label.text = name
    return ET.tostring(svg, encoding="unicode") + "\n"
