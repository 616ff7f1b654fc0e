"""JSON, CSV and SVG serialisation of curves, point clouds and reports.

JSON documents have the shape ``{"schema_version": 1, "case", "n", "payload"}``
with complex numbers as ``[re, im]`` pairs. Floats use Python's shortest
round-trip representation, so load/dump cycles are byte-identical.
"""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path

import numpy as np

from . import dynamics as dyn
from .contour import Window
from .errors import DomainError

SCHEMA_VERSION = 1
SVG_SIZE = 800


def complex_pairs(values) -> list[list[float]]:
    return [[float(v.real), float(v.imag)] for v in np.asarray(values, dtype=complex)]


def from_pairs(pairs) -> np.ndarray:
    arr = np.asarray(pairs, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise DomainError("expected a list of [re, im] pairs")
    return arr[:, 0] + 1j * arr[:, 1]


def dumps(case: str, n: int, payload: dict) -> str:
    doc = {"schema_version": SCHEMA_VERSION, "case": case, "n": n, "payload": payload}
    return json.dumps(doc, separators=(",", ":"), allow_nan=False) + "\n"


def loads(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"malformed JSON: {exc}") from None
    if not isinstance(doc, dict) or doc.get("schema_version") != SCHEMA_VERSION:
        raise DomainError("not a schema_version 1 document")
    for key in ("case", "n", "payload"):
        if key not in doc:
            raise DomainError(f"document lacks {key!r}")
    return doc


def curve_payload(curve: dyn.PhaseCurve) -> dict:
    return {
        "level": float(curve.level),
        "drift": float(curve.drift),
        "classification": None if curve.classification is None else curve.classification.value,
        "termination": list(curve.termination),
        "s": [float(s) for s in curve.arclength],
        "points": complex_pairs(curve.points),
        "roots": complex_pairs(curve.roots),
    }


def curve_document(curve: dyn.PhaseCurve) -> str:
    return dumps(curve.case.value, curve.n, curve_payload(curve))


def trace_csv(fi: dyn.FirstIntegralSpec, curve: dyn.PhaseCurve) -> str:
    """RFC-4180 table ``s,re,im,level_residual``."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(["s", "re", "im", "level_residual"])
    for s, g, r in zip(curve.arclength, curve.points, curve.roots):
        resid = dyn.first_integral(fi, complex(g), complex(r)) - curve.level
        writer.writerow([repr(float(s)), repr(float(g.real)), repr(float(g.imag)), repr(float(resid))])
    return buf.getvalue()


def portrait_csv(curves: list[dyn.PhaseCurve]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(["curve", "level", "classification", "s", "re", "im"])
    for idx, c in enumerate(curves):
        label = "" if c.classification is None else c.classification.value
        for s, g in zip(c.arclength, c.points):
            writer.writerow([idx, repr(float(c.level)), label, repr(float(s)), repr(float(g.real)), repr(float(g.imag))])
    return buf.getvalue()


def portrait_payload(curves: list[dyn.PhaseCurve], window: Window, asymptotes: dict) -> dict:
    return {
        "window": list(window.bounds),
        "grid": window.grid,
        "asymptotes": asymptotes,
        "curves": [curve_payload(c) for c in curves],
    }


def _svg_xy(window: Window, z: complex) -> tuple[float, float]:
    x = (z.real - window.re_min) / (window.re_max - window.re_min) * SVG_SIZE
    y = (window.im_max - z.imag) / (window.im_max - window.im_min) * SVG_SIZE
    return x, y


def portrait_svg(
    fi: dyn.FirstIntegralSpec, curves: list[dyn.PhaseCurve], window: Window, infinity_angles: list[float]
) -> str:
    """SVG 1.1 figure: singular set solid, other levels thin, asymptotes dashed, singular points filled."""
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SVG_SIZE}" height="{SVG_SIZE}" '
        f'viewBox="0 0 {SVG_SIZE} {SVG_SIZE}">',
        f'<title>{fi.case.value} n={fi.n} phase portrait</title>',
        f'<rect x="0" y="0" width="{SVG_SIZE}" height="{SVG_SIZE}" fill="white"/>',
    ]
    ox, oy = _svg_xy(window, 0j)
    out.append(f'<line x1="0" y1="{oy:.3f}" x2="{SVG_SIZE}" y2="{oy:.3f}" stroke="#dddddd" stroke-width="0.5"/>')
    out.append(f'<line x1="{ox:.3f}" y1="0" x2="{ox:.3f}" y2="{SVG_SIZE}" stroke="#dddddd" stroke-width="0.5"/>')
    reach = 2.0 * max(abs(window.re_min), abs(window.re_max), abs(window.im_min), abs(window.im_max))
    out.append('<g id="asymptotes" stroke="#888888" stroke-width="1" stroke-dasharray="6,4" fill="none">')
    for a in infinity_angles:
        x, y = _svg_xy(window, reach * complex(math.cos(a), math.sin(a)))
        out.append(f'<line x1="{ox:.3f}" y1="{oy:.3f}" x2="{x:.3f}" y2="{y:.3f}"/>')
    out.append("</g>")
    for singular in (True, False):
        gid, style = ("singular", 'stroke="black" stroke-width="2"') if singular else (
            "levels", 'stroke="#1f5fa8" stroke-width="0.8"')
        out.append(f'<g id="{gid}" {style} fill="none">')
        for c in curves:
            if (abs(c.level) <= dyn.LEVEL_ZERO_TOL) != singular or len(c.points) < 2:
                continue
            coords = " ".join("{:.3f},{:.3f}".format(*_svg_xy(window, complex(z))) for z in c.points)
            out.append(f'<polyline data-level="{c.level!r}" points="{coords}"/>')
        out.append("</g>")
    marks = [1.0, -1.0] if fi.case.value == "sphere" else [0.0]
    out.append('<g id="singular-points" fill="black">')
    for m in marks:
        x, y = _svg_xy(window, complex(m))
        out.append(f'<circle cx="{x:.3f}" cy="{y:.3f}" r="4"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_text(path: str | Path, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8", newline="")
