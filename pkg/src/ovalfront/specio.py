"""Curve-spec files and export formats.

A curve spec is a small JSON document with ``geometry``,
``representation`` and representation-specific fields; `build_curve`
turns one into a sampled curve.  Exports (CSV, SVG, JSON reports) are
deterministic: fixed column orders, fixed float formatting, sorted JSON
keys, and no timestamps, so identical inputs give byte-identical files.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .curves import EUCLIDEAN, HYPERBOLIC, SPHERICAL, periodic_interpolant
from .errors import SpecFormatError
from .hyperbolic import (
    RoundedSemicircleSpec,
    build_rounded_semicircle,
    hyperbolic_circle,
    hyperbolic_curve_from_points,
    perturbed_hyperbolic_circle,
)
from .sphere import perturbed_sphere_circle, sphere_curve_from_points, total_torsion
from .support import SupportOval, build_oval, euclidean_curve_from_points
from .errors import FrenetBreakdownError

SCHEMA_VERSION = 1

REPRESENTATIONS = {
    EUCLIDEAN: {"support_fourier", "samples"},
    SPHERICAL: {"sphere_samples", "perturbed_circle"},
    HYPERBOLIC: {"hyperbolic_circle", "rounded_semicircle", "hyperboloid_samples"},
}

_DEFAULT_SAMPLES = 1024


def load_curve_spec(path) -> dict:
    """Read and validate a curve-spec JSON file."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise SpecFormatError(f"cannot read {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecFormatError(f"{path} is not valid JSON: {exc}") from exc
    validate_curve_spec(doc)
    return doc


def _require_points(doc, width: int):
    pts = doc.get("points")
    if not isinstance(pts, list) or len(pts) < 8:
        raise SpecFormatError("'points' must list at least 8 samples")
    for row in pts:
        if not isinstance(row, list) or len(row) != width:
            raise SpecFormatError(f"each point needs {width} coordinates")
        if not all(isinstance(v, (int, float)) for v in row):
            raise SpecFormatError("point coordinates must be numbers")


def _require_harmonics(doc, key: str = "harmonics", required: bool = False):
    rows = doc.get(key)
    if rows is None:
        if required:
            raise SpecFormatError(f"missing '{key}'")
        return
    if not isinstance(rows, list):
        raise SpecFormatError(f"'{key}' must be a list of [order, amp, phase] rows")
    for row in rows:
        if not isinstance(row, list) or len(row) != 3:
            raise SpecFormatError(f"'{key}' rows must be [order, amp, phase]")
        if not float(row[0]).is_integer() or int(row[0]) < 1:
            raise SpecFormatError("harmonic orders must be positive integers")


def validate_curve_spec(doc) -> None:
    if not isinstance(doc, dict):
        raise SpecFormatError("curve spec must be a JSON object")
    geometry = doc.get("geometry")
    if geometry not in REPRESENTATIONS:
        raise SpecFormatError(f"unknown geometry {geometry!r}")
    rep = doc.get("representation")
    if rep not in REPRESENTATIONS[geometry]:
        raise SpecFormatError(f"unknown representation {rep!r} for {geometry}")
    n = doc.get("n_samples")
    if n is not None and (not float(n).is_integer() or int(n) < 16):
        raise SpecFormatError("'n_samples' must be an integer >= 16")

    if rep == "support_fourier":
        rows = doc.get("coeffs")
        if not isinstance(rows, list) or not rows:
            raise SpecFormatError("'coeffs' must be a non-empty list of [n, cos, sin]")
        seen = set()
        for row in rows:
            if not isinstance(row, list) or len(row) != 3:
                raise SpecFormatError("'coeffs' rows must be [n, cos, sin]")
            if not float(row[0]).is_integer() or int(row[0]) < 0:
                raise SpecFormatError("harmonic degrees must be integers >= 0")
            if int(row[0]) in seen:
                raise SpecFormatError(f"duplicate harmonic degree {int(row[0])}")
            seen.add(int(row[0]))
    elif rep == "samples":
        _require_points(doc, 2)
    elif rep == "sphere_samples":
        _require_points(doc, 3)
    elif rep == "hyperboloid_samples":
        _require_points(doc, 3)
    elif rep == "perturbed_circle":
        if not isinstance(doc.get("rho"), (int, float)) or doc["rho"] <= 0:
            raise SpecFormatError("'rho' must be a positive number")
        _require_harmonics(doc)
    elif rep == "hyperbolic_circle":
        if not isinstance(doc.get("rho"), (int, float)) or doc["rho"] <= 0:
            raise SpecFormatError("'rho' must be a positive number")
        _require_harmonics(doc)
    elif rep == "rounded_semicircle":
        if not isinstance(doc.get("r"), (int, float)) or doc["r"] <= 0:
            raise SpecFormatError("'r' must be a positive number")
        for key in ("corner_scale", "flat_deviation"):
            v = doc.get(key)
            if v is not None and (not isinstance(v, (int, float)) or v <= 0):
                raise SpecFormatError(f"'{key}' must be a positive number")


def build_curve(doc: dict, n_samples: int | None = None):
    """Construct the sampled curve described by a validated spec document."""
    validate_curve_spec(doc)
    rep = doc["representation"]
    n = int(n_samples or doc.get("n_samples") or _DEFAULT_SAMPLES)

    if rep == "support_fourier":
        degrees = [int(row[0]) for row in doc["coeffs"]]
        dense = [(0.0, 0.0)] * (max(degrees) + 1)
        for deg, c, s in doc["coeffs"]:
            dense[int(deg)] = (float(c), float(s))
        return build_oval(SupportOval(coeffs=tuple(dense), n_samples=n))
    if rep == "samples":
        return euclidean_curve_from_points(doc["points"], n_samples=n)
    if rep == "sphere_samples":
        return sphere_curve_from_points(doc["points"], n_samples=n)
    if rep == "perturbed_circle":
        harmonics = doc.get("harmonics") or []
        return perturbed_sphere_circle(float(doc["rho"]), harmonics, n_samples=n)
    if rep == "hyperbolic_circle":
        harmonics = doc.get("harmonics")
        if harmonics:
            return perturbed_hyperbolic_circle(float(doc["rho"]), harmonics, n_samples=n)
        return hyperbolic_circle(float(doc["rho"]), n_samples=n)
    if rep == "hyperboloid_samples":
        return hyperbolic_curve_from_points(doc["points"], n_samples=n)
    spec = RoundedSemicircleSpec(
        r=float(doc["r"]),
        corner_scale=float(doc.get("corner_scale", 0.02)),
        flat_deviation=float(doc.get("flat_deviation", 0.05)),
        n_samples=n,
    )
    return build_rounded_semicircle(spec)


# ---------------------------------------------------------------------------
# CSV


def _fmt(x: float) -> str:
    return f"{float(x):.12g}"


def _write_rows(path, header: str, rows) -> None:
    lines = [header]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    Path(path).write_text("\n".join(lines) + "\n")


def write_profile_csv(path, profile) -> None:
    """Columns: param,k,mean,deviation."""
    rows = (
        (p, v, profile.mean, v - profile.mean)
        for p, v in zip(profile.param, profile.values)
    )
    _write_rows(path, "param,k,mean,deviation", rows)


def write_spectrum_csv(path, spectrum) -> None:
    """Columns: n,cos_amp,sin_amp,magnitude."""
    amps = spectrum.amplitudes
    rows = (
        (n, c, s, amps[n])
        for n, (c, s) in enumerate(zip(spectrum.cos_amps, spectrum.sin_amps))
    )
    _write_rows(path, "n,cos_amp,sin_amp,magnitude", rows)


def write_curve_csv(path, curve) -> None:
    """Geometry-specific sample table for a curve."""
    if curve.geometry == EUCLIDEAN:
        rows = (
            (s, p[0], p[1], k) for s, p, k in zip(curve.s, curve.points, curve.k)
        )
        _write_rows(path, "s,x,y,k", rows)
    elif curve.geometry == SPHERICAL:
        try:
            tau = total_torsion(curve).tau
        except FrenetBreakdownError:
            tau = np.zeros(len(curve.points))
        rows = (
            (s, p[0], p[1], p[2], k, tv)
            for s, p, k, tv in zip(curve.s, curve.points, curve.k, tau)
        )
        _write_rows(path, "s,x,y,z,k_g,tau", rows)
    else:
        rows = (
            (s, p[0], p[1], p[2], k)
            for s, p, k in zip(curve.s, curve.points, curve.k)
        )
        _write_rows(path, "s,x0,x1,x2,k", rows)


def write_front_csv(path, front) -> None:
    """Front samples with per-sample regularity signs."""
    if front.points.shape[1] == 2:
        rows = (
            (s, p[0], p[1], r)
            for s, p, r in zip(front.s, front.points, front.regularity)
        )
        _write_rows(path, "s,x,y,regularity", rows)
    else:
        cols = (
            "s,x,y,z,regularity"
            if front.geometry == SPHERICAL
            else "s,x0,x1,x2,regularity"
        )
        rows = (
            (s, p[0], p[1], p[2], r)
            for s, p, r in zip(front.s, front.points, front.regularity)
        )
        _write_rows(path, cols, rows)


# ---------------------------------------------------------------------------
# JSON reports


def jsonable(obj):
    """Recursively convert report payloads to plain JSON types.

    Floats are rounded to 12 significant digits so equal computations
    serialize to identical bytes across platforms.
    """
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        if not np.isfinite(v):
            return None
        return float(f"{v:.12g}")
    return obj


def write_json_report(path, doc: dict) -> None:
    payload = dict(doc)
    payload.setdefault("schema_version", SCHEMA_VERSION)
    text = json.dumps(jsonable(payload), sort_keys=True, indent=2)
    Path(path).write_text(text + "\n")


# ---------------------------------------------------------------------------
# SVG


def _svg(path, width, height, body: list) -> None:
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">'
    )
    Path(path).write_text("\n".join([head, *body, "</svg>"]) + "\n")


def _fit(points: np.ndarray, size: int, pad: float):
    lo = points.min(axis=0)
    hi = points.max(axis=0)
    span = float(max(hi[0] - lo[0], hi[1] - lo[1], 1e-12))
    scale = (size - 2 * pad) / span
    mid = 0.5 * (lo + hi)

    def to_px(xy):
        x = pad + (size - 2 * pad) / 2 + (xy[..., 0] - mid[0]) * scale
        y = pad + (size - 2 * pad) / 2 - (xy[..., 1] - mid[1]) * scale
        return x, y

    return to_px


def _polyline(xs, ys, color: str, width: float = 1.5) -> str:
    pts = " ".join(f"{x:.2f},{y:.2f}" for x, y in zip(xs, ys))
    return (
        f'<polyline fill="none" stroke="{color}" stroke-width="{width}" '
        f'points="{pts} {xs[0]:.2f},{ys[0]:.2f}"/>'
    )


def write_plane_svg(path, fronts, size: int = 640) -> None:
    """Plane curves/fronts with cusp markers, one polyline per object."""
    allpts = np.vstack([np.asarray(f.points) for f in fronts])
    to_px = _fit(allpts, size, 24.0)
    palette = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b", "#e377c2"]
    body = []
    for idx, f in enumerate(fronts):
        xs, ys = to_px(np.asarray(f.points))
        body.append(_polyline(xs, ys, palette[idx % len(palette)]))
        cusps = getattr(f, "cusps", None)
        if cusps is not None and len(cusps):
            fx = periodic_interpolant(f.param, f.points[:, 0], float(f.period))
            fy = periodic_interpolant(f.param, f.points[:, 1], float(f.period))
            for c in cusps:
                px, py = to_px(np.array([[float(fx(c)), float(fy(c))]]))
                body.append(
                    f'<circle cx="{px[0]:.2f}" cy="{py[0]:.2f}" r="3.5" '
                    f'fill="#000000"/>'
                )
    _svg(path, size, size, body)


def write_sphere_svg(path, curves, size: int = 640) -> None:
    """Orthographic projection from +z with the visible rim."""
    half = size / 2
    r = half - 24
    body = [
        f'<circle cx="{half}" cy="{half}" r="{r:.2f}" fill="none" '
        f'stroke="#bbbbbb" stroke-width="1"/>'
    ]
    palette = ["#1f77b4", "#d62728", "#2ca02c"]
    for idx, c in enumerate(curves):
        pts = np.asarray(c.points)
        xs = half + pts[:, 0] * r
        ys = half - pts[:, 1] * r
        body.append(_polyline(xs, ys, palette[idx % len(palette)]))
    _svg(path, size, size, body)


def write_klein_svg(path, curves, size: int = 640) -> None:
    """Hyperboloid curves drawn in the projective (Klein) disc x_i/x_0."""
    half = size / 2
    r = half - 24
    body = [
        f'<circle cx="{half}" cy="{half}" r="{r:.2f}" fill="none" '
        f'stroke="#bbbbbb" stroke-width="1"/>'
    ]
    palette = ["#1f77b4", "#d62728", "#2ca02c"]
    for idx, c in enumerate(curves):
        pts = np.asarray(c.points)
        xs = half + pts[:, 1] / pts[:, 0] * r
        ys = half - pts[:, 2] / pts[:, 0] * r
        body.append(_polyline(xs, ys, palette[idx % len(palette)]))
    _svg(path, size, size, body)
