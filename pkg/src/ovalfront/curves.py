"""Shared sampled-curve representation and curvature-profile analysis.

Every geometry module produces :class:`SampledCurve` instances (or a
subclass) sampled on a uniform parameter grid, carrying arc length,
curvature, quadrature weights and the outward coorientation.  Profile
analysis (where does the curvature cross its geometric mean?) lives here
because the counting logic is identical in all three geometries.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable, Optional

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.optimize import brentq

from . import _kernels as kernels
from .errors import BadParametrizationError, DegenerateProfileError

EUCLIDEAN = "euclidean"
SPHERICAL = "spherical"
HYPERBOLIC = "hyperbolic"
GEOMETRIES = (EUCLIDEAN, SPHERICAL, HYPERBOLIC)

TWO_PI = 2.0 * np.pi

# Hysteresis band for mean-crossing counts, relative to the profile scale.
CROSSING_TOL_FACTOR = 1e-7
# Parameter tolerance for refined crossing/cusp locations.
ROOT_XTOL = 1e-10


@dataclass(frozen=True, eq=False, kw_only=True)
class SampledCurve:
    """A closed curve sampled on a uniform parameter grid.

    Attributes
    ----------
    geometry : str
        One of ``euclidean``, ``spherical``, ``hyperbolic``.
    points : ndarray, shape (n, 2) or (n, 3)
        Ambient coordinates (plane pairs, unit-sphere triples, hyperboloid
        triples).
    s : ndarray, shape (n,)
        Arc length at each sample; ``s[0] == 0``, strictly increasing,
        wrap gap ``L - s[-1]`` positive.
    k : ndarray, shape (n,)
        Geodesic curvature at each sample.
    L, A : float
        Total length and enclosed area.
    param : ndarray
        The build parameter grid (normal angle for support-function ovals,
        arc length for resampled curves).  Uniformly spaced.
    tangent, normal : ndarray
        Unit tangent and outward unit normal fields.
    w : ndarray
        Per-sample quadrature weights with ``sum(w) == L``.
    curv_fn : callable, optional
        ``k(param)`` as a callable, analytic when the construction knows
        it; used for root refinement.
    radius_fn : callable, optional
        Curvature radius ``R(param)`` (Euclidean support builds only).
    """

    geometry: str
    points: np.ndarray
    s: np.ndarray
    k: np.ndarray
    L: float
    A: float
    closed: bool = True
    param: Optional[np.ndarray] = None
    tangent: Optional[np.ndarray] = None
    normal: Optional[np.ndarray] = None
    w: Optional[np.ndarray] = None
    curv_fn: Optional[Callable] = None
    radius_fn: Optional[Callable] = None

    def __post_init__(self):
        if self.geometry not in GEOMETRIES:
            raise ValueError(f"unknown geometry tag {self.geometry!r}")
        s = np.asarray(self.s, dtype=float)
        if s.size and (s[0] != 0.0 or np.any(np.diff(s) <= 0.0)):
            raise BadParametrizationError("s must start at 0 and increase")
        if self.closed and s.size and self.L - s[-1] <= 0.0:
            raise BadParametrizationError("wrap gap L - s[-1] must be positive")

    @property
    def n_samples(self) -> int:
        return len(self.points)

    @property
    def period(self) -> float:
        """Period of the build parameter (2 pi for angle grids, L for s)."""
        p = self.param
        if p is None:
            return self.L
        return float(p[-1] + (p[1] - p[0])) if len(p) > 1 else self.L


def average_curvature(curve: SampledCurve) -> float:
    """Geometric mean curvature: 2pi/L, (2pi - A)/L or (2pi + A)/L."""
    if curve.L <= 0.0:
        raise ValueError("curve has non-positive length")
    if curve.geometry == EUCLIDEAN:
        return TWO_PI / curve.L
    if curve.geometry == SPHERICAL:
        return (TWO_PI - curve.A) / curve.L
    return (TWO_PI + curve.A) / curve.L


def defect_value(geometry: str, length: float, area: float) -> float:
    """Isoperimetric defect, invariant under equidistant propagation."""
    if geometry == EUCLIDEAN:
        return length**2 - 4.0 * np.pi * area
    if geometry == SPHERICAL:
        return length**2 - area * (4.0 * np.pi - area)
    if geometry == HYPERBOLIC:
        return length**2 - area * (4.0 * np.pi + area)
    raise ValueError(f"unknown geometry tag {geometry!r}")


# ---------------------------------------------------------------------------
# curvature profiles


@dataclass(frozen=True, eq=False)
class CurvatureProfile:
    """Periodic curvature samples together with their geometric mean."""

    values: np.ndarray
    mean: float
    param: np.ndarray
    period: float
    fn: Optional[Callable] = None
    crossing_params: Optional[np.ndarray] = None


@dataclass(frozen=True, eq=False)
class CrossingReport:
    """Outcome of a mean-crossing count."""

    count: int
    crossings: np.ndarray  # refined parameter values, transversal only
    touches: np.ndarray  # (k, 2) parameter intervals that touch the mean


def periodic_interpolant(param: np.ndarray, values: np.ndarray, period: float):
    """Periodic cubic spline through one period of samples."""
    p = np.append(param, param[0] + period)
    v = np.append(values, values[0])
    spline = CubicSpline(p, v, bc_type="periodic")
    lo = param[0]

    def fn(x):
        return spline(lo + np.mod(x - lo, period))

    return fn


def eval_scalar(fn, x) -> float:
    """Evaluate a possibly array-returning callable at one point."""
    return float(np.asarray(fn(x)).item())


def curvature_profile(curve: SampledCurve, tol: float = None) -> CurvatureProfile:
    """Curvature profile of a curve, with mean crossings already located."""
    param = curve.param if curve.param is not None else curve.s
    profile = CurvatureProfile(
        values=np.asarray(curve.k, dtype=float),
        mean=average_curvature(curve),
        param=np.asarray(param, dtype=float),
        period=curve.period,
        fn=curve.curv_fn,
    )
    report = count_mean_crossings(profile, tol=tol)
    return replace(profile, crossing_params=report.crossings)


def radius_profile(curve: SampledCurve) -> CurvatureProfile:
    """Curvature-radius profile R = 1/k of a Euclidean oval, mean L/2pi."""
    if curve.geometry != EUCLIDEAN:
        raise ValueError("radius profiles are a Euclidean notion here")
    param = curve.param if curve.param is not None else curve.s
    return CurvatureProfile(
        values=1.0 / np.asarray(curve.k, dtype=float),
        mean=curve.L / TWO_PI,
        param=np.asarray(param, dtype=float),
        period=curve.period,
        fn=curve.radius_fn,
    )


def count_mean_crossings(profile: CurvatureProfile, tol: float = None) -> CrossingReport:
    """Count transversal crossings of ``values`` through ``mean``.

    Tangential touches (in-band runs that do not separate opposite signs)
    are reported separately and never counted as crossings.  Raises
    :class:`DegenerateProfileError` when the whole profile sits inside the
    tolerance band: the mean is attained everywhere (circle case).
    """
    dev = profile.values - profile.mean
    scale = max(abs(profile.mean), float(np.max(np.abs(dev))))
    if tol is None:
        tol = CROSSING_TOL_FACTOR * scale
    if float(np.max(np.abs(dev))) <= tol:
        raise DegenerateProfileError(
            "profile constant within tolerance; mean attained everywhere"
        )
    pairs, touch_idx = kernels.transitions(dev, tol)

    fn = profile.fn
    if fn is None:
        fn = periodic_interpolant(profile.param, profile.values, profile.period)
    mean = profile.mean

    def g(x):
        return eval_scalar(fn, x) - mean

    crossings = np.empty(len(pairs), dtype=float)
    for row, (i, j) in enumerate(pairs):
        lo = profile.param[i]
        hi = profile.param[j]
        if hi <= lo:  # bracket wraps past the end of the grid
            hi += profile.period
        crossings[row] = brentq(g, lo, hi, xtol=ROOT_XTOL) % profile.period

    touches = np.empty((len(touch_idx), 2), dtype=float)
    for row, (i, j) in enumerate(touch_idx):
        touches[row] = (profile.param[i], profile.param[j])
    return CrossingReport(count=len(crossings), crossings=np.sort(crossings), touches=touches)


# ---------------------------------------------------------------------------
# spectral helpers on uniform periodic grids


def fft_deriv(values: np.ndarray, period: float = TWO_PI) -> np.ndarray:
    """Spectral derivative of uniformly spaced periodic samples."""
    v = np.asarray(values, dtype=float)
    coeff = np.fft.rfft(v)
    freq = 2j * np.pi * np.arange(coeff.size) / period
    return np.fft.irfft(coeff * freq, v.size)


def fourier_antiderivative(values: np.ndarray, period: float = TWO_PI) -> np.ndarray:
    """Cumulative integral of periodic samples, anchored at 0.

    Exact for every harmonic the grid resolves; the mean is integrated as
    a linear ramp.
    """
    v = np.asarray(values, dtype=float)
    n = v.size
    vbar = float(v.mean())
    coeff = np.fft.rfft(v - vbar)
    freq = 2j * np.pi * np.arange(coeff.size) / period
    with np.errstate(divide="ignore", invalid="ignore"):
        anti = np.where(freq != 0.0, coeff / freq, 0.0)
    osc = np.fft.irfft(anti, n)
    x = np.arange(n) * (period / n)
    return vbar * x + (osc - osc[0])


def parametric_area(points: np.ndarray, period: float) -> np.ndarray:
    """Algebraic shoelace area of a closed plane curve on a uniform grid.

    Computes 0.5 * integral(x y' - y x') with spectral parametric
    derivatives; valid for self-intersecting loops (signed, by winding).
    """
    x = points[:, 0]
    y = points[:, 1]
    dx = fft_deriv(x, period)
    dy = fft_deriv(y, period)
    return 0.5 * float(np.mean(x * dy - y * dx)) * period


# ---------------------------------------------------------------------------
# arc-length resampling


def arclength_resample(point_fn, n_samples: int, speed_fn, oversample: int = 8):
    """Resample a closed parametric curve to uniform arc length.

    Parameters
    ----------
    point_fn : callable
        Maps parameter values in [0, 2pi) to ambient points, shape (m, d).
    n_samples : int
        Number of output samples.
    speed_fn : callable
        Metric speed |dp/du| of the parametrization.
    oversample : int
        Dense-grid factor used to build the inverse arc-length map.

    Returns
    -------
    points, s, L, params
    """
    m = oversample * n_samples
    u = np.arange(m) * (TWO_PI / m)
    vel = np.asarray(speed_fn(u), dtype=float)
    if np.any(vel <= 0.0):
        raise BadParametrizationError("parametrization speed must stay positive")
    s_dense = fourier_antiderivative(vel)
    total = float(vel.mean()) * TWO_PI
    u_of_s = CubicSpline(np.append(s_dense, total), np.append(u, TWO_PI))
    s = np.arange(n_samples) * (total / n_samples)
    params = np.asarray(u_of_s(s), dtype=float)
    params[0] = 0.0
    return np.asarray(point_fn(params), dtype=float), s, total, params


def closed_spline_through(points: np.ndarray):
    """Periodic spline through discrete closed-loop samples.

    Parametrized by chordal estimate scaled onto [0, 2pi); returns
    ``(point_fn, speed_fn)`` suitable for :func:`arclength_resample`.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or len(pts) < 8:
        raise BadParametrizationError("need at least 8 points on the loop")
    closed = np.vstack([pts, pts[:1]])
    chord = np.linalg.norm(np.diff(closed, axis=0), axis=1)
    if np.any(chord <= 0.0):
        raise BadParametrizationError("repeated consecutive points")
    u = np.concatenate([[0.0], np.cumsum(chord)])
    u *= TWO_PI / u[-1]
    spline = CubicSpline(u, closed, bc_type="periodic")
    dspline = spline.derivative()

    def point_fn(t):
        return spline(np.mod(t, TWO_PI))

    def speed_fn(t):
        return np.linalg.norm(dspline(np.mod(t, TWO_PI)), axis=-1)

    return point_fn, speed_fn
