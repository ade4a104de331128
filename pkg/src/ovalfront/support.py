"""Plane ovals built from support functions.

A closed convex plane curve is recovered from its support function h by

    gamma(a) = h(a) (cos a, sin a) + h'(a) (-sin a, cos a),

where a is the outward normal direction.  The curvature radius is
R = h + h''; the curve is strictly convex iff R > 0 everywhere, and then
L = integral(R da), A = 0.5 integral(h R da).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import _kernels as kernels
from .curves import (
    EUCLIDEAN,
    TWO_PI,
    SampledCurve,
    arclength_resample,
    closed_spline_through,
    fourier_antiderivative,
    parametric_area,
    periodic_interpolant,
)
from .errors import BadParametrizationError, DegenerateSamplingError, NonConvexError

MIN_SAMPLES = 16


@dataclass(frozen=True)
class SupportOval:
    """Support function given as a trigonometric polynomial.

    ``coeffs[n]`` holds the (cos, sin) amplitude pair of harmonic n,
    n = 0 .. n_max.  The sin amplitude of harmonic 0 is ignored.
    """

    coeffs: tuple
    n_samples: int = 1024

    def __post_init__(self):
        object.__setattr__(
            self, "coeffs", tuple((float(c), float(s)) for c, s in self.coeffs)
        )

    @property
    def n_max(self) -> int:
        return len(self.coeffs) - 1

    @property
    def cos_amps(self) -> np.ndarray:
        return np.array([c for c, _ in self.coeffs], dtype=float)

    @property
    def sin_amps(self) -> np.ndarray:
        out = np.array([s for _, s in self.coeffs], dtype=float)
        if out.size:
            out[0] = 0.0
        return out


def _frame(alpha: np.ndarray):
    normal = np.column_stack([np.cos(alpha), np.sin(alpha)])
    tangent = np.column_stack([-np.sin(alpha), np.cos(alpha)])
    return normal, tangent


def build_oval(spec: SupportOval) -> SampledCurve:
    """Sample the oval described by a support-function trig polynomial.

    Raises
    ------
    DegenerateSamplingError
        Fewer than 16 samples, or too few to resolve the polynomial.
    NonConvexError
        R = h + h'' fails to be strictly positive on the grid.
    """
    n = int(spec.n_samples)
    if n < MIN_SAMPLES:
        raise DegenerateSamplingError(f"n_samples={n} < {MIN_SAMPLES}")
    if n < 4 * max(spec.n_max, 1):
        raise DegenerateSamplingError(
            f"n_samples={n} cannot resolve harmonic {spec.n_max}"
        )
    a = spec.cos_amps
    b = spec.sin_amps
    alpha = np.arange(n) * (TWO_PI / n)
    h = kernels.trig_eval(a, b, alpha, 0)
    hp = kernels.trig_eval(a, b, alpha, 1)
    hpp = kernels.trig_eval(a, b, alpha, 2)
    radius = h + hpp
    rmin = float(radius.min())
    if rmin <= 0.0:
        raise NonConvexError(f"min(h + h'') = {rmin:.6g} <= 0")

    normal, tangent = _frame(alpha)
    points = h[:, None] * normal + hp[:, None] * tangent

    # Arc length from the exact antiderivative of the trig polynomial R:
    # R has coefficients (1 - m^2) (a_m, b_m), so s(a) integrates in closed
    # form and L = 2 pi a_0.
    harmonics = np.arange(len(a), dtype=float)
    rc = (1.0 - harmonics**2) * a
    rs = (1.0 - harmonics**2) * b
    rc[0] = a[0]
    s = rc[0] * alpha
    if len(a) > 1:
        m = harmonics[1:]
        ang = np.multiply.outer(alpha, m)
        s = s + np.sin(ang) @ (rc[1:] / m) + (1.0 - np.cos(ang)) @ (rs[1:] / m)
    length = TWO_PI * rc[0]
    area = 0.5 * (TWO_PI / n) * float(np.sum(h * radius))

    def radius_fn(x):
        return kernels.trig_eval(a, b, x, 0) + kernels.trig_eval(a, b, x, 2)

    return SampledCurve(
        geometry=EUCLIDEAN,
        points=points,
        s=s,
        k=1.0 / radius,
        L=length,
        A=area,
        param=alpha,
        tangent=tangent,
        normal=normal,
        w=radius * (TWO_PI / n),
        curv_fn=lambda x: 1.0 / radius_fn(x),
        radius_fn=radius_fn,
    )


def oval_from_support(
    h: Callable,
    n_samples: int = 1024,
    dh: Optional[Callable] = None,
    d2h: Optional[Callable] = None,
) -> SampledCurve:
    """Sample an oval from a smooth 2pi-periodic support function.

    Derivatives are taken analytically when ``dh``/``d2h`` are supplied,
    otherwise by order-4 periodic central differences on the grid.
    """
    n = int(n_samples)
    if n < MIN_SAMPLES:
        raise DegenerateSamplingError(f"n_samples={n} < {MIN_SAMPLES}")
    alpha = np.arange(n) * (TWO_PI / n)
    spacing = TWO_PI / n
    hv = np.asarray(h(alpha), dtype=float)
    hp = np.asarray(dh(alpha), float) if dh else kernels.periodic_deriv(hv, 1, spacing)
    hpp = np.asarray(d2h(alpha), float) if d2h else kernels.periodic_deriv(hv, 2, spacing)
    radius = hv + hpp
    rmin = float(radius.min())
    if rmin <= 0.0:
        raise NonConvexError(f"min(h + h'') = {rmin:.6g} <= 0")

    normal, tangent = _frame(alpha)
    points = hv[:, None] * normal + hp[:, None] * tangent
    s = fourier_antiderivative(radius)
    length = float(radius.mean()) * TWO_PI
    area = 0.5 * spacing * float(np.sum(hv * radius))

    if dh is not None and d2h is not None:
        def radius_fn(x):
            return np.asarray(h(x), float) + np.asarray(d2h(x), float)
    else:
        radius_fn = periodic_interpolant(alpha, radius, TWO_PI)

    return SampledCurve(
        geometry=EUCLIDEAN,
        points=points,
        s=s,
        k=1.0 / radius,
        L=length,
        A=area,
        param=alpha,
        tangent=tangent,
        normal=normal,
        w=radius * spacing,
        curv_fn=lambda x: 1.0 / np.asarray(radius_fn(x), float),
        radius_fn=radius_fn,
    )


def ellipse_oval(a: float, b: float, n_samples: int = 1024, analytic: bool = True):
    """Axis-aligned ellipse with semi-axes a, b via its support function.

    ``analytic=False`` drops the closed-form derivatives and exercises the
    finite-difference path (useful for convergence studies).
    """
    if a <= 0.0 or b <= 0.0:
        raise NonConvexError("semi-axes must be positive")

    def h(x):
        return np.sqrt((a * np.cos(x)) ** 2 + (b * np.sin(x)) ** 2)

    def dh(x):
        return 0.5 * (b * b - a * a) * np.sin(2.0 * x) / h(x)

    def d2h(x):
        # from R = h + h'' = (ab)^2 / h^3
        return (a * b) ** 2 / h(x) ** 3 - h(x)

    if analytic:
        return oval_from_support(h, n_samples, dh=dh, d2h=d2h)
    return oval_from_support(h, n_samples)


def unit_circle(n_samples: int = 1024) -> SampledCurve:
    return build_oval(SupportOval(((1.0, 0.0),), n_samples=n_samples))


def euclidean_curve_from_points(points, n_samples: int = 1024) -> SampledCurve:
    """Resample-and-validate path for raw planar loops.

    Expects a counterclockwise closed loop; curvature and frames come from
    order-4 periodic differences after arc-length resampling.
    """
    raw = np.asarray(points, dtype=float)
    point_fn, speed_fn = closed_spline_through(raw)
    pts, s, length, _ = arclength_resample(point_fn, int(n_samples), speed_fn)
    n = len(pts)
    spacing = length / n
    d1 = np.column_stack(
        [kernels.periodic_deriv(pts[:, j], 1, spacing) for j in range(2)]
    )
    d2 = np.column_stack(
        [kernels.periodic_deriv(pts[:, j], 2, spacing) for j in range(2)]
    )
    speed = np.linalg.norm(d1, axis=1)
    err = float(np.max(np.abs(speed - 1.0)))
    if err > 1e-6:
        raise BadParametrizationError(f"|gamma'| deviates from 1 by {err:.3g}")
    k = (d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0]) / speed**3
    area = parametric_area(pts, length)
    if area <= 0.0:
        raise BadParametrizationError("expected a counterclockwise loop")
    tangent = d1 / speed[:, None]
    normal = np.column_stack([tangent[:, 1], -tangent[:, 0]])
    return SampledCurve(
        geometry=EUCLIDEAN,
        points=pts,
        s=s,
        k=k,
        L=float(length),
        A=float(area),
        param=s,
        tangent=tangent,
        normal=normal,
        w=np.full(n, spacing),
    )


def ellipse_support_coeffs(a: float, b: float, n_max: int = 32) -> list:
    """Support-function Fourier coefficients of an ellipse, as [n, cos, sin].

    Useful for writing curve-spec files; amplitudes decay geometrically so
    n_max = 32 is already at machine precision for mild aspect ratios.
    """
    n = 4096
    alpha = np.arange(n) * (TWO_PI / n)
    h = np.sqrt((a * np.cos(alpha)) ** 2 + (b * np.sin(alpha)) ** 2)
    coeff = np.fft.rfft(h) / n
    rows = [[0, float(coeff[0].real), 0.0]]
    for m in range(1, int(n_max) + 1):
        rows.append([m, 2.0 * float(coeff[m].real), -2.0 * float(coeff[m].imag)])
    return rows


def closure_residual(curve: SampledCurve) -> np.ndarray:
    """Trapezoid residual of the closure integral of R over the grid.

    For an exactly closed oval, integral(R(a) (cos a, sin a) da) = 0; the
    returned 2-vector measures how far the sampled construction is from
    that identity.
    """
    if curve.geometry != EUCLIDEAN or curve.param is None or curve.radius_fn is None:
        raise ValueError("closure residuals apply to support-built plane ovals")
    alpha = curve.param
    gaps = np.diff(alpha)
    if not np.allclose(gaps, gaps[0], rtol=0.0, atol=1e-12):
        raise ValueError("support grid must be uniform")
    radius = 1.0 / curve.k
    spacing = TWO_PI / len(alpha)
    return np.array(
        [
            spacing * float(np.sum(radius * np.cos(alpha))),
            spacing * float(np.sum(radius * np.sin(alpha))),
        ]
    )
