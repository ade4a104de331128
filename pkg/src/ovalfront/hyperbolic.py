"""Hyperbolic-plane curves in the hyperboloid model.

Points live on the sheet <x,x> = -1, x0 > 0 of Minkowski 3-space with
signature (-,+,+).  Isometries are linear there, so frames, curvature and
equidistant propagation stay polynomial in the samples:

    T = x',   nu = mcross(T, x)   (outward conormal),
    k = det[x, x', x''],          front_t = cosh(t) x + sinh(t) nu.

Geodesic curvature classifies the local shape: k > 1 circle-like,
k = 1 horocycle-like, k < 1 equidistant-like.  Closed convex curves with
k > 1 everywhere (horocyclically convex) collapse under inward propagation
at t = -arccoth((2 pi + A)/L) with at least four cusps; the rounded
semicircle built here is convex but not horocyclically convex and attains
its mean curvature only twice.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy.integrate import solve_ivp
from scipy.interpolate import CubicSpline
from scipy.optimize import brentq, root

from . import _kernels as kernels
from .curves import (
    HYPERBOLIC,
    ROOT_XTOL,
    TWO_PI,
    CurvatureProfile,
    SampledCurve,
    arclength_resample,
    count_mean_crossings,
    curvature_profile,
    eval_scalar,
    periodic_interpolant,
)
from .errors import (
    BadParametrizationError,
    CothDomainError,
    DegenerateProfileError,
    InvalidSpecError,
    NotHorocyclicallyConvexError,
    OvalfrontError,
)

HYPERBOLOID_NORM_TOL = 1e-10
SPEED_TOL = 1e-6
HOROCYCLIC_MARGIN = 1e-6
CLASS_BAND = 1e-6
CUSP_SPEED_GUARD = 1e-9

CIRCLE_LIKE = 1
HOROCYCLE_LIKE = 0
EQUIDISTANT_LIKE = -1


# ---------------------------------------------------------------------------
# Minkowski primitives, signature (-,+,+)


def mdot(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Minkowski inner product over the last axis."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return -a[..., 0] * b[..., 0] + a[..., 1] * b[..., 1] + a[..., 2] * b[..., 2]


def mcross(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Minkowski cross product: <mcross(a,b), c> = det[a, b, c]."""
    e = np.cross(np.asarray(a, dtype=float), np.asarray(b, dtype=float))
    e[..., 0] = -e[..., 0]
    return e


def normalize_timelike(v: np.ndarray) -> np.ndarray:
    """Scale a timelike (future-pointing) vector onto the hyperboloid."""
    v = np.asarray(v, dtype=float)
    q = -mdot(v, v)
    if np.any(q <= 0.0) or np.any(v[..., 0] <= 0.0):
        raise BadParametrizationError("vector is not future-timelike")
    return v / np.sqrt(q)[..., None] if v.ndim > 1 else v / np.sqrt(q)


def _normalize_spacelike(v: np.ndarray) -> np.ndarray:
    q = mdot(v, v)
    return v / np.sqrt(q)[..., None] if v.ndim > 1 else v / np.sqrt(q)


@dataclass(frozen=True, eq=False, kw_only=True)
class HyperbolicCurve(SampledCurve):
    """Closed hyperboloid-model curve with convexity classification."""

    min_k: float = float("nan")
    min_k_param: float = float("nan")
    horocyclic_convex: bool = False
    curvature_class: Optional[np.ndarray] = None
    center: Optional[np.ndarray] = None
    gb_residual: float = float("nan")
    build_residual: float = float("nan")


def classify_curvature(k: np.ndarray, band: float = CLASS_BAND) -> np.ndarray:
    """Per-sample tag: +1 circle-like, 0 horocycle-like, -1 equidistant-like."""
    tags = np.zeros(len(k), dtype=np.int8)
    tags[k > 1.0 + band] = CIRCLE_LIKE
    tags[k < 1.0 - band] = EQUIDISTANT_LIKE
    return tags


# ---------------------------------------------------------------------------
# differential quantities


def _column_deriv(points: np.ndarray, order: int, spacing: float) -> np.ndarray:
    return np.column_stack(
        [kernels.periodic_deriv(points[:, j], order, spacing) for j in range(3)]
    )


def geodesic_curvature_h(points: np.ndarray, spacing: float, speed_tol: float = SPEED_TOL):
    """Geodesic curvature and outward conormal of unit-speed hyperboloid samples.

    Returns ``(k, nu, d1)``.  The Minkowski speed must equal 1 within
    ``speed_tol`` (loosen it deliberately when the curvature profile has
    kinks, where fourth-order differences ring on neighbouring samples).
    """
    d1 = _column_deriv(points, 1, spacing)
    speed_sq = mdot(d1, d1)
    if np.any(speed_sq <= 0.0):
        raise BadParametrizationError("tangent fails to be spacelike")
    speed = np.sqrt(speed_sq)
    err = float(np.max(np.abs(speed - 1.0)))
    if err > speed_tol:
        raise BadParametrizationError(f"Minkowski speed deviates from 1 by {err:.3g}")
    d2 = _column_deriv(points, 2, spacing)
    k = np.einsum("ij,ij->i", np.cross(points, d1), d2) / speed**3
    nu = _normalize_spacelike(mcross(d1, points))
    return k, nu, d1


def _polar_frame(center: np.ndarray):
    seed = np.array([0.0, 1.0, 0.0])
    e1 = seed + mdot(seed, center) * center
    if mdot(e1, e1) < 1e-12:
        seed = np.array([0.0, 0.0, 1.0])
        e1 = seed + mdot(seed, center) * center
    e1 = _normalize_spacelike(e1)
    e2 = mcross(center, e1)
    return e1, e2


def hyperbolic_area_green(points: np.ndarray, center: np.ndarray, spacing: float) -> float:
    """Enclosed area by the polar identity A = loop(cosh r - 1) dphi about center."""
    e1, e2 = _polar_frame(center)
    cosh_r = np.maximum(-mdot(points, center), 1.0)
    phi_raw = np.arctan2(mdot(points, e2), mdot(points, e1))
    steps = np.angle(np.exp(1j * (np.roll(phi_raw, -1) - phi_raw)))
    winding = float(steps.sum()) / TWO_PI
    n = len(points)
    ramp = winding * TWO_PI * np.arange(n) / n
    periodic = np.cumsum(np.concatenate([[0.0], steps[:-1]])) - ramp + phi_raw[0]
    dphi = kernels.periodic_deriv(periodic, 1, spacing) + winding * TWO_PI / (n * spacing)
    return float(np.sum((cosh_r - 1.0) * dphi) * spacing)


def gauss_bonnet_residual_h(curve: SampledCurve) -> float:
    """|integral(k ds) - (2 pi + A)| for the measured curve."""
    total = float(np.sum(np.asarray(curve.k) * np.asarray(curve.w)))
    return abs(total - (TWO_PI + curve.A))


# ---------------------------------------------------------------------------
# construction


def _finish_hyperbolic_curve(points, s, length, center=None, curv_fn=None) -> HyperbolicCurve:
    points = normalize_timelike(np.asarray(points, dtype=float))
    n = len(points)
    spacing = length / n
    k, nu, _ = geodesic_curvature_h(points, spacing)
    if center is None:
        center = normalize_timelike(points.mean(axis=0))
    area = hyperbolic_area_green(points, center, spacing)
    w = np.full(n, spacing)
    gb = abs(float(np.sum(k) * spacing) - (TWO_PI + area))
    imin = int(np.argmin(k))
    min_k = float(k[imin])
    s_arr = np.asarray(s, dtype=float)
    return HyperbolicCurve(
        geometry=HYPERBOLIC,
        points=points,
        s=s_arr,
        k=k,
        L=float(length),
        A=area,
        param=s_arr,
        tangent=None,
        normal=nu,
        w=w,
        curv_fn=curv_fn,
        min_k=min_k,
        min_k_param=float(s_arr[imin]),
        horocyclic_convex=min_k > 1.0 + HOROCYCLIC_MARGIN,
        curvature_class=classify_curvature(k),
        center=np.asarray(center, dtype=float),
        gb_residual=gb,
    )


def hyperbolic_circle(rho: float, n_samples: int = 1024) -> HyperbolicCurve:
    """Circle of hyperbolic radius rho about the model basepoint (1,0,0)."""
    if rho <= 0.0:
        raise InvalidSpecError("need rho > 0")
    n = int(n_samples)
    length = TWO_PI * np.sinh(rho)
    s = np.arange(n) * (length / n)
    u = s / np.sinh(rho)
    points = np.column_stack(
        [np.full(n, np.cosh(rho)), np.sinh(rho) * np.cos(u), np.sinh(rho) * np.sin(u)]
    )
    k_const = 1.0 / np.tanh(rho)
    return _finish_hyperbolic_curve(
        points,
        s,
        length,
        center=np.array([1.0, 0.0, 0.0]),
        curv_fn=lambda x: np.full_like(np.atleast_1d(np.asarray(x, float)), k_const),
    )


def perturbed_hyperbolic_circle(
    rho: float, harmonics: Sequence, n_samples: int = 2048
) -> HyperbolicCurve:
    """Circle with harmonic radial perturbations rho(phi) = rho + sum(...)."""
    if rho <= 0.0:
        raise InvalidSpecError("need rho > 0")
    terms = [(int(m), float(a), float(p)) for m, a, p in harmonics]

    def radius(phi):
        r = np.full_like(np.asarray(phi, dtype=float), rho)
        for m, a, p in terms:
            r = r + a * np.cos(m * np.asarray(phi) + p)
        return r

    def dradius(phi):
        d = np.zeros_like(np.asarray(phi, dtype=float))
        for m, a, p in terms:
            d = d - a * m * np.sin(m * np.asarray(phi) + p)
        return d

    def point_fn(phi):
        r = radius(phi)
        return np.column_stack(
            [np.cosh(r), np.sinh(r) * np.cos(phi), np.sinh(r) * np.sin(phi)]
        )

    def speed_fn(phi):
        return np.sqrt(dradius(phi) ** 2 + np.sinh(radius(phi)) ** 2)

    points, s, length, _ = arclength_resample(point_fn, int(n_samples), speed_fn)
    return _finish_hyperbolic_curve(points, s, length)


def hyperbolic_curve_from_points(points, n_samples: int = 1024) -> HyperbolicCurve:
    """Resample-and-validate path for raw hyperboloid sample loops."""
    raw = np.asarray(points, dtype=float)
    if float(np.max(np.abs(mdot(raw, raw) + 1.0))) > 1e-6:
        raise BadParametrizationError("input points must satisfy <x,x> = -1")
    resampled = normalize_timelike(raw)
    for _ in range(2):
        u = np.concatenate(
            [[0.0], np.cumsum(np.linalg.norm(np.diff(resampled, axis=0), axis=1))]
        )
        u = np.append(u, u[-1] + np.linalg.norm(resampled[0] - resampled[-1]))
        u *= TWO_PI / u[-1]
        spline = CubicSpline(u, np.vstack([resampled, resampled[:1]]), bc_type="periodic")

        def point_fn(t):
            return spline(np.mod(t, TWO_PI))

        def speed_fn(t):
            d = spline(np.mod(t, TWO_PI), 1)
            return np.sqrt(np.maximum(mdot(d, d), 1e-300))

        pts, s, length, _ = arclength_resample(point_fn, int(n_samples), speed_fn)
        resampled = normalize_timelike(pts)
    return _finish_hyperbolic_curve(resampled, s, length)


# ---------------------------------------------------------------------------
# convexity classification


@dataclass(frozen=True, eq=False)
class HorocyclicReport:
    horocyclic_convex: bool
    min_k: float
    min_k_param: float
    margin: float


def check_horocyclic_convexity(
    curve: HyperbolicCurve, margin: float = HOROCYCLIC_MARGIN
) -> HorocyclicReport:
    """Flag whether min k > 1 + margin, with the minimizing parameter."""
    k = np.asarray(curve.k, dtype=float)
    imin = int(np.argmin(k))
    param = np.asarray(curve.param if curve.param is not None else curve.s)
    return HorocyclicReport(
        horocyclic_convex=bool(k[imin] > 1.0 + margin),
        min_k=float(k[imin]),
        min_k_param=float(param[imin]),
        margin=margin,
    )


# ---------------------------------------------------------------------------
# propagation


@dataclass(frozen=True, eq=False)
class HyperbolicFront:
    """Equidistant front of a hyperbolic curve, base-parametrized."""

    base: object
    t: float
    points: np.ndarray
    normal: np.ndarray
    k: np.ndarray
    factor: np.ndarray  # cosh t + k_base sinh t
    regularity: np.ndarray
    cusps: np.ndarray
    signed_length: float
    area: float
    s: np.ndarray
    w: np.ndarray
    center: Optional[np.ndarray]
    period: float

    @property
    def L(self) -> float:
        return self.signed_length

    @property
    def A(self) -> float:
        return self.area

    @property
    def param(self) -> np.ndarray:
        return self.s

    @property
    def geometry(self) -> str:
        return HYPERBOLIC


def _base_curvature_callable(obj):
    if getattr(obj, "curv_fn", None) is not None:
        return obj.curv_fn
    param = obj.param if obj.param is not None else obj.s
    return periodic_interpolant(np.asarray(param), np.asarray(obj.k), float(obj.period))


def _first_cusp_time(k: np.ndarray) -> float:
    """Most recent negative t at which cosh t + k sinh t first vanishes."""
    top = float(np.max(k))
    if top <= 1.0:
        return -np.inf
    return -float(np.arctanh(1.0 / top))


def propagate_hyperbolic(curve, t: float, force: bool = False) -> HyperbolicFront:
    """Front at signed distance t along the outward conormal field.

    Non-horocyclically-convex input is accepted for t >= 0 and for
    negative t up to the first cusp onset; beyond that the closed forms
    stop describing the front and the call refuses unless ``force``.
    """
    k = np.asarray(curve.k, dtype=float)
    hc = getattr(curve, "horocyclic_convex", None)
    if hc is None:
        hc = bool(np.min(k) > 1.0 + HOROCYCLIC_MARGIN)
    if not hc and not force and t < _first_cusp_time(k):
        raise NotHorocyclicallyConvexError(
            "negative-time propagation past cusp onset needs a horocyclically "
            "convex curve (or force=True)"
        )
    nu = curve.normal
    factor = np.cosh(t) + np.sinh(t) * k
    pts = np.cosh(t) * curve.points + np.sinh(t) * nu
    n = len(pts)
    spacing = curve.period / n

    d1 = _column_deriv(pts, 1, spacing)
    d2 = _column_deriv(pts, 2, spacing)
    speed_sq = mdot(d1, d1)
    ok = speed_sq > CUSP_SPEED_GUARD**2
    k_front = np.full(n, np.nan)
    nu_front = np.full_like(pts, np.nan)
    with np.errstate(invalid="ignore", divide="ignore"):
        det = np.einsum("ij,ij->i", np.cross(pts, d1), d2)
        k_front[ok] = det[ok] / np.sqrt(speed_sq[ok]) ** 3
        nu_front[ok] = mcross(d1[ok] / np.sqrt(speed_sq[ok])[:, None], pts[ok])

    cusps = np.empty(0, dtype=float)
    pairs, _ = kernels.transitions(factor, 0.0)
    if len(pairs):
        param = np.asarray(curve.param if curve.param is not None else curve.s)
        kfn = _base_curvature_callable(curve)

        def g(x):
            return np.cosh(t) + np.sinh(t) * eval_scalar(kfn, x)

        roots = []
        for i, j in pairs:
            lo, hi = param[i], param[j]
            if hi <= lo:
                hi += curve.period
            roots.append(brentq(g, lo, hi, xtol=ROOT_XTOL) % curve.period)
        cusps = np.sort(np.asarray(roots))

    w = np.asarray(curve.w, dtype=float)
    center = getattr(curve, "center", None)
    if center is None:
        center = normalize_timelike(pts.mean(axis=0))
    area = hyperbolic_area_green(pts, center, spacing)
    return HyperbolicFront(
        base=curve,
        t=float(t),
        points=pts,
        normal=nu_front,
        k=k_front,
        factor=factor,
        regularity=np.sign(factor).astype(np.int8),
        cusps=cusps,
        signed_length=float(np.sum(factor * w)),
        area=area,
        s=np.asarray(curve.s, dtype=float),
        w=factor * w,
        center=np.asarray(center, dtype=float),
        period=float(curve.period),
    )


@dataclass(frozen=True, eq=False)
class CollapseReport:
    front: HyperbolicFront
    t: float
    mean_curvature: float
    signed_length: float
    degenerate: bool
    cusp_count: Optional[int]
    cusp_params: np.ndarray
    passed: Optional[bool]


def collapse_front(curve: HyperbolicCurve, force: bool = False) -> CollapseReport:
    """Propagate to t = -arccoth((2 pi + A)/L), where signed length vanishes.

    Cusps of the collapse front sit exactly at the base parameters where
    k equals the mean curvature; closed convex curves with k > 1 have at
    least four.  Circles collapse to a point and report degenerate.
    """
    if not curve.horocyclic_convex and not force:
        raise NotHorocyclicallyConvexError(
            "collapse time is defined for horocyclically convex curves"
        )
    kbar = (TWO_PI + curve.A) / curve.L
    if kbar <= 1.0 + 1e-12:
        raise CothDomainError(f"mean curvature {kbar:.6g} <= 1: no collapse time")
    t = -0.5 * np.log((kbar + 1.0) / (kbar - 1.0))
    front = propagate_hyperbolic(curve, t, force=force)
    try:
        profile = curvature_profile(curve)
    except DegenerateProfileError:
        return CollapseReport(
            front=front,
            t=float(t),
            mean_curvature=float(kbar),
            signed_length=front.signed_length,
            degenerate=True,
            cusp_count=None,
            cusp_params=np.empty(0),
            passed=None,
        )
    count = len(profile.crossing_params)
    return CollapseReport(
        front=front,
        t=float(t),
        mean_curvature=float(kbar),
        signed_length=front.signed_length,
        degenerate=False,
        cusp_count=count,
        cusp_params=profile.crossing_params,
        passed=count >= 4,
    )


@dataclass(frozen=True, eq=False)
class HyperbolicLemmaReport:
    t_values: np.ndarray
    max_deviation: float
    deviations: np.ndarray
    skipped: np.ndarray


def mean_attainment_front_check_h(
    curve: HyperbolicCurve, t_values: Sequence[float], guard: float = 0.05
) -> HyperbolicLemmaReport:
    """Attainment parameters keep mean front curvature under propagation."""
    profile = curvature_profile(curve)
    stars = profile.crossing_params
    ts = np.asarray(list(t_values), dtype=float)
    devs = np.full(ts.shape, np.nan)
    skipped = np.zeros(ts.shape, dtype=bool)
    for i, t in enumerate(ts):
        front = propagate_hyperbolic(curve, t)
        if float(np.min(np.abs(front.factor))) < guard:
            skipped[i] = True
            continue
        kfn = periodic_interpolant(front.s, front.k, front.period)
        kbar_t = (TWO_PI + front.area) / front.signed_length
        vals = np.array([eval_scalar(kfn, p) for p in stars])
        devs[i] = float(np.max(np.abs(vals - kbar_t))) if stars.size else 0.0
    valid = devs[~skipped]
    return HyperbolicLemmaReport(
        t_values=ts,
        max_deviation=float(valid.max()) if valid.size else 0.0,
        deviations=devs,
        skipped=skipped,
    )


# ---------------------------------------------------------------------------
# rounded semicircle: convex but not horocyclically convex


@dataclass(frozen=True)
class RoundedSemicircleSpec:
    """Semicircular region with smoothed corners and a near-flat diameter.

    ``r`` is the radius, ``corner_scale`` the arc length of each linear
    curvature ramp at the two corners, ``flat_deviation`` the small
    constant curvature given to the smoothed diameter.
    """

    r: float
    corner_scale: float = 0.02
    flat_deviation: float = 0.05
    n_samples: int = 4096

    def __post_init__(self):
        if not self.r > 0.0:
            raise InvalidSpecError("need r > 0")
        if not self.corner_scale > 0.0:
            raise InvalidSpecError("need corner_scale > 0")
        if not 0.0 < self.flat_deviation < 1.0:
            raise InvalidSpecError("need 0 < flat_deviation < 1")
        if self.n_samples < 16:
            raise InvalidSpecError("need n_samples >= 16")


def semicircle_reference(r: float):
    """Exact (perimeter, area, mean curvature) of the unsmoothed half-disc."""
    length = 2.0 * r + np.pi * np.sinh(r)
    area = np.pi * (np.cosh(r) - 1.0)
    return length, area, (TWO_PI + area) / length


def _corner_peak(r: float, corner_scale: float, flat_deviation: float) -> float:
    # each corner turns the tangent by ~pi/2 across two linear ramps
    arc_k = 1.0 / np.tanh(r)
    peak = np.pi / (2.0 * corner_scale) - 0.5 * (arc_k + flat_deviation)
    if peak <= arc_k:
        raise InvalidSpecError("corner_scale too large to form a corner")
    return peak


def _frame_ode(knots: np.ndarray, values: np.ndarray, center: Optional[np.ndarray]):
    def rhs(s, y):
        x = y[0:3]
        tvec = y[3:6]
        kk = np.interp(s, knots, values)
        nu = mcross(tvec, x)
        out = np.empty(len(y))
        out[0:3] = tvec
        out[3:6] = x - kk * nu
        if center is not None:
            u = mdot(x, rhs.e1)
            v = mdot(x, rhs.e2)
            du = mdot(tvec, rhs.e1)
            dv = mdot(tvec, rhs.e2)
            cosh_r = max(-mdot(x, center), 1.0)
            out[6] = (cosh_r - 1.0) * (u * dv - v * du) / (u * u + v * v)
        return out

    if center is not None:
        rhs.e1, rhs.e2 = _polar_frame(center)
    return rhs


def _project_frame(y: np.ndarray) -> np.ndarray:
    """Snap (x, T) back onto the unit hyperboloid with unit tangent.

    The frame flow is exponentially unstable off the constraint manifold
    (deviations grow like e^s), so the ~1e-9 drift a long integration
    accumulates must be removed between segments or it swamps closure.
    """
    out = y.copy()
    x = out[0:3]
    x /= np.sqrt(-mdot(x, x))
    tvec = out[3:6]
    tvec += mdot(tvec, x) * x
    tvec /= np.sqrt(mdot(tvec, tvec))
    return out


def _integrate_profile(knots, values, y0, center=None, s_eval=None):
    rhs = _frame_ode(np.asarray(knots), np.asarray(values), center)
    y = np.asarray(y0, dtype=float)
    rows = [] if s_eval is not None else None
    # project at least once per unit of arc length: e^1 amplification max
    spans = [knots[0]]
    for lo, hi in zip(knots[:-1], knots[1:]):
        pieces = max(1, int(np.ceil(hi - lo)))
        spans.extend(lo + (hi - lo) * np.arange(1, pieces + 1) / pieces)
    spans = np.asarray(spans)
    for lo, hi in zip(spans[:-1], spans[1:]):
        sol = solve_ivp(
            rhs,
            (lo, hi),
            y,
            method="DOP853",
            rtol=1e-13,
            atol=1e-14,
            dense_output=s_eval is not None,
        )
        if not sol.success:
            raise OvalfrontError(f"frame integration failed: {sol.message}")
        if s_eval is not None:
            inside = s_eval[(s_eval >= lo) & (s_eval < hi)]
            if inside.size:
                rows.append(sol.sol(inside).T)
        y = _project_frame(sol.y[:, -1])
    samples = np.vstack(rows) if rows else None
    return y, samples


def _half_profile(r, corner_scale, flat_deviation, half_flat, half_arc):
    arc_k = 1.0 / np.tanh(r)
    peak = _corner_peak(r, corner_scale, flat_deviation)
    knots = np.array(
        [
            0.0,
            half_flat,
            half_flat + corner_scale,
            half_flat + 2.0 * corner_scale,
            half_flat + 2.0 * corner_scale + half_arc,
        ]
    )
    values = np.array([flat_deviation, flat_deviation, peak, arc_k, arc_k])
    return knots, values


_START_STATE = np.array([1.0, 0.0, 0.0, 0.0, 0.0, 1.0])


def _shoot_half(r, corner_scale, flat_deviation, lengths):
    half_flat, half_arc = lengths
    if half_flat < 1e-6 or half_arc < 1e-6:
        return np.array([10.0 + abs(half_flat), 10.0 + abs(half_arc)])
    knots, values = _half_profile(r, corner_scale, flat_deviation, half_flat, half_arc)
    y, _ = _integrate_profile(knots, values, _START_STATE)
    x, tvec = y[0:3], y[3:6]
    # end on the mirror geodesic x2 = 0, tangent perpendicular to it
    return np.array([x[2], -tvec[0] * x[1] + tvec[1] * x[0]])


def build_rounded_semicircle(spec: RoundedSemicircleSpec) -> HyperbolicCurve:
    """Construct the smoothed half-disc boundary by curvature shooting.

    The curvature profile is piecewise linear in arc length: a near-flat
    stretch (the smoothed diameter), two corner blends ramping up to a
    large peak and back down to coth r, and the circular arc.  Bilateral
    symmetry reduces closure to a 2-unknown shooting problem for the flat
    and arc lengths; the closed curve is C^2 and convex but not
    horocyclically convex.
    """
    r, c, eps = spec.r, spec.corner_scale, spec.flat_deviation
    _corner_peak(r, c, eps)  # validate early
    guess = np.array([max(r - c, 0.1), max(0.5 * np.pi * np.sinh(r) - c, 0.1)])
    sol = root(
        lambda v: _shoot_half(r, c, eps, v), guess, method="hybr", options={"xtol": 1e-12}
    )
    resid = float(np.linalg.norm(_shoot_half(r, c, eps, sol.x)))
    if resid > 5e-10:
        raise OvalfrontError(f"corner shooting failed to close (residual {resid:.3g})")
    half_flat, half_arc = sol.x

    arc_k = 1.0 / np.tanh(r)
    peak = _corner_peak(r, c, eps)
    length = 2.0 * half_flat + 4.0 * c + 2.0 * half_arc
    knots = np.array(
        [
            0.0,
            half_flat,
            half_flat + c,
            half_flat + 2.0 * c,
            half_flat + 2.0 * c + 2.0 * half_arc,
            length - half_flat - c,
            length - half_flat,
            length,
        ]
    )
    values = np.array([eps, eps, peak, arc_k, arc_k, peak, eps, eps])

    n = int(spec.n_samples)
    s = np.arange(n) * (length / n)
    y_end, samples = _integrate_profile(knots, values, _START_STATE, s_eval=s)
    closure = float(np.linalg.norm(y_end[0:3] - _START_STATE[0:3]))
    points = normalize_timelike(samples[:, 0:3])
    tangents = samples[:, 3:6]
    center = normalize_timelike(points.mean(axis=0))
    y_end2, _ = _integrate_profile(
        knots, values, np.append(_START_STATE, 0.0), center=center
    )
    area = float(y_end2[6])

    k = np.interp(s, knots, values)
    total_turn = float(np.trapezoid(values, knots))
    nu = _normalize_spacelike(mcross(tangents, points))
    period = length

    def curv_fn(x):
        return np.interp(np.mod(x, period), knots, values)

    imin = int(np.argmin(k))
    return HyperbolicCurve(
        geometry=HYPERBOLIC,
        points=points,
        s=s,
        k=k,
        L=float(length),
        A=area,
        param=s,
        tangent=tangents,
        normal=nu,
        w=np.full(n, length / n),
        curv_fn=curv_fn,
        min_k=float(k[imin]),
        min_k_param=float(s[imin]),
        horocyclic_convex=False,
        curvature_class=classify_curvature(k),
        center=center,
        gb_residual=abs(total_turn - (TWO_PI + area)),
        build_residual=closure,
    )


# ---------------------------------------------------------------------------
# counterexample pipeline


def semicircle_mean_gap(r: float) -> float:
    """coth r minus the exact semicircle mean curvature; positive past threshold."""
    return 1.0 / np.tanh(r) - semicircle_reference(r)[2]


@dataclass(frozen=True, eq=False)
class ThresholdReport:
    r_star: float
    sign_changes: int
    scan_lo: float
    scan_hi: float


def counterexample_threshold(lo: float = 0.05, hi: float = 5.0, n_scan: int = 4096) -> ThresholdReport:
    """Locate the radius where the semicircle mean curvature crosses coth r."""
    rs = np.linspace(lo, hi, int(n_scan))
    gs = np.array([semicircle_mean_gap(r) for r in rs])
    flips = np.flatnonzero(np.sign(gs[:-1]) * np.sign(gs[1:]) < 0)
    if len(flips) != 1:
        raise OvalfrontError(f"expected one threshold crossing, found {len(flips)}")
    i = int(flips[0])
    r_star = brentq(semicircle_mean_gap, rs[i], rs[i + 1], xtol=1e-12)
    return ThresholdReport(r_star=float(r_star), sign_changes=1, scan_lo=lo, scan_hi=hi)


@dataclass(frozen=True, eq=False)
class CounterexampleReport:
    r: float
    mean_curvature: float
    coth_r: float
    mean_below_coth: bool
    convex: bool
    horocyclically_convex: bool
    attainment_count: int
    attainment_params: np.ndarray
    counterexample: bool
    curve: HyperbolicCurve


def counterexample_verdict(spec: RoundedSemicircleSpec) -> CounterexampleReport:
    """Build the rounded semicircle and count mean-curvature attainments.

    Past the threshold radius the mean curvature falls below coth r and,
    with this smoothing profile, is attained exactly twice (once on each
    corner ramp): a convex curve where the four-point conclusion fails.
    """
    curve = build_rounded_semicircle(spec)
    kbar = (TWO_PI + curve.A) / curve.L
    coth_r = 1.0 / np.tanh(spec.r)
    profile = CurvatureProfile(
        values=np.asarray(curve.k),
        mean=float(kbar),
        param=np.asarray(curve.s),
        period=curve.L,
        fn=curve.curv_fn,
    )
    report = count_mean_crossings(profile)
    below = bool(kbar < coth_r)
    convex = bool(curve.min_k > 0.0)
    return CounterexampleReport(
        r=spec.r,
        mean_curvature=float(kbar),
        coth_r=float(coth_r),
        mean_below_coth=below,
        convex=convex,
        horocyclically_convex=curve.horocyclic_convex,
        attainment_count=report.count,
        attainment_params=report.crossings,
        counterexample=below and convex and report.count < 4,
        curve=curve,
    )
