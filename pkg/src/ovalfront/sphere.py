"""Closed curves on the unit sphere: curvature, fronts, inflections, torsion.

Curves are sampled at uniform arc length as unit 3-vectors.  The outward
conormal is nu = gamma' x gamma, so the front at time t is
cos(t) gamma + sin(t) nu and a circle of geodesic radius R propagates to
radius R + t.  Geodesic curvature is the triple product
det[gamma, gamma', gamma''], positive for curves cooriented outwards.

Enclosed area is measured two independent ways (a Green-type polar
quadrature around an interior pole, and a fan of signed spherical-triangle
excesses) and cross-checked against Gauss-Bonnet: integral(k_g ds) = 2 pi - A.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import brentq

from . import _kernels as kernels
from .curves import (
    ROOT_XTOL,
    SPHERICAL,
    TWO_PI,
    CurvatureProfile,
    SampledCurve,
    arclength_resample,
    closed_spline_through,
    count_mean_crossings,
    curvature_profile,
    eval_scalar,
    periodic_interpolant,
)
from .errors import (
    BadParametrizationError,
    DegenerateProfileError,
    FrenetBreakdownError,
    InvalidSpecError,
    NotBisectingError,
    NotInHemisphereError,
    OvalfrontError,
)

UNIT_NORM_TOL = 1e-10
SPEED_TOL = 1e-6
FRENET_TOL = 1e-6
# |measured speed| below this counts as a cusp sample in fronts
CUSP_SPEED_GUARD = 1e-9


@dataclass(frozen=True, eq=False, kw_only=True)
class SphereCurve(SampledCurve):
    """Spherical curve with hemisphere witness and spherical diameter."""

    pole: Optional[np.ndarray] = None
    diameter: float = float("nan")


# ---------------------------------------------------------------------------
# differential quantities


def _column_deriv(points: np.ndarray, order: int, spacing: float) -> np.ndarray:
    return np.column_stack(
        [kernels.periodic_deriv(points[:, j], order, spacing) for j in range(points.shape[1])]
    )


def geodesic_curvature(points: np.ndarray, spacing: float):
    """Geodesic curvature and outward conormal of unit-speed samples.

    Returns ``(k_g, nu, d1)``.  Raises :class:`BadParametrizationError`
    when the sampled speed strays from 1 by more than 1e-6.
    """
    d1 = _column_deriv(points, 1, spacing)
    speed = np.linalg.norm(d1, axis=1)
    err = float(np.max(np.abs(speed - 1.0)))
    if err > SPEED_TOL:
        raise BadParametrizationError(f"|gamma'| deviates from 1 by {err:.3g}")
    d2 = _column_deriv(points, 2, spacing)
    k = np.einsum("ij,ij->i", np.cross(points, d1), d2) / speed**3
    nu = np.cross(d1, points)
    nu /= np.linalg.norm(nu, axis=1)[:, None]
    return k, nu, d1


def spherical_diameter(points: np.ndarray, chunk: int = 512) -> float:
    """Largest great-circle distance between curve samples.

    Grid maximum over all pairs; a lower bound on the true diameter with
    error O(spacing^2), tight enough for the embeddedness margin.
    """
    best = -1.0
    for lo in range(0, len(points), chunk):
        dots = points[lo : lo + chunk] @ points.T
        best = max(best, float(np.arccos(np.clip(dots, -1.0, 1.0)).max()))
    return best


# ---------------------------------------------------------------------------
# area oracles


def _orthonormal_frame(pole: np.ndarray):
    seed = np.array([1.0, 0.0, 0.0])
    if abs(float(pole @ seed)) > 0.9:
        seed = np.array([0.0, 1.0, 0.0])
    e1 = seed - (seed @ pole) * pole
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(pole, e1)
    return e1, e2


def _winding_steps(phi: np.ndarray) -> np.ndarray:
    return np.angle(np.exp(1j * (np.roll(phi, -1) - phi)))


def spherical_area_green(points: np.ndarray, pole: np.ndarray, spacing: float) -> float:
    """Enclosed area by the polar Green identity A = loop(1 - cos r) dphi.

    ``r`` and ``phi`` are polar coordinates about ``pole``, which must lie
    inside the loop (winding one).  Spectrally accurate for smooth curves.
    """
    e1, e2 = _orthonormal_frame(pole)
    r = np.arccos(np.clip(points @ pole, -1.0, 1.0))
    phi_raw = np.arctan2(points @ e2, points @ e1)
    steps = _winding_steps(phi_raw)
    winding = float(steps.sum()) / TWO_PI
    n = len(points)
    # split phi into a linear ramp plus a periodic remainder before FD
    ramp = winding * TWO_PI * np.arange(n) / n
    periodic = np.cumsum(np.concatenate([[0.0], steps[:-1]])) - ramp + phi_raw[0]
    dphi = kernels.periodic_deriv(periodic, 1, spacing) + winding * TWO_PI / (n * spacing)
    return float(np.sum((1.0 - np.cos(r)) * dphi) * spacing)


def spherical_area_fan(points: np.ndarray, apex: np.ndarray) -> float:
    """Signed spherical area as a fan of triangle excesses from ``apex``."""
    b = points
    c = np.roll(points, -1, axis=0)
    num = np.einsum("j,ij->i", apex, np.cross(b, c))
    den = 1.0 + b @ apex + np.einsum("ij,ij->i", b, c) + c @ apex
    return float(np.sum(2.0 * np.arctan2(num, den)))


def gauss_bonnet_residual(curve: SampledCurve) -> float:
    """|integral(k_g ds) - (2 pi - A)| for the measured curve."""
    total = float(np.sum(curve.k * curve.w))
    return abs(total - (TWO_PI - curve.A))


# ---------------------------------------------------------------------------
# construction


def _finish_sphere_curve(points, s, length, area_pole=None, curv_fn=None) -> SphereCurve:
    points = np.asarray(points, dtype=float)
    norms = np.linalg.norm(points, axis=1)
    if float(np.max(np.abs(norms - 1.0))) > UNIT_NORM_TOL:
        points = points / norms[:, None]
    n = len(points)
    spacing = length / n
    k, nu, _ = geodesic_curvature(points, spacing)
    w = np.full(n, spacing)

    mean = points.mean(axis=0)
    mean_norm = float(np.linalg.norm(mean))
    witness = None
    if mean_norm > 1e-9:
        cand = mean / mean_norm
        if float(np.min(points @ cand)) > 0.0:
            witness = cand
    pole = area_pole if area_pole is not None else witness
    if pole is None:
        raise NotInHemisphereError(
            "no usable interior pole; pass area_pole for equator-like curves"
        )
    area = spherical_area_green(points, pole, spacing)
    fan = spherical_area_fan(points, pole)
    # polygonized fan converges O(n^-2); keep a floor so coarse grids do
    # not false-alarm while orientation bugs (O(1) disagreement) still trip
    fan_tol = max(1e-5, 60.0 / n**2)
    if abs(fan - area) > fan_tol:
        raise OvalfrontError(
            f"area oracles disagree: green={area:.8g} fan={fan:.8g}"
        )
    return SphereCurve(
        geometry=SPHERICAL,
        points=points,
        s=np.asarray(s, dtype=float),
        k=k,
        L=float(length),
        A=area,
        param=np.asarray(s, dtype=float),
        tangent=None,
        normal=nu,
        w=w,
        curv_fn=curv_fn,
        pole=witness,
        diameter=spherical_diameter(points),
    )


def sphere_circle(rho: float, n_samples: int = 1024) -> SphereCurve:
    """Circle of geodesic radius rho about the north pole."""
    if not 0.0 < rho < np.pi:
        raise InvalidSpecError("need 0 < rho < pi")
    n = int(n_samples)
    length = TWO_PI * np.sin(rho)
    s = np.arange(n) * (length / n)
    u = s / np.sin(rho)
    points = np.column_stack(
        [np.sin(rho) * np.cos(u), np.sin(rho) * np.sin(u), np.full(n, np.cos(rho))]
    )
    k_const = 1.0 / np.tan(rho)
    return _finish_sphere_curve(
        points,
        s,
        length,
        area_pole=np.array([0.0, 0.0, 1.0]),
        curv_fn=lambda x: np.full_like(np.atleast_1d(np.asarray(x, float)), k_const),
    )


def _colatitude_curve(theta_fn, dtheta_fn, n_samples: int):
    def point_fn(phi):
        th = theta_fn(phi)
        return np.column_stack(
            [np.sin(th) * np.cos(phi), np.sin(th) * np.sin(phi), np.cos(th)]
        )

    def speed_fn(phi):
        return np.sqrt(dtheta_fn(phi) ** 2 + np.sin(theta_fn(phi)) ** 2)

    return arclength_resample(point_fn, n_samples, speed_fn)


def perturbed_sphere_circle(
    rho: float, harmonics: Sequence, n_samples: int = 2048
) -> SphereCurve:
    """Circle of radius rho with harmonic colatitude perturbations.

    ``harmonics`` is a sequence of (order, amplitude, phase) triples; the
    colatitude about the north pole is
    theta(phi) = rho + sum(amp * cos(order * phi + phase)).
    """
    if not 0.0 < rho < np.pi:
        raise InvalidSpecError("need 0 < rho < pi")
    terms = [(int(m), float(a), float(p)) for m, a, p in harmonics]

    def theta_fn(phi):
        th = np.full_like(np.asarray(phi, dtype=float), rho)
        for m, a, p in terms:
            th = th + a * np.cos(m * np.asarray(phi) + p)
        return th

    def dtheta_fn(phi):
        d = np.zeros_like(np.asarray(phi, dtype=float))
        for m, a, p in terms:
            d = d - a * m * np.sin(m * np.asarray(phi) + p)
        return d

    points, s, length, _ = _colatitude_curve(theta_fn, dtheta_fn, int(n_samples))
    return _finish_sphere_curve(points, s, length, area_pole=np.array([0.0, 0.0, 1.0]))


def tennis_seam(beta: float = 0.25, n_samples: int = 2048) -> SphereCurve:
    """Wavy equator theta = pi/2 + beta sin(2 phi): the tennis-ball seam.

    Bisects the sphere by symmetry and has exactly four inflections for
    moderate beta.
    """
    if not 0.0 < beta < 1.0:
        raise InvalidSpecError("need 0 < beta < 1")

    def theta_fn(phi):
        return np.pi / 2 + beta * np.sin(2.0 * np.asarray(phi, dtype=float))

    def dtheta_fn(phi):
        return 2.0 * beta * np.cos(2.0 * np.asarray(phi, dtype=float))

    points, s, length, _ = _colatitude_curve(theta_fn, dtheta_fn, int(n_samples))
    return _finish_sphere_curve(points, s, length, area_pole=np.array([0.0, 0.0, 1.0]))


def sphere_curve_from_points(points, n_samples: int = 1024) -> SphereCurve:
    """Resample-and-validate path for raw point loops on the sphere."""
    raw = np.asarray(points, dtype=float)
    norms = np.linalg.norm(raw, axis=1)
    if float(np.max(np.abs(norms - 1.0))) > 1e-6:
        raise BadParametrizationError("input points must lie on the unit sphere")
    resampled = raw / norms[:, None]
    for _ in range(2):  # polish: normalization perturbs the speed slightly
        point_fn, speed_fn = closed_spline_through(resampled)
        pts, s, length, _ = arclength_resample(point_fn, int(n_samples), speed_fn)
        resampled = pts / np.linalg.norm(pts, axis=1)[:, None]
    return _finish_sphere_curve(resampled, s, length)


# ---------------------------------------------------------------------------
# fronts


@dataclass(frozen=True, eq=False)
class SphereFront:
    """Equidistant front of a spherical curve, base-parametrized."""

    base: object
    t: float
    points: np.ndarray
    normal: np.ndarray
    k: np.ndarray  # measured front curvature; NaN at cusp samples
    factor: np.ndarray  # cos t + k_base sin t
    regularity: np.ndarray
    cusps: np.ndarray
    signed_length: float
    area: float
    s: np.ndarray
    w: np.ndarray
    pole: Optional[np.ndarray]
    period: float

    # duck-typed aliases so fronts can be propagated again
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
        return SPHERICAL


def _base_curvature_callable(obj):
    if getattr(obj, "curv_fn", None) is not None:
        return obj.curv_fn
    param = obj.param if obj.param is not None else obj.s
    return periodic_interpolant(np.asarray(param), np.asarray(obj.k), float(obj.period))


def propagate_sphere(curve, t: float) -> SphereFront:
    """Front at signed distance t along the outward conormal field."""
    k = np.asarray(curve.k, dtype=float)
    nu = curve.normal
    factor = np.cos(t) + np.sin(t) * k
    pts = np.cos(t) * curve.points + np.sin(t) * nu
    n = len(pts)
    spacing = curve.period / n

    d1 = _column_deriv(pts, 1, spacing)
    d2 = _column_deriv(pts, 2, spacing)
    speed = np.linalg.norm(d1, axis=1)
    ok = speed > CUSP_SPEED_GUARD
    k_front = np.full(n, np.nan)
    with np.errstate(invalid="ignore", divide="ignore"):
        det = np.einsum("ij,ij->i", np.cross(pts, d1), d2)
        k_front[ok] = det[ok] / speed[ok] ** 3
    nu_front = np.full_like(pts, np.nan)
    nu_front[ok] = np.cross(d1[ok] / speed[ok, None], pts[ok])

    cusps = np.empty(0, dtype=float)
    pairs, _ = kernels.transitions(factor, 0.0)
    if len(pairs):
        param = np.asarray(curve.param if curve.param is not None else curve.s)
        kfn = _base_curvature_callable(curve)

        def g(x):
            return np.cos(t) + np.sin(t) * eval_scalar(kfn, x)

        roots = []
        for i, j in pairs:
            lo, hi = param[i], param[j]
            if hi <= lo:
                hi += curve.period
            roots.append(brentq(g, lo, hi, xtol=ROOT_XTOL) % curve.period)
        cusps = np.sort(np.asarray(roots))

    w = np.asarray(curve.w, dtype=float)
    signed_length = float(np.sum(factor * w))
    pole = getattr(curve, "pole", None)
    if pole is None:
        mean = pts.mean(axis=0)
        if np.linalg.norm(mean) > 1e-9:
            pole = mean / np.linalg.norm(mean)
    area = spherical_area_green(pts, pole, spacing) if pole is not None else float("nan")
    return SphereFront(
        base=curve,
        t=float(t),
        points=pts,
        normal=nu_front,
        k=k_front,
        factor=factor,
        regularity=np.sign(factor).astype(np.int8),
        cusps=cusps,
        signed_length=signed_length,
        area=area,
        s=np.asarray(curve.s, dtype=float),
        w=factor * w,
        pole=getattr(curve, "pole", None),
        period=float(curve.period),
    )


@dataclass(frozen=True, eq=False)
class EquatorialReport:
    front: SphereFront
    t: float
    area_gap: float
    degenerate: bool
    inflections: Optional[int]
    crossing_params: np.ndarray


def equatorial_front(curve: SphereCurve) -> EquatorialReport:
    """Propagate to t = atan((2 pi - A)/L), where the front bisects area.

    At that time the mean front curvature vanishes, so inflections of the
    front are exactly the mean-curvature attainment points of the base.
    """
    if curve.A >= TWO_PI:
        raise NotInHemisphereError("base curve already encloses half the sphere")
    t = float(np.arctan((TWO_PI - curve.A) / curve.L))
    front = propagate_sphere(curve, t)
    kf = front.k
    if np.any(~np.isfinite(kf)):
        raise BadParametrizationError("equatorial front is not regular")
    top = float(np.max(np.abs(kf)))
    if top <= 1e-6:
        return EquatorialReport(
            front=front,
            t=t,
            area_gap=abs(front.area - TWO_PI),
            degenerate=True,
            inflections=None,
            crossing_params=np.empty(0),
        )
    profile = CurvatureProfile(
        values=kf, mean=0.0, param=front.s, period=front.period, fn=None
    )
    report = count_mean_crossings(profile)
    return EquatorialReport(
        front=front,
        t=t,
        area_gap=abs(front.area - TWO_PI),
        degenerate=False,
        inflections=report.count,
        crossing_params=report.crossings,
    )


@dataclass(frozen=True, eq=False)
class RegularEmbeddedReport:
    t: float
    regular_margin: float
    diameter: float
    t_embedded: float
    regular: bool
    embedded: bool
    passed: bool


def check_regular_embedded(curve: SphereCurve, t: float) -> RegularEmbeddedReport:
    """Certify that the front at time t is regular and embedded.

    Regularity: cos t + k_g sin t keeps one sign.  Embeddedness: the first
    self-tangency of the distance flow cannot occur before
    t_1 = pi - d/2 > pi/2, with d the spherical diameter of the base.
    """
    if curve.pole is None:
        raise NotInHemisphereError("curve has no hemisphere witness")
    if not 0.0 < t <= np.pi / 2:
        raise ValueError("need 0 < t <= pi/2")
    margin = float(np.min(np.cos(t) + np.sin(t) * curve.k))
    d = curve.diameter
    t1 = np.pi - d / 2.0
    regular = margin > 0.0
    embedded = d < np.pi and t < t1
    return RegularEmbeddedReport(
        t=t,
        regular_margin=margin,
        diameter=d,
        t_embedded=t1,
        regular=regular,
        embedded=embedded,
        passed=regular and embedded,
    )


@dataclass(frozen=True, eq=False)
class TennisBallReport:
    degenerate: bool
    inflections: Optional[int]
    crossing_params: np.ndarray
    passed: Optional[bool]


def tennis_ball_check(curve: SphereCurve, area_tol: float = 1e-6) -> TennisBallReport:
    """Area-bisecting curves must have at least four inflections.

    Raises :class:`NotBisectingError` unless |A - 2 pi| <= area_tol.
    A great circle (k_g identically 0) is reported as degenerate, never as
    a pass or a fail.
    """
    if abs(curve.A - TWO_PI) > area_tol:
        raise NotBisectingError(f"|A - 2pi| = {abs(curve.A - TWO_PI):.3g} > {area_tol:.3g}")
    # the crossing band is relative to the profile amplitude, so a pure-noise
    # profile (great circle) needs an absolute floor here, as in equatorial_front
    if float(np.max(np.abs(curve.k))) <= 1e-6:
        return TennisBallReport(
            degenerate=True, inflections=None, crossing_params=np.empty(0), passed=None
        )
    profile = CurvatureProfile(
        values=curve.k, mean=0.0, param=curve.s, period=curve.L, fn=curve.curv_fn
    )
    try:
        report = count_mean_crossings(profile)
    except DegenerateProfileError:
        return TennisBallReport(
            degenerate=True, inflections=None, crossing_params=np.empty(0), passed=None
        )
    return TennisBallReport(
        degenerate=False,
        inflections=report.count,
        crossing_params=report.crossings,
        passed=report.count >= 4,
    )


@dataclass(frozen=True, eq=False)
class TorsionReport:
    integral: float
    degenerate: bool
    sign_changes: Optional[int]
    tau: np.ndarray


def total_torsion(curve: SphereCurve) -> TorsionReport:
    """Total torsion (Frenet quadrature) and its sign changes.

    Spherical curves have vanishing total torsion; simple ones change
    torsion sign at least four times.  Planar circles (torsion identically
    zero) are reported as degenerate.  Right-handed Frenet convention.
    """
    n = curve.n_samples
    spacing = curve.L / n
    d1 = _column_deriv(curve.points, 1, spacing)
    d2 = _column_deriv(curve.points, 2, spacing)
    d3 = _column_deriv(curve.points, 3, spacing)
    speed = np.linalg.norm(d1, axis=1)
    if float(np.max(np.abs(speed - 1.0))) > SPEED_TOL:
        raise BadParametrizationError("torsion needs unit-speed samples")
    kappa_sq = np.einsum("ij,ij->i", np.cross(d1, d2), np.cross(d1, d2))
    if float(np.min(kappa_sq)) < FRENET_TOL**2:
        raise FrenetBreakdownError("space curvature vanishes on the grid")
    tau = np.einsum("ij,ij->i", np.cross(d1, d2), d3) / kappa_sq
    integral = float(np.sum(tau) * spacing)
    top = float(np.max(np.abs(tau)))
    if top <= 1e-8:
        return TorsionReport(integral=integral, degenerate=True, sign_changes=None, tau=tau)
    pairs, _ = kernels.transitions(tau, 1e-7 * top)
    return TorsionReport(
        integral=integral, degenerate=False, sign_changes=len(pairs), tau=tau
    )


@dataclass(frozen=True, eq=False)
class SphereLemmaReport:
    t_values: np.ndarray
    max_deviation: float
    deviations: np.ndarray
    skipped: np.ndarray


def mean_attainment_front_check(
    curve: SphereCurve, t_values: Sequence[float], guard: float = 0.05
) -> SphereLemmaReport:
    """Attainment parameters keep mean front curvature under propagation.

    At parameters s* with k_g(s*) = (2 pi - A)/L, the measured front
    curvature must equal (2 pi - A_t)/L_t computed from the measured front
    area and signed length.
    """
    profile = curvature_profile(curve)
    stars = profile.crossing_params
    ts = np.asarray(list(t_values), dtype=float)
    devs = np.full(ts.shape, np.nan)
    skipped = np.zeros(ts.shape, dtype=bool)
    for i, t in enumerate(ts):
        front = propagate_sphere(curve, t)
        if float(np.min(np.abs(front.factor))) < guard:
            skipped[i] = True
            continue
        kfn = periodic_interpolant(front.s, front.k, front.period)
        kbar_t = (TWO_PI - front.area) / front.signed_length
        vals = np.array([eval_scalar(kfn, p) for p in stars])
        devs[i] = float(np.max(np.abs(vals - kbar_t))) if stars.size else 0.0
    valid = devs[~skipped]
    return SphereLemmaReport(
        t_values=ts,
        max_deviation=float(valid.max()) if valid.size else 0.0,
        deviations=devs,
        skipped=skipped,
    )
