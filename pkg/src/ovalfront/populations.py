"""Seeded random curve populations for the verification suites.

Every generator takes an explicit seed and draws through a single
``numpy.random.default_rng`` stream, so a given (seed, count) pair always
reproduces the same curves, including the rejection steps.
"""

from __future__ import annotations

import numpy as np

from .hyperbolic import HyperbolicCurve, perturbed_hyperbolic_circle
from .sphere import SphereCurve, perturbed_sphere_circle, tennis_seam
from .support import SupportOval, build_oval

DEFAULT_SEED = 1786


def random_support_ovals(
    count: int = 200,
    seed: int = DEFAULT_SEED,
    n_samples: int = 1024,
    n_max: int = 8,
    min_radius: float = 0.05,
    min_variation: float = 1e-3,
):
    """Random convex support-function ovals with harmonics 2..n_max.

    Amplitudes fall off like 1/m^2; draws violating the convexity margin
    (min curvature radius <= min_radius) or too close to a circle are
    rejected and redrawn.
    """
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        coeffs = [(1.0, 0.0), (0.0, 0.0)]
        for m in range(2, n_max + 1):
            sigma = 0.08 / m**2
            coeffs.append((rng.normal(0.0, sigma), rng.normal(0.0, sigma)))
        oval = SupportOval(coeffs=tuple(coeffs), n_samples=n_samples)
        try:
            curve = build_oval(oval)
        except Exception:
            continue
        radii = 1.0 / curve.k
        if float(np.min(radii)) <= min_radius:
            continue
        if float(np.max(radii) - np.min(radii)) <= min_variation:
            continue
        out.append(curve)
    return out


def random_trig_polys(
    count: int = 1000,
    seed: int = DEFAULT_SEED,
    n_points: int = 512,
    extra_harmonics: int = 4,
):
    """Random mean-zero trig polynomials with known lowest harmonic.

    Returns a list of (values, m) pairs.  The lowest harmonic m is drawn
    from [1, 6] and given amplitude at least 0.15 so detection from the
    spectrum is unambiguous; higher harmonics decay like 1/n.
    """
    rng = np.random.default_rng(seed)
    x = np.arange(n_points) * (2.0 * np.pi / n_points)
    out = []
    for _ in range(count):
        m = int(rng.integers(1, 7))
        values = np.zeros(n_points)
        phase = rng.uniform(0.0, 2.0 * np.pi)
        base_amp = 0.15 + abs(rng.normal(0.0, 0.5))
        values += base_amp * np.cos(m * x + phase)
        for n in range(m + 1, m + 1 + extra_harmonics):
            values += rng.normal(0.0, 0.3 / n) * np.cos(n * x + rng.uniform(0.0, 2.0 * np.pi))
        out.append((values, m))
    return out


def random_perturbed_sphere_circles(
    count: int = 50,
    seed: int = DEFAULT_SEED,
    n_samples: int = 1024,
    min_curvature: float = 0.2,
):
    """Random convex perturbed circles contained in an open hemisphere."""
    rng = np.random.default_rng(seed)
    out: list[SphereCurve] = []
    while len(out) < count:
        rho = rng.uniform(0.5, 1.0)
        orders = rng.choice([2, 3, 4, 5], size=2, replace=False)
        harmonics = [
            (int(m), rng.normal(0.0, 0.12 / m**2), rng.uniform(0.0, 2.0 * np.pi))
            for m in orders
        ]
        try:
            curve = perturbed_sphere_circle(rho, harmonics, n_samples=n_samples)
        except Exception:
            continue
        if curve.pole is None:
            continue
        if float(np.min(curve.k)) <= min_curvature:
            continue
        if float(np.max(curve.k) - np.min(curve.k)) <= 1e-4:
            continue
        out.append(curve)
    return out


def random_hyperbolic_ovals(
    count: int = 50,
    seed: int = DEFAULT_SEED,
    n_samples: int = 1024,
    min_curvature: float = 1.05,
):
    """Random horocyclically convex perturbed circles on the hyperboloid."""
    rng = np.random.default_rng(seed)
    out: list[HyperbolicCurve] = []
    while len(out) < count:
        rho = rng.uniform(0.8, 1.4)
        orders = rng.choice([2, 3, 4, 5], size=2, replace=False)
        harmonics = [
            (int(m), rng.normal(0.0, 0.08 / m**2), rng.uniform(0.0, 2.0 * np.pi))
            for m in orders
        ]
        try:
            curve = perturbed_hyperbolic_circle(rho, harmonics, n_samples=n_samples)
        except Exception:
            continue
        if float(np.min(curve.k)) <= min_curvature:
            continue
        if float(np.max(curve.k) - np.min(curve.k)) <= 1e-4:
            continue
        out.append(curve)
    return out


def torsion_test_curves(count: int = 20, seed: int = DEFAULT_SEED, n_samples: int = 1024):
    """Simple spherical curves for total-torsion checks.

    A mix of convex perturbed circles and seam-like wavy equators; both
    families are embedded for the mild amplitudes drawn here.
    """
    rng = np.random.default_rng(seed)
    n_wavy = max(count // 4, 1)
    out: list[SphereCurve] = []
    while len(out) < count - n_wavy:
        rho = rng.uniform(0.6, 1.0)
        m = int(rng.choice([2, 3, 4]))
        harmonics = [(m, rng.normal(0.0, 0.15 / m**2), rng.uniform(0.0, 2.0 * np.pi))]
        try:
            curve = perturbed_sphere_circle(rho, harmonics, n_samples=n_samples)
        except Exception:
            continue
        if float(np.max(curve.k) - np.min(curve.k)) <= 1e-4:
            continue
        out.append(curve)
    while len(out) < count:
        beta = rng.uniform(0.15, 0.3)
        out.append(tennis_seam(beta, n_samples=n_samples))
    return out
