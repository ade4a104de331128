"""Hyperboloid-model curves, fronts, collapse, and the rounded semicircle."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ovalfront import (
    BadParametrizationError,
    CothDomainError,
    HYPERBOLIC,
    InvalidSpecError,
    NotHorocyclicallyConvexError,
    RoundedSemicircleSpec,
    build_rounded_semicircle,
    check_horocyclic_convexity,
    classify_curvature,
    collapse_front,
    counterexample_threshold,
    counterexample_verdict,
    defect_value,
    gauss_bonnet_residual_h,
    geodesic_curvature_h,
    hyperbolic_area_green,
    hyperbolic_circle,
    hyperbolic_curve_from_points,
    mean_attainment_front_check_h,
    perturbed_hyperbolic_circle,
    propagate_hyperbolic,
    semicircle_mean_gap,
    semicircle_reference,
)

TWO_PI = 2.0 * np.pi

# coth(rho) references, fixed ahead of time
COTH_1 = 1.3130352854993313
COTH_5 = 1.0000908039820194
COTH_2 = 1.0373147207275481
# 2*pi*sinh(1.1) and 2*pi*(cosh(1.1) - 1)
CIRCLE_1_1_LENGTH = 8.3921205598558142
CIRCLE_1_1_AREA = 4.2004259549529473
# mean curvature (2 pi + A)/L of the exact sharp half-disc at r = 2
SHARP_R2_MEAN = 0.97185684724127326
# radius where the sharp half-disc mean curvature crosses coth r
THRESHOLD_R = 1.385837917355553


@pytest.fixture(scope="module")
def wavy():
    return perturbed_hyperbolic_circle(
        1.1, [(2, 0.04, 0.3), (3, 0.02, 1.0)], n_samples=1024
    )


@pytest.fixture(scope="module")
def semicircle_r2():
    return build_rounded_semicircle(RoundedSemicircleSpec(r=2.0))


# ---------------------------------------------------------------------------
# circles and measured invariants


def test_circle_curvature_is_coth_rho():
    np.testing.assert_allclose(hyperbolic_circle(1.0).k, COTH_1, atol=1e-8)
    np.testing.assert_allclose(hyperbolic_circle(5.0).k, COTH_5, atol=1e-8)


def test_circle_length_and_area():
    c = hyperbolic_circle(1.1)
    assert c.L == pytest.approx(CIRCLE_1_1_LENGTH, rel=1e-12)
    assert c.A == pytest.approx(CIRCLE_1_1_AREA, abs=1e-10)


def test_circle_is_horocyclically_convex():
    report = check_horocyclic_convexity(hyperbolic_circle(1.0))
    assert report.horocyclic_convex
    assert report.min_k == pytest.approx(COTH_1, abs=1e-8)


def test_gauss_bonnet_residual(wavy):
    assert wavy.gb_residual < 1e-8
    assert gauss_bonnet_residual_h(wavy) == pytest.approx(wavy.gb_residual, abs=1e-12)


def test_area_green_matches_stored(wavy):
    area = hyperbolic_area_green(wavy.points, wavy.center, wavy.L / wavy.n_samples)
    assert area == pytest.approx(wavy.A, abs=1e-12)


def test_classify_curvature_tags():
    tags = classify_curvature(np.array([1.5, 1.0, 0.5, 1.0 + 1e-9]))
    assert tags.tolist() == [1, 0, -1, 0]


def test_speed_check_rejects_angle_grid():
    n = 256
    u = np.linspace(0.0, TWO_PI, n, endpoint=False)
    u = u + 0.05 * np.sin(u)
    rho = 0.9
    pts = np.column_stack(
        [np.full(n, np.cosh(rho)), np.sinh(rho) * np.cos(u), np.sinh(rho) * np.sin(u)]
    )
    with pytest.raises(BadParametrizationError):
        geodesic_curvature_h(pts, TWO_PI * np.sinh(rho) / n)


# ---------------------------------------------------------------------------
# propagation


def test_front_of_circle_is_shifted_circle():
    f = propagate_hyperbolic(hyperbolic_circle(0.8), 0.3)
    np.testing.assert_allclose(f.points[:, 0], np.cosh(1.1), atol=1e-9)
    assert f.signed_length == pytest.approx(TWO_PI * np.sinh(1.1), abs=1e-8)
    assert f.area == pytest.approx(TWO_PI * (np.cosh(1.1) - 1.0), abs=1e-8)
    assert f.cusps.size == 0


def test_inward_front_of_circle():
    f = propagate_hyperbolic(hyperbolic_circle(0.8), -0.3)
    np.testing.assert_allclose(f.points[:, 0], np.cosh(0.5), atol=1e-9)
    assert f.signed_length == pytest.approx(TWO_PI * np.sinh(0.5), abs=1e-8)


def test_length_area_growth_identities(wavy):
    for t in (-0.25, 0.2, 0.5):
        f = propagate_hyperbolic(wavy, t)
        want_len = wavy.L * np.cosh(t) + (TWO_PI + wavy.A) * np.sinh(t)
        want_area = (TWO_PI + wavy.A) * np.cosh(t) + wavy.L * np.sinh(t) - TWO_PI
        assert f.signed_length == pytest.approx(want_len, abs=1e-7)
        assert f.area == pytest.approx(want_area, abs=1e-7)


def test_front_defect_is_invariant(wavy):
    base = defect_value(HYPERBOLIC, wavy.L, wavy.A)
    for t in (-0.2, 0.35):
        f = propagate_hyperbolic(wavy, t)
        assert defect_value(HYPERBOLIC, f.signed_length, f.area) == pytest.approx(
            base, rel=1e-6
        )


def test_propagation_semigroup():
    c = hyperbolic_circle(0.7)
    two_step = propagate_hyperbolic(propagate_hyperbolic(c, 0.2), 0.3)
    direct = propagate_hyperbolic(c, 0.5)
    np.testing.assert_allclose(two_step.points, direct.points, atol=1e-8)
    assert two_step.signed_length == pytest.approx(direct.signed_length, abs=1e-8)


def test_mean_attainment_under_propagation(wavy):
    report = mean_attainment_front_check_h(wavy, [-0.1, 0.1, 0.3])
    assert not report.skipped.any()
    assert report.max_deviation < 1e-8


# ---------------------------------------------------------------------------
# collapse


def test_circle_collapse_is_degenerate():
    report = collapse_front(hyperbolic_circle(0.9))
    assert report.degenerate
    assert report.passed is None
    assert report.t == pytest.approx(-0.9, abs=1e-10)
    assert abs(report.signed_length) < 1e-8


def test_collapse_cusps_at_mean_attainment(wavy):
    report = collapse_front(wavy)
    assert not report.degenerate
    assert report.passed
    assert report.cusp_count >= 4
    assert abs(report.signed_length) < 1e-7
    # front cusps solve cosh t + k sinh t = 0, i.e. k = -coth t = mean
    assert len(report.front.cusps) == report.cusp_count
    np.testing.assert_allclose(
        np.sort(report.front.cusps), np.sort(report.cusp_params), atol=1e-9
    )


def test_collapse_requires_horocyclic_convexity(semicircle_r2):
    with pytest.raises(NotHorocyclicallyConvexError):
        collapse_front(semicircle_r2)
    # forcing does not help at r = 2: the mean curvature sits below 1
    with pytest.raises(CothDomainError):
        collapse_front(semicircle_r2, force=True)


def test_forced_collapse_below_threshold_radius():
    curve = build_rounded_semicircle(RoundedSemicircleSpec(r=0.5, n_samples=1024))
    report = collapse_front(curve, force=True)
    assert report.cusp_count == 4


def test_backward_propagation_gating(semicircle_r2):
    with pytest.raises(NotHorocyclicallyConvexError):
        propagate_hyperbolic(semicircle_r2, -0.2)
    forced = propagate_hyperbolic(semicircle_r2, -0.2, force=True)
    assert forced.cusps.size >= 4
    # forward motion of a convex curve is always regular
    assert propagate_hyperbolic(semicircle_r2, 0.3).cusps.size == 0


# ---------------------------------------------------------------------------
# rounded semicircle


def test_semicircle_build_quality(semicircle_r2):
    assert semicircle_r2.build_residual < 1e-10
    assert semicircle_r2.gb_residual < 1e-10
    assert semicircle_r2.min_k == pytest.approx(0.05, abs=1e-12)
    assert semicircle_r2.min_k > 0.0  # convex ...
    assert not semicircle_r2.horocyclic_convex  # ... but not horocyclically
    present = set(semicircle_r2.curvature_class.tolist())
    assert {-1, 1} <= present  # flat side vs circular arc


def test_semicircle_near_sharp_reference(semicircle_r2):
    sharp_len, sharp_area, sharp_mean = semicircle_reference(2.0)
    assert sharp_mean == pytest.approx(SHARP_R2_MEAN, abs=1e-12)
    # smoothing trims the corners: a few percent off the sharp half-disc
    assert semicircle_r2.L == pytest.approx(sharp_len, rel=0.08)
    assert semicircle_r2.A == pytest.approx(sharp_area, rel=0.08)
    kbar = (TWO_PI + semicircle_r2.A) / semicircle_r2.L
    assert kbar == pytest.approx(sharp_mean, abs=0.02)
    assert kbar < COTH_2


def test_counterexample_verdict_at_r2(semicircle_r2):
    report = counterexample_verdict(RoundedSemicircleSpec(r=2.0))
    assert report.coth_r == pytest.approx(COTH_2, abs=1e-12)
    assert report.mean_below_coth
    assert report.convex
    assert not report.horocyclically_convex
    assert report.attainment_count == 2
    assert report.counterexample
    # one attainment on each corner ramp, mirror images of each other
    p1, p2 = np.sort(report.attainment_params)
    assert p1 + p2 == pytest.approx(report.curve.L, abs=1e-6)


def test_no_counterexample_below_threshold():
    report = counterexample_verdict(RoundedSemicircleSpec(r=0.5, n_samples=1024))
    assert not report.mean_below_coth
    assert report.attainment_count >= 4
    assert not report.counterexample


def test_threshold_radius():
    report = counterexample_threshold()
    assert report.r_star == pytest.approx(THRESHOLD_R, abs=1e-9)
    assert report.sign_changes == 1
    assert semicircle_mean_gap(0.5) < 0.0 < semicircle_mean_gap(2.0)


def test_spec_validation():
    with pytest.raises(InvalidSpecError):
        hyperbolic_circle(0.0)
    with pytest.raises(InvalidSpecError):
        RoundedSemicircleSpec(r=-1.0)
    with pytest.raises(InvalidSpecError):
        RoundedSemicircleSpec(r=2.0, corner_scale=0.0)
    with pytest.raises(InvalidSpecError):
        RoundedSemicircleSpec(r=2.0, flat_deviation=1.5)
    with pytest.raises(InvalidSpecError):
        RoundedSemicircleSpec(r=2.0, n_samples=8)
    with pytest.raises(InvalidSpecError):
        build_rounded_semicircle(RoundedSemicircleSpec(r=2.0, corner_scale=1.0))


# ---------------------------------------------------------------------------
# point-loop ingestion


def test_from_points_round_trip(wavy):
    rebuilt = hyperbolic_curve_from_points(wavy.points[::2], n_samples=512)
    assert rebuilt.L == pytest.approx(wavy.L, rel=1e-6)
    assert rebuilt.A == pytest.approx(wavy.A, abs=1e-5)


def test_from_points_rejects_off_hyperboloid():
    src = hyperbolic_circle(0.7, n_samples=256)
    with pytest.raises(BadParametrizationError):
        hyperbolic_curve_from_points(1.01 * src.points)


# ---------------------------------------------------------------------------
# properties


@given(rho=st.floats(min_value=0.3, max_value=3.0))
@settings(max_examples=20, deadline=None)
def test_circles_have_zero_defect(rho):
    c = hyperbolic_circle(rho, n_samples=256)
    assert abs(defect_value(HYPERBOLIC, c.L, c.A)) < 1e-7


@given(
    rho=st.floats(min_value=0.5, max_value=1.5),
    amp=st.floats(min_value=0.0, max_value=0.06),
    order=st.integers(min_value=2, max_value=5),
    phase=st.floats(min_value=0.0, max_value=TWO_PI),
)
@settings(max_examples=20, deadline=None)
def test_isoperimetric_defect_nonnegative(rho, amp, order, phase):
    c = perturbed_hyperbolic_circle(rho, [(order, amp, phase)], n_samples=512)
    assert defect_value(HYPERBOLIC, c.L, c.A) > -1e-8
