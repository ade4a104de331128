"""Command-line front end: analyze, propagate, verify, counterexample, export.

Every flag can also be supplied through an ``OVALFRONT_``-prefixed
environment variable (e.g. ``OVALFRONT_SAMPLES=2048``); explicit flags
win.  Exit codes: 0 all checks passed, 1 a theorem check failed
(artifacts are still written), 2 input or usage error.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from . import specio
from .curves import (
    EUCLIDEAN,
    HYPERBOLIC,
    SPHERICAL,
    TWO_PI,
    average_curvature,
    curvature_profile,
    defect_value,
    radius_profile,
)
from .errors import (
    DegenerateProfileError,
    InvalidSpecError,
    NotBisectingError,
    NotHorocyclicallyConvexError,
    OvalfrontError,
    SpecFormatError,
)
from .harmonics import spectrum, verify_sturm_hurwitz
from .hyperbolic import (
    RoundedSemicircleSpec,
    collapse_front,
    counterexample_threshold,
    counterexample_verdict,
    mean_attainment_front_check_h,
    propagate_hyperbolic,
    semicircle_mean_gap,
    semicircle_reference,
)
from .sphere import (
    check_regular_embedded,
    equatorial_front,
    gauss_bonnet_residual,
    mean_attainment_front_check,
    propagate_sphere,
    tennis_ball_check,
    total_torsion,
)
from .support import closure_residual
from .wavefront import critical_front, propagate, propagation_lemma_check, steiner_check

EXIT_PASS = 0
EXIT_THEOREM_FAIL = 1
EXIT_INPUT_ERROR = 2

ENV_PREFIX = "OVALFRONT_"
FORMATS = ("csv", "json", "svg")


@dataclass
class RunConfig:
    """Validated CLI invocation."""

    command: str
    input_path: Optional[str] = None
    n_samples: Optional[int] = None
    tol: float = 1e-6
    t_spec: Optional[str] = None
    output_dir: str = "."
    formats: tuple = ("csv", "json")
    seed: int = 1786
    r: float = 2.0

    def validate(self) -> None:
        if self.n_samples is not None:
            n = self.n_samples
            if n < 64 or (n & (n - 1)) != 0:
                raise InvalidSpecError("--samples must be >= 64 and a power of two")
        if not self.tol > 0.0:
            raise InvalidSpecError("--tol must be positive")
        bad = set(self.formats) - set(FORMATS)
        if bad:
            raise InvalidSpecError(f"unknown formats: {sorted(bad)}")


def _env(name: str, fallback=None):
    return os.environ.get(ENV_PREFIX + name, fallback)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", default=_env("INPUT"), help="curve-spec JSON file")
    common.add_argument("--out", default=_env("OUT", "."), help="output directory")
    common.add_argument(
        "--samples",
        type=int,
        default=_env("SAMPLES"),
        help="sample count override (>= 64, power of two)",
    )
    common.add_argument("--tol", type=float, default=_env("TOL", 1e-6))
    common.add_argument("--t", dest="t_spec", default=_env("T"), help="t value, comma list, or start:stop:step")
    common.add_argument("--seed", type=int, default=_env("SEED", 1786))
    common.add_argument("--r", type=float, default=_env("R", 2.0))
    common.add_argument(
        "--format",
        default=_env("FORMAT", "csv,json"),
        help="comma-separated subset of csv,json,svg",
    )

    parser = argparse.ArgumentParser(
        prog="ovalfront",
        description="Convex-curve wavefront analysis and theorem verification",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("analyze", parents=[common], help="curvature profile and attainment report")
    sub.add_parser("propagate", parents=[common], help="equidistant front snapshots over a t grid")
    sub.add_parser("verify", parents=[common], help="full theorem suite for the input geometry")
    sub.add_parser("counterexample", parents=[common], help="rounded-semicircle pipeline")
    sub.add_parser("export", parents=[common], help="re-emit the curve in requested formats")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(
        command=args.command,
        input_path=args.input,
        n_samples=int(args.samples) if args.samples is not None else None,
        tol=float(args.tol),
        t_spec=args.t_spec,
        output_dir=args.out,
        formats=tuple(p.strip() for p in str(args.format).split(",") if p.strip()),
        seed=int(args.seed),
        r=float(args.r),
    )
    cfg.validate()
    return cfg


def parse_t_spec(text: Optional[str]):
    """Parse '--t': a single value, a comma list, or start:stop:step."""
    if text is None:
        return None
    text = str(text).strip()
    try:
        if ":" in text:
            start, stop, step = (float(p) for p in text.split(":"))
            if step == 0.0:
                raise ValueError
            count = int(np.floor((stop - start) / step + 1e-9)) + 1
            if count < 1:
                raise ValueError
            return [start + i * step for i in range(count)]
        if "," in text:
            return [float(p) for p in text.split(",") if p.strip()]
        return [float(text)]
    except ValueError as exc:
        raise InvalidSpecError(f"cannot parse t spec {text!r}") from exc


def _load_curve(cfg: RunConfig):
    if not cfg.input_path:
        raise InvalidSpecError("--input is required for this command")
    doc = specio.load_curve_spec(cfg.input_path)
    n_eff = cfg.n_samples or doc.get("n_samples") or 1024
    n_eff = int(n_eff)
    if n_eff < 64 or (n_eff & (n_eff - 1)) != 0:
        raise InvalidSpecError("effective n_samples must be >= 64 and a power of two")
    return doc, specio.build_curve(doc, n_samples=n_eff)


def _outdir(cfg: RunConfig) -> Path:
    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _front_for(curve, t: float):
    if curve.geometry == EUCLIDEAN:
        return propagate(curve, t)
    if curve.geometry == SPHERICAL:
        return propagate_sphere(curve, t)
    return propagate_hyperbolic(curve, t)


def _write_curve_svg(path, curve) -> None:
    if curve.geometry == EUCLIDEAN:
        specio.write_plane_svg(path, [curve])
    elif curve.geometry == SPHERICAL:
        specio.write_sphere_svg(path, [curve])
    else:
        specio.write_klein_svg(path, [curve])


# ---------------------------------------------------------------------------
# commands


def cmd_analyze(cfg: RunConfig) -> int:
    _, curve = _load_curve(cfg)
    out = _outdir(cfg)
    try:
        profile = curvature_profile(curve)
        degenerate = False
        count = len(profile.crossing_params)
        crossings = profile.crossing_params
    except DegenerateProfileError:
        profile = None
        degenerate = True
        count = None
        crossings = np.empty(0)

    report = {
        "command": "analyze",
        "geometry": curve.geometry,
        "length": curve.L,
        "area": curve.A,
        "mean_curvature": average_curvature(curve),
        "min_curvature": float(np.min(curve.k)),
        "max_curvature": float(np.max(curve.k)),
        "degenerate_profile": degenerate,
        "attainment_count": count,
        "attainment_params": crossings,
    }
    if curve.geometry == HYPERBOLIC:
        report["horocyclically_convex"] = bool(getattr(curve, "horocyclic_convex", False))
        report["curvature_class_counts"] = {
            "circle_like": int(np.sum(curve.curvature_class == 1)),
            "horocycle_like": int(np.sum(curve.curvature_class == 0)),
            "equidistant_like": int(np.sum(curve.curvature_class == -1)),
        }

    if "csv" in cfg.formats and profile is not None:
        specio.write_profile_csv(out / "analyze_profile.csv", profile)
        if curve.geometry == EUCLIDEAN:
            rp = radius_profile(curve)
            sp = spectrum(rp.values - rp.mean)
        else:
            sp = spectrum(np.asarray(curve.k) - float(np.mean(curve.k)))
        specio.write_spectrum_csv(out / "analyze_spectrum.csv", sp)
        specio.write_curve_csv(out / "analyze_curve.csv", curve)
    if "svg" in cfg.formats:
        _write_curve_svg(out / "analyze_curve.svg", curve)
    if "json" in cfg.formats:
        specio.write_json_report(out / "analyze_report.json", report)
    return EXIT_PASS


def _closed_form_lengths(curve, t: float):
    if curve.geometry == EUCLIDEAN:
        return curve.L + TWO_PI * t, curve.A + curve.L * t + np.pi * t * t
    if curve.geometry == SPHERICAL:
        b = TWO_PI - curve.A
        return (
            curve.L * np.cos(t) + b * np.sin(t),
            TWO_PI + curve.L * np.sin(t) - b * np.cos(t),
        )
    b = TWO_PI + curve.A
    return (
        curve.L * np.cosh(t) + b * np.sinh(t),
        -TWO_PI + curve.L * np.sinh(t) + b * np.cosh(t),
    )


def cmd_propagate(cfg: RunConfig) -> int:
    t_values = parse_t_spec(cfg.t_spec)
    if not t_values:
        raise InvalidSpecError("--t is required for propagate")
    _, curve = _load_curve(cfg)
    out = _outdir(cfg)
    snapshots = []
    fronts = []
    for i, t in enumerate(t_values):
        front = _front_for(curve, t)
        fronts.append(front)
        len_pred, area_pred = _closed_form_lengths(curve, t)
        snapshots.append(
            {
                "index": i,
                "t": t,
                "signed_length": front.signed_length,
                "area": front.area,
                "signed_length_predicted": len_pred,
                "area_predicted": area_pred,
                "cusp_count": len(front.cusps),
                "cusp_params": front.cusps,
            }
        )
        if "csv" in cfg.formats:
            specio.write_front_csv(out / f"front_{i:03d}.csv", front)
    if "svg" in cfg.formats:
        if curve.geometry == EUCLIDEAN:
            specio.write_plane_svg(out / "propagate_fronts.svg", [curve, *fronts])
        elif curve.geometry == SPHERICAL:
            specio.write_sphere_svg(out / "propagate_fronts.svg", [curve, *fronts])
        else:
            specio.write_klein_svg(out / "propagate_fronts.svg", [curve, *fronts])
    if "json" in cfg.formats:
        specio.write_json_report(
            out / "propagate_report.json",
            {"command": "propagate", "geometry": curve.geometry, "snapshots": snapshots},
        )
    return EXIT_PASS


class _Suite:
    """Collects named checks; a check may pass, fail, or be skipped (None)."""

    def __init__(self):
        self.checks = []

    def add(self, name: str, passed, **details):
        entry = {"name": name, "passed": passed}
        entry.update(details)
        self.checks.append(entry)

    @property
    def passed(self) -> bool:
        return all(c["passed"] is not False for c in self.checks)


def _add_defect_check(suite: _Suite, curve, defects, tol: float) -> None:
    """Relative defect spread, with an absolute floor for circles.

    On a circle the defect itself is roundoff, so dividing the spread by
    max|defect| would manufacture a failure out of noise; compare against
    the magnitude of the terms whose cancellation defines the defect.
    """
    scale = max(abs(d) for d in defects)
    floor = tol * (curve.L**2 + abs(curve.A) * (4.0 * np.pi + abs(curve.A)))
    if scale < floor:
        suite.add("defect_invariance", True, max_abs_defect=scale,
                  note="defect vanishes to roundoff")
        return
    spread = (max(defects) - min(defects)) / scale
    suite.add("defect_invariance", bool(spread < tol), relative_spread=spread)


def _default_t_grid(curve):
    if curve.geometry == EUCLIDEAN:
        # keep |t k| away from 1 on the negative side for lemma checks
        rmin = float(np.min(1.0 / curve.k))
        return list(np.linspace(-0.45 * rmin, 1.0, 11))
    if curve.geometry == SPHERICAL:
        return list(np.linspace(-0.2, 0.4, 11))
    return list(np.linspace(-0.25, 0.5, 11))


def _verify_euclidean(curve, tol: float, t_values) -> _Suite:
    suite = _Suite()
    try:
        res = closure_residual(curve)
        suite.add(
            "closure_residual",
            bool(np.linalg.norm(res) < max(tol, 1e-8) * max(curve.L, 1.0)),
            residual=list(res),
        )
    except ValueError:
        suite.add("closure_residual", None, note="not a support-built oval")

    try:
        profile = curvature_profile(curve)
        suite.add(
            "four_point",
            bool(len(profile.crossing_params) >= 4),
            attainment_count=len(profile.crossing_params),
        )
    except DegenerateProfileError:
        suite.add("four_point", None, note="circle: constant curvature")
        profile = None

    radius = 1.0 / np.asarray(curve.k)
    dev = radius - float(np.mean(radius))
    if float(np.max(np.abs(dev))) > 1e-12:
        sp = spectrum(dev)
        top = float(np.max(sp.amplitudes))
        low = float(max(sp.amplitudes[0], sp.amplitudes[1]))
        sturm = verify_sturm_hurwitz(dev)
        suite.add(
            "radius_deviation_spectrum",
            bool(low < 1e-8 * top),
            low_harmonic_fraction=low / top,
        )
        suite.add(
            "sturm_hurwitz",
            bool(sturm.passed and sturm.first_harmonic >= 2),
            first_harmonic=sturm.first_harmonic,
            sign_changes=sturm.sign_changes,
        )
    else:
        suite.add("radius_deviation_spectrum", None, note="circle")
        suite.add("sturm_hurwitz", None, note="circle")

    steiner = steiner_check(curve, t_values, tol=tol)
    suite.add(
        "steiner",
        bool(steiner.passed),
        max_rel_length=steiner.max_rel_length,
        max_rel_area=steiner.max_rel_area,
    )

    defects = [defect_value(EUCLIDEAN, f.signed_length, f.area)
               for f in (propagate(curve, t) for t in t_values)]
    _add_defect_check(suite, curve, defects, tol)

    try:
        lemma = propagation_lemma_check(curve, t_values)
        suite.add(
            "front_mean_curvature_lemma",
            bool(lemma.max_deviation < tol),
            max_deviation=lemma.max_deviation,
        )
    except DegenerateProfileError:
        suite.add("front_mean_curvature_lemma", None, note="circle")

    try:
        crit = critical_front(curve)
        suite.add(
            "critical_front",
            bool(abs(crit.front.signed_length) < tol and crit.count >= 4),
            signed_length=crit.front.signed_length,
            cusp_count=crit.count,
        )
    except DegenerateProfileError:
        suite.add("critical_front", None, note="circle collapses to a point")
    return suite


def _verify_spherical(curve, tol: float, t_values) -> _Suite:
    suite = _Suite()
    gb = gauss_bonnet_residual(curve)
    suite.add("gauss_bonnet", bool(gb < tol), residual=gb)

    fronts = [propagate_sphere(curve, t) for t in t_values]
    defects = [defect_value(SPHERICAL, f.signed_length, f.area) for f in fronts]
    _add_defect_check(suite, curve, defects, tol)

    try:
        lemma = mean_attainment_front_check(curve, t_values)
        suite.add(
            "front_mean_curvature_lemma",
            bool(lemma.max_deviation < tol),
            max_deviation=lemma.max_deviation,
        )
    except DegenerateProfileError:
        suite.add("front_mean_curvature_lemma", None, note="circle")

    a, b = 0.13, 0.21
    two_step = propagate_sphere(propagate_sphere(curve, a), b)
    one_step = propagate_sphere(curve, a + b)
    gap = float(np.max(np.linalg.norm(two_step.points - one_step.points, axis=1)))
    suite.add("semigroup", bool(gap < 1e-8), pointwise_gap=gap)

    if float(np.min(curve.k)) > 0.0 and curve.pole is not None:
        eq = equatorial_front(curve)
        emb = check_regular_embedded(curve, eq.t)
        ok = eq.area_gap < tol and emb.passed and (
            eq.degenerate or eq.inflections >= 4
        )
        suite.add(
            "equatorial_front",
            bool(ok),
            t=eq.t,
            area_gap=eq.area_gap,
            inflections=eq.inflections,
            regular_margin=emb.regular_margin,
            embedded_until=emb.t_embedded,
        )
    else:
        suite.add("equatorial_front", None, note="needs a convex hemisphere curve")

    torsion = total_torsion(curve)
    if torsion.degenerate:
        suite.add("total_torsion", None, note="torsion identically zero")
    else:
        suite.add(
            "total_torsion",
            bool(abs(torsion.integral) < max(tol, 1e-6) and torsion.sign_changes >= 4),
            integral=torsion.integral,
            sign_changes=torsion.sign_changes,
        )

    if abs(curve.A - TWO_PI) <= tol:
        tb = tennis_ball_check(curve, area_tol=tol)
        if tb.degenerate:
            suite.add("tennis_ball", None, note="great circle")
        else:
            suite.add("tennis_ball", bool(tb.passed), inflections=tb.inflections)
    else:
        suite.add("tennis_ball", None, note="curve does not bisect the area")
    return suite


def _verify_hyperbolic(curve, tol: float, t_values) -> _Suite:
    suite = _Suite()
    gb = float(getattr(curve, "gb_residual", np.nan))
    suite.add("gauss_bonnet", bool(gb < max(tol, 1e-6)), residual=gb)

    hc = bool(getattr(curve, "horocyclic_convex", False))
    suite.add("horocyclic_convexity", None, horocyclically_convex=hc,
              min_curvature=float(np.min(curve.k)))

    if not hc:
        try:
            profile = curvature_profile(curve)
            suite.add(
                "mean_attainment",
                None,
                note="not horocyclically convex: four-point guarantee void",
                attainment_count=len(profile.crossing_params),
            )
        except DegenerateProfileError:
            suite.add("mean_attainment", None, note="constant curvature")
        return suite

    try:
        collapse = collapse_front(curve)
        if collapse.degenerate:
            suite.add("collapse_front", None, note="circle collapses to a point",
                      signed_length=collapse.signed_length)
        else:
            suite.add(
                "collapse_front",
                bool(abs(collapse.signed_length) < tol and collapse.cusp_count >= 4),
                t=collapse.t,
                signed_length=collapse.signed_length,
                cusp_count=collapse.cusp_count,
            )
    except NotHorocyclicallyConvexError:
        suite.add("collapse_front", None, note="not horocyclically convex")

    fronts = [propagate_hyperbolic(curve, t) for t in t_values]
    defects = [defect_value(HYPERBOLIC, f.signed_length, f.area) for f in fronts]
    _add_defect_check(suite, curve, defects, tol)

    try:
        lemma = mean_attainment_front_check_h(curve, t_values)
        suite.add(
            "front_mean_curvature_lemma",
            bool(lemma.max_deviation < tol),
            max_deviation=lemma.max_deviation,
        )
    except DegenerateProfileError:
        suite.add("front_mean_curvature_lemma", None, note="circle")

    a, b = 0.11, 0.17
    two_step = propagate_hyperbolic(propagate_hyperbolic(curve, a), b)
    one_step = propagate_hyperbolic(curve, a + b)
    gap = float(np.max(np.linalg.norm(two_step.points - one_step.points, axis=1)))
    suite.add("semigroup", bool(gap < 1e-8), pointwise_gap=gap)
    return suite


def cmd_verify(cfg: RunConfig) -> int:
    _, curve = _load_curve(cfg)
    out = _outdir(cfg)
    t_values = parse_t_spec(cfg.t_spec) or _default_t_grid(curve)
    if curve.geometry == EUCLIDEAN:
        suite = _verify_euclidean(curve, cfg.tol, t_values)
    elif curve.geometry == SPHERICAL:
        suite = _verify_spherical(curve, cfg.tol, t_values)
    else:
        suite = _verify_hyperbolic(curve, cfg.tol, t_values)
    report = {
        "command": "verify",
        "geometry": curve.geometry,
        "tol": cfg.tol,
        "t_grid": list(t_values),
        "checks": suite.checks,
        "passed": suite.passed,
    }
    specio.write_json_report(out / "verify_report.json", report)
    return EXIT_PASS if suite.passed else EXIT_THEOREM_FAIL


def cmd_counterexample(cfg: RunConfig) -> int:
    out = _outdir(cfg)
    threshold = counterexample_threshold()
    n = cfg.n_samples or 4096
    spec = RoundedSemicircleSpec(r=cfg.r, n_samples=n)
    verdict = counterexample_verdict(spec)

    sweep_r = list(np.linspace(0.25, 5.0, 20))
    sweep = [
        {
            "r": rv,
            "mean_curvature_exact": semicircle_reference(rv)[2],
            "coth_gap": semicircle_mean_gap(rv),
        }
        for rv in sweep_r
    ]

    expected = (
        verdict.counterexample
        if cfg.r > threshold.r_star
        else not verdict.mean_below_coth
    )
    report = {
        "command": "counterexample",
        "threshold_r": threshold.r_star,
        "threshold_sign_changes": threshold.sign_changes,
        "r": cfg.r,
        "mean_curvature": verdict.mean_curvature,
        "coth_r": verdict.coth_r,
        "mean_below_coth": verdict.mean_below_coth,
        "attainment_count": verdict.attainment_count,
        "attainment_params": verdict.attainment_params,
        "convex": verdict.convex,
        "horocyclically_convex": verdict.horocyclically_convex,
        "counterexample": verdict.counterexample,
        "expected_outcome": bool(expected),
        "sweep": sweep,
    }
    specio.write_json_report(out / "counterexample_report.json", report)
    if "csv" in cfg.formats:
        specio.write_curve_csv(out / "counterexample_curve.csv", verdict.curve)
    if "svg" in cfg.formats:
        specio.write_klein_svg(out / "counterexample_curve.svg", [verdict.curve])
    return EXIT_PASS if expected else EXIT_THEOREM_FAIL


def cmd_export(cfg: RunConfig) -> int:
    doc, curve = _load_curve(cfg)
    out = _outdir(cfg)
    if "csv" in cfg.formats:
        specio.write_curve_csv(out / "export_curve.csv", curve)
    if "svg" in cfg.formats:
        _write_curve_svg(out / "export_curve.svg", curve)
    if "json" in cfg.formats:
        specio.write_json_report(
            out / "export_curve.json",
            {
                "command": "export",
                "source_spec": doc,
                "geometry": curve.geometry,
                "n_samples": len(curve.points),
                "length": curve.L,
                "area": curve.A,
            },
        )
    return EXIT_PASS


_COMMANDS = {
    "analyze": cmd_analyze,
    "propagate": cmd_propagate,
    "verify": cmd_verify,
    "counterexample": cmd_counterexample,
    "export": cmd_export,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT_ERROR if exc.code not in (0, None) else 0
    try:
        cfg = config_from_args(args)
        return _COMMANDS[cfg.command](cfg)
    except (SpecFormatError, InvalidSpecError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except (NotBisectingError, NotHorocyclicallyConvexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except OvalfrontError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
