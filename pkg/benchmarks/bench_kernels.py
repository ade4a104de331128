"""Micro-benchmark: compiled kernels vs. the NumPy reference backend.

Times the three hot kernels (trigonometric polynomial evaluation,
periodic finite differences, hysteresis sign-change scanning) under both
backends and prints a speedup table.  Run from the repository root:

    python benchmarks/bench_kernels.py
    python benchmarks/bench_kernels.py --sizes 256,1024,4096 --repeat 30

If the compiled extension is unavailable only the reference numbers are
reported.
"""

from __future__ import annotations

import argparse
import importlib
import time

import numpy as np


def _load_backends():
    backends = {}
    backends["reference"] = importlib.import_module("ovalfront._kernels.reference")
    try:
        backends["native"] = importlib.import_module("ovalfront._kernels._native")
    except ImportError:
        pass
    return backends


def _best_of(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def _cases(n: int, rng: np.random.Generator):
    x = np.linspace(0.0, 2.0 * np.pi, n, endpoint=False)
    n_harm = 16
    cos_amps = rng.normal(size=n_harm + 1) / (1.0 + np.arange(n_harm + 1)) ** 2
    sin_amps = rng.normal(size=n_harm + 1) / (1.0 + np.arange(n_harm + 1)) ** 2
    sin_amps[0] = 0.0
    values = np.cos(x) + 0.3 * np.sin(3 * x) + 0.05 * rng.normal(size=n)
    spacing = 2.0 * np.pi / n
    signal = np.sin(5 * x) + 0.01 * rng.normal(size=n)
    return [
        ("trig_eval", lambda m: m.trig_eval(cos_amps, sin_amps, x, 1)),
        ("periodic_deriv", lambda m: m.periodic_deriv(values, 2, spacing)),
        ("transitions", lambda m: m.transitions(signal, 1e-3)),
    ]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="256,1024,4096,16384")
    parser.add_argument("--repeat", type=int, default=50)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    sizes = [int(s) for s in args.sizes.split(",")]
    backends = _load_backends()
    rng = np.random.default_rng(args.seed)

    have_native = "native" in backends
    if not have_native:
        print("compiled backend not built; timing reference only\n")

    header = f"{'kernel':<16}{'n':>8}{'reference':>14}"
    if have_native:
        header += f"{'native':>14}{'speedup':>10}"
    print(header)
    print("-" * len(header))

    for n in sizes:
        for name, call in _cases(n, rng):
            ref_mod = backends["reference"]
            # consistency check before timing
            if have_native:
                a = call(ref_mod)
                b = call(backends["native"])
                a = a if isinstance(a, tuple) else (a,)
                b = b if isinstance(b, tuple) else (b,)
                for ai, bi in zip(a, b):
                    if not np.array_equal(
                        np.asarray(ai, dtype=float), np.asarray(bi, dtype=float)
                    ) and not np.allclose(ai, bi, rtol=1e-12, atol=1e-12):
                        raise SystemExit(f"backend mismatch in {name} at n={n}")
            t_ref = _best_of(lambda: call(ref_mod), args.repeat)
            row = f"{name:<16}{n:>8}{t_ref * 1e6:>12.1f}us"
            if have_native:
                t_nat = _best_of(lambda: call(backends["native"]), args.repeat)
                row += f"{t_nat * 1e6:>12.1f}us{t_ref / t_nat:>9.2f}x"
            print(row)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
