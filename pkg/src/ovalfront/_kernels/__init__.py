"""Kernel backend selection.

The hot sampling kernels (trigonometric polynomial evaluation, periodic
finite differences, hysteresis sign-change scanning) exist twice: a
compiled Cython extension (``_native``) and a NumPy reference
implementation (``reference``).  The compiled backend is preferred when it
imports; set ``OVALFRONT_KERNELS=reference`` or ``=native`` to force one.
"""

from __future__ import annotations

import os

_requested = os.environ.get("OVALFRONT_KERNELS", "").strip().lower()

if _requested not in ("", "native", "reference"):
    raise ImportError(
        f"OVALFRONT_KERNELS={_requested!r}: expected 'native' or 'reference'"
    )

if _requested == "reference":
    from . import reference as _impl

    BACKEND = "reference"
else:
    try:
        from . import _native as _impl  # type: ignore[attr-defined]

        BACKEND = "native"
    except ImportError:
        if _requested == "native":
            raise
        from . import reference as _impl

        BACKEND = "reference"

trig_eval = _impl.trig_eval
periodic_deriv = _impl.periodic_deriv
transitions = _impl.transitions

__all__ = ["trig_eval", "periodic_deriv", "transitions", "BACKEND"]
