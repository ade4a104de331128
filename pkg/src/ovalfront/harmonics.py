"""Fourier spectra of periodic samples and the sign-change lower bound.

The classical Sturm-Hurwitz statement: a 2pi-periodic function whose
Fourier expansion starts at harmonic m (no constant term, nothing below m)
changes sign at least 2m times per period.  Applied to the deviation of a
curvature radius from its mean, the first harmonic is >= 2, which is the
spectral route to the four-point property.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _kernels as kernels
from .errors import AllBelowToleranceError, NonUniformGridError

# Relative floor below which a harmonic amplitude counts as absent.
AMP_TOL_FACTOR = 1e-9


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Real Fourier coefficients a_n, b_n of a periodic sample sequence."""

    cos_amps: np.ndarray
    sin_amps: np.ndarray

    @property
    def n_max(self) -> int:
        return len(self.cos_amps) - 1

    @property
    def source_mean(self) -> float:
        return float(self.cos_amps[0])

    @property
    def amplitudes(self) -> np.ndarray:
        return np.hypot(self.cos_amps, self.sin_amps)

    @property
    def harmonics(self):
        return [
            (n, float(self.cos_amps[n]), float(self.sin_amps[n]))
            for n in range(len(self.cos_amps))
        ]


@dataclass(frozen=True, eq=False)
class SturmHurwitzReport:
    first_harmonic: int
    sign_changes: int
    passed: bool
    spectrum: Spectrum


def spectrum(values, n_max: Optional[int] = None, param=None) -> Spectrum:
    """Discrete real Fourier coefficients of uniformly spaced samples.

    ``param``, when given, is validated for uniform spacing (including the
    wrap gap); a non-uniform grid raises :class:`NonUniformGridError`.
    The default ``n_max`` is count // 4 so every reported harmonic is
    sampled at least four times per period.
    """
    v = np.asarray(values, dtype=float)
    if v.ndim != 1 or v.size < 4:
        raise ValueError("need a 1-d sequence of at least 4 samples")
    n = v.size
    if param is not None:
        p = np.asarray(param, dtype=float)
        if p.shape != v.shape:
            raise NonUniformGridError("param grid length mismatch")
        gaps = np.diff(p)
        if np.any(gaps <= 0) or not np.allclose(gaps, gaps[0], rtol=1e-9, atol=0.0):
            raise NonUniformGridError("sample parameters are not uniformly spaced")
    if n_max is None:
        n_max = n // 4
    if n_max < 1 or n < 4 * n_max:
        raise ValueError(f"need at least 4*n_max={4 * n_max} samples, got {n}")
    coeff = np.fft.rfft(v)
    cos_amps = 2.0 * coeff.real[: n_max + 1] / n
    sin_amps = -2.0 * coeff.imag[: n_max + 1] / n
    cos_amps[0] *= 0.5
    sin_amps[0] = 0.0
    return Spectrum(cos_amps=cos_amps, sin_amps=sin_amps)


def first_nontrivial_harmonic(sp: Spectrum, amp_tol: Optional[float] = None):
    """Smallest n >= 1 with amplitude above tolerance, or None if absent.

    The default tolerance is 1e-9 times the largest harmonic amplitude.
    """
    amps = sp.amplitudes
    if len(amps) < 2:
        return None
    tail = amps[1:]
    top = float(tail.max())
    if top == 0.0:
        return None
    if amp_tol is None:
        amp_tol = AMP_TOL_FACTOR * top
    above = np.flatnonzero(tail > amp_tol)
    if above.size == 0:
        return None
    return int(above[0]) + 1


def count_sign_changes(values, tol: float = 0.0) -> int:
    """Cyclic sign changes with a hysteresis dead band of width ``tol``.

    The count is always even.  Raises :class:`AllBelowToleranceError`
    when no sample escapes the band.
    """
    v = np.asarray(values, dtype=float)
    if float(np.max(np.abs(v))) <= tol:
        raise AllBelowToleranceError("all samples inside the tolerance band")
    pairs, _ = kernels.transitions(v, tol)
    return len(pairs)


def verify_sturm_hurwitz(values, amp_tol=None, sign_tol=None) -> SturmHurwitzReport:
    """Check the sign-change bound z >= 2m on centred periodic samples.

    The sequence is centred on its own mean; m is the first nontrivial
    harmonic of the centred spectrum and z the hysteresis sign-change
    count.  Errors from the component steps (all-zero sequences and the
    like) propagate unchanged.
    """
    v = np.asarray(values, dtype=float)
    centred = v - v.mean()
    sp = spectrum(centred)
    m = first_nontrivial_harmonic(sp, amp_tol=amp_tol)
    if m is None:
        raise AllBelowToleranceError("no nontrivial harmonic in centred samples")
    if sign_tol is None:
        sign_tol = AMP_TOL_FACTOR * float(np.max(np.abs(centred)))
    z = count_sign_changes(centred, tol=sign_tol)
    return SturmHurwitzReport(
        first_harmonic=m, sign_changes=z, passed=z >= 2 * m, spectrum=sp
    )
