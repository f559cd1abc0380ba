"""Scattering phase shifts and amplitudes.

Closed forms come from the large-n asymptotics of the energy polynomials.
``fit_tail_phase`` recovers the same phase independently from a window of
computed polynomial values, by a linear least-squares fit against a known
phase law.
"""

import math
from dataclasses import dataclass

import numpy as np

from .energy_poly import asymptotic_amplitude, eval_recursion, weight
from .spectra import InverseMuMap
from .special import log_gamma_complex

__all__ = [
    "LinearN",
    "LogN",
    "PhaseFit",
    "IllConditionedFit",
    "phase_shift_closed",
    "phase_shift_sweep",
    "reduce_mod_pi",
    "amplitude_closed",
    "model_for",
    "weighted_tail",
    "fit_tail_phase",
]


class IllConditionedFit(ValueError):
    """The window covers too little phase to separate cosine from sine."""


@dataclass(frozen=True)
class LinearN:
    """Theta_n = n theta - log_correction_coeff * ln(2 n sin theta)."""

    theta: float
    log_correction_coeff: float = 0.0

    def __post_init__(self):
        if not 0 < self.theta < math.pi:
            raise ValueError("theta must lie in (0, pi)")

    def phase(self, n):
        n = np.asarray(n, dtype=float)
        return n * self.theta - self.log_correction_coeff * np.log(2 * n * math.sin(self.theta))


@dataclass(frozen=True)
class LogN:
    """Theta_n = y ln n."""

    y: float

    def phase(self, n):
        return self.y * np.log(np.asarray(n, dtype=float))


@dataclass(frozen=True)
class PhaseFit:
    amplitude: float
    phase: float
    rms_residual: float


def reduce_mod_pi(phase):
    """Representative of ``phase`` modulo pi in (-pi/2, pi/2]."""
    r = np.mod(np.asarray(phase, dtype=float) + 0.5 * math.pi, math.pi) - 0.5 * math.pi
    r = np.where(r == -0.5 * math.pi, 0.5 * math.pi, r)
    return r[()]


def _check_k(k):
    k = np.asarray(k, dtype=float)
    if np.any(~(k > 0)):
        raise ValueError("k must be positive")
    return k


def phase_shift_closed(system, k):
    """Closed-form phase shift at wavenumber ``k`` (continuous in k).

    Meixner-Pollaczek: arg Γ(mu + iy) + mu (theta - pi/2).
    Dual Hahn: arg Γ(2iy) - Σ_c arg Γ(c + iy).
    Inverse-mu system: arg Γ(alpha/k + i beta/alpha).
    """
    k = _check_k(k)
    y = system.mapping.y(k)
    if isinstance(system.mapping, InverseMuMap):
        return np.asarray(log_gamma_complex(system.mapping.mu(k) + 1j * y).imag)[()]
    if system.family == "MP":
        mu, th = system.params.mu, system.params.theta
        return np.asarray(log_gamma_complex(mu + 1j * y).imag + mu * (th - 0.5 * math.pi))[()]
    z = 1j * np.asarray(y)
    total = log_gamma_complex(2 * z).imag
    for c in system.params.values:
        total = total - log_gamma_complex(c + z).imag
    return np.asarray(total)[()]


def phase_shift_sweep(system, ks):
    """Phase shift along an increasing k-grid, unwrapped against pi jumps."""
    ks = _check_k(ks)
    if np.any(np.diff(ks) <= 0):
        raise ValueError("k-grid must be strictly increasing")
    return np.unwrap(np.atleast_1d(phase_shift_closed(system, ks)), period=math.pi)


def amplitude_closed(system, k):
    """n-independent asymptotic amplitude A(k); vanishes on gamma poles."""
    k = _check_k(k)
    params = system.polynomial_params(float(k)) if np.ndim(k) == 0 else None
    if params is None:
        return np.array([amplitude_closed(system, kk) for kk in k])
    return float(asymptotic_amplitude(params, system.mapping.y(k)))


def model_for(params, y):
    """Phase law matching the family of ``params`` at argument ``y``."""
    if hasattr(params, "theta"):
        return LinearN(params.theta, y)
    return LogN(y)


def weighted_tail(params, y, start, length):
    """sqrt(rho(y)) P_n(y) for n in [start, start+length), plus the indices."""
    p = eval_recursion(params, y, start + length - 1)
    n = np.arange(start, start + length)
    return n, math.sqrt(weight(params, y)) * p[start:]


def fit_tail_phase(values, model, window, max_condition=1e4, corrections=1):
    """Fit values[n] ≈ A n^{-1/2} cos(Theta_n + phi) over the window.

    ``window`` is (start, length) and ``values`` holds exactly ``length``
    samples for n = start..start+length-1. The unknowns A cos(phi) and
    A sin(phi) enter linearly, so this is an ordinary least-squares problem.

    With ``corrections`` = k > 0 both unknowns get a degree-k polynomial in
    1/n, and the reported A and phi are its n -> inf limit. This removes the
    O(1/n) bias that dominates when the polynomial parameters are large.
    Returns amplitude A, phase phi reduced modulo pi and the rms residual.
    """
    start, length = window
    if start < 256 or length < 64:
        raise ValueError("window needs start >= 256 and length >= 64")
    if corrections < 0:
        raise ValueError("corrections must be non-negative")
    values = np.asarray(values, dtype=float)
    if values.shape != (length,):
        raise ValueError("values must match the window length")
    n = np.arange(start, start + length, dtype=float)
    theta = model.phase(n)
    lead = np.column_stack([np.cos(theta), -np.sin(theta)]) / np.sqrt(n)[:, None]
    if np.linalg.cond(lead) > max_condition:
        raise IllConditionedFit("window spans too little phase for a stable fit")
    # centred variable keeps the correction columns from swamping the fit
    u = start / n
    centre = u.mean()
    u = u - centre
    design = np.column_stack([lead * (u ** j)[:, None] for j in range(corrections + 1)])
    coef, *_ = np.linalg.lstsq(design, values, rcond=None)
    resid = values - design @ coef
    powers = (-centre) ** np.arange(corrections + 1)
    c, s = coef[0::2] @ powers, coef[1::2] @ powers
    amp = math.hypot(c, s)
    phi = math.atan2(s, c)
    return PhaseFit(amp, float(reduce_mod_pi(phi)), float(np.sqrt(np.mean(resid ** 2))))
