"""Complex special functions: log-gamma, Pochhammer symbols, terminating
hypergeometric sums, the Gauss sum at unit argument and integer-order Bessel
functions.

Everything here accepts numpy arrays where it makes sense so that weights and
polynomials can be evaluated on whole grids at once.
"""

import math
from dataclasses import dataclass
from numbers import Integral

import numpy as np

__all__ = [
    "PoleError",
    "DivergenceError",
    "GammaPolar",
    "log_gamma_complex",
    "gamma_abs_arg",
    "rgamma",
    "rgamma_real",
    "pochhammer",
    "terminating_pfq",
    "gauss_2f1_unit",
    "bessel_j",
]

LOG_2PI_HALF = 0.5 * math.log(2.0 * math.pi)
LOG_PI = math.log(math.pi)

# Lanczos approximation, g = 7, 9 terms
_LANCZOS_G = 7.0
_LANCZOS_COEF = np.array([
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
])


class PoleError(ValueError):
    """Raised when a gamma-type function is evaluated at a pole."""


class DivergenceError(ValueError):
    """Raised when a hypergeometric series at unit argument diverges."""


@dataclass(frozen=True)
class GammaPolar:
    """Polar form of Γ(z): ``magnitude * exp(1j * argument)``.

    ``argument`` is the imaginary part of the continuous log-gamma, so it is
    not reduced to (-π, π].
    """

    magnitude: float
    argument: float

    @property
    def value(self):
        return self.magnitude * complex(math.cos(self.argument), math.sin(self.argument))


def _is_nonpositive_integer(z):
    z = np.asarray(z, dtype=complex)
    return (z.imag == 0) & (z.real <= 0) & (z.real == np.round(z.real))


def _lanczos_log_gamma(z):
    # valid for Re z >= 0.5
    zm1 = z - 1.0
    series = np.full_like(z, _LANCZOS_COEF[0])
    for i in range(1, len(_LANCZOS_COEF)):
        series = series + _LANCZOS_COEF[i] / (zm1 + i)
    t = zm1 + _LANCZOS_G + 0.5
    return LOG_2PI_HALF + (zm1 + 0.5) * np.log(t) - t + np.log(series)


def _log_sin_pi(z):
    """Principal log of sin(πz), stable for large |Im z|."""
    out = np.empty_like(z)
    upper = z.imag > 0
    lower = z.imag < 0
    real = ~(upper | lower)
    if real.any():
        out[real] = np.log(np.sin(np.pi * z[real]).astype(complex))
    for mask, w in ((upper, z), (lower, np.conj(z))):
        if not mask.any():
            continue
        zz = w[mask]
        # sin(πz) = (i/2) e^{-iπz} (1 - e^{2iπz}) for Im z > 0
        val = -1j * np.pi * zz + complex(math.log(0.5), 0.5 * math.pi) + np.log1p(-np.exp(2j * np.pi * zz))
        im = np.mod(val.imag + np.pi, 2.0 * np.pi) - np.pi
        im = np.where(im == -np.pi, np.pi, im)
        val = val.real + 1j * im
        out[mask] = val if w is z else np.conj(val)
    return out


def log_gamma_complex(z):
    """Principal-branch log Γ(z) for complex ``z`` (scalar or array).

    The branch cut lies along the negative real axis and the imaginary part is
    continuous elsewhere, so ``log_gamma_complex(mu + 1j*y).imag`` is a smooth
    function of ``y``.

    Raises
    ------
    PoleError
        If any ``z`` is a non-positive integer.
    """
    scalar = np.ndim(z) == 0
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    if _is_nonpositive_integer(z).any():
        raise PoleError("log-gamma evaluated at a non-positive integer")
    out = np.empty_like(z)
    right = z.real >= 0.5
    if right.any():
        out[right] = _lanczos_log_gamma(z[right])
    left = ~right
    if left.any():
        zl = z[left]
        branch = np.copysign(2.0 * np.pi, zl.imag) * np.floor(0.5 * zl.real + 0.25)
        out[left] = (LOG_PI + 1j * branch) - _log_sin_pi(zl) - _lanczos_log_gamma(1.0 - zl)
    return complex(out[0]) if scalar else out


def gamma_abs_arg(z):
    """Return |Γ(z)| and the continuous argument of Γ(z) as a :class:`GammaPolar`."""
    lg = log_gamma_complex(complex(z))
    return GammaPolar(math.exp(lg.real), lg.imag)


def rgamma(z):
    """Reciprocal gamma 1/Γ(z); zero at the poles of Γ."""
    scalar = np.ndim(z) == 0
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    out = np.zeros_like(z)
    ok = ~_is_nonpositive_integer(z)
    if ok.any():
        out[ok] = np.exp(-log_gamma_complex(z[ok]))
    return complex(out[0]) if scalar else out


def rgamma_real(x):
    """1/Γ(x) for real ``x``; changes sign across every pole of Γ."""
    scalar = np.ndim(x) == 0
    x = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.empty_like(x)
    for i, xi in enumerate(x):
        if xi >= 0.5:
            out[i] = math.exp(-math.lgamma(xi))
        else:
            # 1/Γ(x) = sin(πx) Γ(1-x) / π, finite and exact zero at poles
            out[i] = math.sin(math.pi * xi) * math.exp(math.lgamma(1.0 - xi)) / math.pi
            if xi == round(xi):
                out[i] = 0.0
    return float(out[0]) if scalar else out


def pochhammer(z, n):
    """Rising factorial (z)_n = z (z+1) ... (z+n-1).

    Uses the direct product for ``n <= 64`` and a log-gamma ratio beyond, unless
    ``z`` is a non-positive integer (then the product is exact and usually 0).
    """
    if not isinstance(n, Integral) or n < 0:
        raise ValueError("n must be a nonnegative integer")
    z_arr = np.asarray(z)
    if n <= 64 or np.any(_is_nonpositive_integer(z_arr)):
        out = np.ones_like(z_arr, dtype=np.result_type(z_arr, float))
        for k in range(n):
            out = out * (z_arr + k)
        return out[()] if out.ndim == 0 else out
    if np.isrealobj(z_arr) and np.all(z_arr > 0):
        val = np.exp(np.vectorize(math.lgamma)(z_arr + n) - np.vectorize(math.lgamma)(z_arr))
        return val[()] if np.ndim(val) == 0 else val
    val = np.exp(log_gamma_complex(z_arr + n) - log_gamma_complex(z_arr))
    return val


def _termination_order(numerator):
    orders = []
    for a in numerator:
        if np.ndim(a) == 0:
            a = complex(a)
            if a.imag == 0 and a.real <= 0 and a.real == round(a.real):
                orders.append(int(round(-a.real)))
    if not orders:
        raise ValueError("one numerator parameter must be a non-positive integer -n")
    return min(orders)


def terminating_pfq(numerator, denominator, arg):
    """Terminating generalized hypergeometric sum pFq(numerator; denominator; arg).

    One numerator parameter must be ``-n`` with ``n`` a nonnegative integer;
    the sum then has exactly ``n + 1`` terms. Other parameters may be complex
    scalars or numpy arrays that broadcast together, which is how polynomials
    are evaluated over a grid of energies. Terms are accumulated with Kahan
    compensation.

    Raises
    ------
    PoleError
        If a denominator parameter hits 0, -1, ..., -(n-1).
    """
    n = _termination_order(numerator)
    num = [np.asarray(a, dtype=complex) for a in numerator]
    den = [np.asarray(b, dtype=complex) for b in denominator]
    for b in den:
        bad = _is_nonpositive_integer(b) & (np.real(b) > -n)
        if np.any(bad):
            raise PoleError("denominator parameter is a pole of the terminating sum")
    arg = np.asarray(arg, dtype=complex)
    shape = np.broadcast_shapes(*(a.shape for a in num), *(b.shape for b in den), arg.shape)
    term = np.ones(shape, dtype=complex)
    total = np.ones(shape, dtype=complex)
    comp = np.zeros(shape, dtype=complex)
    for k in range(n):
        ratio = arg / (k + 1)
        for a in num:
            ratio = ratio * (a + k)
        for b in den:
            ratio = ratio / (b + k)
        term = term * ratio
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
    return complex(total) if total.ndim == 0 else total


def gauss_2f1_unit(a, b, c):
    """Gauss sum 2F1(a, b; c; 1) = Γ(c)Γ(c-a-b) / (Γ(c-a)Γ(c-b)).

    Terminating cases (``a`` or ``b`` a non-positive integer) use the
    Chu-Vandermonde form (c-b)_n / (c)_n, which holds without the
    convergence condition.

    Raises
    ------
    DivergenceError
        If Re(c - a - b) <= 0 and the series does not terminate.
    """
    a, b, c = complex(a), complex(b), complex(c)
    for p, q in ((a, b), (b, a)):
        if _is_nonpositive_integer(p):
            n = int(round(-p.real))
            return complex(pochhammer(c - q, n) / pochhammer(c, n))
    if (c - a - b).real <= 0:
        raise DivergenceError("2F1 at unit argument diverges for Re(c-a-b) <= 0")
    lg = log_gamma_complex(c) + log_gamma_complex(c - a - b)
    return complex(np.exp(lg) * rgamma(c - a) * rgamma(c - b))


def _bessel_series(n, x):
    half = 0.5 * x
    term = half ** n / math.factorial(n)
    total = term
    q = -half * half
    k = 0
    while True:
        k += 1
        term *= q / (k * (k + n))
        total += term
        if abs(term) < 1e-17 * abs(total) and k > 2:
            return total


def _bessel_miller(n, x):
    start = 2 * ((max(n, int(x)) + 20 + int(math.sqrt(40 * max(n, int(x)) + 40))) // 2)
    jp1, j = 0.0, 1e-300
    result = 0.0
    norm = 0.0
    for k in range(start, 0, -1):
        jm1 = (2 * k / x) * j - jp1
        jp1, j = j, jm1
        if abs(j) > 1e250:
            j *= 1e-250
            jp1 *= 1e-250
            result *= 1e-250
            norm *= 1e-250
        if k - 1 == n:
            result = j
        if (k - 1) % 2 == 0 and k - 1 > 0:
            norm += 2.0 * j
    norm += j
    return result / norm


def bessel_j(order, x):
    """Bessel function of the first kind J_order(x) for integer order >= 0, x >= 0.

    Ascending series below x = 5, Miller's downward recurrence normalized by
    J0 + 2 Σ J_2k = 1 above.
    """
    if not isinstance(order, Integral) or order < 0:
        raise ValueError("order must be a nonnegative integer")
    scalar = np.ndim(x) == 0
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(xs < 0):
        raise ValueError("x must be nonnegative")
    out = np.empty_like(xs)
    for i, xi in enumerate(xs):
        if xi == 0.0:
            out[i] = 1.0 if order == 0 else 0.0
        elif xi < 5.0:
            out[i] = _bessel_series(order, xi)
        else:
            out[i] = _bessel_miller(order, xi)
    return float(out[0]) if scalar else out
