"""Square-integrable bases on configuration space and wavefunction synthesis.

Three families are supported, each behind a coordinate map s(x) or y(x):

* ``hermite``:  e^{-s^2/2} H_n(s), optionally the generalized form
  |s|^sigma e^{-s^2/2} H_n^sigma(s);
* ``laguerre``: s^{(nu-sigma)/2} e^{-s/2} L_n^nu(s);
* ``jacobi``:   (1-y)^{(alpha-sigma)/2} (1+y)^{(beta-tau)/2} P_n^{(alpha,beta)}(y).

Elements are orthonormal against their conjugates,
lam ∫ conj_n(x) phi_m(x) dx = δ_nm, where conj_n carries the remaining weight
factor and the Jacobian |ds/dx| / lam.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import _orthopoly as op
from .energy_poly import (
    DiscreteDualHahnParams,
    discrete_dual_hahn,
    eval_recursion,
    weight,
)
from .numerics import integrate
from .special import terminating_pfq

__all__ = [
    "BasisSpec",
    "WavefunctionGrid",
    "domain",
    "basis_values",
    "basis_value",
    "basis_conjugate_values",
    "basis_conjugate_value",
    "orthonormality_check",
    "basis_gram",
    "expand_function",
    "scattering_wavefunction",
    "scattering_convergence",
    "meixner_bound_coefficients",
    "dual_hahn_bound_coefficients",
    "morse_bound_coefficients",
    "bound_wavefunction",
    "resonance_mu",
    "resonance_coefficients",
    "resonance_wavefunction",
    "DEFAULT_THETA",
]

DEFAULT_THETA = 0.5 * math.log(2.0)

_COORDS = {
    "hermite": ("linear",),
    "laguerre": ("linear", "power", "exp"),
    "jacobi": ("tanh", "affine-exp", "sin"),
}

# beyond these the envelopes underflow and the polynomial factors could overflow
_LAGUERRE_SMAX = 1400.0
_HERMITE_SMAX = 40.0


@dataclass(frozen=True)
class BasisSpec:
    """An L^2 basis family with scale ``lam`` and coordinate map ``coord``.

    coord values: ``linear`` s = lam x; ``power`` s = (lam x)^power;
    ``exp`` s = e^{-lam x}; ``tanh`` y = tanh(lam x);
    ``affine-exp`` y = 1 - 2 e^{-lam x}; ``sin`` y = sin(lam x) on
    |x| <= pi/(2 lam) (a box of width a has lam = pi/a).
    For Hermite, a nonzero ``sigma`` selects the generalized family.
    """

    family: str
    lam: float = 1.0
    nu: float = 0.0
    sigma: float = 0.0
    alpha: float = 0.0
    beta: float = 0.0
    tau: float = 0.0
    coord: str | None = None
    power: float = 1.0

    def __post_init__(self):
        if self.family not in _COORDS:
            raise ValueError(f"unknown basis family {self.family!r}")
        if self.coord is None:
            object.__setattr__(self, "coord", _COORDS[self.family][0])
        if self.coord not in _COORDS[self.family]:
            raise ValueError(f"map {self.coord!r} does not fit the {self.family} family")
        if not self.lam > 0:
            raise ValueError("lam must be positive")
        if self.family == "laguerre" and not self.nu > -1:
            raise ValueError("Laguerre basis needs nu > -1")
        if self.family == "jacobi" and not (self.alpha > -1 and self.beta > -1):
            raise ValueError("Jacobi basis needs alpha, beta > -1")
        if self.family == "hermite" and not self.sigma > -0.5:
            raise ValueError("generalized Hermite basis needs sigma > -1/2")
        if self.coord == "power" and not self.power > 0:
            raise ValueError("power map needs a positive exponent")

    @property
    def self_conjugate(self):
        return self.family == "hermite"


@dataclass(frozen=True)
class WavefunctionGrid:
    x: np.ndarray
    values: np.ndarray
    truncation: int

    def __post_init__(self):
        if len(self.x) != len(self.values):
            raise ValueError("grid and values differ in length")
        if self.truncation < 1:
            raise ValueError("truncation must be at least 1")


def domain(spec):
    """Configuration-space interval (lo, hi) of the basis."""
    if spec.coord == "sin":
        half = 0.5 * math.pi / spec.lam
        return (-half, half)
    if spec.coord in ("linear", "power") and spec.family == "laguerre":
        return (0.0, math.inf)
    if spec.coord == "affine-exp":
        return (0.0, math.inf)
    return (-math.inf, math.inf)


def _coordinate(spec, x):
    """Map value and |derivative| at x."""
    lam = spec.lam
    c = spec.coord
    if c == "linear":
        return lam * x, np.full_like(x, lam)
    if c == "power":
        s = (lam * x) ** spec.power
        with np.errstate(divide="ignore", invalid="ignore"):
            d = spec.power * lam * (lam * x) ** (spec.power - 1)
        return s, d
    if c == "exp":
        s = np.exp(np.minimum(-lam * x, 700.0))
        return s, lam * s
    if c == "tanh":
        y = np.tanh(lam * x)
        return y, lam * (1 - y) * (1 + y)
    if c == "affine-exp":
        e = np.exp(-lam * x)
        return 1 - 2 * e, 2 * lam * e
    y = np.sin(lam * x)
    return y, lam * np.abs(np.cos(lam * x))


def _check_domain(spec, x):
    lo, hi = domain(spec)
    slack = 1e-12 * max(1.0, abs(lo) if np.isfinite(lo) else 1.0, abs(hi) if np.isfinite(hi) else 1.0)
    if np.any(x < lo - slack) or np.any(x > hi + slack):
        raise ValueError("x lies outside the basis domain")


def basis_values(spec, count, x):
    """phi_0..phi_{count-1} at ``x``; shape (count,) + shape(x)."""
    if count < 1:
        raise ValueError("count must be at least 1")
    x = np.asarray(x, dtype=float)
    _check_domain(spec, x)
    s, _ = _coordinate(spec, x)
    n_max = count - 1
    if spec.family == "hermite":
        if spec.sigma == 0:
            return op.hermite_functions(n_max, s)
        return _generalized_hermite_functions(n_max, spec.sigma, s)
    if spec.family == "laguerre":
        far = s > _LAGUERRE_SMAX
        sc = np.where(far, 0.0, s)
        with np.errstate(divide="ignore", invalid="ignore"):
            env = np.where(far, 0.0, sc ** (0.5 * (spec.nu - spec.sigma)) * np.exp(-0.5 * sc))
        return env * op.laguerre_normalized(n_max, spec.nu, sc)
    a, b = spec.alpha, spec.beta
    y = np.clip(s, -1.0, 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        env = (1 - y) ** (0.5 * (a - spec.sigma)) * (1 + y) ** (0.5 * (b - spec.tau))
    norms = op.jacobi_norms(n_max, a, b).reshape((-1,) + (1,) * y.ndim)
    return env * norms * op.jacobi(n_max, a, b, y)


def _generalized_hermite_functions(n_max, sigma, s):
    """Orthonormal |s|^sigma e^{-s^2/2} H_n^sigma(s) for the weight |s|^{2 sigma} e^{-s^2}."""
    far = np.abs(s) > _HERMITE_SMAX
    sc = np.where(far, 0.0, s)
    u = sc * sc
    with np.errstate(divide="ignore", invalid="ignore"):
        env = np.where(far, 0.0, np.abs(sc) ** sigma * np.exp(-0.5 * u))
    m_max = n_max // 2
    even = op.laguerre_normalized(m_max, sigma - 0.5, u)
    odd = op.laguerre_normalized(m_max, sigma + 0.5, u)
    out = np.empty((n_max + 1,) + np.shape(s))
    out[0::2] = even[: len(range(0, n_max + 1, 2))]
    out[1::2] = (sc * odd)[: len(range(1, n_max + 1, 2))]
    return env * out


def basis_value(spec, n, x):
    """Single element phi_n(x)."""
    return basis_values(spec, n + 1, x)[n][()]


def _conjugate_factor(spec, x):
    s, d = _coordinate(spec, x)
    if spec.family == "hermite":
        return np.ones_like(s)
    if spec.family == "laguerre":
        with np.errstate(divide="ignore", invalid="ignore"):
            return d / spec.lam * np.where(s > _LAGUERRE_SMAX, 0.0, s) ** spec.sigma
    y = np.clip(s, -1.0, 1.0)
    return d / spec.lam * (1 - y) ** spec.sigma * (1 + y) ** spec.tau


def basis_conjugate_values(spec, count, x):
    """Conjugate elements lam^{-1} |ds/dx| w(s) phi_n(x) for n < count."""
    x = np.asarray(x, dtype=float)
    return _conjugate_factor(spec, x) * basis_values(spec, count, x)


def basis_conjugate_value(spec, n, x):
    return basis_conjugate_values(spec, n + 1, x)[n][()]


def basis_gram(spec, count, tol=1e-12):
    """Matrix lam ∫ conj_n phi_m dx for n, m < count, by adaptive quadrature."""
    lo, hi = domain(spec)
    iu = np.triu_indices(count)

    def integrand(x):
        phi = basis_values(spec, count, x)
        conj = _conjugate_factor(spec, x) * phi
        return spec.lam * conj[iu[0]] * phi[iu[1]]

    upper = integrate(integrand, lo, hi, tol, initial=16)
    gram = np.zeros((count, count))
    gram[iu] = upper
    return gram + np.triu(gram, 1).T


def orthonormality_check(spec, n, m, tol=1e-12):
    """lam ∫ conj_n(x) phi_m(x) dx."""
    return float(basis_gram(spec, max(n, m) + 1, tol)[n, m])


def expand_function(spec, f, count, tol=1e-12):
    """Coefficients c_n = lam ∫ conj_n f dx (n < count) and the L^2 error
    sqrt(∫ |f - Σ c_n phi_n|^2 dx) of the truncated reconstruction."""
    lo, hi = domain(spec)

    def proj(x):
        return spec.lam * basis_conjugate_values(spec, count, x) * f(x)

    coeffs = np.atleast_1d(integrate(proj, lo, hi, tol, initial=16))

    def resid(x):
        return (f(x) - coeffs @ basis_values(spec, count, x)) ** 2

    err = integrate(resid, lo, hi, tol * 1e-4, initial=16)
    return coeffs, math.sqrt(max(err, 0.0))


def _default_spec(system):
    return system.basis if system.basis is not None else BasisSpec("laguerre", 1.0, nu=1.0)


def scattering_wavefunction(system, E, x, N_terms, spec=None):
    """Truncated continuum state sqrt(rho) Σ_{n<N} P_n(y(E)) phi_n(x)."""
    if not E > 0:
        raise ValueError("scattering states need E > 0")
    if N_terms < 1:
        raise ValueError("N_terms must be at least 1")
    spec = spec or _default_spec(system)
    x = np.asarray(x, dtype=float)
    k = math.sqrt(2.0 * E)
    params = system.polynomial_params(k)
    y = float(system.mapping.y(k))
    coeffs = math.sqrt(weight(params, y)) * eval_recursion(params, y, N_terms - 1)
    values = coeffs @ basis_values(spec, N_terms, x)
    return WavefunctionGrid(x, values, N_terms)


def scattering_convergence(system, E, x, N_terms, spec=None):
    """Largest change of the continuum state on ``x`` when the truncation doubles."""
    a = scattering_wavefunction(system, E, x, N_terms, spec).values
    b = scattering_wavefunction(system, E, x, 2 * N_terms, spec).values
    return float(np.max(np.abs(b - a)))


def _log_sqrt_rising(z, n_max):
    """½ log (z)_n for n = 0..n_max on a continuous branch."""
    logs = np.concatenate([[0.0], np.cumsum(np.log(np.asarray(z, dtype=complex) + np.arange(n_max)))])
    return 0.5 * logs


def _meixner_coefficients(mu, beta_m, m, n_max):
    """sqrt(rho_m^{2mu}(beta)) M_n^{2mu}(m; beta) for n = 0..n_max, complex-safe."""
    n = np.arange(n_max + 1)
    two_mu = 2 * mu
    log_norm = (_log_sqrt_rising(two_mu, n_max) + 0.5 * n * math.log(beta_m)
                - 0.5 * np.array([math.lgamma(k + 1) for k in n]))
    hyp = terminating_pfq([-m, -n], [two_mu], 1 - 1 / beta_m)
    log_pref = (mu * np.log(complex(1 - beta_m)) + 0.5 * m * math.log(beta_m)
                + _log_sqrt_rising(two_mu, m)[m] - 0.5 * math.lgamma(m + 1))
    return np.exp(log_pref + log_norm) * hyp


def meixner_bound_coefficients(mu, theta, m, rtol=1e-14, cap=2000, block=20):
    """Expansion coefficients of the m-th bound state built on Meixner
    polynomials with beta = e^{-2 theta}.

    Terms are generated until the last ``block`` of them all fall below
    ``rtol`` times the largest seen, or ``cap`` terms are reached.
    """
    if m < 0:
        raise IndexError("bound-state index must be nonnegative")
    if not theta > 0:
        raise ValueError("theta must be positive")
    beta_m = math.exp(-2 * theta)
    n_max = 4 * block
    while True:
        c = _meixner_coefficients(mu, beta_m, m, n_max)
        tail = np.abs(c[-block:])
        if np.all(tail < rtol * np.max(np.abs(c))) or n_max + 1 >= cap:
            c = c[:cap]
            break
        n_max = min(2 * n_max, cap - 1)
    if np.isrealobj(mu) or complex(mu).imag == 0:
        return c.real
    return c


def dual_hahn_bound_coefficients(N, alpha, beta, m):
    """Coefficients sqrt(rho^N(m)) R_n^N(m) for n = 0..N (finite, exact sums)."""
    params = DiscreteDualHahnParams(N, alpha, beta)
    vals = [discrete_dual_hahn(params, n, m) for n in range(N + 1)]
    w = vals[0][1]
    return math.sqrt(w) * np.array([v for v, _ in vals])


def morse_bound_coefficients(N, mu, level):
    """Morse bound state with ``level`` = N - m counted from the top of the
    well: dual Hahn coefficients with alpha = 2 mu - 1, beta = 0."""
    if not 0 <= level <= N:
        raise IndexError("Morse level outside 0..N")
    return dual_hahn_bound_coefficients(N, 2 * mu - 1, 0.0, level)


def _synthesize(coeffs, spec, x):
    x = np.asarray(x, dtype=float)
    return coeffs @ basis_values(spec, len(coeffs), x)


def bound_wavefunction(system, m, x, spec=None, theta=DEFAULT_THETA, physical=None):
    """m-th bound state (m = 0 is the deepest level).

    Meixner-Pollaczek systems use the Meixner expansion with the free angle
    ``theta``. The Morse system uses its finite dual Hahn sum. Other dual
    Hahn systems need ``-mu - b`` to be a nonnegative integer N and use
    alpha = mu + a - 1, beta = mu - a; ``physical`` may supply (mu, a, b)
    directly instead of a catalog system.
    """
    spec = spec or (BasisSpec("laguerre", 1.0, nu=1.0) if system is None else _default_spec(system))
    if physical is not None:
        mu, a, b = physical
        coeffs = _physical_dual_hahn(mu, a, b, m)
    elif system.family == "MP":
        coeffs = meixner_bound_coefficients(system.params.mu, theta, m)
    elif system.name == "morse":
        mu, _, b = (v.real for v in system.params.values)
        N = math.floor(-b)
        if not 0 <= m <= N:
            raise IndexError("Morse bound-state index outside 0..N")
        coeffs = morse_bound_coefficients(N, mu, N - m)
    else:
        mu, a, b = (v.real for v in system.params.values)
        coeffs = _physical_dual_hahn(mu, a, b, m)
    return WavefunctionGrid(np.asarray(x, dtype=float), _synthesize(coeffs, spec, x), len(coeffs))


def _physical_dual_hahn(mu, a, b, m):
    N = -mu - b
    if abs(N - round(N)) > 1e-12 or round(N) < 0:
        raise ValueError("-mu - b must be a nonnegative integer")
    N = int(round(N))
    if not 0 <= m <= N:
        raise IndexError("bound-state index outside 0..N")
    return dual_hahn_bound_coefficients(N, mu + a - 1, mu - a, m)


def resonance_mu(alpha, beta, m):
    """mu_m = alpha / sqrt(2 E_m): beta/alpha for the bound state, m + i beta/alpha
    (principal root) for the m-th resonance."""
    if m == 0:
        return beta / alpha
    return complex(m, beta / alpha)


def resonance_coefficients(alpha, beta, m, rtol=1e-10, cap=2000):
    """Expansion coefficients of the m-th resonance (theta = pi/2)."""
    return meixner_bound_coefficients(resonance_mu(alpha, beta, m), 0.5 * math.pi, m, rtol=rtol, cap=cap)


def resonance_wavefunction(alpha, beta, m, x, N_terms=None, spec=None):
    """m-th resonance state at t = 0 (m = 0: the real bound state).

    Default basis: Laguerre, nu = 1, s = x (x in units of 1/lam). With
    ``N_terms`` the sum is cut there; otherwise the adaptive stopping rule of
    :func:`meixner_bound_coefficients` applies.
    """
    spec = spec or BasisSpec("laguerre", 1.0, nu=1.0)
    coeffs = resonance_coefficients(alpha, beta, m)
    if N_terms is not None:
        if N_terms < 1:
            raise ValueError("N_terms must be at least 1")
        if N_terms > len(coeffs):
            mu = resonance_mu(alpha, beta, m)
            coeffs = _meixner_coefficients(mu, math.exp(-math.pi), m, N_terms - 1)
        coeffs = coeffs[:N_terms]
    return WavefunctionGrid(np.asarray(x, dtype=float), _synthesize(coeffs, spec, x), len(coeffs))
