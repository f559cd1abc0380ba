"""Energy mappings, the system catalog, bound-state spectra and resonances.

A system pairs an energy-polynomial family with a mapping from the physical
energy E = k^2/2 to the polynomial argument y. Bound states sit where the
large-n amplitude vanishes, i.e. where a gamma function in its denominator
has a pole. Writing s = sqrt(-y(E)^2) > 0 on the negative-energy axis, every
mapping below gives an explicit, monotone s(E) and its inverse E(s), so a
ladder of poles s_n turns into a closed-form spectrum E(s_n).
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .energy_poly import ContinuousDualHahnParams, MeixnerPollaczekParams
from .numerics import find_root
from .special import rgamma, rgamma_real

__all__ = [
    "CoulombMap",
    "LogMapMP",
    "PowerMap",
    "LinearMap",
    "LogMapCDH",
    "InverseMuMap",
    "SystemCatalogEntry",
    "Spectrum",
    "coulomb",
    "log_mp",
    "power_mp",
    "morse_cdh",
    "linear_cdh",
    "log_cdh",
    "power_cdh",
    "resonance_system",
    "catalog",
    "bound_states",
    "threefold_spectrum",
    "resonances",
    "amplitude_on_bound_axis",
    "verify_bound_by_amplitude_zero",
    "BracketError",
]

HALF_PI = 0.5 * math.pi
MERGE_TOL = 1e-12


class BracketError(RuntimeError):
    """No sign change of the amplitude could be bracketed."""


def _positive(name, value):
    if not value > 0:
        raise ValueError(f"{name} must be positive")


def _nonneg_int(name, value):
    if int(value) != value or value < 0:
        raise ValueError(f"{name} must be a nonnegative integer")


# --- energy mappings --------------------------------------------------------
# Each mapping provides y(k) for k > 0, s(E) = sqrt(-y^2) for bound energies and
# the inverse E(s). ``bound_window`` is the open E-interval on which s(E) is real.


@dataclass(frozen=True)
class CoulombMap:
    """y = Z/k."""

    Z: float
    l: int

    def __post_init__(self):
        _nonneg_int("l", self.l)

    def y(self, k):
        return self.Z / np.asarray(k, dtype=float)

    def s_of_energy(self, E):
        return abs(self.Z) / np.sqrt(-2.0 * np.asarray(E, dtype=float))

    def energy_of_s(self, s):
        return -self.Z ** 2 / (2.0 * np.asarray(s, dtype=float) ** 2)

    bound_window = (-math.inf, 0.0)


@dataclass(frozen=True)
class LogMapMP:
    """y = sqrt(ln(1 + lam^2/k^2) / beta)."""

    lam: float
    beta: float
    V0: float
    l: int

    def __post_init__(self):
        for name in ("lam", "beta", "V0"):
            _positive(name, getattr(self, name))
        _nonneg_int("l", self.l)

    def y(self, k):
        k = np.asarray(k, dtype=float)
        return np.sqrt(np.log1p(self.lam ** 2 / k ** 2) / self.beta)

    def s_of_energy(self, E):
        E = np.asarray(E, dtype=float)
        return np.sqrt(-np.log1p(self.lam ** 2 / (2.0 * E)) / self.beta)

    def energy_of_s(self, s):
        s = np.asarray(s, dtype=float)
        return self.lam ** 2 / (2.0 * np.expm1(-self.beta * s * s))

    @property
    def bound_window(self):
        return (-math.inf, -0.5 * self.lam ** 2)


@dataclass(frozen=True)
class PowerMap:
    """y = (scale/k)^(2l+1) for the Meixner-Pollaczek class, (|k|/scale)^(2l+1) for dual Hahn."""

    scale: float
    l: int
    inverse: bool = True

    def __post_init__(self):
        _positive("scale", self.scale)
        _nonneg_int("l", self.l)

    def y(self, k):
        r = np.asarray(k, dtype=float) / self.scale
        return r ** -(2 * self.l + 1) if self.inverse else np.abs(r) ** (2 * self.l + 1)

    def s_of_energy(self, E):
        r2 = -2.0 * np.asarray(E, dtype=float) / self.scale ** 2
        p = self.l + 0.5
        return r2 ** -p if self.inverse else r2 ** p

    def energy_of_s(self, s):
        p = 1.0 / (self.l + 0.5)
        s = np.asarray(s, dtype=float)
        return -0.5 * self.scale ** 2 * (s ** -p if self.inverse else s ** p)

    bound_window = (-math.inf, 0.0)


@dataclass(frozen=True)
class LinearMap:
    """y = |k|/alpha."""

    alpha: float

    def __post_init__(self):
        _positive("alpha", self.alpha)

    def y(self, k):
        return np.abs(np.asarray(k, dtype=float)) / self.alpha

    def s_of_energy(self, E):
        return np.sqrt(-2.0 * np.asarray(E, dtype=float)) / self.alpha

    def energy_of_s(self, s):
        return -0.5 * (self.alpha * np.asarray(s, dtype=float)) ** 2

    bound_window = (-math.inf, 0.0)


@dataclass(frozen=True)
class LogMapCDH:
    """y = sqrt(ln(1 + k^2/alpha^2) / beta)."""

    alpha: float
    beta: float

    def __post_init__(self):
        _positive("alpha", self.alpha)
        _positive("beta", self.beta)

    def y(self, k):
        k = np.asarray(k, dtype=float)
        return np.sqrt(np.log1p((k / self.alpha) ** 2) / self.beta)

    def s_of_energy(self, E):
        E = np.asarray(E, dtype=float)
        return np.sqrt(-np.log1p(2.0 * E / self.alpha ** 2) / self.beta)

    def energy_of_s(self, s):
        s = np.asarray(s, dtype=float)
        return 0.5 * self.alpha ** 2 * np.expm1(-self.beta * s * s)

    @property
    def bound_window(self):
        return (-0.5 * self.alpha ** 2, 0.0)


@dataclass(frozen=True)
class InverseMuMap:
    """mu = alpha/sqrt(2E), y = beta/alpha, theta = pi/2 (energy enters through mu)."""

    alpha: float
    beta: float

    def __post_init__(self):
        _positive("alpha", self.alpha)
        _positive("beta", self.beta)

    def y(self, k):
        return np.full(np.shape(k), self.beta / self.alpha)[()]

    def mu(self, k):
        return self.alpha / np.asarray(k, dtype=float)

    bound_window = (-math.inf, 0.0)


# --- catalog ------------------------------------------------------------------


@dataclass(frozen=True)
class SystemCatalogEntry:
    """A named system: polynomial family, fixed polynomial parameters and an
    energy mapping. For ``InverseMuMap`` the Meixner-Pollaczek ``mu`` depends
    on energy and ``params`` holds only theta (with a placeholder mu).
    """

    name: str
    family: str
    params: object
    mapping: object
    description: str = ""
    basis: object = field(default=None, compare=False)

    def __post_init__(self):
        if self.family not in ("MP", "CDH"):
            raise ValueError("family must be 'MP' or 'CDH'")
        expected = MeixnerPollaczekParams if self.family == "MP" else ContinuousDualHahnParams
        if not isinstance(self.params, expected):
            raise TypeError(f"{self.family} systems need {expected.__name__}")
        if isinstance(self.mapping, InverseMuMap) and self.family != "MP":
            raise ValueError("the inverse-mu mapping belongs to the Meixner-Pollaczek class")

    def polynomial_params(self, k):
        """Polynomial parameters at wavenumber ``k`` (only the inverse-mu system varies)."""
        if isinstance(self.mapping, InverseMuMap):
            return MeixnerPollaczekParams(float(self.mapping.mu(k)), HALF_PI)
        return self.params

    def ladders(self):
        """Pole ladders as (c, n_top): poles at s = |n + c| for n = 0..n_top (None = unbounded)."""
        if isinstance(self.mapping, InverseMuMap):
            return []
        if self.family == "MP":
            return [(self.params.mu, None)]
        out = []
        for c in self.params.values:
            if c.imag == 0 and c.real < 0:
                out.append((c.real, math.floor(-c.real)))
        return out


def coulomb(Z, l=0):
    """Coulomb problem: mu = l+1, theta = pi/2, y = Z/k."""
    return SystemCatalogEntry("coulomb", "MP", MeixnerPollaczekParams(l + 1.0, HALF_PI), CoulombMap(Z, l),
                              "Coulomb problem with charge Z")


def log_mp(lam, beta, V0, l=0):
    """mu = l + sqrt(V0)/lam, theta = pi/2, y = sqrt(ln(1 + lam^2/k^2)/beta)."""
    mapping = LogMapMP(lam, beta, V0, l)
    mu = l + math.sqrt(V0) / lam
    return SystemCatalogEntry("log-mp", "MP", MeixnerPollaczekParams(mu, HALF_PI), mapping,
                              "logarithmic energy map, Meixner-Pollaczek class")


def power_mp(lam, l=0, mu=1.0):
    """theta = pi/2, y = (lam/k)^(2l+1)."""
    return SystemCatalogEntry("power-mp", "MP", MeixnerPollaczekParams(mu, HALF_PI), PowerMap(lam, l, True),
                              "power-law energy map, Meixner-Pollaczek class")


def morse_cdh(alpha, beta, V0):
    """Morse potential V0(e^{-2 alpha x} - 2 beta e^{-alpha x}) in the dual Hahn class.

    y = |k|/alpha, b = 1/2 - beta sqrt(2 V0)/alpha < 0, a = mu with mu the
    fractional part in b = -N - mu, 0 <= mu < 1.
    """
    for name, v in (("alpha", alpha), ("beta", beta), ("V0", V0)):
        _positive(name, v)
    b = 0.5 - beta * math.sqrt(2 * V0) / alpha
    if not b < 0:
        raise ValueError("Morse parameters need b = 1/2 - beta*sqrt(2 V0)/alpha < 0")
    N = math.floor(-b)
    mu = -b - N
    if mu == 0:
        raise ValueError("b must not be an integer (mu = a would vanish)")
    return SystemCatalogEntry("morse", "CDH", ContinuousDualHahnParams(mu, mu, b), LinearMap(alpha),
                              "1D Morse potential")


def linear_cdh(alpha, mu, a, b):
    """Dual Hahn class with y = |k|/alpha and free (mu, a, b)."""
    return SystemCatalogEntry("linear-cdh", "CDH", ContinuousDualHahnParams(mu, a, b), LinearMap(alpha),
                              "dual Hahn class, linear energy map")


def log_cdh(alpha, beta, mu, a, b):
    """Dual Hahn class with y = sqrt(ln(1 + k^2/alpha^2)/beta)."""
    return SystemCatalogEntry("log-cdh", "CDH", ContinuousDualHahnParams(mu, a, b), LogMapCDH(alpha, beta),
                              "dual Hahn class, logarithmic energy map")


def power_cdh(alpha, l, mu, a, b):
    """Dual Hahn class with y = (|k|/alpha)^(2l+1)."""
    return SystemCatalogEntry("power-cdh", "CDH", ContinuousDualHahnParams(mu, a, b), PowerMap(alpha, l, False),
                              "dual Hahn class, power-law energy map")


def resonance_system(alpha, beta):
    """Meixner-Pollaczek class with mu = alpha/sqrt(2E), y = beta/alpha, theta = pi/2."""
    return SystemCatalogEntry("resonance", "MP", MeixnerPollaczekParams(1.0, HALF_PI), InverseMuMap(alpha, beta),
                              "energy-dependent mu: one bound state plus resonances")


def catalog():
    """Default instances of every catalog system, keyed by name."""
    return {
        "coulomb": coulomb(1.0, 0),
        "log-mp": log_mp(1.0, 0.1, 1.0, 0),
        "power-mp": power_mp(1.0, 0, 1.0),
        "morse": morse_cdh(1.0, 1.0, 2.0),
        "linear-cdh": linear_cdh(1.0, -1.2, 5.0, 7.0),
        "log-cdh": log_cdh(1.0, 1.0, -1.3, 2.0, 2.5),
        "power-cdh": power_cdh(1.0, 1, -2.4, 3.0, 3.5),
        "resonance": resonance_system(1.0, 0.9),
    }


# --- spectra --------------------------------------------------------------------


@dataclass(frozen=True)
class Spectrum:
    """Bound energies (ascending) and resonance energies (Im < 0).

    ``count_cap`` is the number of bound states the system supports, or None
    when the ladder is unbounded.
    """

    bound: tuple = ()
    resonances: tuple = ()
    count_cap: int | None = None

    def __post_init__(self):
        b = np.asarray(self.bound, dtype=float)
        if np.any(np.diff(b) <= 0):
            raise ValueError("bound energies must be strictly increasing")
        if any(complex(r).imag >= 0 for r in self.resonances):
            raise ValueError("resonances must have negative imaginary parts")


def _merge(energies):
    out = []
    for e in sorted(energies):
        if out and abs(e - out[-1]) <= MERGE_TOL * max(1.0, abs(e)):
            continue
        out.append(e)
    return tuple(out)


def _ladder_points(system, count):
    """(energy, c, n) for every pole the system supports, up to ``count`` per infinite ladder."""
    pts = []
    for c, top in system.ladders():
        last = count - 1 if top is None else top
        for n in range(last + 1):
            pts.append((float(system.mapping.energy_of_s(abs(n + c))), c, n))
    return pts


def bound_states(system, count=10):
    """Closed-form bound energies.

    Infinite ladders (Meixner-Pollaczek) return the lowest ``count`` levels.
    Finite dual Hahn ladders run n = 0..floor(-c) for each negative parameter
    c, then the union is merged and sorted. An empty spectrum is a valid
    result.
    """
    if count < 0:
        raise ValueError("count must be nonnegative")
    if isinstance(system.mapping, InverseMuMap):
        m = system.mapping
        return Spectrum((-0.5 * (m.alpha ** 2 / m.beta) ** 2,), (), 1)
    ladders = system.ladders()
    cap = None
    if ladders and all(top is not None for _, top in ladders):
        cap = sum(top + 1 for _, top in ladders)
    elif not ladders:
        cap = 0
    pts = _ladder_points(system, count)
    energies = _merge(e for e, _, _ in pts)
    if cap is None:
        energies = energies[:count]
    return Spectrum(energies, (), cap)


def threefold_spectrum(params, alpha, caps=None):
    """Union of the three ladders -(alpha^2/2)(m + c)^2 over negative c in (mu, a, b).

    ``caps`` optionally limits each ladder (in the order mu, a, b) below its
    natural top floor(-c).
    """
    if not isinstance(params, ContinuousDualHahnParams):
        raise TypeError("threefold spectrum needs dual Hahn parameters")
    _positive("alpha", alpha)
    vals = params.values
    if len({v for v in vals}) < 3:
        raise ValueError("threefold spectrum needs mu, a, b pairwise distinct")
    caps = caps if caps is not None else (None, None, None)
    energies = []
    total = 0
    for c, cap in zip(vals, caps):
        if c.imag != 0 or c.real >= 0:
            continue
        top = math.floor(-c.real)
        if cap is not None:
            top = min(top, cap)
        total += top + 1
        energies += [-0.5 * alpha ** 2 * (m + c.real) ** 2 for m in range(top + 1)]
    return Spectrum(_merge(energies), (), total)


def resonances(alpha, beta, n_max):
    """Resonance energies of the inverse-mu system for n = 1..n_max, with the
    n = 0 bound state -(alpha^2/beta)^2/2 reported in ``bound``.

    E_n = [(n^2 alpha^2 - beta^2)/2 - i n alpha beta] / (n^2 + beta^2/alpha^2)^2.
    """
    _positive("alpha", alpha)
    _positive("beta", beta)
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    n = np.arange(1, n_max + 1, dtype=float)
    denom = (n * n + (beta / alpha) ** 2) ** 2
    res = (0.5 * (n * n * alpha ** 2 - beta ** 2) - 1j * n * alpha * beta) / denom
    return Spectrum((-0.5 * (alpha ** 2 / beta) ** 2,), tuple(complex(r) for r in res), 1)


def resonance_energy(alpha, beta, n):
    """Single entry of :func:`resonances` (n = 0 gives the real bound energy)."""
    if n == 0:
        return complex(-0.5 * (alpha ** 2 / beta) ** 2)
    return resonances(alpha, beta, n).resonances[-1]


def amplitude_on_bound_axis(system, E):
    """Real-valued continuation of the large-n amplitude to E < 0.

    Only the reciprocal-gamma factors that can vanish are kept (the rest are
    positive there): Meixner-Pollaczek 1/Γ(mu - s(E)); dual Hahn
    Γ(2s) Π_c 1/Γ(c + s); inverse-mu Im 1/Γ(i(beta/alpha - alpha/sqrt(-2E))).
    Sign changes mark bound states.
    """
    E = float(E)
    mapping = system.mapping
    if isinstance(mapping, InverseMuMap):
        t = mapping.beta / mapping.alpha - mapping.alpha / math.sqrt(-2.0 * E)
        return complex(rgamma(1j * t)).imag
    s = float(mapping.s_of_energy(E))
    if system.family == "MP":
        return rgamma_real(system.params.mu - s)
    val = math.gamma(2 * s) if s < 85 else 1.0
    for c in system.params.values:
        if c.imag == 0:
            val *= rgamma_real(c.real + s)
        else:
            val *= abs(complex(rgamma(c + s)))
    return val


def verify_bound_by_amplitude_zero(system, n, tol=1e-15):
    """Locate bound state ``n`` (0-based, ascending energy) as a sign change of
    :func:`amplitude_on_bound_axis`, root-found in E.

    The inverse map s -> E is only used to bracket the root: the bracket
    reaches halfway to the nearest neighbouring pole in s (at most half a
    unit), clipped to the mapping's bound window.
    """
    mapping = system.mapping
    if isinstance(mapping, InverseMuMap):
        if n != 0:
            raise IndexError("the inverse-mu system has a single bound state")
        E0 = -0.5 * (mapping.alpha ** 2 / mapping.beta) ** 2
        bracket = (4.0 * E0, 0.25 * E0)
        return find_root(lambda e: amplitude_on_bound_axis(system, e), *bracket, tol=tol * abs(E0))
    pts = sorted(_ladder_points(system, n + 1))
    if n >= len(pts):
        raise IndexError("bound-state index exceeds the spectrum")
    E_n, c, m = pts[n]
    s_n = abs(m + c)
    others = [abs(mm + cc) for _, cc, mm in _ladder_points(system, n + 2) if abs(abs(mm + cc) - s_n) > MERGE_TOL]
    half = min([0.5] + [0.5 * abs(o - s_n) for o in others])
    lo_w, hi_w = mapping.bound_window
    s_lo, s_hi = max(s_n - half, 0.5 * s_n), s_n + half
    e1, e2 = sorted((float(mapping.energy_of_s(s_lo)), float(mapping.energy_of_s(s_hi))))
    # stay strictly inside the window, where s(E) is finite
    e1 = max(e1, np.nextafter(lo_w, 0.0))
    e2 = min(e2, np.nextafter(hi_w, -math.inf))
    f = lambda e: amplitude_on_bound_axis(system, e)  # noqa: E731
    try:
        return find_root(f, e1, e2, tol=tol * max(abs(E_n), 1e-300))
    except ValueError as exc:
        raise BracketError(f"no amplitude sign change around bound state {n}") from exc
