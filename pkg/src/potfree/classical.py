"""Bound systems whose eigenfunctions are classical orthogonal polynomials in a
configuration-space variable y(x).

Each :class:`ClassicalSystem` bundles a potential, an energy formula and a
wavefunction; :func:`schrodinger_residual` checks that the three agree.
"""

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import _orthopoly as op
from .numerics import Interval, TridiagonalMatrix, second_derivative
from .special import bessel_j

__all__ = [
    "ClassicalSystem",
    "SYSTEM_IDS",
    "classical_poly_eval",
    "build_system",
    "schrodinger_residual",
    "lambda_matrix",
    "coulomb_basis",
    "GridTooCloseError",
]

SYSTEM_IDS = (
    "Oscillator",
    "PoschlTeller",
    "Coulomb3D",
    "Morse1D",
    "Table1Jacobi",
    "Table1Bessel",
    "Table1GenHermite",
)


class GridTooCloseError(ValueError):
    """Finite-difference stencil would cross a domain endpoint."""


@dataclass(frozen=True)
class ClassicalSystem:
    """A solvable system. ``potential(x, n)`` takes the level index only for
    systems whose potential depends on it (the Bessel column)."""

    id: str
    params: dict
    potential: Callable
    energy: Callable
    wavefunction: Callable
    domain: Interval
    index_range: range = field(default=range(0, 10**9))

    def check_index(self, n):
        if n not in self.index_range:
            raise IndexError(f"level {n} outside {self.index_range.start}..{self.index_range.stop - 1}")


def _require_support(ok, what):
    if not np.all(ok):
        raise ValueError(f"argument outside the {what} support")


def classical_poly_eval(family, params, n, y):
    """Standard-normalization classical polynomial of degree ``n`` at ``y``.

    Parameter keys: Gegenbauer ``mu``; Jacobi ``alpha``, ``beta``; Laguerre
    ``nu``; GeneralizedHermite ``mu``. The generalized Hermite polynomials use
    H_{2m} = (-1)^m 2^{2m} m! L_m^{mu-1/2}(y^2) and
    H_{2m+1} = (-1)^m 2^{2m+1} m! y L_m^{mu+1/2}(y^2), which reduce to H_n at mu = 0.
    """
    if n < 0:
        raise ValueError("degree must be nonnegative")
    params = params or {}
    y = np.asarray(y, dtype=float)
    if family == "Hermite":
        out = op.hermite(n, y)[n]
    elif family == "Gegenbauer":
        mu = params["mu"]
        if not mu > -0.5:
            raise ValueError("Gegenbauer needs mu > -1/2")
        _require_support(np.abs(y) <= 1, "Gegenbauer")
        out = op.gegenbauer(n, mu, y)[n]
    elif family == "Jacobi":
        a, b = params["alpha"], params["beta"]
        if not (a > -1 and b > -1):
            raise ValueError("Jacobi needs alpha, beta > -1")
        _require_support(np.abs(y) <= 1, "Jacobi")
        out = op.jacobi(n, a, b, y)[n]
    elif family == "Laguerre":
        nu = params["nu"]
        if not nu > -1:
            raise ValueError("Laguerre needs nu > -1")
        _require_support(y >= 0, "Laguerre")
        out = op.laguerre(n, nu, y)[n]
    elif family == "GeneralizedHermite":
        mu = params["mu"]
        if not mu > -0.5:
            raise ValueError("generalized Hermite needs mu > -1/2")
        m, odd = divmod(n, 2)
        scale = (-1) ** m * 2.0 ** n * math.factorial(m)
        if odd:
            out = scale * y * op.laguerre(m, mu + 0.5, y * y)[m]
        else:
            out = scale * op.laguerre(m, mu - 0.5, y * y)[m]
    else:
        raise ValueError(f"unknown polynomial family {family!r}")
    return out[()]


def _positive(params, *names):
    for name in names:
        if not params[name] > 0:
            raise ValueError(f"{name} must be positive")


def _oscillator(p):
    _positive(p, "kappa")
    k = p["kappa"]

    def psi(n, x):
        return math.sqrt(k) * op.hermite_functions(n, k * np.asarray(x, dtype=float))[n]

    return (lambda x, n=None: 0.5 * k ** 4 * np.asarray(x) ** 2,
            lambda n: k * k * (n + 0.5), psi, Interval(-math.inf, math.inf), None)


def _gegenbauer_norm(n, mu):
    return math.exp(mu * math.log(2) + math.lgamma(mu)
                    + 0.5 * (math.log(n + mu) + math.lgamma(n + 1) - math.log(2 * math.pi)
                             - math.lgamma(n + 2 * mu)))


def _poschl_teller(p):
    _positive(p, "a", "mu")
    a, mu = p["a"], p["mu"]
    w = math.pi / a

    def psi(n, x):
        x = np.asarray(x, dtype=float)
        # carries sqrt(pi/a) so that ∫ psi^2 dx = 1 on [-a/2, a/2]
        return (math.sqrt(w) * _gegenbauer_norm(n, mu) * np.cos(w * x) ** mu
                * op.gegenbauer(n, mu, np.sin(w * x))[n])

    return (lambda x, n=None: 0.5 * w * w * mu * (mu - 1) / np.cos(w * np.asarray(x)) ** 2,
            lambda n: 0.5 * w * w * (n + mu) ** 2, psi, Interval(-0.5 * a, 0.5 * a), None)


def coulomb_basis(n, nu, mu, x):
    """sqrt(n!/Γ(n+nu+1)) (mu x)^{(nu+1)/2} e^{-mu x/2} L_n^nu(mu x)."""
    s = mu * np.asarray(x, dtype=float)
    return s ** (0.5 * (nu + 1)) * np.exp(-0.5 * s) * op.laguerre_normalized(n, nu, s)[n]


def _coulomb3d(p):
    Z, l = p["Z"], p["l"]
    if not Z < 0:
        raise ValueError("bound Coulomb states need Z < 0")
    if l < 0 or int(l) != l:
        raise ValueError("l must be a nonnegative integer")
    nu = 2 * l + 1

    def psi(n, x):
        return coulomb_basis(n, nu, -2 * Z / (n + l + 1), x)

    return (lambda x, n=None: l * (l + 1) / (2 * np.asarray(x) ** 2) + Z / np.asarray(x),
            lambda n: -0.5 * (Z / (n + l + 1)) ** 2, psi, Interval(0.0, math.inf), None)


def _morse(p):
    _positive(p, "alpha", "beta", "V0")
    al, be, V0 = p["alpha"], p["beta"], p["V0"]
    root = math.sqrt(2 * V0)
    mu = 2 * root / al
    top = be * root / al - 0.5

    def nu(n):
        return top - n

    def psi(n, x):
        v = nu(n)
        log_y = math.log(mu) - al * np.asarray(x, dtype=float)
        # far into the wall the envelope underflows long before log_y overflows exp
        far = log_y > math.log(1400.0)
        y = np.exp(np.where(far, 0.0, log_y))
        log_norm = 0.5 * (math.log(2 * al * v) + math.lgamma(n + 1) - math.lgamma(n + 2 * v + 1))
        env = np.where(far, 0.0, np.exp(log_norm + v * np.where(far, 0.0, log_y) - 0.5 * y))
        return env * op.laguerre(n, 2 * v, y)[n]

    count = math.ceil(top)  # levels with nu_n > 0
    return (lambda x, n=None: V0 * (np.exp(-2 * al * np.asarray(x)) - 2 * be * np.exp(-al * np.asarray(x))),
            lambda n: -0.5 * (al * nu(n)) ** 2, psi, Interval(-math.inf, math.inf), range(0, max(count, 0)))


def _table1_jacobi(p):
    _positive(p, "a")
    a, mu, nu = p["a"], p["mu"], p["nu"]
    if not (mu > -1 and nu > -1):
        raise ValueError("Jacobi column needs mu, nu > -1")
    w = math.pi / a
    full_shift = p.get("spectrum") == "full-shift"

    def potential(x, n=None):
        x = np.asarray(x, dtype=float)
        c2 = np.cos(w * x) ** 2
        return 0.25 * w * w * ((mu * mu + nu * nu - 0.5) / c2 + (mu * mu - nu * nu) * np.sin(w * x) / c2)

    def energy(n):
        shift = n + mu + nu + 1 if full_shift else n + 0.5 * (mu + nu + 1)
        return 0.5 * w * w * shift ** 2

    def psi(n, x):
        y = np.sin(w * np.asarray(x, dtype=float))
        norm = math.sqrt(w) * op.jacobi_norms(n, mu, nu)[n]
        return (norm * np.sqrt((1 - y) ** (mu + 0.5) * (1 + y) ** (nu + 0.5))
                * op.jacobi(n, mu, nu, y)[n])

    return potential, energy, psi, Interval(-0.5 * a, 0.5 * a), None


def _table1_bessel(p):
    _positive(p, "k")
    k = p["k"]

    def potential(x, n=None):
        if n is None:
            raise ValueError("the Bessel potential depends on the order n")
        return (n * n - 0.25) / (2 * np.asarray(x, dtype=float) ** 2)

    def psi(n, x):
        s = k * np.asarray(x, dtype=float)
        return np.sqrt(s) * bessel_j(n, np.ravel(s)).reshape(s.shape)

    return potential, lambda n: 0.5 * k * k, psi, Interval(0.0, math.inf), range(1, 10**9)


def _table1_gen_hermite(p):
    _positive(p, "k")
    k, l = p["k"], p["l"]
    parity = p.get("parity", "even")
    if l < 0 or int(l) != l:
        raise ValueError("l must be a nonnegative integer")
    if parity not in ("even", "odd"):
        raise ValueError("parity must be 'even' or 'odd'")
    # even degree 2n uses mu = l + 1, odd degree 2n + 1 uses mu = l
    mu = l + 1 if parity == "even" else l
    if not mu > -0.5:
        raise ValueError("generalized Hermite needs mu > -1/2")

    def psi(n, x):
        degree = 2 * n if parity == "even" else 2 * n + 1
        s = k * np.asarray(x, dtype=float)
        # sqrt(2) restores unit norm on the half line
        fn = op.laguerre_normalized(n, mu - 0.5 if parity == "even" else mu + 0.5, s * s)[n]
        body = fn if degree % 2 == 0 else s * fn
        return math.sqrt(2 * k) * np.abs(s) ** mu * np.exp(-0.5 * s * s) * body

    return (lambda x, n=None: l * (l + 1) / (2 * np.asarray(x) ** 2) + 0.5 * k ** 4 * np.asarray(x) ** 2,
            lambda n: k * k * (2 * n + l + 1.5), psi, Interval(0.0, math.inf), None)


_BUILDERS = {
    "Oscillator": (_oscillator, {"kappa": 1.0}),
    "PoschlTeller": (_poschl_teller, {"a": math.pi, "mu": 2.0}),
    "Coulomb3D": (_coulomb3d, {"Z": -1.0, "l": 0}),
    "Morse1D": (_morse, {"alpha": 1.0, "beta": 1.0, "V0": 2.0}),
    "Table1Jacobi": (_table1_jacobi, {"a": math.pi, "mu": 0.5, "nu": 1.5}),
    "Table1Bessel": (_table1_bessel, {"k": 1.0}),
    "Table1GenHermite": (_table1_gen_hermite, {"k": 1.0, "l": 0, "parity": "even"}),
}


def build_system(id, params=None):
    """Wire up system ``id`` with ``params`` merged over its defaults.

    Parameters: Oscillator ``kappa``; PoschlTeller ``a``, ``mu``; Coulomb3D
    ``Z`` (< 0), ``l``; Morse1D ``alpha``, ``beta``, ``V0``; Table1Jacobi ``a``,
    ``mu``, ``nu`` and optionally ``spectrum="full-shift"``; Table1Bessel ``k``
    (the level index is the Bessel order, E = k^2/2 for every order);
    Table1GenHermite ``k``, ``l``, ``parity``.
    """
    if id not in _BUILDERS:
        raise ValueError(f"unknown system {id!r}; choose from {', '.join(SYSTEM_IDS)}")
    builder, defaults = _BUILDERS[id]
    merged = {**defaults, **(params or {})}
    unknown = set(merged) - set(defaults) - {"spectrum"}
    if unknown:
        raise ValueError(f"unexpected parameters for {id}: {sorted(unknown)}")
    potential, energy, psi, dom, levels = builder(merged)
    sys_kwargs = {} if levels is None else {"index_range": levels}
    return ClassicalSystem(id, merged, potential, energy, psi, dom, **sys_kwargs)


def schrodinger_residual(system, n, x_grid, h=None):
    """max |-psi''/2 + (V - E) psi| / max |E psi| over ``x_grid``.

    psi'' uses the 9-point central stencil with step ``h`` (default 0.02,
    shrunk to a tenth of the distance to the nearest domain edge).
    """
    system.check_index(n)
    x = np.asarray(x_grid, dtype=float)
    lo, hi = system.domain.lo, system.domain.hi
    if np.any(x <= lo) or np.any(x >= hi):
        raise GridTooCloseError("grid must lie strictly inside the domain")
    if h is None:
        h = min(0.02, 0.1 * float(np.min(np.minimum(x - lo, hi - x))))
    if np.any(x - 4 * h <= lo) or np.any(x + 4 * h >= hi):
        raise GridTooCloseError("stencil reaches the domain edge")

    def psi(pts):
        return system.wavefunction(n, pts)

    d2 = second_derivative(psi, x, h)
    p = psi(x)
    E = system.energy(n)
    resid = -0.5 * d2 + (system.potential(x, n) - E) * p
    return float(np.max(np.abs(resid)) / np.max(np.abs(E * p)))


def lambda_matrix(nu, N):
    """N x N overlap matrix of the modified Laguerre (Coulomb) basis."""
    if not nu > -1:
        raise ValueError("nu must exceed -1")
    if N < 1:
        raise ValueError("N must be at least 1")
    n = np.arange(N)
    diag = 2 * n + nu + 1.0
    off = -np.sqrt((n[:-1] + 1) * (n[:-1] + nu + 1.0))
    return TridiagonalMatrix(diag, off)
