"""Orthonormal polynomials in the energy variable.

Two continuous families carry the scattering states:

* Meixner-Pollaczek, ``P_n^mu(y; theta)``, orthonormal on the real line;
* continuous dual Hahn, ``S_n^mu(y^2; a, b)``, orthonormal on y > 0.

Their discrete relatives (Meixner, dual Hahn) carry bound states. The module
also provides weights, generating functions, large-n approximants, the
generalized orthogonality of the dual Hahn family with a negative parameter,
the extended Jacobi recursions and the associated (second-kind) polynomials.

All continuous-family routines take a parameter record; the record type
selects the family.
"""

import math
from dataclasses import dataclass

import numpy as np

from .numerics import integrate
from .special import log_gamma_complex, pochhammer, rgamma, terminating_pfq

__all__ = [
    "MeixnerPollaczekParams",
    "ContinuousDualHahnParams",
    "DiscreteMeixnerParams",
    "DiscreteDualHahnParams",
    "ExtendedJacobiParams",
    "recursion_variable",
    "recurrence_coefficients",
    "eval_recursion",
    "eval_recursion_w",
    "eval_hypergeometric",
    "weight",
    "log_weight",
    "support",
    "gram_matrix",
    "generating_check",
    "asymptotic_phase",
    "asymptotic_amplitude",
    "asymptotic_approximant",
    "discrete_meixner",
    "meixner_orthogonality",
    "discrete_dual_hahn",
    "generalized_orthogonality",
    "generalized_gram",
    "jacobi_abc",
    "extended_jacobi",
    "second_kind",
]

_IMAG_TOL = 1e-10


@dataclass(frozen=True)
class MeixnerPollaczekParams:
    mu: float
    theta: float

    def __post_init__(self):
        if not self.mu > 0:
            raise ValueError("Meixner-Pollaczek requires mu > 0")
        if not 1e-8 < self.theta < math.pi - 1e-8:
            raise ValueError("Meixner-Pollaczek requires 0 < theta < pi (strict)")


@dataclass(frozen=True)
class ContinuousDualHahnParams:
    """Parameters (mu, a, b) of the continuous dual Hahn family.

    Either all three are real, or two of them form a complex-conjugate pair.
    ``regime`` tells whether the measure is purely continuous (all real parts
    positive) or mixed (``mu < 0`` with positive ``mu + a``, ``mu + b``).
    """

    mu: complex
    a: complex
    b: complex

    def __post_init__(self):
        vals = [complex(v) for v in (self.mu, self.a, self.b)]
        nonreal = [v for v in vals if v.imag != 0]
        if nonreal:
            if len(nonreal) != 2 or abs(nonreal[0] - nonreal[1].conjugate()) > 1e-14 * abs(nonreal[0]):
                raise ValueError("non-real parameters must form one conjugate pair")
        for name, v in zip(("mu", "a", "b"), vals):
            object.__setattr__(self, name, v.real if v.imag == 0 else v)

    @property
    def values(self):
        return complex(self.mu), complex(self.a), complex(self.b)

    @property
    def regime(self):
        mu, a, b = self.values
        if all(v.real > 0 for v in (mu, a, b)):
            return "continuous"
        if mu.imag == 0 and mu.real < 0 and (mu + a).real > 0 and (mu + b).real > 0:
            return "mixed"
        return "discrete"

    def symmetric_sums(self):
        """Elementary symmetric functions e1, e2, e3 of (mu, a, b), all real."""
        mu, a, b = self.values
        return (mu + a + b).real, (mu * a + mu * b + a * b).real, (mu * a * b).real


@dataclass(frozen=True)
class DiscreteMeixnerParams:
    alpha: complex
    beta: float

    def __post_init__(self):
        if not 0 < self.beta < 1:
            raise ValueError("discrete Meixner requires 0 < beta < 1")


@dataclass(frozen=True)
class DiscreteDualHahnParams:
    N: int
    alpha: float
    beta: float

    def __post_init__(self):
        if self.N < 0 or int(self.N) != self.N:
            raise ValueError("N must be a nonnegative integer")
        ok = (self.alpha > -1 and self.beta > -1) or (self.alpha < -self.N and self.beta < -self.N)
        if not ok:
            raise ValueError("dual Hahn requires alpha, beta > -1 or alpha, beta < -N")


@dataclass(frozen=True)
class ExtendedJacobiParams:
    mu: float
    nu: float
    lam: float

    def __post_init__(self):
        if not (self.mu > -1 and self.nu > -1):
            raise ValueError("extended Jacobi requires mu, nu > -1")


def _is_mp(params):
    if isinstance(params, MeixnerPollaczekParams):
        return True
    if isinstance(params, ContinuousDualHahnParams):
        return False
    raise TypeError(f"unsupported parameter record {type(params).__name__}")


def recursion_variable(params, y):
    """The variable w(y) in which the recursion is tridiagonal: y sin(theta) or y^2."""
    y = np.asarray(y)
    if _is_mp(params):
        return y * math.sin(params.theta)
    return y * y


def recurrence_coefficients(params, n_max):
    """Diagonal ``a_n`` and off-diagonal ``b_n`` (n = 0..n_max) of the recursion
    ``w P_n = a_n P_n + b_{n-1} P_{n-1} + b_n P_{n+1}``.
    """
    n = np.arange(n_max + 1, dtype=float)
    if _is_mp(params):
        mu, th = params.mu, params.theta
        return -(n + mu) * math.cos(th), 0.5 * np.sqrt((n + 1) * (n + 2 * mu))
    e1, e2, _ = params.symmetric_sums()
    mu, a, b = params.values
    diag = 2 * n * n + n * (2 * e1 - 1) + e2
    # (n+a+b)(n+mu+a)(n+mu+b) is symmetric in (mu, a, b) up to the pairing and real
    prod = ((n + 1) * (n + a + b) * (n + mu + a) * (n + mu + b)).real
    if np.any(prod[:-1] <= 0):
        raise ValueError("recursion is not positive-definite for these parameters")
    return diag, -np.sqrt(np.abs(prod))


def eval_recursion_w(params, w, n_max):
    """Forward recursion in the recursion variable ``w``; shape (n_max+1,) + shape(w)."""
    w = np.asarray(w, dtype=float)
    diag, off = recurrence_coefficients(params, max(n_max, 1))
    out = np.empty((n_max + 1,) + w.shape)
    out[0] = 1.0
    if n_max == 0:
        return out
    out[1] = (w - diag[0]) / off[0]
    for n in range(1, n_max):
        out[n + 1] = ((w - diag[n]) * out[n] - off[n - 1] * out[n - 1]) / off[n]
    return out


def eval_recursion(params, y, n_max):
    """Orthonormal P_0..P_{n_max} (or S_0..S_{n_max}) at ``y`` by forward recursion."""
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    return eval_recursion_w(params, recursion_variable(params, y), n_max)


def _real_or_raise(z, what):
    z = np.asarray(z)
    if np.any(np.abs(z.imag) > _IMAG_TOL * np.maximum(1.0, np.abs(z))):
        raise ArithmeticError(f"{what} has a non-negligible imaginary part")
    return z.real


def eval_hypergeometric(params, y, n, form="stable"):
    """Orthonormal polynomial of degree ``n`` at ``y`` from a terminating
    hypergeometric sum, independent of the recursion.

    ``form="direct"`` uses the textbook representation (2F1 at 1 - e^{-2i theta}
    for Meixner-Pollaczek, 3F2(-n, mu+iy, mu-iy; mu+a, mu+b; 1) for dual Hahn).
    Its terms grow and cancel, costing several digits by n = 30.
    ``form="stable"`` (default) sums the Cauchy product of the generating
    function instead: a 2F1 on the unit circle, or a 3F2 at unit argument with
    one ``1 - n - c`` denominator. Same polynomial, far milder cancellation.
    """
    if form not in ("stable", "direct"):
        raise ValueError("form must be 'stable' or 'direct'")
    y = np.asarray(y, dtype=float)
    if _is_mp(params):
        mu, th = params.mu, params.theta
        norm = math.sqrt(math.factorial(n) / pochhammer(2 * mu, n))
        if form == "direct":
            val = pochhammer(2 * mu, n) / math.factorial(n) * np.exp(1j * n * th) * terminating_pfq(
                [-n, mu + 1j * y], [2 * mu], 1 - np.exp(-2j * th))
        else:
            val = pochhammer(mu + 1j * y, n) * np.exp(-1j * n * th) / math.factorial(n) * terminating_pfq(
                [-n, mu - 1j * y], [1 - n - mu - 1j * y], np.exp(2j * th))
        return _real_or_raise(norm * val, "Meixner-Pollaczek value")[()]
    mu, a, b = params.values
    if form == "direct":
        pa, pb = pochhammer(mu + a, n), pochhammer(mu + b, n)
        hyp = terminating_pfq([-n, mu + 1j * y, mu - 1j * y], [mu + a, mu + b], 1.0)
        numer = _real_or_raise(pa * pb * hyp, "dual Hahn value")
        denom = (pa * pb * pochhammer(a + b, n)).real * math.factorial(n)
        return (numer / math.sqrt(denom))[()]
    if mu.imag != 0:
        # the polynomial is symmetric in (mu, a, b); keep the real one in front
        mu, a, b = (b, mu, a) if b.imag == 0 else (a, b, mu)
    scaled = pochhammer(mu - 1j * y, n) / math.factorial(n) * terminating_pfq(
        [-n, a + 1j * y, b + 1j * y], [a + b, 1 - n - mu + 1j * y], 1.0)
    scale = np.sqrt((pochhammer(mu + a, n) * pochhammer(mu + b, n)).real
                    / (math.factorial(n) * pochhammer(a + b, n).real))
    return _real_or_raise(scaled / scale, "dual Hahn value")[()]


def support(params):
    """Integration domain of the continuous weight as (lo, hi)."""
    return (-math.inf, math.inf) if _is_mp(params) else (0.0, math.inf)


def log_weight(params, y):
    """Natural log of the normalized weight; finite far into the tails."""
    y = np.asarray(y, dtype=float)
    if _is_mp(params):
        mu, th = params.mu, params.theta
        lg = log_gamma_complex(mu + 1j * y).real
        return (2 * mu * math.log(2 * math.sin(th)) + (2 * th - math.pi) * y + 2 * lg
                - math.log(2 * math.pi) - math.lgamma(2 * mu))
    if np.any(y < 0):
        raise ValueError("dual Hahn weight is defined for y >= 0")
    mu, a, b = params.values
    z = 1j * np.where(y == 0, 1.0, y)
    lg = (log_gamma_complex(mu + z) + log_gamma_complex(a + z) + log_gamma_complex(b + z)
          - log_gamma_complex(2 * z)).real
    norm = (log_gamma_complex(mu + a) + log_gamma_complex(mu + b) + log_gamma_complex(a + b)).real
    with np.errstate(divide="ignore"):
        return np.where(y == 0, -np.inf, 2 * lg - math.log(2 * math.pi) - norm)


def weight(params, y):
    """Normalized continuous weight rho(y)."""
    return np.exp(log_weight(params, y))[()]


def _cutoff(params, n_max):
    """Half-width beyond which rho * P_n^2 is below ~1e-300 for n <= n_max."""
    lo, _ = support(params)
    deg = 2 * n_max if _is_mp(params) else 4 * n_max
    for Y in 2.0 ** np.arange(2, 24):
        pts = np.array([Y]) if lo == 0 else np.array([-Y, Y])
        if np.all(log_weight(params, pts) + deg * np.log(2 * Y + 1) < -700):
            return float(Y)
    raise ValueError("weight decays too slowly to integrate")


def gram_matrix(params, n_max, tol=1e-11):
    """Quadrature Gram matrix ∫ rho P_n P_m over the continuous support."""
    Y = _cutoff(params, n_max)
    lo = 0.0 if not _is_mp(params) else -Y
    iu = np.triu_indices(n_max + 1)

    def integrand(y):
        p = eval_recursion(params, y, n_max)
        return weight(params, y) * p[iu[0]] * p[iu[1]]

    upper = integrate(integrand, lo, Y, tol, initial=32)
    gram = np.zeros((n_max + 1, n_max + 1))
    gram[iu] = upper
    return gram + np.triu(gram, 1).T


def _hyp2f1_series(a, b, c, t, rtol=1e-17):
    term = 1.0 + 0j
    total = 1.0 + 0j
    k = 0
    while True:
        term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * t
        total += term
        k += 1
        if abs(term) <= rtol * abs(total) and k > 5:
            return total
        if k > 20000:
            raise ArithmeticError("2F1 series did not converge")


def generating_check(params, y, t, N):
    """Partial sum Σ_{n<=N} P~_n t^n against the closed-form generating function.

    P~_n is the rescaled polynomial of each family (Meixner-Pollaczek:
    sqrt((2mu)_n/n!) P_n; dual Hahn: sqrt((mu+a)_n (mu+b)_n / (n! (a+b)_n)) S_n).
    Returns ``(partial_sum, closed_form)``.
    """
    if abs(t) > 0.9:
        raise ValueError("generating function check requires |t| <= 0.9")
    p = eval_recursion(params, float(y), N)
    n = np.arange(N + 1)
    if _is_mp(params):
        mu, th = params.mu, params.theta
        scale = np.array([math.exp(0.5 * (math.lgamma(k + 2 * mu) - math.lgamma(2 * mu) - math.lgamma(k + 1)))
                          for k in n])
        closed = ((1 - t * np.exp(1j * th)) ** (-mu + 1j * y)
                  * (1 - t * np.exp(-1j * th)) ** (-mu - 1j * y))
    else:
        mu, a, b = params.values
        logs = [(log_gamma_complex(k + mu + a) + log_gamma_complex(k + mu + b) - log_gamma_complex(mu + a)
                 - log_gamma_complex(mu + b) - math.lgamma(k + 1) - log_gamma_complex(k + a + b)
                 + log_gamma_complex(a + b)) for k in n]
        scale = np.sqrt(np.exp(np.array(logs))).real
        closed = (1 - t) ** (-mu + 1j * y) * _hyp2f1_series(a + 1j * y, b + 1j * y, a + b, t)
    partial = float(np.sum(scale * p * t ** n))
    return partial, float(_real_or_raise(closed, "generating function"))


def asymptotic_phase(params, y, n):
    """Argument of the large-n cosine (Darboux leading term).

    Meixner-Pollaczek: n theta + gamma + mu (theta - pi/2) - y ln(2 n sin theta)
    with gamma = arg Γ(mu + iy). Dual Hahn: y ln n - gamma with
    gamma = arg[Γ(mu+iy)Γ(a+iy)Γ(b+iy)/Γ(2iy)].
    """
    y = np.asarray(y, dtype=float)
    n = np.asarray(n, dtype=float)
    if _is_mp(params):
        mu, th = params.mu, params.theta
        gam = log_gamma_complex(mu + 1j * y).imag
        return n * th + gam + mu * (th - 0.5 * math.pi) - y * np.log(2 * n * math.sin(th))
    mu, a, b = params.values
    z = 1j * y
    gam = (log_gamma_complex(mu + z) + log_gamma_complex(a + z) + log_gamma_complex(b + z)
           - log_gamma_complex(2 * z)).imag
    return y * np.log(n) - gam


def asymptotic_amplitude(params, y):
    """n-independent amplitude A(y) of P_n ~ A(y) n^{-1/2} cos(phase).

    ``y`` may be complex (analytic continuation); the amplitude vanishes where
    the gamma functions in its denominator have poles.
    """
    y = np.asarray(y, dtype=complex)
    if _is_mp(params):
        mu, th = params.mu, params.theta
        pref = 2 * math.sqrt(math.gamma(2 * mu)) / (2 * math.sin(th)) ** mu
        return (pref * np.abs(np.exp((0.5 * math.pi - th) * y)) * np.abs(rgamma(mu + 1j * y)))[()]
    mu, a, b = params.values
    z = 1j * y
    # a normalization pole (mu+b, say, a non-positive integer, as for Morse)
    # stops the recursion at finite degree: no large-n amplitude exists
    inv = abs(complex(rgamma(mu + a) * rgamma(mu + b) * rgamma(a + b)))
    norm = math.nan if inv == 0 else 1 / math.sqrt(inv)
    with np.errstate(divide="ignore", invalid="ignore"):
        g2 = np.where(np.abs(z) > 0, np.abs(np.exp(log_gamma_complex(np.where(z == 0, 1, 2 * z)))), np.inf)
    val = 2 * norm * g2 * np.abs(rgamma(mu + z) * rgamma(a + z) * rgamma(b + z))
    return val[()]


def asymptotic_approximant(params, y, n, weighted=False):
    """Leading large-n approximation of P_n(y) (or of sqrt(rho) P_n when
    ``weighted``, which is sqrt(2/(n pi)) cos(phase))."""
    if n < 16:
        raise ValueError("asymptotic approximant requires n >= 16")
    phase = asymptotic_phase(params, y, n)
    if weighted:
        return (math.sqrt(2.0 / (n * math.pi)) * np.cos(phase))[()]
    return (asymptotic_amplitude(params, y) / math.sqrt(n) * np.cos(phase))[()]


def discrete_meixner(params, n, m):
    """Orthonormal Meixner value M_n^alpha(m; beta) and its weight rho_m."""
    if n < 0 or m < 0:
        raise ValueError("n and m must be nonnegative")
    al, be = params.alpha, params.beta
    norm = np.sqrt(pochhammer(al, n) * be ** n / math.factorial(n) + 0j)
    # argument 1 - 1/beta; with 1 - beta the family is not orthonormal under rho_m
    val = norm * terminating_pfq([-n, -m], [al], 1 - 1 / be)
    # log form: (al)_m beta^m / m! overflows separately long before the product does
    w = np.exp(al * math.log1p(-be) + log_gamma_complex(al + m) - log_gamma_complex(al)
               + m * math.log(be) - math.lgamma(m + 1))
    if np.isrealobj(al) or complex(al).imag == 0:
        return float(_real_or_raise(val, "Meixner value")), float(np.real(w))
    return complex(val), complex(w)


def meixner_orthogonality(params, n, n2, tol=1e-12):
    """Σ_m rho_m M_n(m) M_n2(m), truncated once a geometric tail bound drops below ``tol``.

    Returns ``(sum, terms_used, tail_bound)``.
    """
    total = 0.0
    ratios = []
    prev = None
    m = 0
    while True:
        v1, w = discrete_meixner(params, n, m)
        v2, _ = discrete_meixner(params, n2, m)
        term = abs(w * v1 * v2)
        total += w * v1 * v2
        if prev is not None and prev > 0:
            ratios.append(term / prev)
        prev = term
        m += 1
        if m > n + n2 + 10 and len(ratios) >= 10:
            q = max(ratios[-10:])
            if q < 1 and term * q / (1 - q) < tol:
                return total, m, term * q / (1 - q)
        if m > 100000:
            raise ArithmeticError("Meixner orthogonality sum did not converge")


def discrete_dual_hahn(params, n, m):
    """Orthonormal dual Hahn value R_n^N(m; alpha, beta) and weight rho^N(m)."""
    N, al, be = params.N, params.alpha, params.beta
    if not (0 <= n <= N and 0 <= m <= N):
        raise IndexError("dual Hahn indices must lie in 0..N")
    norm2 = pochhammer(al + 1, n) * pochhammer(be + 1, N - n) / (math.factorial(n) * math.factorial(N - n))
    hyp = terminating_pfq([-n, -m, m + al + be + 1], [al + 1, -N], 1.0) if n > 0 else 1.0
    # for alpha, beta < -N the norm and the weight are both negative when N is odd
    val = math.sqrt(abs(norm2)) * complex(hyp)
    w = abs(math.factorial(N) * (2 * m + al + be + 1) * pochhammer(al + 1, m) * pochhammer(N - m + 1, m)
         / (pochhammer(m + al + be + 1, N + 1) * pochhammer(be + 1, m) * math.factorial(m)))
    return float(_real_or_raise(val, "dual Hahn value")), float(w)


def generalized_gram(params, n_max, tol=1e-11):
    """Matrix of the mixed continuous-plus-discrete inner products for
    n, n' <= n_max. Equals the identity when the relation holds.

    In the mixed regime (``mu < 0``) the discrete part sums over the points
    y^2 = -(m + mu)^2 for m = 0..N, N the largest integer with m + mu < 0.
    """
    if not isinstance(params, ContinuousDualHahnParams):
        raise TypeError("generalized orthogonality applies to dual Hahn parameters")
    regime = params.regime
    cont = gram_matrix(params, n_max, tol)
    if regime == "continuous":
        return cont
    if regime != "mixed":
        raise ValueError("generalized orthogonality needs mu < 0 with mu+a, mu+b positive")
    mu, a, b = params.values
    mu = mu.real
    N = math.floor(-mu)
    if -mu == N:
        N -= 1
    pref = (2 * np.exp(log_gamma_complex(a - mu) + log_gamma_complex(b - mu)
                       - log_gamma_complex(a + b)).real / math.gamma(1 - 2 * mu))
    disc = np.zeros_like(cont)
    for m in range(N + 1):
        coef = ((-1) ** m * (m + mu) * pochhammer(mu + a, m) * pochhammer(mu + b, m) * pochhammer(2 * mu, m)
                / (pochhammer(mu - a + 1, m) * pochhammer(mu - b + 1, m) * math.factorial(m)))
        s = eval_recursion_w(params, -(m + mu) ** 2, n_max)
        disc += complex(coef).real * np.outer(s, s)
    return cont - pref * disc


def generalized_orthogonality(params, n, n2, tol=1e-11):
    """Continuous integral minus the discrete correction for dual Hahn
    polynomials with ``mu < 0`` (mixed spectrum); equals δ_{n n2}."""
    return float(generalized_gram(params, max(n, n2), tol)[n, n2])


def jacobi_abc(mu, nu, n):
    """Coefficients (A_n, B_n, C_n) of y P_n = A_n P_n + B_{n-1} P_{n-1} + C_n P_{n+1}
    for Jacobi polynomials P_n^{(mu, nu)}.
    """
    s = 2 * n + mu + nu
    if n == 0:
        # cancelled forms avoid 0/0 when mu + nu = 0 or -1
        A = (nu - mu) / (mu + nu + 2)
        C = 2.0 / (mu + nu + 2)
    else:
        A = (nu * nu - mu * mu) / (s * (s + 2))
        C = 2 * (n + 1) * (n + mu + nu + 1) / ((s + 1) * (s + 2))
    B = 2 * (n + mu + 1) * (n + nu + 1) / ((s + 2) * (s + 3))
    return A, B, C


def extended_jacobi(kind, params, y, n_max):
    """Polynomials Q_n^{(mu,nu)}(y; lam) (``kind='Q'``) or H_n^{(mu,nu)}(y; lam)
    (``kind='H'``) for n = 0..n_max by forward recursion.

    Q: (y - lam D_n^2) Q_n = A_n Q_n + B_{n-1} Q_{n-1} + C_n Q_{n+1},
    D_n = n + (mu+nu+1)/2.
    H: (y + F_n) H_n = G_n A_n H_n + G_{n-1} B_{n-1} H_{n-1} + G_n C_n H_{n+1},
    F_n = n(n+mu)/(2n+mu+nu), G_n = lam + (D_n + 1/2)^2.
    """
    mu, nu, lam = params.mu, params.nu, params.lam
    y = np.asarray(y, dtype=float)
    out = np.empty((n_max + 1,) + y.shape)
    out[0] = 1.0
    if n_max == 0:
        return out
    abc = [jacobi_abc(mu, nu, k) for k in range(n_max)]

    def D(k):
        return k + 0.5 * (mu + nu + 1)

    if kind == "Q":
        A0, _, C0 = abc[0]
        out[1] = (y - lam * D(0) ** 2 - A0) / C0
        for k in range(1, n_max):
            A, _, C = abc[k]
            Bm = abc[k - 1][1]
            out[k + 1] = ((y - lam * D(k) ** 2 - A) * out[k] - Bm * out[k - 1]) / C
    elif kind == "H":
        def F(k):
            return 0.0 if k == 0 else k * (k + mu) / (2 * k + mu + nu)

        def G(k):
            return lam + (D(k) + 0.5) ** 2

        A0, _, C0 = abc[0]
        out[1] = (y + F(0) - G(0) * A0) / (G(0) * C0)
        for k in range(1, n_max):
            A, _, C = abc[k]
            Bm = abc[k - 1][1]
            out[k + 1] = ((y + F(k) - G(k) * A) * out[k] - G(k - 1) * Bm * out[k - 1]) / (G(k) * C)
    else:
        raise ValueError("kind must be 'Q' or 'H'")
    return out


def second_kind(params, y, n_max):
    """Associated polynomials: same recursion with coefficients shifted n -> n+1,
    seeded by q_{-1} = 0, q_0 = 1.

    Only the shifted recurrence is guaranteed; the sine-type large-n behaviour
    depends on a normalization convention that is not fixed here.
    """
    w = np.asarray(recursion_variable(params, y), dtype=float)
    diag, off = recurrence_coefficients(params, n_max + 2)
    out = np.empty((n_max + 1,) + w.shape)
    out[0] = 1.0
    if n_max == 0:
        return out
    out[1] = (w - diag[1]) / off[1]
    for n in range(1, n_max):
        out[n + 1] = ((w - diag[n + 1]) * out[n] - off[n] * out[n - 1]) / off[n + 1]
    return out
