"""Forward recurrences for the classical polynomials.

Each routine returns every degree 0..n_max stacked along the first axis.
The ``*_normalized`` variants carry the orthonormalization factor through the
recurrence so large degrees neither overflow nor lose digits.
"""

import math

import numpy as np


def hermite(n_max, s):
    s = np.asarray(s, dtype=float)
    out = np.empty((n_max + 1,) + s.shape)
    out[0] = 1.0
    if n_max >= 1:
        out[1] = 2 * s
    for n in range(1, n_max):
        out[n + 1] = 2 * s * out[n] - 2 * n * out[n - 1]
    return out


def hermite_functions(n_max, s):
    """Orthonormal Hermite functions e^{-s^2/2} H_n(s) / sqrt(sqrt(pi) 2^n n!)."""
    s = np.asarray(s, dtype=float)
    out = np.empty((n_max + 1,) + s.shape)
    out[0] = math.pi ** -0.25 * np.exp(-0.5 * s * s)
    if n_max >= 1:
        out[1] = math.sqrt(2.0) * s * out[0]
    for n in range(1, n_max):
        out[n + 1] = math.sqrt(2.0 / (n + 1)) * s * out[n] - math.sqrt(n / (n + 1)) * out[n - 1]
    return out


def laguerre(n_max, nu, s):
    s = np.asarray(s, dtype=float)
    out = np.empty((n_max + 1,) + s.shape)
    out[0] = 1.0
    if n_max >= 1:
        out[1] = 1 + nu - s
    for n in range(1, n_max):
        out[n + 1] = ((2 * n + nu + 1 - s) * out[n] - (n + nu) * out[n - 1]) / (n + 1)
    return out


def laguerre_normalized(n_max, nu, s):
    """sqrt(n!/Γ(n+nu+1)) L_n^nu(s)."""
    s = np.asarray(s, dtype=float)
    out = np.empty((n_max + 1,) + s.shape)
    out[0] = math.exp(-0.5 * math.lgamma(nu + 1))
    if n_max >= 1:
        out[1] = (nu + 1 - s) * out[0] / math.sqrt(nu + 1)
    for n in range(1, n_max):
        out[n + 1] = (((2 * n + nu + 1 - s) * out[n] - math.sqrt(n * (n + nu)) * out[n - 1])
                      / math.sqrt((n + 1) * (n + nu + 1)))
    return out


def jacobi(n_max, a, b, y):
    y = np.asarray(y, dtype=float)
    out = np.empty((n_max + 1,) + y.shape)
    out[0] = 1.0
    if n_max >= 1:
        out[1] = (a + 1) + 0.5 * (a + b + 2) * (y - 1)
    for n in range(1, n_max):
        c = 2 * n + a + b
        out[n + 1] = (((c + 1) * ((c + 2) * c * y + a * a - b * b) * out[n]
                       - 2 * (n + a) * (n + b) * (c + 2) * out[n - 1])
                      / (2 * (n + 1) * (n + a + b + 1) * c))
    return out


def jacobi_norms(n_max, a, b):
    """sqrt((2n+a+b+1) Γ(n+a+b+1) n! / (2^{a+b+1} Γ(n+a+1) Γ(n+b+1)))."""
    out = np.empty(n_max + 1)
    for n in range(n_max + 1):
        if n == 0:
            # (a+b+1) Γ(a+b+1) = Γ(a+b+2) also covers a + b = -1
            lead = math.lgamma(a + b + 2)
        else:
            lead = math.log(2 * n + a + b + 1) + math.lgamma(n + a + b + 1)
        out[n] = math.exp(0.5 * (lead + math.lgamma(n + 1) - (a + b + 1) * math.log(2)
                                 - math.lgamma(n + a + 1) - math.lgamma(n + b + 1)))
    return out


def gegenbauer(n_max, lam, y):
    y = np.asarray(y, dtype=float)
    out = np.empty((n_max + 1,) + y.shape)
    out[0] = 1.0
    if n_max >= 1:
        out[1] = 2 * lam * y
    for n in range(1, n_max):
        out[n + 1] = (2 * (n + lam) * y * out[n] - (n + 2 * lam - 1) * out[n - 1]) / (n + 1)
    return out
