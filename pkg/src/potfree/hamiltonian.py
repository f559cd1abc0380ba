"""Matrix representations of the Hamiltonian in a basis.

Tridiagonal operators built from the energy-polynomial recursions, potential
and kinetic matrices by quadrature, local potential reconstruction from a
matrix, and spectra of perturbed tridiagonal operators.
"""

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .basis import basis_conjugate_values, basis_values, domain
from .energy_poly import ContinuousDualHahnParams, MeixnerPollaczekParams, recurrence_coefficients
from .numerics import (
    TridiagonalMatrix,
    dense_symmetric_eigenvalues,
    integrate,
    tridiagonal_eigenvalues,
)

__all__ = [
    "TridiagonalOperator",
    "PotentialMatrix",
    "PerturbationSpec",
    "SmallDenominatorError",
    "tridiagonal_from_recursion",
    "potential_matrix",
    "kinetic_matrix",
    "reconstruct_local_potential",
    "perturbed_spectrum",
]

# 9-point central stencil for the second derivative
_OFFSETS = np.arange(-4, 5, dtype=float)
_STENCIL = np.array([-1 / 560, 8 / 315, -1 / 5, 8 / 5, -205 / 72, 8 / 5, -1 / 5, 8 / 315, -1 / 560])


class SmallDenominatorError(ValueError):
    """The local reconstruction denominator is too small on part of the grid."""


@dataclass(frozen=True)
class TridiagonalOperator:
    """Operator with H phi_n = a_n phi_n + b_{n-1} phi_{n-1} + b_n phi_{n+1}."""

    a: Callable
    b: Callable
    variable: str

    def matrix(self, N):
        if N < 1:
            raise ValueError("N must be at least 1")
        n = np.arange(N)
        off = np.asarray(self.b(n[:-1]), dtype=float)
        if np.any(off == 0):
            raise ValueError("operator is reducible: an off-diagonal entry vanishes")
        return TridiagonalMatrix(np.asarray(self.a(n), dtype=float), off)

    def eigenvalues(self, N):
        return tridiagonal_eigenvalues(self.matrix(N))


@dataclass(frozen=True)
class PotentialMatrix:
    """Symmetrized N x N matrix plus the largest asymmetry seen before symmetrizing."""

    values: np.ndarray
    asymmetry: float

    @property
    def size(self):
        return self.values.shape[0]


@dataclass(frozen=True)
class PerturbationSpec:
    """eta * W, with W tridiagonal (``alpha`` on the diagonal, ``beta`` above it,
    both zero from ``range`` on) or a symmetric ``block`` in the leading corner."""

    eta: float
    alpha: Callable | None = None
    beta: Callable | None = None
    range: int = 0
    block: np.ndarray | None = None

    def __post_init__(self):
        if self.block is not None:
            blk = np.asarray(self.block, dtype=float)
            if blk.ndim != 2 or blk.shape[0] != blk.shape[1]:
                raise ValueError("perturbation block must be square")
            if not np.allclose(blk, blk.T, atol=1e-12):
                raise ValueError("perturbation block must be symmetric")
            object.__setattr__(self, "block", blk)
        elif self.range < 1:
            raise ValueError("a tridiagonal perturbation needs range >= 1")

    @property
    def extent(self):
        return self.block.shape[0] if self.block is not None else self.range

    def tridiagonal(self):
        return self.block is None or not np.any(np.triu(self.block, 2))

    def dense(self, N):
        W = np.zeros((N, N))
        if self.block is not None:
            W[: self.extent, : self.extent] = self.block
            return W
        n = np.arange(self.range)
        alpha = np.zeros(self.range) if self.alpha is None else np.asarray(self.alpha(n), dtype=float)
        beta = np.zeros(self.range) if self.beta is None else np.asarray(self.beta(n), dtype=float)
        W[n, n] = alpha
        # beta_n couples n and n+1 while n < range
        m = n[n + 1 < N]
        W[m, m + 1] = W[m + 1, m] = beta[: len(m)]
        return W


def tridiagonal_from_recursion(params):
    """Tridiagonal operator of the energy-polynomial recursion.

    The operator acts in the recursion variable: w = y sin(theta) for
    Meixner-Pollaczek parameters and w = y^2 for continuous dual Hahn ones.
    Converting w to an energy is left to the system's mapping.
    """
    if isinstance(params, MeixnerPollaczekParams):
        variable = "y*sin(theta)"
    elif isinstance(params, ContinuousDualHahnParams):
        variable = "y^2"
    else:
        raise TypeError("expected Meixner-Pollaczek or continuous dual Hahn parameters")

    def coeffs(n, which):
        n = np.atleast_1d(np.asarray(n, dtype=int))
        if n.size == 0:
            return np.empty(0)
        return recurrence_coefficients(params, int(n.max()))[which][n]

    return TridiagonalOperator(lambda n: coeffs(n, 0), lambda n: coeffs(n, 1), variable)


def _matrix_by_quadrature(spec, N, column_values, tol):
    lo, hi = domain(spec)

    def integrand(x):
        conj = basis_conjugate_values(spec, N, x)
        cols = column_values(x)
        return spec.lam * (conj[:, None] * cols[None, :]).reshape(N * N, -1)

    M = np.asarray(integrate(integrand, lo, hi, tol, initial=16)).reshape(N, N)
    asym = float(np.max(np.abs(M - M.T)))
    return PotentialMatrix(0.5 * (M + M.T), asym)


def potential_matrix(V, spec, N, tol=1e-11):
    """V_mn = lam ∫ conj_m(x) V(x) phi_n(x) dx for m, n < N."""
    if N < 1:
        raise ValueError("N must be at least 1")

    def cols(x):
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            vals = basis_values(spec, N, x) * V(x)
        # V may blow up where the basis vanishes identically
        return np.nan_to_num(vals, nan=0.0, posinf=0.0, neginf=0.0)

    return _matrix_by_quadrature(spec, N, cols, tol)


def _second_derivatives(spec, N, x, h0):
    """phi_n''(x) by the 9-point stencil; the step shrinks near finite endpoints."""
    lo, hi = domain(spec)
    h = np.full_like(x, h0)
    if math.isfinite(lo):
        h = np.minimum(h, (x - lo) / 5)
    if math.isfinite(hi):
        h = np.minimum(h, (hi - x) / 5)
    h = np.maximum(h, 1e-300)
    pts = x[None, :] + h[None, :] * _OFFSETS[:, None]
    vals = basis_values(spec, N, pts)  # (N, 9, len(x))
    return np.tensordot(vals, _STENCIL, axes=(1, 0)) / (h * h)


def kinetic_matrix(spec, N, tol=1e-10, h=None):
    """T_mn = lam ∫ conj_m (-phi_n''/2) dx by finite differences under quadrature.

    The default step is 0.01 / lam.
    """
    if N < 1:
        raise ValueError("N must be at least 1")
    h0 = 0.01 / spec.lam if h is None else h

    def cols(x):
        return -0.5 * _second_derivatives(spec, N, np.asarray(x, dtype=float), h0)

    return _matrix_by_quadrature(spec, N, cols, tol)


def reconstruct_local_potential(Vmat, spec, x_grid, N=None, min_ratio=1e-6):
    """Local estimate V(x) = Σ V_nm phi_n conj_m / Σ phi_n conj_n.

    Raises :class:`SmallDenominatorError` if the denominator drops below
    ``min_ratio`` times its largest value on the grid.
    """
    M = Vmat.values if isinstance(Vmat, PotentialMatrix) else np.asarray(Vmat, dtype=float)
    N = M.shape[0] if N is None else N
    if N > M.shape[0]:
        raise ValueError("N exceeds the matrix size")
    M = M[:N, :N]
    x = np.asarray(x_grid, dtype=float)
    phi = basis_values(spec, N, x)
    conj = basis_conjugate_values(spec, N, x)
    den = np.sum(phi * conj, axis=0)
    if np.any(den < min_ratio * np.max(den)):
        raise SmallDenominatorError("grid reaches where the basis carries almost no weight")
    num = np.einsum("n...,nm,m...->...", phi, M, conj)
    return num / den


def perturbed_spectrum(H0, pert, N, method="auto"):
    """Ascending eigenvalues of the N x N truncation of H0 + eta W.

    ``method``: ``auto`` uses bisection when W is tridiagonal and a dense
    solver otherwise; ``dense`` forces the dense solver.
    """
    if N <= pert.extent:
        raise ValueError("N must exceed the perturbation range")
    T = H0.matrix(N)
    W = pert.dense(N)
    if method == "dense" or not pert.tridiagonal():
        return dense_symmetric_eigenvalues(T.to_dense() + pert.eta * W)
    if method != "auto":
        raise ValueError("method must be 'auto' or 'dense'")
    diag = T.diag + pert.eta * np.diag(W)
    off = T.offdiag + pert.eta * np.diag(W, 1)
    return tridiagonal_eigenvalues(TridiagonalMatrix(diag, off))
