"""Quantum systems described by energy polynomials rather than potentials."""

from . import basis, classical, energy_poly, hamiltonian, numerics, scattering, special, spectra

__version__ = "0.1.0"

__all__ = [
    "basis",
    "classical",
    "energy_poly",
    "hamiltonian",
    "numerics",
    "scattering",
    "special",
    "spectra",
]
