import math

import numpy as np
import pytest
from scipy import special as sp

from potfree.classical import (
    SYSTEM_IDS,
    GridTooCloseError,
    build_system,
    classical_poly_eval,
    coulomb_basis,
    lambda_matrix,
    schrodinger_residual,
)
from potfree.numerics import integrate

# (id, params, interior grid)
RESIDUAL_CASES = [
    ("Oscillator", {}, np.linspace(-5, 5, 81)),
    ("Oscillator", {"kappa": 1.7}, np.linspace(-3, 3, 61)),
    ("PoschlTeller", {}, np.linspace(-1.4, 1.4, 57)),
    ("PoschlTeller", {"a": 2.0, "mu": 1.3}, np.linspace(-0.9, 0.9, 37)),
    ("Coulomb3D", {}, np.linspace(0.05, 30, 120)),
    ("Coulomb3D", {"Z": -2.0, "l": 1}, np.linspace(0.05, 15, 120)),
    ("Morse1D", {"V0": 32.0}, np.linspace(-1.0, 6, 71)),
    ("Table1Jacobi", {}, np.linspace(-1.4, 1.4, 57)),
    ("Table1Jacobi", {"mu": 0.7, "nu": 0.7}, np.linspace(-1.4, 1.4, 57)),
    ("Table1Bessel", {"k": 1.3}, np.linspace(0.2, 20, 100)),
    ("Table1GenHermite", {"l": 1}, np.linspace(0.05, 6, 60)),
    ("Table1GenHermite", {"l": 2, "parity": "odd"}, np.linspace(0.05, 6, 60)),
]


def test_poly_examples():
    y = np.linspace(-1, 1, 5)
    assert classical_poly_eval("Hermite", {}, 0, y) == pytest.approx(np.ones(5))
    assert classical_poly_eval("Gegenbauer", {"mu": 0.8}, 1, y) == pytest.approx(1.6 * y)
    # H_2^1 = -4 L_1^{1/2}(y^2) = -4 (3/2 - y^2)
    assert classical_poly_eval("GeneralizedHermite", {"mu": 1.0}, 2, 1.0) == pytest.approx(-2.0)


@pytest.mark.parametrize("n", range(8))
def test_poly_against_scipy(n):
    y = np.linspace(-0.95, 0.95, 9)
    assert classical_poly_eval("Hermite", {}, n, 3 * y) == pytest.approx(sp.eval_hermite(n, 3 * y), rel=1e-12, abs=1e-12)
    assert classical_poly_eval("Gegenbauer", {"mu": 1.3}, n, y) == pytest.approx(sp.eval_gegenbauer(n, 1.3, y), rel=1e-12, abs=1e-12)
    assert classical_poly_eval("Jacobi", {"alpha": 0.4, "beta": 1.7}, n, y) == pytest.approx(
        sp.eval_jacobi(n, 0.4, 1.7, y), rel=1e-12, abs=1e-12)
    assert classical_poly_eval("Laguerre", {"nu": 2.2}, n, 4 * (y + 1)) == pytest.approx(
        sp.eval_genlaguerre(n, 2.2, 4 * (y + 1)), rel=1e-12, abs=1e-12)
    assert classical_poly_eval("GeneralizedHermite", {"mu": 0.0}, n, 2 * y) == pytest.approx(
        sp.eval_hermite(n, 2 * y), rel=1e-12, abs=1e-12)


def test_generalized_hermite_orthogonality():
    mu = 0.8
    N = 6

    def integrand(y):
        H = np.array([classical_poly_eval("GeneralizedHermite", {"mu": mu}, n, y) for n in range(N)])
        w = np.abs(y) ** (2 * mu) * np.exp(-y * y)
        return (H[:, None] * H[None, :] * w).reshape(N * N, -1)

    G = np.asarray(integrate(integrand, -np.inf, np.inf, 1e-12)).reshape(N, N)
    off = G - np.diag(np.diag(G))
    assert np.max(np.abs(off)) < 1e-9 * np.max(np.diag(G))


def test_poly_domain_and_family_errors():
    with pytest.raises(ValueError):
        classical_poly_eval("Jacobi", {"alpha": 0, "beta": 0}, 2, 1.5)
    with pytest.raises(ValueError):
        classical_poly_eval("Laguerre", {"nu": 0}, 2, -1.0)
    with pytest.raises(ValueError):
        classical_poly_eval("Chebyshev", {}, 2, 0.1)


def test_build_examples():
    assert build_system("Oscillator", {"kappa": 1.0}).energy(0) == pytest.approx(0.5)
    pt = build_system("PoschlTeller", {"a": math.pi, "mu": 2.0})
    assert [pt.energy(n) for n in range(4)] == pytest.approx([0.5 * (n + 2) ** 2 for n in range(4)])
    assert build_system("Coulomb3D", {"Z": -1.0, "l": 0}).energy(0) == pytest.approx(-0.5)


def test_build_rejects_bad_input():
    with pytest.raises(ValueError):
        build_system("Square")
    with pytest.raises(ValueError):
        build_system("Oscillator", {"omega": 1.0})
    with pytest.raises(ValueError):
        build_system("Coulomb3D", {"Z": 1.0})
    morse = build_system("Morse1D")
    with pytest.raises((IndexError, ValueError)):
        morse.check_index(5)


def test_morse_level_count():
    # levels exist while n < beta sqrt(2 V0) / alpha - 1/2
    s = build_system("Morse1D", {"alpha": 1.0, "beta": 1.0, "V0": 32.0})
    assert list(s.index_range) == list(range(8))
    assert s.energy(0) < s.energy(7) < 0


@pytest.mark.parametrize("sid,params,grid", RESIDUAL_CASES, ids=lambda v: str(v)[:24])
def test_schrodinger_residual(sid, params, grid):
    system = build_system(sid, params)
    for n in range(6):
        if n in system.index_range:
            assert schrodinger_residual(system, n, grid) <= 1e-6


def test_residual_examples():
    assert schrodinger_residual(build_system("Oscillator"), 0, np.linspace(-4, 4, 41)) <= 1e-8
    assert schrodinger_residual(build_system("PoschlTeller"), 2, np.linspace(-1.4, 1.4, 41)) <= 1e-6
    assert schrodinger_residual(build_system("Morse1D"), 0, np.linspace(-1.5, 6, 41)) <= 1e-6


def test_full_shift_jacobi_spectrum_fails_residual():
    grid = np.linspace(-1.4, 1.4, 57)
    shifted = build_system("Table1Jacobi", {"mu": 0.7, "nu": 0.7, "spectrum": "full-shift"})
    assert max(schrodinger_residual(shifted, n, grid) for n in range(6)) > 1e-2


def test_residual_grid_guard():
    pt = build_system("PoschlTeller")
    with pytest.raises(GridTooCloseError):
        schrodinger_residual(pt, 0, [0.0, math.pi / 2])
    with pytest.raises(GridTooCloseError):
        schrodinger_residual(pt, 0, [0.0, 1.5], h=0.05)


@pytest.mark.parametrize("sid,params", [(s, p) for s, p, _ in RESIDUAL_CASES if s not in ("Coulomb3D", "Table1Bessel")])
def test_normalization(sid, params):
    system = build_system(sid, params)
    lo, hi = system.domain.lo, system.domain.hi
    for n in range(4):
        if n in system.index_range:
            assert integrate(lambda x: system.wavefunction(n, x) ** 2, lo, hi) == pytest.approx(1, abs=1e-8)


def test_coulomb_norm_matches_lambda_diagonal():
    system = build_system("Coulomb3D", {"Z": -1.0, "l": 1})
    for n in range(4):
        mu_n = 2.0 / (n + 2)
        val = mu_n * integrate(lambda x: system.wavefunction(n, x) ** 2, 0, np.inf)
        assert val == pytest.approx(2 * n + 2 * 1 + 2, rel=1e-9)


@pytest.mark.parametrize("sid,params,points", [
    ("PoschlTeller", {}, [-math.pi / 2 + 1e-4, math.pi / 2 - 1e-4]),
    ("Table1Jacobi", {}, [-math.pi / 2 + 1e-7, math.pi / 2 - 1e-7]),
    ("Oscillator", {}, [-12.0, 12.0]),
    ("Coulomb3D", {}, [1e-7, 400.0]),
    ("Morse1D", {"V0": 32.0}, [-4.0, 60.0]),
    ("Table1GenHermite", {"l": 1}, [1e-4, 12.0]),
])
def test_boundary_decay(sid, params, points):
    system = build_system(sid, params)
    lo, hi = system.domain.lo, system.domain.hi
    lo_p = lo if math.isfinite(lo) else -10.0
    hi_p = hi if math.isfinite(hi) else 10.0
    interior = np.linspace(lo_p, hi_p, 401)[1:-1]
    for n in range(3):
        if n in system.index_range:
            peak = np.max(np.abs(system.wavefunction(n, interior)))
            assert np.max(np.abs(system.wavefunction(n, np.array(points)))) < 1e-6 * peak


def test_gegenbauer_reduction():
    x = np.linspace(-1.5, 1.5, 31)
    for mu in (0.3, 0.7, 1.5):
        jac = build_system("Table1Jacobi", {"a": math.pi, "mu": mu, "nu": mu})
        pt = build_system("PoschlTeller", {"a": math.pi, "mu": mu + 0.5})
        assert np.max(np.abs(jac.potential(x) - pt.potential(x))) <= 1e-12 * np.max(np.abs(pt.potential(x)))
        for n in range(4):
            assert jac.energy(n) == pytest.approx(pt.energy(n), rel=1e-13)
            a, b = jac.wavefunction(n, x), pt.wavefunction(n, x)
            assert min(np.max(np.abs(a - b)), np.max(np.abs(a + b))) < 1e-12


def test_bessel_column():
    s = build_system("Table1Bessel", {"k": 2.0})
    assert s.energy(3) == pytest.approx(2.0)
    assert 0 not in s.index_range
    x = np.array([0.5, 1.0])
    assert s.potential(x, 3) == pytest.approx((9 - 0.25) / (2 * x * x))


def test_lambda_matrix_examples():
    nu = 1.7
    L = lambda_matrix(nu, 5)
    assert L.diag[0] == pytest.approx(nu + 1)
    assert L.offdiag[0] == pytest.approx(-math.sqrt(nu + 1))


@pytest.mark.parametrize("nu,mu", [(1.0, 1.0), (3.0, 0.7), (0.4, 2.0)])
def test_lambda_matrix_matches_quadrature(nu, mu):
    N = 11

    def integrand(x):
        B = np.array([coulomb_basis(n, nu, mu, x) for n in range(N)])
        return mu * (B[:, None] * B[None, :]).reshape(N * N, -1)

    G = np.asarray(integrate(integrand, 0, np.inf, 1e-12)).reshape(N, N)
    assert np.max(np.abs(G - lambda_matrix(nu, N).to_dense())) < 1e-8


def test_system_ids():
    assert set(SYSTEM_IDS) == {"Oscillator", "PoschlTeller", "Coulomb3D", "Morse1D",
                               "Table1Jacobi", "Table1Bessel", "Table1GenHermite"}
