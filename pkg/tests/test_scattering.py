import math

import mpmath
import numpy as np
import pytest

from potfree.energy_poly import ContinuousDualHahnParams, MeixnerPollaczekParams
from potfree.scattering import (
    IllConditionedFit,
    LinearN,
    LogN,
    amplitude_closed,
    fit_tail_phase,
    model_for,
    phase_shift_closed,
    phase_shift_sweep,
    reduce_mod_pi,
    weighted_tail,
)
from potfree.spectra import catalog, coulomb, linear_cdh, morse_cdh

WINDOW = (4096, 512)


def arg_gamma(z):
    mpmath.mp.dps = 30
    return float(mpmath.im(mpmath.loggamma(z)))


def mod_pi_distance(a, b):
    return abs(float(reduce_mod_pi(a - b)))


def test_reduce_mod_pi():
    assert reduce_mod_pi(math.pi) == pytest.approx(0, abs=1e-15)
    assert reduce_mod_pi(-math.pi / 2) == pytest.approx(math.pi / 2)
    assert reduce_mod_pi(2.0) == pytest.approx(2.0 - math.pi)


def test_coulomb_phase_examples():
    assert phase_shift_closed(coulomb(0.0), 1.3) == 0
    assert abs(phase_shift_closed(coulomb(1.0), 1.0) - arg_gamma(1 + 1j)) < 1e-10
    assert phase_shift_closed(coulomb(1.0), 1.0) == pytest.approx(-0.30164, abs=1e-5)


@pytest.mark.parametrize("Z,l,k", [(1.0, 0, 0.3), (2.0, 1, 1.7), (-1.0, 3, 0.8)])
def test_coulomb_phase_against_mpmath(Z, l, k):
    assert mod_pi_distance(phase_shift_closed(coulomb(Z, l), k), arg_gamma(l + 1 + 1j * Z / k)) < 1e-10


def test_morse_phase_matches_generic_dual_hahn_form():
    system = morse_cdh(1.0, 1.0, 0.5)
    y = system.mapping.y(1.0)
    mu, a, b = (c.real for c in system.params.values)
    ref = arg_gamma(2j * y) - arg_gamma(mu + 1j * y) - arg_gamma(a + 1j * y) - arg_gamma(b + 1j * y)
    assert mod_pi_distance(phase_shift_closed(system, 1.0), ref) < 1e-12


def test_invalid_k():
    with pytest.raises(ValueError):
        phase_shift_closed(coulomb(1.0), 0.0)
    with pytest.raises(ValueError):
        amplitude_closed(coulomb(1.0), -1.0)


def test_amplitude_examples():
    assert amplitude_closed(coulomb(0.0), 2.0) == pytest.approx(1.0, rel=1e-14)
    mpmath.mp.dps = 30
    y = 1.0
    g = mpmath.gamma(0.5 + 1j * y) ** 3 / mpmath.gamma(2j * y)
    rho = float(abs(g) ** 2 / (2 * mpmath.pi * mpmath.gamma(1) ** 3))
    assert amplitude_closed(linear_cdh(1.0, 0.5, 0.5, 0.5), 1.0) == pytest.approx(math.sqrt(2 / math.pi / rho), rel=1e-12)


def test_synthetic_fit():
    n = np.arange(1024, 1024 + 256)
    fit = fit_tail_phase(np.cos(0.7 * n + 0.3) / np.sqrt(n), LinearN(0.7), (1024, 256))
    assert fit.phase == pytest.approx(0.3, abs=1e-6)
    assert fit.amplitude == pytest.approx(1.0, abs=1e-9)
    assert fit.rms_residual < 1e-12


def test_fit_rejects_bad_windows():
    n = np.arange(300, 364)
    with pytest.raises(IllConditionedFit):
        fit_tail_phase(np.cos(1e-7 * n) / np.sqrt(n), LinearN(1e-7), (300, 64))
    with pytest.raises(ValueError):
        fit_tail_phase(np.zeros(64), LinearN(0.5), (100, 64))
    with pytest.raises(ValueError):
        LinearN(0.0)


def test_coulomb_tail_fit():
    system = coulomb(1.0)
    params, y = system.polynomial_params(1.0), system.mapping.y(1.0)
    _, vals = weighted_tail(params, y, *WINDOW)
    fit = fit_tail_phase(vals, model_for(params, y), WINDOW)
    assert mod_pi_distance(fit.phase, phase_shift_closed(system, 1.0)) < 1e-3
    assert fit.amplitude == pytest.approx(math.sqrt(2 / math.pi), rel=0.02)


def test_dual_hahn_tail_fit():
    params = ContinuousDualHahnParams(0.5, 0.5, 0.5)
    _, vals = weighted_tail(params, 1.0, *WINDOW)
    fit = fit_tail_phase(vals, LogN(1.0), WINDOW)
    ref = phase_shift_closed(linear_cdh(1.0, 0.5, 0.5, 0.5), 1.0)
    assert mod_pi_distance(fit.phase, ref) < 1e-3
    assert fit.amplitude == pytest.approx(math.sqrt(2 / math.pi), rel=1e-3)


def test_correction_terms_remove_large_parameter_bias():
    system = linear_cdh(1.0, -1.2, 5.0, 7.0)
    params, y = system.polynomial_params(0.5), system.mapping.y(0.5)
    _, vals = weighted_tail(params, y, *WINDOW)
    ref = phase_shift_closed(system, 0.5)
    plain = fit_tail_phase(vals, LogN(y), WINDOW, corrections=0)
    corrected = fit_tail_phase(vals, LogN(y), WINDOW)
    assert mod_pi_distance(plain.phase, ref) > 1e-2
    assert mod_pi_distance(corrected.phase, ref) < 1e-3
    with pytest.raises(ValueError):
        fit_tail_phase(vals, LogN(y), WINDOW, corrections=-1)


def test_model_for_family():
    assert isinstance(model_for(MeixnerPollaczekParams(1, 1), 0.3), LinearN)
    assert isinstance(model_for(ContinuousDualHahnParams(1, 1, 1), 0.3), LogN)


@pytest.mark.parametrize("name", sorted(catalog()))
def test_phase_is_continuous(name):
    system = catalog()[name]
    coarse = np.geomspace(0.1, 10, 4001)
    fine = np.geomspace(0.1, 10, 40001)
    jump_c = np.max(np.abs(np.diff(phase_shift_closed(system, coarse))))
    jump_f = np.max(np.abs(np.diff(phase_shift_closed(system, fine))))
    # a genuine discontinuity would not shrink with the step
    assert jump_f < 0.15 * jump_c
    swept = phase_shift_sweep(system, fine)
    assert np.max(np.abs(np.diff(swept))) < math.pi / 2


def test_sweep_requires_increasing_grid():
    with pytest.raises(ValueError):
        phase_shift_sweep(coulomb(1.0), [1.0, 0.5])


def test_morse_amplitude_is_undefined():
    # the Morse family terminates at degree N, so it has no large-n tail
    system = morse_cdh(1.0, 1.0, 2.2)
    assert math.isnan(amplitude_closed(system, 1.0))
    assert math.isfinite(phase_shift_closed(system, 1.0))
