import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special as sp

from potfree.special import (
    DivergenceError,
    PoleError,
    bessel_j,
    gamma_abs_arg,
    gauss_2f1_unit,
    log_gamma_complex,
    pochhammer,
    rgamma,
    rgamma_real,
    terminating_pfq,
)


def test_log_gamma_small_integers():
    assert abs(log_gamma_complex(1)) < 1e-15
    assert abs(log_gamma_complex(5) - math.log(24)) < 1e-13


def test_gamma_one_plus_i_matches_reflection():
    g = gamma_abs_arg(1 + 1j)
    assert g.magnitude**2 == pytest.approx(math.pi / math.sinh(math.pi), rel=1e-13)
    assert g.argument == pytest.approx(-0.30164, abs=1e-5)
    ref = complex(mpmath.loggamma(mpmath.mpc(1, 1)))
    assert abs(log_gamma_complex(1 + 1j) - ref) < 1e-13


def test_gamma_abs_arg_real_points():
    g = gamma_abs_arg(2)
    assert g.magnitude == pytest.approx(1.0, rel=1e-14) and abs(g.argument) < 1e-14
    g = gamma_abs_arg(0.5)
    assert g.magnitude == pytest.approx(math.sqrt(math.pi), rel=1e-14) and abs(g.argument) < 1e-14


@pytest.mark.parametrize("z", [0, -1, -7])
def test_log_gamma_poles(z):
    with pytest.raises(PoleError):
        log_gamma_complex(z)


def test_log_gamma_against_mpmath(rng):
    z = rng.uniform(-30, 30, 300) + 1j * rng.uniform(-30, 30, 300)
    ours = log_gamma_complex(z)
    ref = np.array([complex(mpmath.loggamma(mpmath.mpc(v.real, v.imag))) for v in z])
    # compare Γ itself: the branch of Im log Γ is a convention
    scale = np.maximum(1.0, np.abs(ref))
    assert np.max(np.abs(ours.real - ref.real) / scale) < 1e-12
    assert np.max(np.abs(np.exp(1j * (ours.imag - ref.imag)) - 1)) < 1e-11


def test_gamma_recurrence_grid(rng):
    z = rng.uniform(-29, 29, 1000) + 1j * rng.uniform(-29, 29, 1000)
    z = z[np.abs(z) <= 30]
    diff = log_gamma_complex(z + 1) - log_gamma_complex(z) - np.log(z)
    # equality of Γ(z+1) and zΓ(z) up to the 2πi branch ambiguity
    assert np.max(np.abs(np.exp(diff) - 1)) < 1e-12


def test_reflection_magnitude():
    y = np.linspace(0.1, 20, 200)
    lg = log_gamma_complex(1 + 1j * y)
    vals = np.exp(2 * lg.real + np.log(np.sinh(np.pi * y)) - np.log(np.pi * y))
    assert np.max(np.abs(vals - 1)) < 1e-10


def test_argument_is_continuous_along_imaginary_line():
    y = np.linspace(0, 40, 4001)
    arg = log_gamma_complex(0.5 + 1j * y).imag
    assert np.max(np.abs(np.diff(arg))) < 0.1


def test_rgamma_zero_at_poles_and_sign():
    assert rgamma(-3) == 0
    assert rgamma_real(-0.5) == pytest.approx(1 / sp.gamma(-0.5), rel=1e-13)
    assert rgamma_real(-1.5) == pytest.approx(1 / sp.gamma(-1.5), rel=1e-13)


def test_pochhammer_examples():
    assert pochhammer(3.7, 0) == 1
    assert pochhammer(2, 3) == 24
    for n in range(12):
        assert pochhammer(1, n) == pytest.approx(math.factorial(n), rel=1e-14)


def test_pochhammer_large_n_uses_gamma_ratio():
    z = 0.3 + 0.2j
    ref = complex(mpmath.rf(mpmath.mpc(0.3, 0.2), 100))
    assert abs(pochhammer(z, 100) / ref - 1) < 1e-11


@given(st.floats(0.1, 10), st.integers(0, 40))
@settings(max_examples=60, deadline=None)
def test_pochhammer_gamma_ratio(z, n):
    assert pochhammer(z, n) == pytest.approx(sp.poch(z, n), rel=1e-11)


def test_terminating_pfq_examples():
    assert terminating_pfq([0, 2.5, 1], [3, 4], 1) == 1
    assert abs(terminating_pfq([-1, 1], [2], 2)) < 1e-15
    assert terminating_pfq([-1, 0.5 + 1j, 0.5 - 1j], [1, 1], 1) == pytest.approx(-0.25, abs=1e-15)


def test_terminating_pfq_denominator_pole():
    with pytest.raises(PoleError):
        terminating_pfq([-3, 1], [-1], 1)


def test_gauss_sum_examples():
    assert gauss_2f1_unit(0, 3, 2) == 1
    assert gauss_2f1_unit(-1, 1, 2) == pytest.approx(0.5, abs=1e-15)
    assert gauss_2f1_unit(0.5, 0.5, 2) == pytest.approx(4 / math.pi, rel=1e-13)


def test_gauss_sum_divergent():
    with pytest.raises(DivergenceError):
        gauss_2f1_unit(1, 1, 1)


@pytest.mark.parametrize("n", range(0, 21, 4))
def test_terminating_pfq_agrees_with_gauss(n):
    for b, c in [(0.3, 2.5), (1.7 + 0.4j, 3.1), (-2.5, 0.75)]:
        lhs = terminating_pfq([-n, b], [c], 1)
        rhs = gauss_2f1_unit(-n, b, c)
        assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(rhs))


def test_bessel_examples():
    assert bessel_j(0, 0.0) == 1
    assert bessel_j(1, 0.0) == 0
    assert abs(bessel_j(0, 2.404825557695773)) < 1e-9


def test_bessel_against_scipy():
    x = np.linspace(0, 50, 501)
    for n in range(21):
        assert np.max(np.abs(bessel_j(n, x) - sp.jv(n, x))) < 1e-10


def test_bessel_recurrence():
    x = np.linspace(0.5, 30, 300)
    for n in range(1, 11):
        lhs = bessel_j(n - 1, x) + bessel_j(n + 1, x)
        assert np.max(np.abs(lhs - 2 * n / x * bessel_j(n, x))) < 1e-9
