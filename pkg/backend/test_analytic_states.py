"""
Test Analytic States
Orthogonal polynomials, closed-form energies and wavefunctions, and the printed forms
"""

import math

import numpy as np
import pytest
from scipy.special import eval_genlaguerre

from analytic_states import (
    bound_state, coulomb_energy, coulomb_ext_wavefunction, coulomb_ext_wavefunction_printed,
    coulomb_wavefunction, count_nodes, laguerre, morse_energy, morse_ext_wavefunction,
    morse_ext_wavefunction_printed, morse_wavefunction, normalize, radial_ext_wavefunction,
    radial_ext_wavefunction_printed, radial_osc_energy, radial_osc_wavefunction, romanovski,
    romanovski_coefficients, romanovski_second_parameter, scarf2_wavefunction,
)
from domain_model import (
    CoulombExtParams, DomainError, GridSpec, LevelError, MorseParams, RadialExtParams, SampledFunction,
    ScarfParams, SuperpotentialSpec,
)
from numerics import schrodinger_residual
from potentials import v_coulomb, v_morse_ext, v_radial


@pytest.fixture
def spec():
    return SuperpotentialSpec.of(3.5, 1.0, 0.4, 2.0)


def _spread(numerator, denominator):
    keep = np.abs(denominator) > 1e-3 * np.max(np.abs(denominator))
    ratio = numerator[keep] / denominator[keep]
    return (np.max(ratio) - np.min(ratio)) / abs(np.mean(ratio))


# ============ POLYNOMIALS ============

@pytest.mark.parametrize("n", range(7))
@pytest.mark.parametrize("alpha", [0.0, 0.5, 2.5, 5.0])
def test_laguerre_matches_scipy(n, alpha):
    y = np.linspace(0.0, 20.0, 41)
    expected = eval_genlaguerre(n, alpha, y)
    np.testing.assert_allclose(laguerre(n, alpha, y), expected, rtol=1e-10,
                               atol=1e-10 * np.max(np.abs(expected)))


def test_romanovski_reference_value():
    assert romanovski(1, 1.0, -2.0, 3.0) == pytest.approx(-11.0)
    assert romanovski(0, 1.0, -2.0, 3.0) == 1.0


def test_romanovski_solves_its_equation():
    # (1 + s^2) R'' + (2bs + a) R' - n(2b + n - 1) R = 0
    from numpy.polynomial import Polynomial
    n, a, b = 3, 0.7, -2.4
    R = Polynomial(romanovski_coefficients(n, a, b))
    s = Polynomial([0.0, 1.0])
    residual = (1.0 + s * s) * R.deriv(2) + (2.0 * b * s + a) * R.deriv() - n * (2.0 * b + n - 1.0) * R
    assert np.max(np.abs(residual.coef)) < 1e-10 * np.max(np.abs(R.coef))


def test_romanovski_coefficients_are_cached():
    first = romanovski_coefficients(2, 0.5, -1.0)
    assert isinstance(first, tuple)
    assert romanovski_coefficients(2, 0.5, -1.0) is first


# ============ MORSE ============

def test_morse_energy_and_node():
    p = MorseParams(3.5, 1.0)
    assert morse_energy(1, p) == -6.25
    # L_1^{(5)}(y) vanishes at y = 6, i.e. 2 e^{-x} = 6
    assert morse_wavefunction(1, -math.log(3.0), p) == pytest.approx(0.0, abs=1e-10)
    with pytest.raises(LevelError):
        morse_energy(4, p)


def test_morse_ext_states_solve_the_equation(spec):
    grid = GridSpec.from_spacing(spec.q - 30.0, spec.q + 30.0, 0.0025)
    V = SampledFunction.from_callable(lambda x: v_morse_ext(x, spec), grid)
    for n in range(4):
        psi = SampledFunction.from_callable(lambda x: morse_ext_wavefunction(n, x, spec), grid)
        assert schrodinger_residual(psi, V, -(spec.A - n) ** 2) < 1e-6
        assert count_nodes(normalize(psi)) == n


def test_morse_ext_needs_extension():
    with pytest.raises(DomainError):
        morse_ext_wavefunction(0, 0.0, SuperpotentialSpec.of(3.5, 1.0, 0.4, 0.0))


def test_scarf2_wavefunction_is_shifted_morse_ext(spec):
    z = np.linspace(-10.0, 10.0, 201)
    scarf = ScarfParams(spec.A, spec.b_prime)
    for n in range(4):
        np.testing.assert_allclose(scarf2_wavefunction(n, z, scarf), morse_ext_wavefunction(n, z + spec.q, spec),
                                   rtol=1e-12, atol=1e-300)


def test_romanovski_second_parameter():
    assert romanovski_second_parameter(3.5) == -3.0


def test_sinh_prefactor_is_not_an_eigenfunction(spec):
    grid = GridSpec.from_spacing(spec.q + 0.5, spec.q + 2.5, 0.0025)
    V = SampledFunction.from_callable(lambda x: v_morse_ext(x, spec), grid)
    psi = SampledFunction.from_callable(lambda x: morse_ext_wavefunction_printed(0, x, spec), grid)
    assert schrodinger_residual(psi, V, -spec.A ** 2) > 1e-2
    assert np.isnan(morse_ext_wavefunction_printed(0, spec.q - 1.0, spec))


# ============ RADIAL OSCILLATOR ============

def test_radial_oscillator():
    assert radial_osc_energy(2, 2.0, 1.0) == 13.0
    grid = GridSpec.from_spacing(0.02, 12.0, 0.002)
    psi = SampledFunction.from_callable(lambda r: radial_osc_wavefunction(2, r, 2.0, 1.0), grid)
    V = SampledFunction.from_callable(lambda r: v_radial(r, 2.0, 1.0), grid)
    assert schrodinger_residual(psi, V, 13.0) < 1e-8
    with pytest.raises(DomainError):
        radial_osc_wavefunction(0, 0.0, 2.0, 1.0)


def test_radial_ext_known_level_only():
    p = RadialExtParams(2.0, 1.0, 2, 0.3, 1.5)
    with pytest.raises(LevelError):
        radial_ext_wavefunction(1, 1.0, p)


def test_printed_radial_ext_needs_corrected_romanovski_parameter():
    p = RadialExtParams(2.0, 1.0, 2, 0.3, 1.5)
    r = np.linspace(0.3, 3.0, 271)
    pulled = radial_ext_wavefunction(2, r, p)
    corrected = radial_ext_wavefunction_printed(2, r, p, romanovski_b=-2.0 - 0.5 + 0.25)
    assert _spread(corrected, pulled) < 1e-8
    assert _spread(radial_ext_wavefunction_printed(2, r, p), pulled) > 1e-2


# ============ COULOMB ============

def test_coulomb():
    assert coulomb_energy(1, 4.0, 2.0) == -1.0
    grid = GridSpec.from_spacing(0.02, 40.0, 0.002)
    psi = SampledFunction.from_callable(lambda r: coulomb_wavefunction(1, r, 4.0, 2.0), grid)
    V = SampledFunction.from_callable(lambda r: v_coulomb(r, 4.0, 2.0), grid)
    assert schrodinger_residual(psi, V, -1.0) < 1e-8


def test_printed_coulomb_ext_needs_corrected_romanovski_parameter():
    p = CoulombExtParams(4.0, 2.0, 1, 0.3, 1.5)
    r = np.linspace(0.3, 3.0, 271)
    pulled = coulomb_ext_wavefunction(1, r, p)
    assert _spread(coulomb_ext_wavefunction_printed(1, r, p, romanovski_b=-3.0), pulled) < 1e-8
    assert _spread(coulomb_ext_wavefunction_printed(1, r, p), pulled) > 1e-2


def test_small_r_power_law():
    r = np.geomspace(1e-6, 1e-5, 20)
    for psi, l in ((radial_ext_wavefunction(2, r, RadialExtParams(2.0, 1.0, 2, 0.3, 1.5)), 1.0),
                   (coulomb_ext_wavefunction(1, r, CoulombExtParams(4.0, 2.0, 1, 0.3, 1.5)), 2.0)):
        slope = np.polyfit(np.log(r), np.log(np.abs(psi)), 1)[0]
        assert slope == pytest.approx(l + 1.0, abs=1e-3)


# ============ BOUND STATES ============

def test_bound_state_factory(spec):
    state = bound_state('morse-ext', spec, 2)
    assert state.energy == -2.25
    assert state.wavefunction(spec.q) == pytest.approx(morse_ext_wavefunction(2, spec.q, spec))

    qes = bound_state('radial-ext', RadialExtParams(2.0, 1.0, 2, 0.3, 1.5), 2)
    assert qes.energy == 13.0
    assert bound_state('coulomb-ext', CoulombExtParams(4.0, 2.0, 1, 0.3, 1.5), 1).energy == -1.0


def test_bound_state_q_zero_is_plain_morse():
    state = bound_state('morse-ext', SuperpotentialSpec.of(3.5, 1.0, 0.2, 0.0), 1)
    plain = MorseParams(3.5, 0.6)
    assert state.energy == -6.25
    assert state.wavefunction(0.3) == pytest.approx(morse_wavefunction(1, 0.3, plain))


def test_bound_state_errors():
    with pytest.raises(DomainError):
        bound_state('hydrogen', MorseParams(3.5, 1.0), 0)
    with pytest.raises(DomainError):
        bound_state('radial-ext', RadialExtParams(2.0, 1.0, 2), 2)
    with pytest.raises(DomainError):
        bound_state('morse-ext', SuperpotentialSpec.of(3.5, 1.0, 0.6, 0.0), 0)
