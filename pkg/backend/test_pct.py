"""
Test PCT
Parameter maps, coordinate maps and pullbacks onto the radial oscillator and Coulomb half-lines
"""

import numpy as np
import pytest

import pct
from analytic_states import (
    coulomb_ext_wavefunction, coulomb_wavefunction, morse_ext_wavefunction, morse_wavefunction,
    radial_osc_wavefunction,
)
from domain_model import CoulombExtParams, DomainError, LevelError, MorseParams, ScarfParams, SuperpotentialSpec
from pct import (
    PAIRS, coulomb_to_morse, morse_to_coulomb, morse_to_radial, morse_to_scarf, pct_potential_residual,
    pullback_potential, pullback_wavefunction, r_of_x, radial_to_morse, x_of_r,
)
from potentials import v_coulomb, v_morse, v_radial

EPS = np.finfo(float).eps


def _spread(numerator, denominator):
    keep = np.abs(denominator) > 1e-3 * np.max(np.abs(denominator))
    ratio = numerator[keep] / denominator[keep]
    return (np.max(ratio) - np.min(ratio)) / abs(np.mean(ratio))


# ============ PARAMETER MAPS ============

def test_reference_maps():
    assert morse_to_radial(MorseParams(3.5, 0.5), 1) == (2.0, 4.5, 16.0)
    assert morse_to_coulomb(MorseParams(3.5, 1.0), 1) == (4.0, 2.0, -1.0)
    assert radial_to_morse(2.0, 1.0, 2) == MorseParams(2.75, 0.5)
    assert coulomb_to_morse(1.0, 0.0, 0) == MorseParams(0.5, 1.0)


def test_maps_reject_negative_l():
    with pytest.raises(DomainError):
        morse_to_radial(MorseParams(1.2, 1.0), 1)
    with pytest.raises(DomainError):
        morse_to_coulomb(MorseParams(1.3, 1.0), 1)
    assert morse_to_coulomb(MorseParams(1.5, 1.0), 1)[1] == 0.0
    with pytest.raises(LevelError):
        morse_to_radial(MorseParams(3.5, 1.0), 4)


def test_round_trips_are_exact_to_a_few_ulp():
    rng = np.random.default_rng(42)
    for _ in range(100):
        strength = float(rng.uniform(0.1, 10.0))
        l = float(rng.uniform(0.5, 6.0))
        n = int(rng.integers(0, 5))
        scale = n + 1.0

        omega, l_back, _ = morse_to_radial(radial_to_morse(strength, l, n), n)
        assert abs(omega - strength) <= 8 * EPS * strength
        assert abs(l_back - l) <= 8 * EPS * max(l, scale)

        Z, l_back, _ = morse_to_coulomb(coulomb_to_morse(strength, l, n), n)
        assert abs(Z - strength) <= 8 * EPS * strength
        assert abs(l_back - l) <= 8 * EPS * max(l, scale)


def test_fixed_energies():
    rng = np.random.default_rng(3)
    for _ in range(100):
        n = int(rng.integers(0, 5))
        p = MorseParams(n + float(rng.uniform(0.5, 4.0)), float(rng.uniform(0.1, 5.0)))
        omega, l, energy = morse_to_radial(p, n)
        assert omega * (2 * n + l + 1.5) == pytest.approx(energy, rel=8 * EPS)
        Z, l, energy = morse_to_coulomb(p, n)
        assert -Z ** 2 / (n + l + 1.0) ** 2 == pytest.approx(energy, rel=8 * EPS)


def test_morse_to_scarf():
    spec = SuperpotentialSpec.of(3.5, 1.0, 0.4, 2.0)
    scarf, q = morse_to_scarf(spec)
    assert scarf == ScarfParams(3.5, spec.b_prime)
    assert q == pytest.approx(0.5 * np.log(2.0))
    with pytest.raises(DomainError):
        morse_to_scarf(SuperpotentialSpec.of(3.5, 1.0, 0.4, 0.0))


def test_pairs_cover_supported_maps():
    assert ('morse', 'radial') in PAIRS
    assert ('radial', 'coulomb') not in PAIRS


# ============ COORDINATE MAPS ============

def test_coordinate_maps():
    assert x_of_r(1.0, 'radial') == 0.0
    assert x_of_r(np.e, 'coulomb') == pytest.approx(-1.0)
    r = np.geomspace(1e-3, 1e3, 61)
    for target in ('radial', 'coulomb'):
        x = x_of_r(r, target)
        assert np.all(np.diff(x) < 0)
        np.testing.assert_allclose(r_of_x(x, target), r, rtol=1e-14)
    with pytest.raises(DomainError):
        x_of_r(0.0, 'radial')
    with pytest.raises(DomainError):
        x_of_r(1.0, 'spherical')


def test_coordinate_map_monotonicity_is_asserted(monkeypatch):
    r = np.random.default_rng(5).uniform(0.01, 50.0, 40)
    x = x_of_r(r, 'coulomb')
    np.testing.assert_array_equal(np.argsort(-x), np.argsort(r))
    monkeypatch.setitem(pct.TARGETS, 'coulomb', {'scale': -1.0, 'c': 1.0})
    with pytest.raises(DomainError):
        x_of_r(r, 'coulomb')


# ============ PULLBACKS ============

@pytest.mark.parametrize("n", range(4))
def test_pullback_of_morse_gives_radial_oscillator(n):
    r = np.linspace(0.3, 3.0, 271)
    morse = radial_to_morse(2.0, 1.0, n)
    pulled = pullback_wavefunction(lambda x: morse_wavefunction(n, x, morse), 'radial')(r)
    assert _spread(pulled, radial_osc_wavefunction(n, r, 2.0, 1.0)) < 1e-10


@pytest.mark.parametrize("n", range(4))
def test_pullback_of_morse_gives_coulomb(n):
    r = np.linspace(0.3, 3.0, 271)
    morse = coulomb_to_morse(4.0, 2.0, n)
    pulled = pullback_wavefunction(lambda x: morse_wavefunction(n, x, morse), 'coulomb')(r)
    assert _spread(pulled, coulomb_wavefunction(n, r, 4.0, 2.0)) < 1e-10


def test_pullback_potential_of_plain_morse():
    r = np.linspace(0.3, 3.0, 28)
    morse = radial_to_morse(2.0, 1.0, 1)
    pulled = pullback_potential(lambda x: v_morse(x, morse), 'radial', -(morse.A - 1) ** 2, 2.0 * 4.5)(r)
    np.testing.assert_allclose(pulled, v_radial(r, 2.0, 1.0), rtol=1e-12)

    morse = coulomb_to_morse(4.0, 2.0, 1)
    pulled = pullback_potential(lambda x: v_morse(x, morse), 'coulomb', -(morse.A - 1) ** 2, -morse.B ** 2)(r)
    np.testing.assert_allclose(pulled, v_coulomb(r, 4.0, 2.0), rtol=1e-12, atol=1e-12)


def test_pct_potential_residual():
    r = np.array([0.5, 1.0, 2.0])
    for spec in (SuperpotentialSpec.of(3.5, 1.0, 0.4, 2.0), SuperpotentialSpec.of(2.2, 0.7, -1.0, 0.3),
                 SuperpotentialSpec.of(3.5, 1.0)):
        for target in ('radial', 'coulomb'):
            assert np.max(np.abs(pct_potential_residual(spec, 1, target, r))) < 1e-9
    with pytest.raises(DomainError):
        pct_potential_residual(SuperpotentialSpec.of(3.5, 1.0), 0, 'spherical', r)


def test_coulomb_pullback_factor_is_square_root_of_r():
    p = CoulombExtParams(4.0, 2.0, 1, 0.3, 1.5)
    r = np.linspace(0.5, 5.0, 46)
    spec = SuperpotentialSpec(coulomb_to_morse(p.Z, p.l, p.n), p.ext)
    inverse = pullback_wavefunction(lambda x: morse_ext_wavefunction(1, x, spec), 'coulomb', factor_power=-0.5)(r)
    np.testing.assert_allclose(inverse * r, coulomb_ext_wavefunction(1, r, p), rtol=1e-12)
