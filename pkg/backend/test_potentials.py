"""
Test Potentials
Closed-form potentials, their reductions, and the printed formulas against the derived ones
"""

import numpy as np
import pytest

from domain_model import CoulombExtParams, DomainError, MorseParams, RadialExtParams, ScarfParams, SuperpotentialSpec
from potentials import (
    potential, scarf_equivalence_residual, v_coulomb, v_coulomb_ext, v_coulomb_ext_printed, v_morse,
    v_morse_ext, v_morse_ext_printed, v_radial, v_radial_ext, v_radial_ext_printed, v_scarf2,
)


def _relative(a, b):
    a, b = np.asarray(a), np.asarray(b)
    return np.max(np.abs(a - b) / (1.0 + np.abs(a)))


# ============ LINE POTENTIALS ============

def test_morse_values():
    p = MorseParams(3.5, 1.0)
    assert v_morse(0.0, p) == pytest.approx(1.0 - 8.0)
    # minimum at e^{-x} = (2A + 1) / (2B)
    x_min = -np.log(4.0)
    assert v_morse(x_min, p) == pytest.approx(-16.0)


def test_morse_ext_reference_value():
    assert v_morse_ext(0.0, SuperpotentialSpec.of(1.0, 1.0, 1.0, 1.0)) == pytest.approx(-1.75)


def test_morse_ext_trivial_extension_is_morse():
    p = MorseParams(3.5, 1.0)
    x = np.linspace(-5.0, 10.0, 151)
    np.testing.assert_array_equal(v_morse_ext(x, SuperpotentialSpec(p)), v_morse(x, p))


def test_morse_ext_q_zero_is_shifted_strength():
    x = np.linspace(-3.0, 10.0, 131)
    np.testing.assert_allclose(v_morse_ext(x, SuperpotentialSpec.of(3.5, 1.0, 0.2, 0.0)),
                               v_morse(x, MorseParams(3.5, 0.6)))


def test_morse_ext_stays_finite_far_left():
    values = v_morse_ext(np.array([-400.0, -50.0, 400.0]), SuperpotentialSpec.of(3.5, 1.0, 0.4, 2.0))
    assert np.all(np.isfinite(values))


@pytest.mark.parametrize("A, B, P, Q", [
    (3.5, 1.0, 0.4, 2.0),
    (1.2, 0.3, -2.0, 0.1),
    (5.0, 4.0, 1.5, 8.0),
    (2.5, 1.0, 0.3, 0.0),
])
def test_printed_morse_ext_agrees(A, B, P, Q):
    x = np.linspace(-3.0, 10.0, 261)
    spec = SuperpotentialSpec.of(A, B, P, Q)
    assert _relative(v_morse_ext(x, spec), v_morse_ext_printed(x, spec)) < 1e-9


def test_scarf_equivalence():
    spec = SuperpotentialSpec.of(3.5, 1.0, 0.4, 2.0)
    x = spec.q + np.linspace(-15.0, 15.0, 301)
    assert np.max(np.abs(scarf_equivalence_residual(x, spec))) < 1e-10


def test_scarf2_at_origin():
    assert v_scarf2(0.0, ScarfParams(2.0)) == pytest.approx(-6.0)
    assert v_scarf2(0.0, ScarfParams(2.0, 1.5)) == pytest.approx(1.5 ** 2 - 6.0)


# ============ HALF-LINE POTENTIALS ============

def test_plain_half_line_potentials():
    assert v_radial(1.0, 2.0, 1.0) == pytest.approx(3.0)
    assert v_coulomb(2.0, 1.0, 0.0) == pytest.approx(-1.0)
    with pytest.raises(DomainError):
        v_radial(0.0, 2.0, 1.0)
    with pytest.raises(DomainError):
        v_coulomb(np.array([1.0, -1.0]), 1.0, 0.0)


def test_extended_potentials_reduce_without_extension():
    assert v_radial_ext(1.0, RadialExtParams(2.0, 1.0)) == pytest.approx(3.0, abs=1e-12)
    assert v_coulomb_ext(2.0, CoulombExtParams(1.0, 0.0)) == pytest.approx(-1.0, abs=1e-12)
    r = np.linspace(0.2, 5.0, 49)
    np.testing.assert_allclose(v_radial_ext(r, RadialExtParams(2.0, 1.0, 2)), v_radial(r, 2.0, 1.0), rtol=1e-11)
    np.testing.assert_allclose(v_coulomb_ext(r, CoulombExtParams(4.0, 2.0, 1)), v_coulomb(r, 4.0, 2.0),
                               rtol=1e-11, atol=1e-11)


def test_printed_radial_ext_agrees():
    p = RadialExtParams(2.0, 1.0, 2, 0.3, 1.5)
    r = np.linspace(0.3, 3.0, 271)
    assert _relative(v_radial_ext(r, p), v_radial_ext_printed(r, p)) < 1e-9


def test_printed_coulomb_ext_needs_inverse_square_centrifugal():
    p = CoulombExtParams(4.0, 2.0, 1, 0.3, 1.5)
    r = np.array([0.4, 0.7, 1.9, 3.0])
    assert _relative(v_coulomb_ext(r, p), v_coulomb_ext_printed(r, p, centrifugal='r2')) < 1e-9
    assert _relative(v_coulomb_ext(r, p), v_coulomb_ext_printed(r, p, centrifugal='r')) > 1e-2
    with pytest.raises(DomainError):
        v_coulomb_ext_printed(r, p, centrifugal='r3')


# ============ DISPATCH ============

def test_potential_dispatch():
    p = MorseParams(3.5, 1.0)
    x = np.linspace(-1.0, 1.0, 5)
    np.testing.assert_array_equal(potential('morse', p)(x), v_morse(x, p))
    radial = RadialExtParams(2.0, 1.0)
    assert potential('radial', radial)(1.0) == pytest.approx(3.0)
    with pytest.raises(DomainError):
        potential('hydrogen', p)
