"""
Test SUSY Core
Superpotential identities, partner potentials, shape invariance and the ladder operators
"""

import numpy as np
import pytest

from analytic_states import morse_ext_wavefunction, romanovski
from domain_model import (
    BoundaryError, DomainError, GridSpec, LevelError, MorseParams, SampledFunction, SuperpotentialSpec,
)
from potentials import v_morse, v_morse_ext
from sampling import overlap
from susy_core import (
    ground_state, ladder_lower, ladder_polynomial, ladder_raise, ladder_state, linear_residual,
    partner_potential, phi, raise_polynomial, riccati_residual, sech, shape_invariance_residual,
    shape_invariance_shift, superpotential, superpotential_derivative, x1, x2,
)


@pytest.fixture
def spec():
    return SuperpotentialSpec.of(3.5, 1.0, 0.4, 2.0)


@pytest.fixture
def random_specs():
    rng = np.random.default_rng(7)
    specs = []
    for _ in range(30):
        Q = float(rng.uniform(0.05, 10.0))
        specs.append(SuperpotentialSpec.of(rng.uniform(0.5, 6.0), rng.uniform(0.1, 5.0), rng.uniform(-3.0, 3.0), Q))
    specs.append(SuperpotentialSpec.of(2.5, 1.0, 0.3, 0.0))
    return specs


def _points(spec):
    if spec.Q > 0:
        return spec.q + np.linspace(-15.0, 15.0, 301)
    return np.linspace(-2.0, 15.0, 301)


# ============ RICCATI AND LINEAR SOLUTIONS ============

def test_x1_closed_forms():
    assert x1(0.0, 1.0) == 0.0
    np.testing.assert_array_equal(x1(np.array([-3.0, 0.0, 4.0]), 0.0), [1.0, 1.0, 1.0])
    with pytest.raises(DomainError):
        x1(0.0, -1.0)


def test_x2_matches_rational_form():
    x = np.linspace(-3.0, 3.0, 61)
    B, P, Q = 1.0, 0.4, 2.0
    rational = (2.0 * P - B) * np.exp(x) / (np.exp(2.0 * x) + Q)
    np.testing.assert_allclose(x2(x, B, P, Q), rational, rtol=1e-12, atol=1e-15)


def test_identities_hold_on_random_tuples(random_specs):
    for s in random_specs:
        x = _points(s)
        assert np.max(np.abs(riccati_residual(x, s.Q))) <= 1e-12
        assert np.max(np.abs(linear_residual(x, s.B, s.P, s.Q))) <= 1e-12
        assert np.max(np.abs(shape_invariance_residual(x, s))) <= 1e-10


def test_sech_does_not_overflow():
    with np.errstate(over='raise'):
        values = sech(np.array([-800.0, 0.0, 800.0]))
    np.testing.assert_allclose(values, [0.0, 1.0, 0.0])


# ============ SUPERPOTENTIAL ============

def test_superpotential_reduces_to_morse():
    plain = SuperpotentialSpec.of(3.5, 1.0)
    x = np.linspace(-3.0, 10.0, 131)
    np.testing.assert_allclose(superpotential(x, plain), 3.5 - np.exp(-x))
    np.testing.assert_allclose(superpotential_derivative(x, plain), np.exp(-x))


def test_phi_is_the_extension_term(spec):
    x = np.linspace(-3.0, 3.0, 61)
    np.testing.assert_allclose(phi(x, spec), superpotential(x, spec) - (spec.A - spec.B * np.exp(-x)),
                               rtol=1e-10, atol=1e-10)


def test_partner_potential_values():
    spec = SuperpotentialSpec.of(2.0, 1.0, 0.5, 1.0)
    assert partner_potential(0.0, spec, 'plus') == pytest.approx(-6.0)
    assert partner_potential(0.0, spec, 'minus') == pytest.approx(-2.0)
    with pytest.raises(DomainError):
        partner_potential(0.0, spec, 'middle')


def test_partner_plus_is_the_extended_potential(spec):
    x = np.linspace(-5.0, 10.0, 151)
    np.testing.assert_allclose(partner_potential(x, spec), v_morse_ext(x, spec), rtol=1e-10, atol=1e-10)


def test_trivial_extension_is_morse():
    p = MorseParams(3.5, 1.0)
    x = np.linspace(-3.0, 10.0, 131)
    np.testing.assert_allclose(partner_potential(x, SuperpotentialSpec(p)), v_morse(x, p), rtol=1e-13, atol=1e-12)


def test_shape_invariance_shift(spec):
    assert shape_invariance_shift(3.5) == 6.0
    x = np.linspace(spec.q - 10.0, spec.q + 10.0, 201)
    minus = partner_potential(x, spec, 'minus', factorization_energy=False)
    plus = partner_potential(x, spec.with_a(spec.A - 1.0), 'plus', factorization_energy=False)
    np.testing.assert_allclose(minus - plus, 2.0 * spec.A - 1.0, atol=1e-10)


# ============ LADDER OPERATORS ============

def _grid(spec, half_width=40.0, spacing=0.005):
    return GridSpec.from_spacing(spec.q - half_width, spec.q + half_width, spacing)


def test_ground_state_is_annihilated(spec):
    grid = _grid(spec)
    psi = SampledFunction(grid, ground_state(grid.nodes(), spec.A, spec))
    lowered = ladder_lower(psi, spec.A, spec)
    assert np.max(np.abs(lowered.values)) / np.max(np.abs(psi.values)) < 1e-6


def test_ladder_requires_decay(spec):
    grid = GridSpec(-5.0, 5.0, 101)
    with pytest.raises(BoundaryError):
        ladder_raise(SampledFunction(grid, np.ones(101)), spec.A, spec)
    with pytest.raises(BoundaryError):
        ladder_lower(SampledFunction(grid, np.zeros(101)), spec.A, spec)


def test_ladder_state_matches_closed_form(spec):
    grid = _grid(spec)
    for n in (1, 2):
        built = ladder_state(n, spec, grid)
        analytic = SampledFunction.from_callable(lambda x: morse_ext_wavefunction(n, x, spec), grid)
        assert overlap(built, analytic) > 1.0 - 1e-8


def test_ladder_state_level_range(spec):
    with pytest.raises(LevelError):
        ladder_state(4, spec, _grid(spec))


def test_ladder_polynomial(spec):
    np.testing.assert_allclose(ladder_polynomial(1, spec).coef, [2.0 * spec.b_prime, 2.0 * spec.A - 1.0])
    s = np.linspace(-4.0, 4.0, 81)
    for n in (2, 3):
        built = ladder_polynomial(n, spec)(s)
        reference = romanovski(n, -2.0 * spec.b_prime, 0.5 - spec.A, s)
        ratio = built[np.abs(reference) > 1e-3] / reference[np.abs(reference) > 1e-3]
        np.testing.assert_allclose(ratio, ratio[0], rtol=1e-9)


def test_raise_polynomial_needs_extension():
    from numpy.polynomial import Polynomial
    with pytest.raises(DomainError):
        raise_polynomial(Polynomial([1.0]), 2.5, SuperpotentialSpec.of(2.5, 1.0))
