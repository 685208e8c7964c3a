"""
SUSY Core
Extended Morse superpotential W = A X1 + X2, partner potentials, shape invariance and ladder operators
"""

import logging
from typing import Union

import numpy as np
from numpy.polynomial import Polynomial

from domain_model import (
    BoundaryError, DomainError, GridSpec, SampledFunction, SuperpotentialSpec, q_of,
)
from sampling import first_derivative

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

# Ladder inputs must have decayed to this fraction of their peak at both ends
BOUNDARY_DECAY = 1e-8


def _result(value) -> ArrayLike:
    value = np.asarray(value, dtype=float)
    return float(value) if value.ndim == 0 else value


def _check_q(Q: float) -> float:
    Q = float(Q)
    if Q < 0:
        raise DomainError(f"Q must be >= 0, got {Q}")
    return Q


def sech(z) -> np.ndarray:
    """Overflow-safe sech"""
    e = np.exp(-np.abs(np.asarray(z, dtype=float)))
    return 2.0 * e / (1.0 + e * e)


def log_cosh(z) -> np.ndarray:
    """Overflow-safe ln cosh"""
    a = np.abs(np.asarray(z, dtype=float))
    return a + np.log1p(np.exp(-2.0 * a)) - np.log(2.0)


# ============ RICCATI / LINEAR SOLUTIONS ============

def x1(x, Q: float) -> ArrayLike:
    """X1 = 1 - 2Q/(e^{2x} + Q), evaluated as tanh(x - q) for Q > 0"""
    Q = _check_q(Q)
    x = np.asarray(x, dtype=float)
    if Q == 0:
        return _result(np.ones_like(x))
    return _result(np.tanh(x - q_of(Q)))


def x1_derivative(x, Q: float) -> ArrayLike:
    Q = _check_q(Q)
    x = np.asarray(x, dtype=float)
    if Q == 0:
        return _result(np.zeros_like(x))
    return _result(sech(x - q_of(Q)) ** 2)


def x2(x, B: float, P: float, Q: float) -> ArrayLike:
    """X2 = (2P - B) e^x / (e^{2x} + Q), evaluated as B' sech(x - q) for Q > 0"""
    Q = _check_q(Q)
    x = np.asarray(x, dtype=float)
    k = 2.0 * P - B
    if Q == 0:
        return _result(k * np.exp(-x))
    q = q_of(Q)
    return _result(0.5 * k * np.exp(-q) * sech(x - q))


def x2_derivative(x, B: float, P: float, Q: float) -> ArrayLike:
    Q = _check_q(Q)
    x = np.asarray(x, dtype=float)
    k = 2.0 * P - B
    if Q == 0:
        return _result(-k * np.exp(-x))
    q = q_of(Q)
    z = x - q
    return _result(-0.5 * k * np.exp(-q) * sech(z) * np.tanh(z))


def _w(x, a: float, spec: SuperpotentialSpec):
    # A enters linearly, so partners with a <= 0 are still evaluable
    return a * np.asarray(x1(x, spec.Q)) + np.asarray(x2(x, spec.B, spec.P, spec.Q))


def _dw(x, a: float, spec: SuperpotentialSpec):
    return a * np.asarray(x1_derivative(x, spec.Q)) + np.asarray(x2_derivative(x, spec.B, spec.P, spec.Q))


# ============ SUPERPOTENTIAL ============

def superpotential(x, spec: SuperpotentialSpec) -> ArrayLike:
    """W(x, A) = A X1(x) + X2(x)"""
    return _result(_w(x, spec.A, spec))


def superpotential_derivative(x, spec: SuperpotentialSpec) -> ArrayLike:
    """W'(x, A) from the closed-form X1', X2'"""
    return _result(_dw(x, spec.A, spec))


def phi(x, spec: SuperpotentialSpec) -> ArrayLike:
    """
    Extension term phi = W - W0, with W0 = A - B e^{-x} the Morse superpotential

    phi = (2P e^x - 2AQ + BQ e^{-x}) / (e^{2x} + Q), and 2P e^{-x} when Q = 0.
    """
    x = np.asarray(x, dtype=float)
    A, B, P, Q = spec.A, spec.B, spec.P, spec.Q
    if Q == 0:
        return _result(2.0 * P * np.exp(-x))
    # Divide through by e^{2x} on the right half and by e^{x} on the left
    u = np.exp(-np.abs(x))
    right = (2.0 * P * u - 2.0 * A * Q * u * u + B * Q * u ** 3) / (1.0 + Q * u * u)
    with np.errstate(divide='ignore', over='ignore', invalid='ignore'):
        left = (2.0 * P * u - 2.0 * A * Q + B * Q / u) / (u * u + Q)
    return _result(np.where(x >= 0, right, left))


def ground_state(x, a: float, spec: SuperpotentialSpec) -> ArrayLike:
    """
    Unnormalized exp(-integral of W(x, a)), the zero mode of A(a) = d/dx + W

    For Q > 0 this is cosh(z)^{-a} exp(-B' arctan sinh z) with z = x - q,
    for Q = 0 it is exp(-a x + (2P - B) e^{-x}).
    """
    x = np.asarray(x, dtype=float)
    if spec.Q == 0:
        return _result(np.exp(-a * x + (2.0 * spec.P - spec.B) * np.exp(-x)))
    z = x - spec.q
    return _result(np.exp(-a * log_cosh(z) - spec.b_prime * np.arctan(np.sinh(z))))


# ============ IDENTITY RESIDUALS ============

def riccati_residual(x, Q: float) -> ArrayLike:
    """X1' + X1^2 - 1"""
    X1 = np.asarray(x1(x, Q))
    return _result(np.asarray(x1_derivative(x, Q)) + X1 * X1 - 1.0)


def linear_residual(x, B: float, P: float, Q: float) -> ArrayLike:
    """X2' + X1 X2"""
    return _result(np.asarray(x2_derivative(x, B, P, Q))
                   + np.asarray(x1(x, Q)) * np.asarray(x2(x, B, P, Q)))


def shape_invariance_shift(A: float) -> float:
    """g(A - 1) - g(A) with g(a) = -a^2, i.e. 2A - 1"""
    return 2.0 * A - 1.0


def shape_invariance_residual(x, spec: SuperpotentialSpec) -> ArrayLike:
    """
    W^2(x,A) + W'(x,A) - A^2 - [W^2(x,A-1) - W'(x,A-1) - (A-1)^2]

    The A-1 partner keeps B, P, Q and may have A - 1 <= 0.
    """
    A = spec.A
    w_a, w_b = _w(x, A, spec), _w(x, A - 1.0, spec)
    # Difference of squares as X1 (W(A) + W(A-1)) keeps roundoff at the scale of W, not W^2
    squares = np.asarray(x1(x, spec.Q)) * (w_a + w_b)
    return _result(squares + _dw(x, A, spec) + _dw(x, A - 1.0, spec) - shape_invariance_shift(A))


def partner_potential(x, spec: SuperpotentialSpec, branch: str = 'plus',
                      factorization_energy: bool = True) -> ArrayLike:
    """
    V^{(+/-)} = W^2 -/+ W' + eps with eps = -A^2

    Args:
        x: Points
        spec: Superpotential parameters
        branch: 'plus' or 'minus'
        factorization_energy: Include eps (False gives the bare W^2 -/+ W')

    Returns:
        Partner potential values
    """
    if branch not in ('plus', 'minus'):
        raise DomainError(f"branch must be 'plus' or 'minus', got '{branch}'")
    W = _w(x, spec.A, spec)
    dW = _dw(x, spec.A, spec)
    eps = -spec.A ** 2 if factorization_energy else 0.0
    if branch == 'plus':
        return _result(W * W - dW + eps)
    return _result(W * W + dW + eps)


# ============ LADDER OPERATORS ============

def _check_decay(psi: SampledFunction):
    values = np.asarray(psi.values)
    peak = float(np.max(np.abs(values)))
    if peak == 0.0:
        raise BoundaryError("ladder operator applied to a zero function")
    if max(abs(values[0]), abs(values[-1])) >= BOUNDARY_DECAY * peak:
        raise BoundaryError(
            f"function has not decayed at the grid ends "
            f"(|psi| = {abs(values[0]):.3g}, {abs(values[-1]):.3g}, peak {peak:.3g})")


def ladder_raise(psi: SampledFunction, a: float, spec: SuperpotentialSpec) -> SampledFunction:
    """
    A^dagger(a) psi = -psi' + W(x, a) psi on the grid (unnormalized)

    Raises:
        BoundaryError: psi not decayed at the ends
    """
    _check_decay(psi)
    values = np.asarray(psi.values)
    derivative = first_derivative(values, psi.grid.spacing)
    return psi.with_values(-derivative + _w(psi.nodes, a, spec) * values)


def ladder_lower(psi: SampledFunction, a: float, spec: SuperpotentialSpec) -> SampledFunction:
    """A(a) psi = psi' + W(x, a) psi on the grid, annihilates the ground state of V^{(+)}(a)"""
    _check_decay(psi)
    values = np.asarray(psi.values)
    derivative = first_derivative(values, psi.grid.spacing)
    return psi.with_values(derivative + _w(psi.nodes, a, spec) * values)


def ladder_state(n: int, spec: SuperpotentialSpec, grid: GridSpec) -> SampledFunction:
    """
    Level n of V^{(+)}(A) from n raising steps on the ground state of the A - n system

    psi_n(A) = A^dagger(A) A^dagger(A-1) ... A^dagger(A-n+1) psi_0(A-n)
    """
    n = spec.morse.check_level(n)
    base = spec.A - n
    psi = SampledFunction(grid, ground_state(grid.nodes(), base, spec))
    for step in range(1, n + 1):
        psi = ladder_raise(psi, base + step, spec)
    logger.debug("Built level %d by %d raising steps from a = %s", n, n, base)
    return psi


def raise_polynomial(poly: Polynomial, a: float, spec: SuperpotentialSpec) -> Polynomial:
    """
    Exact A^dagger(a) on cosh(z)^{-(a-1)} exp(-B' arctan s) R(s), s = sinh z

    The result is cosh(z)^{-a} exp(-B' arctan s) R_new(s) with
    R_new = ((2a - 1) s + 2B') R - (1 + s^2) R'.
    """
    if spec.Q == 0:
        raise DomainError("polynomial ladder needs Q > 0")
    s = Polynomial([0.0, 1.0])
    raised = Polynomial([2.0 * spec.b_prime, 2.0 * a - 1.0]) * poly - (1.0 + s * s) * poly.deriv()
    return raised.trim()


def ladder_polynomial(n: int, spec: SuperpotentialSpec) -> Polynomial:
    """Polynomial part R_n(s) of level n, psi_n = cosh(z)^{-A} exp(-B' arctan s) R_n(s)"""
    n = spec.morse.check_level(n)
    poly = Polynomial([1.0])
    for step in range(1, n + 1):
        poly = raise_polynomial(poly, spec.A - n + step, spec)
    return poly


__all__ = ['sech', 'log_cosh', 'x1', 'x1_derivative', 'x2', 'x2_derivative',
           'superpotential', 'superpotential_derivative', 'phi', 'ground_state',
           'riccati_residual', 'linear_residual', 'shape_invariance_shift',
           'shape_invariance_residual', 'partner_potential',
           'ladder_raise', 'ladder_lower', 'ladder_state', 'raise_polynomial', 'ladder_polynomial']
