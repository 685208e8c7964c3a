"""
Analytic States
Closed-form bound-state energies and wavefunctions, with the Laguerre and Romanovski polynomials they use
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Tuple

import numpy as np
from numpy.polynomial import Polynomial

from domain_model import (
    CoulombExtParams, DomainError, LevelError, MorseParams, RadialExtParams, ScarfParams,
    SuperpotentialSpec, q_of, require_level,
)
from pct import coulomb_to_morse, pullback_wavefunction, radial_to_morse
from sampling import count_nodes, normalize
from susy_core import log_cosh


def _result(value):
    value = np.asarray(value, dtype=float)
    return float(value) if value.ndim == 0 else value


def _positive_r(r) -> np.ndarray:
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise DomainError("radial wavefunctions are defined for r > 0 only")
    return r


# ============ POLYNOMIALS ============

def laguerre(n: int, alpha: float, y):
    """Generalized Laguerre L_n^{(alpha)}(y) by the three-term recurrence"""
    n = require_level('n', n)
    y = np.asarray(y, dtype=float)
    previous = np.ones_like(y)
    if n == 0:
        return _result(previous)
    current = 1.0 + alpha - y
    for k in range(1, n):
        previous, current = current, ((2 * k + 1 + alpha - y) * current - (k + alpha) * previous) / (k + 1)
    return _result(current)


@lru_cache(maxsize=256)
def romanovski_coefficients(n: int, a: float, b: float) -> Tuple[float, ...]:
    """
    Coefficients (lowest degree first) of R_n^{(a,b)} from the Rodrigues formula

    R_n = (1+s^2)^{1-b} e^{-a arctan s} d^n/ds^n [(1+s^2)^{b-1+n} e^{a arctan s}].
    Each derivative of (1+s^2)^{beta-m} e^{a arctan s} p_m gives
    p_{m+1} = (1+s^2) p_m' + (2(beta - m) s + a) p_m, with beta = b - 1 + n.
    """
    n = require_level('n', n)
    s = Polynomial([0.0, 1.0])
    beta = b - 1.0 + n
    poly = Polynomial([1.0])
    for m in range(n):
        poly = (1.0 + s * s) * poly.deriv() + (2.0 * (beta - m) * s + a) * poly
    return tuple(float(c) for c in poly.trim().coef)


def romanovski(n: int, a: float, b: float, s):
    """Romanovski polynomial R_n^{(a,b)}(s)"""
    return _result(Polynomial(romanovski_coefficients(n, float(a), float(b)))(np.asarray(s, dtype=float)))


# ============ MORSE AND EXTENDED MORSE ============

def morse_energy(n: int, p: MorseParams) -> float:
    """E_n = -(A - n)^2"""
    n = p.check_level(n)
    return -(p.A - n) ** 2


def morse_wavefunction(n: int, x, p: MorseParams):
    """(2B e^{-x})^{A-n} exp(-B e^{-x}) L_n^{(2A-2n)}(2B e^{-x})"""
    n = p.check_level(n)
    x = np.asarray(x, dtype=float)
    y = 2.0 * p.B * np.exp(-x)
    with np.errstate(over='ignore'):
        envelope = np.exp((p.A - n) * np.log(y) - 0.5 * y)
    return _result(envelope * np.asarray(laguerre(n, 2.0 * (p.A - n), y)))


def romanovski_second_parameter(A: float) -> float:
    """Second Romanovski parameter of every level, 1/2 - A"""
    return 0.5 - A


def _scarf_form(n: int, z, A: float, Bp: float):
    z = np.asarray(z, dtype=float)
    s = np.sinh(z)
    envelope = np.exp(-A * log_cosh(z) - Bp * np.arctan(s))
    return envelope * np.asarray(romanovski(n, -2.0 * Bp, romanovski_second_parameter(A), s))


def morse_ext_wavefunction(n: int, x, spec: SuperpotentialSpec):
    """
    Level n of the extended Morse potential, energy -(A - n)^2

    cosh(z)^{-A} exp(-B' arctan sinh z) R_n^{(-2B', 1/2 - A)}(sinh z), z = x - q,
    B' = (P - B/2) e^{-q}. Requires Q > 0.
    """
    n = spec.morse.check_level(n)
    q = spec.q
    return _result(_scarf_form(n, np.asarray(x, dtype=float) - q, spec.A, spec.b_prime))


def morse_ext_wavefunction_printed(n: int, x, spec: SuperpotentialSpec):
    """Same as morse_ext_wavefunction with a sinh(z)^A prefactor, NaN for z < 0"""
    n = spec.morse.check_level(n)
    z = np.asarray(x, dtype=float) - spec.q
    s = np.sinh(z)
    with np.errstate(invalid='ignore'):
        prefactor = np.power(s, spec.A)
    polynomial = np.asarray(romanovski(n, -2.0 * spec.b_prime, romanovski_second_parameter(spec.A), s))
    tail = np.exp(-spec.b_prime * np.arctan(s)) * polynomial
    return _result(prefactor * tail)


def scarf2_wavefunction(n: int, z, p: ScarfParams):
    """Scarf II level n, energy -(A - n)^2"""
    n = p.check_level(n)
    return _result(_scarf_form(n, z, p.A, p.Bp))


# ============ RADIAL OSCILLATOR ============

def radial_osc_energy(n: int, omega: float, l: float) -> float:
    """omega (2n + l + 3/2)"""
    n = require_level('n', n)
    return omega * (2.0 * n + l + 1.5)


def radial_osc_wavefunction(n: int, r, omega: float, l: float):
    """r^{l+1} exp(-omega r^2 / 4) L_n^{(l+1/2)}(omega r^2 / 2)"""
    n = require_level('n', n)
    r = _positive_r(r)
    envelope = np.exp((l + 1.0) * np.log(r) - 0.25 * omega * r * r)
    return _result(envelope * np.asarray(laguerre(n, l + 0.5, 0.5 * omega * r * r)))


def _check_known_level(n: int, p) -> int:
    n = require_level('n', n)
    if n != p.n:
        raise LevelError(f"only level n = {p.n} is known in closed form, got {n}")
    return n


def radial_ext_wavefunction(n: int, r, p: RadialExtParams):
    """Known level of the extended radial oscillator, r^{1/2} psi_ext(x = -2 ln r)"""
    n = _check_known_level(n, p)
    spec = SuperpotentialSpec(radial_to_morse(p.omega, p.l, n), p.ext)
    pulled = pullback_wavefunction(lambda x: morse_ext_wavefunction(n, x, spec), 'radial')
    return _result(pulled(_positive_r(r)))


def radial_ext_wavefunction_printed(n: int, r, p: RadialExtParams, romanovski_b: Optional[float] = None):
    """
    Closed r-space form of the extended radial oscillator level

    r^{2n+l+1} (e^{-q} + e^q r^4)^{-(2n+l+1/2)/2} exp[-(P - omega/8) e^{-q} arctan S] R_n(S),
    S = (e^{-q} - e^q r^4) / (2r^2)

    Args:
        romanovski_b: Second Romanovski parameter, default -n - l + 1/4
    """
    n = _check_known_level(n, p)
    r = _positive_r(r)
    q = p.ext.q
    omega, l, P = p.omega, p.l, p.P
    b = -n - l + 0.25 if romanovski_b is None else romanovski_b
    S = (np.exp(-q) - np.exp(q) * r ** 4) / (2.0 * r * r)
    log_envelope = ((2 * n + l + 1.0) * np.log(r)
                    - 0.5 * (2 * n + l + 0.5) * np.log(np.exp(-q) + np.exp(q) * r ** 4)
                    - (P - omega / 8.0) * np.exp(-q) * np.arctan(S))
    a = -(2.0 * P - 0.25 * omega) * np.exp(-q)
    return _result(np.exp(log_envelope) * np.asarray(romanovski(n, a, b, S)))


# ============ COULOMB ============

def coulomb_energy(n: int, Z: float, l: float) -> float:
    """-Z^2 / (n + l + 1)^2"""
    n = require_level('n', n)
    return -Z ** 2 / (n + l + 1.0) ** 2


def coulomb_wavefunction(n: int, r, Z: float, l: float):
    """r^{l+1} exp(-Z r / m) L_n^{(2l+1)}(2 Z r / m), m = n + l + 1"""
    n = require_level('n', n)
    r = _positive_r(r)
    m = n + l + 1.0
    envelope = np.exp((l + 1.0) * np.log(r) - Z * r / m)
    return _result(envelope * np.asarray(laguerre(n, 2.0 * l + 1.0, 2.0 * Z * r / m)))


def coulomb_ext_wavefunction(n: int, r, p: CoulombExtParams):
    """Known level of the extended Coulomb potential, r^{1/2} psi_ext(x = -ln r)"""
    n = _check_known_level(n, p)
    spec = SuperpotentialSpec(coulomb_to_morse(p.Z, p.l, n), p.ext)
    pulled = pullback_wavefunction(lambda x: morse_ext_wavefunction(n, x, spec), 'coulomb')
    return _result(pulled(_positive_r(r)))


def coulomb_ext_wavefunction_printed(n: int, r, p: CoulombExtParams, romanovski_b: Optional[float] = None):
    """
    Closed r-space form of the extended Coulomb level

    r^{n+l+1} (e^{-q} + e^q r^2)^{-n-l-1/2} exp[-(P - Z/(2m)) e^{-q} arctan S] R_n(S),
    S = (e^{-q} - e^q r^2) / (2r), m = n + l + 1

    Args:
        romanovski_b: Second Romanovski parameter, default -n - P
    """
    n = _check_known_level(n, p)
    r = _positive_r(r)
    q = p.ext.q
    Z, l, P = p.Z, p.l, p.P
    m = n + l + 1.0
    b = -n - P if romanovski_b is None else romanovski_b
    S = (np.exp(-q) - np.exp(q) * r * r) / (2.0 * r)
    log_envelope = ((n + l + 1.0) * np.log(r)
                    - (n + l + 0.5) * np.log(np.exp(-q) + np.exp(q) * r * r)
                    - (P - Z / (2.0 * m)) * np.exp(-q) * np.arctan(S))
    a = -(2.0 * P - Z / m) * np.exp(-q)
    return _result(np.exp(log_envelope) * np.asarray(romanovski(n, a, b, S)))


# ============ BOUND STATES ============

@dataclass(frozen=True)
class BoundState:
    """Closed-form level n of a system, wavefunction unnormalized"""
    system: str
    n: int
    energy: float
    wavefunction: Callable


def bound_state(system: str, params, n: int) -> BoundState:
    """
    Closed-form level n for any system

    Args:
        system: SYSTEMS key
        params: MorseParams (morse), SuperpotentialSpec (morse-ext), ScarfParams (scarf2),
                RadialExtParams (radial, radial-ext), CoulombExtParams (coulomb, coulomb-ext)
        n: Level

    Returns:
        BoundState
    """
    if system == 'morse':
        return BoundState(system, n, morse_energy(n, params), lambda x: morse_wavefunction(n, x, params))
    if system == 'morse-ext':
        if params.Q == 0:
            # Plain Morse with strength B - 2P, ParameterError when 2P >= B
            plain = MorseParams(params.A, params.B - 2.0 * params.P)
            return BoundState(system, n, morse_energy(n, plain), lambda x: morse_wavefunction(n, x, plain))
        return BoundState(system, n, morse_energy(n, params.morse),
                          lambda x: morse_ext_wavefunction(n, x, params))
    if system == 'scarf2':
        n = params.check_level(n)
        return BoundState(system, n, -(params.A - n) ** 2, lambda z: scarf2_wavefunction(n, z, params))
    if system == 'radial':
        return BoundState(system, n, radial_osc_energy(n, params.omega, params.l),
                          lambda r: radial_osc_wavefunction(n, r, params.omega, params.l))
    if system == 'coulomb':
        return BoundState(system, n, coulomb_energy(n, params.Z, params.l),
                          lambda r: coulomb_wavefunction(n, r, params.Z, params.l))
    if system == 'radial-ext':
        _check_known_level(n, params)
        q_of(params.Q)
        return BoundState(system, n, radial_osc_energy(n, params.omega, params.l),
                          lambda r: radial_ext_wavefunction(n, r, params))
    if system == 'coulomb-ext':
        _check_known_level(n, params)
        q_of(params.Q)
        return BoundState(system, n, coulomb_energy(n, params.Z, params.l),
                          lambda r: coulomb_ext_wavefunction(n, r, params))
    raise DomainError(f"unknown system '{system}'")


__all__ = ['laguerre', 'romanovski', 'romanovski_coefficients', 'romanovski_second_parameter',
           'morse_energy', 'morse_wavefunction', 'morse_ext_wavefunction', 'morse_ext_wavefunction_printed',
           'scarf2_wavefunction', 'radial_osc_energy', 'radial_osc_wavefunction',
           'radial_ext_wavefunction', 'radial_ext_wavefunction_printed',
           'coulomb_energy', 'coulomb_wavefunction', 'coulomb_ext_wavefunction',
           'coulomb_ext_wavefunction_printed', 'normalize', 'count_nodes', 'BoundState', 'bound_state']
