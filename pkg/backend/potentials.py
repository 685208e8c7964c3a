"""
Potentials
Morse, extended Morse, Scarf II and the radial oscillator / Coulomb families with their extensions
"""

import numpy as np

from domain_model import (
    CoulombExtParams, DomainError, MorseParams, RadialExtParams, ScarfParams, SuperpotentialSpec,
)
from pct import coulomb_to_morse, pullback_potential, radial_to_morse
from susy_core import sech


def _result(value):
    value = np.asarray(value, dtype=float)
    return float(value) if value.ndim == 0 else value


def _positive_r(r) -> np.ndarray:
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise DomainError("radial potentials are defined for r > 0 only")
    return r


def _morse_form(x, a: float, b: float):
    u = np.exp(-np.asarray(x, dtype=float))
    return b * b * u * u - (2.0 * a + 1.0) * b * u


# ============ LINE POTENTIALS ============

def v_morse(x, p: MorseParams):
    """V_{A,B} = B^2 e^{-2x} - B(2A+1) e^{-x}"""
    return _result(_morse_form(x, p.A, p.B))


def v_morse_ext(x, spec: SuperpotentialSpec):
    """
    Extended Morse potential W^2 - W' - A^2

    Evaluated in the collected form
        (2A+1) k s t + [k^2 - 4A(A+1)Q] s^2,
        s = e^x / (e^{2x} + Q), t = (e^{2x} - Q) / (e^{2x} + Q), k = 2P - B,
    where the high powers of e^{-x} in the expanded formula cancel.
    Q = 0 is plain Morse with strength B - 2P.
    """
    A, B, P, Q = spec.A, spec.B, spec.P, spec.Q
    if Q == 0:
        return _result(_morse_form(x, A, B - 2.0 * P))

    x = np.asarray(x, dtype=float)
    k = 2.0 * P - B
    # e^{-|x|} never overflows, pick the ratio form per side
    e = np.exp(-np.abs(x))
    right = x >= 0
    s = np.where(right, e / (1.0 + Q * e * e), e / (e * e + Q))
    t = np.where(right, (1.0 - Q * e * e) / (1.0 + Q * e * e), (e * e - Q) / (e * e + Q))
    return _result((2.0 * A + 1.0) * k * s * t + (k * k - 4.0 * A * (A + 1.0) * Q) * s * s)


def v_morse_ext_printed(x, spec: SuperpotentialSpec):
    """Extended Morse potential as the literal six-term correction to V_{A,B}"""
    A, B, P, Q = spec.A, spec.B, spec.P, spec.Q
    u = np.exp(-np.asarray(x, dtype=float))
    braces = (2.0 * P * (2.0 * A + 1.0) * u
              + 4.0 * (P * (P - B) - A * (A + 1.0) * Q) * u ** 2
              - (2.0 * A + 1.0) * (2.0 * P - 3.0 * B) * Q * u ** 3
              - 2.0 * Q * B ** 2 * u ** 4
              + (2.0 * A + 1.0) * B * Q ** 2 * u ** 5
              - B ** 2 * Q ** 2 * u ** 6)
    return _result(_morse_form(x, A, B) + braces / (1.0 + Q * u * u) ** 2)


def v_scarf2(z, p: ScarfParams):
    """[B'^2 - A(A+1)] sech^2 z + B'(2A+1) sech z tanh z"""
    z = np.asarray(z, dtype=float)
    s = sech(z)
    return _result((p.Bp ** 2 - p.A * (p.A + 1.0)) * s * s + p.Bp * (2.0 * p.A + 1.0) * s * np.tanh(z))


def scarf_equivalence_residual(x, spec: SuperpotentialSpec):
    """v_morse_ext(x) - v_scarf2(x - q) with B' = (2P - B) e^{-q} / 2"""
    q = spec.q
    scarf = ScarfParams(spec.A, spec.b_prime)
    x = np.asarray(x, dtype=float)
    return _result(np.asarray(v_morse_ext(x, spec)) - np.asarray(v_scarf2(x - q, scarf)))


# ============ HALF-LINE POTENTIALS ============

def v_radial(r, omega: float, l: float):
    r = _positive_r(r)
    return _result(0.25 * omega ** 2 * r * r + l * (l + 1.0) / (r * r))


def v_coulomb(r, Z: float, l: float):
    r = _positive_r(r)
    return _result(-2.0 * Z / r + l * (l + 1.0) / (r * r))


def v_radial_ext(r, p: RadialExtParams):
    """
    Extended radial oscillator from the Morse line

    4 (V_ext(x) - E_n) / r^2 - 1/(4 r^2) + E~ with x = -2 ln r, A = n + l/2 + 1/4,
    B = omega/4, E_n = -(A - n)^2 and E~ = omega (2n + l + 3/2).
    """
    r = _positive_r(r)
    morse = radial_to_morse(p.omega, p.l, p.n)
    spec = SuperpotentialSpec(morse, p.ext)
    energy = -(morse.A - p.n) ** 2
    fixed = p.omega * (2.0 * p.n + p.l + 1.5)
    return _result(pullback_potential(lambda x: v_morse_ext(x, spec), 'radial', energy, fixed)(r))


def v_radial_ext_printed(r, p: RadialExtParams):
    """Extended radial oscillator as the closed polynomial-over-(1 + Q r^4)^2 formula"""
    r = _positive_r(r)
    omega, l, P, Q = p.omega, p.l, p.P, p.Q
    N = 2.0 * p.n + l + 1.5
    braces = ((P * (4.0 * P - omega) + Q) * r ** 2
              - Q * omega ** 2 * r ** 6 / 8.0
              - Q ** 2 * omega ** 2 * r ** 10 / 16.0
              + N * (2.0 * P - (2.0 * P - 0.75 * omega) * Q * r ** 4 + 0.25 * Q ** 2 * omega * r ** 8)
              - N ** 2 * Q * r ** 2)
    base = 0.25 * omega ** 2 * r * r + l * (l + 1.0) / (r * r)
    return _result(base + 4.0 * braces / (1.0 + Q * r ** 4) ** 2)


def v_coulomb_ext(r, p: CoulombExtParams):
    """
    Extended Coulomb potential from the Morse line

    (V_ext(x) - E_n) / r^2 - 1/(4 r^2) + E~ with x = -ln r, A = n + l + 1/2,
    B = Z/(n + l + 1), E_n = -(A - n)^2 and E~ = -B^2.
    """
    r = _positive_r(r)
    morse = coulomb_to_morse(p.Z, p.l, p.n)
    spec = SuperpotentialSpec(morse, p.ext)
    energy = -(morse.A - p.n) ** 2
    fixed = -morse.B ** 2
    return _result(pullback_potential(lambda x: v_morse_ext(x, spec), 'coulomb', energy, fixed)(r))


def v_coulomb_ext_printed(r, p: CoulombExtParams, centrifugal: str = 'r2'):
    """
    Extended Coulomb potential as the closed formula

    Args:
        r: Radii > 0
        p: Parameters
        centrifugal: 'r2' for l(l+1)/r^2, 'r' for the l(l+1)/r variant
    """
    if centrifugal not in ('r2', 'r'):
        raise DomainError(f"centrifugal must be 'r2' or 'r', got '{centrifugal}'")
    r = _positive_r(r)
    Z, l, P, Q = p.Z, p.l, p.P, p.Q
    m = p.n + l + 1.0
    braces = (4.0 * P ** 2 + Q + 6.0 * Z * Q * r + 2.0 * Z * Q ** 2 * r ** 3
              + 4.0 * P * m * (1.0 / r - Q * r)
              - 4.0 * Q * m ** 2
              - 4.0 * P * Z / m
              - Q * Z ** 2 / m ** 2 * r ** 2 * (2.0 + Q * r ** 2))
    power = 2.0 if centrifugal == 'r2' else 1.0
    return _result(-2.0 * Z / r + l * (l + 1.0) / r ** power + braces / (1.0 + Q * r * r) ** 2)


POTENTIALS = {
    'morse': lambda x, params: v_morse(x, params),
    'morse-ext': lambda x, params: v_morse_ext(x, params),
    'scarf2': lambda x, params: v_scarf2(x, params),
    'radial': lambda r, params: v_radial(r, params.omega, params.l),
    'radial-ext': lambda r, params: v_radial_ext(r, params),
    'coulomb': lambda r, params: v_coulomb(r, params.Z, params.l),
    'coulomb-ext': lambda r, params: v_coulomb_ext(r, params),
}


def potential(system: str, params):
    """Vectorized potential callable for a system and its parameter record"""
    if system not in POTENTIALS:
        raise DomainError(f"unknown system '{system}'")
    evaluate = POTENTIALS[system]
    return lambda points: evaluate(points, params)


__all__ = ['v_morse', 'v_morse_ext', 'v_morse_ext_printed', 'v_scarf2', 'scarf_equivalence_residual',
           'v_radial', 'v_coulomb', 'v_radial_ext', 'v_radial_ext_printed',
           'v_coulomb_ext', 'v_coulomb_ext_printed', 'potential', 'POTENTIALS']
