"""
Point Canonical Transformations
Parameter maps and pullbacks between the Morse line and the radial oscillator / Coulomb half-lines
"""

from typing import Callable, Tuple

import numpy as np

from domain_model import (
    CoulombExtParams, DomainError, MorseParams, RadialExtParams, ScarfParams, SuperpotentialSpec,
)

# Target -> (x = -scale * ln r, multiplier c of (V - E_n) / r^2)
TARGETS = {
    'radial': {'scale': 2.0, 'c': 4.0},
    'coulomb': {'scale': 1.0, 'c': 1.0},
}


def _target(target: str) -> dict:
    if target not in TARGETS:
        raise DomainError(f"unknown PCT target '{target}', expected one of {sorted(TARGETS)}")
    return TARGETS[target]


# ============ PARAMETER MAPS ============

def morse_to_radial(p: MorseParams, n: int) -> Tuple[float, float, float]:
    """
    Morse (A, B) at level n -> radial oscillator (omega, l, E_fixed)

    omega = 4B, l + 1/2 = 2(A - n), E_fixed = 4B(2A + 1)

    Raises:
        LevelError: n >= A
        DomainError: A - n < 1/4, where l would be negative
    """
    n = p.check_level(n)
    if p.A - n < 0.25:
        raise DomainError(f"A - n = {p.A - n} < 1/4 gives l < 0")
    return 4.0 * p.B, 2.0 * (p.A - n) - 0.5, 4.0 * p.B * (2.0 * p.A + 1.0)


def radial_to_morse(omega: float, l: float, n: int) -> MorseParams:
    """Inverse of morse_to_radial: A = n + l/2 + 1/4, B = omega/4"""
    return MorseParams(n + 0.5 * l + 0.25, 0.25 * omega)


def morse_to_coulomb(p: MorseParams, n: int) -> Tuple[float, float, float]:
    """
    Morse (A, B) at level n -> Coulomb (Z, l, E_fixed)

    2Z = B(2A + 1), l + 1/2 = A - n, E_fixed = -B^2

    Raises:
        LevelError: n >= A
        DomainError: A - n < 1/2, where l would be negative
    """
    n = p.check_level(n)
    if p.A - n < 0.5:
        raise DomainError(f"A - n = {p.A - n} < 1/2 gives l < 0")
    return 0.5 * p.B * (2.0 * p.A + 1.0), p.A - n - 0.5, -p.B ** 2


def coulomb_to_morse(Z: float, l: float, n: int) -> MorseParams:
    """Inverse of morse_to_coulomb: A = n + l + 1/2, B = Z/(n + l + 1)"""
    return MorseParams(n + l + 0.5, Z / (n + l + 1.0))


def morse_to_scarf(spec: SuperpotentialSpec) -> Tuple[ScarfParams, float]:
    """Scarf II parameters (A, B') and the shift q, z = x - q"""
    q = spec.q
    return ScarfParams(spec.A, spec.b_prime), q


def radial_ext_from_morse(spec: SuperpotentialSpec, n: int) -> RadialExtParams:
    omega, l, _ = morse_to_radial(spec.morse, n)
    return RadialExtParams(omega, l, n, spec.P, spec.Q)


def coulomb_ext_from_morse(spec: SuperpotentialSpec, n: int) -> CoulombExtParams:
    Z, l, _ = morse_to_coulomb(spec.morse, n)
    return CoulombExtParams(Z, l, n, spec.P, spec.Q)


# ============ COORDINATE MAPS ============

def x_of_r(r, target: str):
    """
    x(r) = -2 ln r (radial) or -ln r (coulomb)

    Both maps are strictly decreasing bijections of (0, inf) onto the real line.
    """
    scale = _target(target)['scale']
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise DomainError("x(r) is defined for r > 0 only")
    x = -scale * np.log(r)
    order = np.argsort(r, axis=None)
    if np.any(np.diff(x.ravel()[order]) > 0):
        raise DomainError(f"x(r) for target '{target}' is not decreasing in r")
    return float(x) if x.ndim == 0 else x


def r_of_x(x, target: str):
    scale = _target(target)['scale']
    r = np.exp(-np.asarray(x, dtype=float) / scale)
    return float(r) if r.ndim == 0 else r


def pullback_wavefunction(psi_x: Callable, target: str, factor_power: float = 0.5) -> Callable:
    """
    r -> r^{factor_power} psi_x(x(r))

    Args:
        psi_x: Vectorized function on the line
        target: 'radial' or 'coulomb'
        factor_power: Exponent of the multiplicative factor, 1/2 for both maps

    Returns:
        Vectorized function on r > 0
    """
    _target(target)

    def pulled(r):
        x = x_of_r(r, target)
        values = np.power(np.asarray(r, dtype=float), factor_power) * np.asarray(psi_x(x), dtype=float)
        return float(values) if values.ndim == 0 else values

    return pulled


def pullback_potential(v_x: Callable, target: str, energy: float, fixed_energy: float) -> Callable:
    """
    r -> c (V(x(r)) - E_n) / r^2 - 1/(4 r^2) + E_fixed, c = 4 (radial) or 1 (coulomb)
    """
    c = _target(target)['c']

    def pulled(r):
        r = np.asarray(r, dtype=float)
        values = c * (np.asarray(v_x(x_of_r(r, target))) - energy) / (r * r) - 0.25 / (r * r) + fixed_energy
        return float(values) if values.ndim == 0 else values

    return pulled


def pct_potential_residual(spec: SuperpotentialSpec, n: int, target: str, r):
    """
    Image potential minus the pulled-back extended Morse potential at level n

    The image potential is evaluated from the mapped (omega, l) or (Z, l)
    record, the pullback from the line parameters directly.
    """
    # potentials builds on the maps above
    from potentials import v_coulomb_ext, v_morse_ext, v_radial_ext

    if target == 'radial':
        fixed = morse_to_radial(spec.morse, n)[2]
        image = v_radial_ext(r, radial_ext_from_morse(spec, n))
    elif target == 'coulomb':
        fixed = morse_to_coulomb(spec.morse, n)[2]
        image = v_coulomb_ext(r, coulomb_ext_from_morse(spec, n))
    else:
        raise DomainError(f"unknown PCT target '{target}', expected one of {sorted(TARGETS)}")

    energy = -(spec.A - n) ** 2
    pulled = pullback_potential(lambda x: v_morse_ext(x, spec), target, energy, fixed)
    values = np.asarray(image) - np.asarray(pulled(r))
    return float(values) if values.ndim == 0 else values


# (from, to) -> map, for the command line
PAIRS = {
    ('morse', 'radial'): 'morse_to_radial',
    ('morse', 'coulomb'): 'morse_to_coulomb',
    ('morse', 'scarf2'): 'morse_to_scarf',
    ('radial', 'morse'): 'radial_to_morse',
    ('coulomb', 'morse'): 'coulomb_to_morse',
}


__all__ = ['TARGETS', 'PAIRS', 'morse_to_radial', 'radial_to_morse', 'morse_to_coulomb',
           'coulomb_to_morse', 'morse_to_scarf', 'radial_ext_from_morse', 'coulomb_ext_from_morse',
           'x_of_r', 'r_of_x', 'pullback_wavefunction', 'pullback_potential', 'pct_potential_residual']
