"""
Settings
System catalogue, solver defaults and verification parameter sets
"""

import logging
import os

from dotenv import load_dotenv

from domain_model import DomainError

# Load environment variables from .env file
load_dotenv()

logger = logging.getLogger(__name__)


SYSTEMS = {
    'morse': {
        'name': 'Morse',
        'description': 'V = B^2 e^{-2x} - B(2A+1) e^{-x} on the whole line.',
        'coordinate': 'x',
        'required': ['A', 'B'],
        'qes': False,
    },
    'morse-ext': {
        'name': 'Extended Morse',
        'description': 'Isospectral extension of Morse with constants P and Q.',
        'coordinate': 'x',
        'required': ['A', 'B', 'P', 'Q'],
        'qes': False,
    },
    'scarf2': {
        'name': 'Scarf II',
        'description': 'V = [Bp^2 - A(A+1)] sech^2 z + Bp(2A+1) sech z tanh z.',
        'coordinate': 'x',
        'required': ['A', 'Bp'],
        'qes': False,
    },
    'radial': {
        'name': 'Radial oscillator',
        'description': 'V = omega^2 r^2 / 4 + l(l+1)/r^2 on the half-line.',
        'coordinate': 'r',
        'required': ['omega', 'l'],
        'qes': False,
    },
    'radial-ext': {
        'name': 'Extended radial oscillator',
        'description': 'Point-canonical image of extended Morse, one known level n.',
        'coordinate': 'r',
        'required': ['omega', 'l', 'n', 'P', 'Q'],
        'qes': True,
    },
    'coulomb': {
        'name': 'Coulomb',
        'description': 'V = -2Z/r + l(l+1)/r^2 on the half-line.',
        'coordinate': 'r',
        'required': ['Z', 'l'],
        'qes': False,
    },
    'coulomb-ext': {
        'name': 'Extended Coulomb',
        'description': 'Point-canonical image of extended Morse, one known level n.',
        'coordinate': 'r',
        'required': ['Z', 'l', 'n', 'P', 'Q'],
        'qes': True,
    },
}


SOLVER_DEFAULTS = {
    'spacing': 0.005,           # base h, the solver also runs h/2
    'max_doublings': 6,         # domain enlargements before ConvergenceError
    'tol': 1e-6,                # max eigenvalue change across the last doubling
    'eigen_abstol': 1e-12,      # bisection absolute tolerance
    'max_correction': 1e-2,     # Richardson correction cap, base h halves above it
    'inverse_iteration_restarts': 2,
}


# Default parameter tuples for `verify`, so CI needs no arguments
VERIFY_DEFAULTS = {
    'morse_ext': {'A': 3.5, 'B': 1.0, 'P': 0.4, 'Q': 2.0},
    'morse_ext_alt': {'A': 3.5, 'B': 1.0, 'P': -1.0, 'Q': 5.0},
    'radial_ext': {'omega': 2.0, 'l': 1.0, 'n': 2, 'P': 0.3, 'Q': 1.5},
    'coulomb_ext': {'Z': 4.0, 'l': 2.0, 'n': 1, 'P': 0.3, 'Q': 1.5},
    'radial': {'omega': 2.0, 'l': 1.0},
    'ladder': {'A': 4.5, 'B': 1.0, 'P': 0.4, 'Q': 2.0},
    'random_tuples': 100,
    'random_points': 100,
}


# Residual-check grids: (half-width or r_max, spacing)
CHECK_GRIDS = {
    'morse_ext_half_width': 30.0,
    'morse_ext_spacing': 0.0025,
    'ladder_half_width': 50.0,
    'ladder_spacing': 0.005,
    'ladder_refinement_spacings': (0.04, 0.02, 0.01),
    'radial_r_min': 0.02,
    'radial_r_max': 20.0,
    'radial_spacing': 0.001,
    'coulomb_r_min': 0.02,
    'coulomb_r_max': 40.0,
    'coulomb_spacing': 0.002,
    'overlap_window_lengths': 4.0,   # QES overlap window in units of radial_length_scale
}


def get_system_config(system: str) -> dict:
    """
    Look up the configuration of a system

    Args:
        system: One of the SYSTEMS keys

    Returns:
        Dict with the system configuration
    """
    if system not in SYSTEMS:
        logger.warning("Unknown system '%s'", system)
        raise DomainError(f"unknown system '{system}', expected one of {sorted(SYSTEMS)}")
    return SYSTEMS[system]


def get_available_systems():
    """List of {id, name, description} dicts"""
    return [
        {'id': key, 'name': config['name'], 'description': config['description']}
        for key, config in SYSTEMS.items()
    ]


def validate_system(system: str) -> bool:
    return system in SYSTEMS


def worker_count() -> int:
    """Worker cap from SUSY_EXTEND_THREADS, default min(4, cpu count)"""
    default = min(4, os.cpu_count() or 1)
    raw = os.getenv('SUSY_EXTEND_THREADS')
    if not raw:
        return default
    try:
        value = int(raw)
    except ValueError:
        logger.warning("Ignoring SUSY_EXTEND_THREADS=%r, not an integer", raw)
        return default
    if value < 1:
        logger.warning("Ignoring SUSY_EXTEND_THREADS=%r, must be >= 1", raw)
        return default
    return value


def log_level() -> str:
    level = os.getenv('SUSY_EXTEND_LOG_LEVEL', 'WARNING').upper()
    if level not in ('DEBUG', 'INFO', 'WARNING', 'ERROR'):
        return 'WARNING'
    return level


__all__ = ['SYSTEMS', 'SOLVER_DEFAULTS', 'VERIFY_DEFAULTS', 'CHECK_GRIDS',
           'get_system_config', 'get_available_systems', 'validate_system',
           'worker_count', 'log_level']


if __name__ == "__main__":
    print("Available systems")
    print("=" * 60)
    for system in get_available_systems():
        config = get_system_config(system['id'])
        print(f"\n{system['name']} ({system['id']})")
        print(f"   {system['description']}")
        print(f"   Parameters: {', '.join(config['required'])}")
    print(f"\nWorkers: {worker_count()}")
