"""
Command-line interface
Potentials and wavefunctions to CSV, spectra and parameter maps to JSON, and the verification suites
"""

import argparse
import dataclasses
import json
import logging
import sys
from typing import Dict, List, Optional

import numpy as np
import pandas as pd

from analytic_states import (
    bound_state, coulomb_energy, morse_energy, normalize, radial_osc_energy,
)
from domain_model import (
    ConvergenceError, CoulombExtParams, DomainError, GridSpec, MorseParams, ParameterError,
    RadialExtParams, SampledFunction, ScarfParams, SusyExtendError, SuperpotentialSpec,
)
from numerics import default_domain, solve_bound_states
from pct import (
    PAIRS, coulomb_to_morse, morse_to_coulomb, morse_to_radial, morse_to_scarf, radial_to_morse,
)
from potentials import potential
from settings import SYSTEMS, get_system_config, log_level
from verification import SUITES, run_suite

logger = logging.getLogger(__name__)

LOG_FORMAT = '%(asctime)s %(levelname)s %(name)s: %(message)s'

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_CONVERGENCE = 4


# ============ PARAMETERS ============

def _require(args, *names) -> List[float]:
    values = []
    for name in names:
        value = getattr(args, name, None)
        if value is None:
            raise ParameterError(name, f"--{name} is required for system '{args.system}'")
        values.append(value)
    return values


def build_params(args):
    """
    Parameter record for args.system from the common flags

    Returns:
        MorseParams, SuperpotentialSpec, ScarfParams, RadialExtParams or CoulombExtParams
    """
    system = args.system
    get_system_config(system)
    n = 0 if args.n is None else args.n
    P = 0.0 if args.P is None else args.P
    Q = 0.0 if args.Q is None else args.Q

    if system == 'morse':
        return MorseParams(*_require(args, 'A', 'B'))
    if system == 'morse-ext':
        A, B, P, Q = _require(args, 'A', 'B', 'P', 'Q')
        return SuperpotentialSpec.of(A, B, P, Q)
    if system == 'scarf2':
        return ScarfParams(*_require(args, 'A', 'Bp'))
    if system == 'radial':
        return RadialExtParams(*_require(args, 'omega', 'l'))
    if system == 'radial-ext':
        omega, l = _require(args, 'omega', 'l')
        return RadialExtParams(omega, l, n, *_require(args, 'P', 'Q'))
    if system == 'coulomb':
        return CoulombExtParams(*_require(args, 'Z', 'l'))
    # coulomb-ext
    Z, l = _require(args, 'Z', 'l')
    return CoulombExtParams(Z, l, n, *_require(args, 'P', 'Q'))


def params_dict(params) -> Dict:
    if isinstance(params, SuperpotentialSpec):
        return {'A': params.A, 'B': params.B, 'P': params.P, 'Q': params.Q}
    return dataclasses.asdict(params)


def _coordinate(system: str) -> str:
    return SYSTEMS[system]['coordinate']


def _grid_nodes(system: str, grid: GridSpec) -> np.ndarray:
    """Grid nodes, dropping r <= 0 for half-line systems"""
    nodes = grid.nodes()
    if _coordinate(system) == 'r':
        nodes = nodes[nodes > 0]
        if nodes.size == 0:
            raise DomainError(f"grid {grid.x_min}:{grid.x_max} has no points with r > 0")
    return nodes


# ============ OUTPUT ============

def write_csv(frame: pd.DataFrame, out: str):
    """CSV with 17 significant digits and LF line endings, '-' is stdout"""
    text = frame.to_csv(index=False, float_format='%.17g', lineterminator='\n')
    if out == '-':
        sys.stdout.write(text)
        return
    with open(out, 'w', encoding='utf-8', newline='') as handle:
        handle.write(text)
    logger.info("Wrote %d rows to %s", len(frame), out)


def write_json(payload: Dict, out: str = '-'):
    text = json.dumps(payload, indent=2) + '\n'
    if out == '-':
        sys.stdout.write(text)
        return
    with open(out, 'w', encoding='utf-8', newline='') as handle:
        handle.write(text)


# ============ COMMANDS ============

def cmd_potential(args) -> int:
    """V on a grid -> CSV x,V (or r,V)"""
    params = build_params(args)
    grid = GridSpec.parse(args.grid)
    nodes = _grid_nodes(args.system, grid)
    values = np.asarray(potential(args.system, params)(nodes), dtype=float)
    write_csv(pd.DataFrame({_coordinate(args.system): nodes, 'V': values}), args.out)
    return EXIT_OK


def analytic_energies(system: str, params, levels: int) -> List[float]:
    """Closed-form energies of the lowest levels, only the known one for QES systems"""
    if system == 'radial-ext':
        return [radial_osc_energy(params.n, params.omega, params.l)]
    if system == 'coulomb-ext':
        return [coulomb_energy(params.n, params.Z, params.l)]
    if system == 'radial':
        return [radial_osc_energy(n, params.omega, params.l) for n in range(levels)]
    if system == 'coulomb':
        return [coulomb_energy(n, params.Z, params.l) for n in range(levels)]
    if system == 'morse-ext' and params.Q == 0 and params.B - 2.0 * params.P <= 0:
        return []
    morse = params.morse if isinstance(params, SuperpotentialSpec) else params
    count = min(levels, int(np.ceil(morse.A)))
    return [-(morse.A - n) ** 2 for n in range(count)]


def _check_level_count(system: str, params, levels: int):
    if system in ('morse', 'morse-ext', 'scarf2'):
        A = params.A
        available = int(np.ceil(A))
        if levels > available:
            raise DomainError(f"{system} with A = {A} has {available} bound levels, asked for {levels}")


def cmd_spectrum(args) -> int:
    """Lowest bound states by the finite-difference solver -> JSON"""
    if args.levels < 1:
        raise DomainError(f"--levels must be >= 1, got {args.levels}")
    params = build_params(args)
    _check_level_count(args.system, params, args.levels)

    domain, grow = default_domain(args.system, params)
    logger.info("Solving %s for %d levels on [%.4g, %.4g]", args.system, args.levels, domain.x_min, domain.x_max)
    result = solve_bound_states(potential(args.system, params), domain, args.levels,
                                tol=args.tol, grow=grow, vectors=args.vectors)

    payload = {
        'system': args.system,
        'params': params_dict(params),
        'analytic_energies': analytic_energies(args.system, params, args.levels),
        'numeric_energies': result.energies.tolist(),
        'residuals': result.residuals.tolist(),
        'h': result.h,
        'extrapolated': result.extrapolated,
        'domain': [result.domain.x_min, result.domain.x_max, result.domain.count],
        'doublings': result.doublings,
    }
    if args.vectors:
        payload['grid'] = result.domain.nodes().tolist()
        payload['eigenvectors'] = [psi.values.tolist() for psi in result.eigenvectors]
    write_json(payload, args.out)
    return EXIT_OK


def cmd_wavefunction(args) -> int:
    """Unit-normalized closed-form level n on a grid -> CSV x,psi"""
    params = build_params(args)
    n = 0 if args.n is None else args.n
    state = bound_state(args.system, params, n)
    grid = GridSpec.parse(args.grid)
    nodes = _grid_nodes(args.system, grid)
    # Normalization runs on the kept nodes, which stay uniformly spaced
    kept = GridSpec(float(nodes[0]), float(nodes[-1]), nodes.size)
    psi = normalize(SampledFunction(kept, state.wavefunction(kept.nodes())))
    write_csv(pd.DataFrame({_coordinate(args.system): psi.nodes, 'psi': psi.values}), args.out)
    return EXIT_OK


def cmd_pct(args) -> int:
    """Parameter map between the Morse line and the radial/Coulomb half-lines -> JSON"""
    pair = (args.source, args.target)
    if pair not in PAIRS:
        raise DomainError(f"unsupported map {args.source} -> {args.target}, expected one of {sorted(PAIRS)}")
    n = 0 if args.n is None else args.n

    if pair == ('morse', 'radial'):
        args.system = 'morse'
        omega, l, energy = morse_to_radial(build_params(args), n)
        payload = {'omega': omega, 'l': l, 'E': energy}
    elif pair == ('morse', 'coulomb'):
        args.system = 'morse'
        Z, l, energy = morse_to_coulomb(build_params(args), n)
        payload = {'Z': Z, 'l': l, 'E': energy}
    elif pair == ('morse', 'scarf2'):
        args.system = 'morse-ext'
        scarf, q = morse_to_scarf(build_params(args))
        payload = {'A': scarf.A, 'Bp': scarf.Bp, 'q': q}
    elif pair == ('radial', 'morse'):
        args.system = 'radial'
        morse = radial_to_morse(*_require(args, 'omega', 'l'), n)
        payload = {'A': morse.A, 'B': morse.B, 'E': morse_energy(n, morse)}
    else:
        args.system = 'coulomb'
        morse = coulomb_to_morse(*_require(args, 'Z', 'l'), n)
        payload = {'A': morse.A, 'B': morse.B, 'E': morse_energy(n, morse)}

    write_json({'from': args.source, 'to': args.target, 'n': n, **payload}, args.out)
    return EXIT_OK


def _parse_overrides(items: Optional[List[str]]) -> Dict[str, float]:
    overrides = {}
    for item in items or []:
        name, sep, value = item.partition('=')
        if not sep:
            raise DomainError(f"--tol expects CHECK=VALUE, got '{item}'")
        try:
            overrides[name.strip()] = float(value)
        except ValueError as e:
            raise DomainError(f"--tol value for '{name}' is not a number: {value}") from e
    return overrides


def _parse_params(items: Optional[List[str]]) -> Dict[str, Dict[str, float]]:
    params: Dict[str, Dict[str, float]] = {}
    for item in items or []:
        key, sep, value = item.partition('=')
        set_name, dot, field = key.strip().partition('.')
        if not sep or not dot or not set_name or not field:
            raise DomainError(f"--param expects SET.FIELD=VALUE, got '{item}'")
        try:
            number = int(value)
        except ValueError:
            try:
                number = float(value)
            except ValueError as e:
                raise DomainError(f"--param value for '{key}' is not a number: {value}") from e
        params.setdefault(set_name, {})[field] = number
    return params


def cmd_verify(args) -> int:
    """Run a verification suite, exit 0 iff every check passes"""
    report = run_suite(args.suite, seed=args.seed, overrides=_parse_overrides(args.tol),
                       params=_parse_params(args.param))
    if args.format in ('table', 'both'):
        sys.stdout.write(report.to_frame().to_string(index=False) + '\n')
        sys.stdout.write(f"\n{len(report.checks)} checks, overall: {'PASS' if report.passed else 'FAIL'}\n")
    if args.format in ('json', 'both'):
        write_json(report.to_dict())
    return EXIT_OK if report.passed else EXIT_FAILED


# ============ PARSER ============

def _common_parameters() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    group = common.add_argument_group('parameters')
    for name in ('A', 'B', 'P', 'Q', 'Bp', 'omega', 'l', 'Z'):
        group.add_argument(f'--{name}', type=float, default=None)
    group.add_argument('--n', type=int, default=None, help='level (QES level for the extended half-line systems)')
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='susy-extend',
        description='Isospectral extended Morse potentials, their Scarf II and point-canonical images, '
                    'and numerical verification of their closed forms.',
    )
    sub = parser.add_subparsers(dest='command', required=True)
    common = _common_parameters()
    systems = sorted(SYSTEMS)

    p = sub.add_parser('potential', parents=[common], help='evaluate a potential on a grid (CSV)')
    p.add_argument('--system', required=True, choices=systems)
    p.add_argument('--grid', required=True, help='min:max:count')
    p.add_argument('--out', default='-')
    p.set_defaults(handler=cmd_potential)

    p = sub.add_parser('spectrum', parents=[common], help='lowest bound states by finite differences (JSON)')
    p.add_argument('--system', required=True, choices=systems)
    p.add_argument('--levels', type=int, default=1)
    p.add_argument('--tol', type=float, default=None, help='energy convergence tolerance')
    p.add_argument('--vectors', action='store_true', help='include normalized eigenvectors')
    p.add_argument('--out', default='-')
    p.set_defaults(handler=cmd_spectrum)

    p = sub.add_parser('wavefunction', parents=[common], help='closed-form level n on a grid (CSV)')
    p.add_argument('--system', required=True, choices=systems)
    p.add_argument('--grid', required=True, help='min:max:count')
    p.add_argument('--out', default='-')
    p.set_defaults(handler=cmd_wavefunction)

    p = sub.add_parser('pct', parents=[common], help='map parameters between systems (JSON)')
    p.add_argument('--from', dest='source', required=True, choices=['morse', 'radial', 'coulomb'])
    p.add_argument('--to', dest='target', required=True, choices=['morse', 'radial', 'coulomb', 'scarf2'])
    p.add_argument('--out', default='-')
    p.set_defaults(handler=cmd_pct, system=None)

    p = sub.add_parser('verify', help='run verification suites')
    p.add_argument('suite', nargs='?', default='all', choices=list(SUITES) + ['all'])
    p.add_argument('--seed', type=int, default=42)
    p.add_argument('--tol', action='append', metavar='CHECK=VALUE', help='override a check tolerance')
    p.add_argument('--param', action='append', metavar='SET.FIELD=VALUE',
                   help='override a default parameter, e.g. morse_ext.A=4.5')
    p.add_argument('--format', choices=['table', 'json', 'both'], default='both')
    p.set_defaults(handler=cmd_verify)

    return parser


# options whose values may start with '-' (a grid such as -5:10:2001)
VALUE_OPTIONS = ('--grid',)


def _attach_values(argv: List[str]) -> List[str]:
    """Rewrite '--grid -5:10:2001' as '--grid=-5:10:2001' so argparse does not read the value as an option"""
    attached = []
    i = 0
    while i < len(argv):
        if argv[i] in VALUE_OPTIONS and i + 1 < len(argv) and argv[i + 1].startswith('-') and ':' in argv[i + 1]:
            attached.append(f'{argv[i]}={argv[i + 1]}')
            i += 2
            continue
        attached.append(argv[i])
        i += 1
    return attached


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(_attach_values(sys.argv[1:] if argv is None else list(argv)))
    logging.basicConfig(stream=sys.stderr, level=log_level(), format=LOG_FORMAT)

    try:
        return args.handler(args)
    except ConvergenceError as e:
        logger.error("Solver did not converge: %s", e)
        write_json({'error': str(e), 'diagnostics': e.diagnostics})
        return EXIT_CONVERGENCE
    except DomainError as e:
        logger.error("%s", e)
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE
    except OSError as e:
        logger.error("I/O error: %s", e)
        sys.stderr.write(f"error: {e}\n")
        return EXIT_IO
    except SusyExtendError as e:
        logger.error("%s", e)
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
