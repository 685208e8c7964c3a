"""
Numerics
Finite-difference eigensolver with Richardson extrapolation, used to check every closed form independently
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
from scipy.linalg import LinAlgError, eigh_tridiagonal

from domain_model import (
    ConvergenceError, CoulombExtParams, DegenerateError, DomainError, GridSpec,
    MorseParams, RadialExtParams, SampledFunction, ScarfParams, SuperpotentialSpec,
)
from sampling import first_derivative, normalize, overlap, quadrature, second_derivative
from settings import SOLVER_DEFAULTS, worker_count

logger = logging.getLogger(__name__)

MAX_NODES = 1_000_000


@dataclass(frozen=True, eq=False)
class SpectralResult:
    """Bound-state energies from one converged solve"""
    energies: np.ndarray
    eigenvectors: Optional[List[SampledFunction]]
    h: float
    extrapolated: bool
    residuals: np.ndarray
    domain: Optional[GridSpec] = None
    corrections: np.ndarray = field(default_factory=lambda: np.zeros(0))
    doublings: int = 0

    def __post_init__(self):
        energies = np.asarray(self.energies, dtype=float)
        if energies.size > 1 and not np.all(np.diff(energies) > 0):
            raise ConvergenceError("energies are not strictly ascending",
                                   {'energies': energies.tolist()})
        residuals = np.asarray(self.residuals, dtype=float)
        if np.any(residuals < 0):
            raise DomainError("residuals must be >= 0")
        object.__setattr__(self, 'energies', energies)
        object.__setattr__(self, 'residuals', residuals)
        object.__setattr__(self, 'corrections', np.asarray(self.corrections, dtype=float))

    def to_dict(self) -> Dict:
        return {
            'energies': self.energies.tolist(),
            'residuals': self.residuals.tolist(),
            'corrections': self.corrections.tolist(),
            'h': self.h,
            'extrapolated': self.extrapolated,
            'domain': None if self.domain is None else [self.domain.x_min, self.domain.x_max, self.domain.count],
            'doublings': self.doublings,
        }


# ============ DISCRETIZATION ============

def build_hamiltonian(V: SampledFunction) -> Tuple[np.ndarray, np.ndarray]:
    """
    3-point Hamiltonian -d²/dx² + V on the interior nodes, Dirichlet ends

    Args:
        V: Potential samples, boundary samples are ignored

    Returns:
        (diag, offdiag) of the symmetric tridiagonal matrix of size count - 2
    """
    h = V.grid.spacing
    interior = np.asarray(V.values)[1:-1]
    diag = 2.0 / (h * h) + interior
    offdiag = np.full(interior.size - 1, -1.0 / (h * h))
    return diag, offdiag


def sturm_count(diag, offdiag, sigma: float) -> int:
    """Number of eigenvalues strictly below sigma, from the LDL^T pivots of T - sigma"""
    diag = np.asarray(diag, dtype=float)
    offdiag = np.asarray(offdiag, dtype=float)
    tiny = np.finfo(float).eps * max(1.0, float(np.max(np.abs(diag))))
    count = 0
    pivot = diag[0] - sigma
    if pivot < 0:
        count += 1
    for i in range(1, diag.size):
        if pivot == 0.0:
            pivot = tiny
        pivot = diag[i] - sigma - offdiag[i - 1] ** 2 / pivot
        if pivot < 0:
            count += 1
    return count


def eigen_lowest(diag, offdiag, k: int, vectors: bool = False,
                 abstol: Optional[float] = None) -> Tuple[np.ndarray, Optional[np.ndarray]]:
    """
    k smallest eigenvalues by Sturm bisection, eigenvectors by inverse iteration

    Args:
        diag: Main diagonal
        offdiag: Off-diagonal, one shorter
        k: How many eigenvalues, 1 <= k <= size
        vectors: Also return eigenvectors (columns, unit 2-norm)
        abstol: Bisection absolute tolerance

    Returns:
        (energies, vectors or None)
    """
    diag = np.asarray(diag, dtype=float)
    offdiag = np.asarray(offdiag, dtype=float)
    if not 1 <= k <= diag.size:
        raise DomainError(f"k = {k} must lie in [1, {diag.size}]")
    tol = SOLVER_DEFAULTS['eigen_abstol'] if abstol is None else abstol
    restarts = SOLVER_DEFAULTS['inverse_iteration_restarts']

    last_error = None
    for attempt in range(restarts + 1):
        try:
            result = eigh_tridiagonal(diag, offdiag, eigvals_only=not vectors,
                                      select='i', select_range=(0, k - 1),
                                      tol=tol, lapack_driver='stebz')
        except LinAlgError as e:
            last_error = e
            logger.warning("Tridiagonal solve failed (attempt %d): %s", attempt + 1, e)
            tol = tol / 10.0
            continue
        if vectors:
            energies, vecs = result
            return np.asarray(energies), np.asarray(vecs)
        return np.asarray(result), None

    raise ConvergenceError(f"inverse iteration failed after {restarts + 1} attempts: {last_error}",
                           {'k': k, 'size': int(diag.size)})


def schrodinger_residual(psi: SampledFunction, V: SampledFunction, E: float) -> float:
    """
    ||(-D2 + V - E) psi|| / ||psi|| on the interior, 4th-order D2

    The two nodes at each end are excluded.
    """
    if psi.grid != V.grid:
        raise DomainError("psi and V must share a grid")
    values = np.asarray(psi.values)
    inner = values[2:-2]
    size = float(np.linalg.norm(inner))
    if size == 0.0:
        raise DegenerateError("residual of a zero function")
    residual = -second_derivative(values, psi.grid.spacing) + (np.asarray(V.values)[2:-2] - E) * inner
    return float(np.linalg.norm(residual)) / size


# ============ DOMAIN HEURISTICS ============

def _decay_rate(A: float) -> float:
    # Top bound level decays as e^{-(A - n_max) x}
    return A - math.ceil(A) + 1.0


def radial_length_scale(system: str, params) -> float:
    """
    Size of the classically allowed region of a half-line system, at least 1

    Args:
        system: 'radial', 'radial-ext', 'coulomb' or 'coulomb-ext'
        params: Parameters carrying omega or Z, l and n

    Returns:
        Length scale in r
    """
    n = getattr(params, 'n', 0)
    if system in ('radial', 'radial-ext'):
        energy = params.omega * (2 * n + params.l + 1.5)
        return max(1.0, math.sqrt(energy) / params.omega)
    if system in ('coulomb', 'coulomb-ext'):
        return max(1.0, (n + params.l + 1.0) ** 2 / params.Z)
    raise DomainError(f"no radial length scale for system '{system}'")


def default_domain(system: str, params, spacing: Optional[float] = None) -> Tuple[GridSpec, str]:
    """
    Starting box and growth direction for a system

    Args:
        system: SYSTEMS key
        params: MorseParams, SuperpotentialSpec, ScarfParams, RadialExtParams or CoulombExtParams
        spacing: Grid spacing, default SOLVER_DEFAULTS['spacing']

    Returns:
        (GridSpec, grow) with grow 'both' or 'right'
    """
    h = spacing or SOLVER_DEFAULTS['spacing']

    if system == 'morse':
        spec = SuperpotentialSpec(params) if isinstance(params, MorseParams) else params
        x0 = math.log(2.0 * spec.B / (2.0 * spec.A + 1.0))
        return GridSpec.from_spacing(x0 - 8.0, x0 + 8.0 / _decay_rate(spec.A), h), 'right'

    if system == 'morse-ext':
        spec = params
        if spec.Q > 0:
            return GridSpec.from_spacing(spec.q - 8.0, spec.q + 8.0 / _decay_rate(spec.A), h), 'both'
        b_eff = spec.B - 2.0 * spec.P
        if b_eff <= 0:
            logger.warning("Q = 0 with 2P >= B has no bound states (B - 2P = %s)", b_eff)
            x0 = 0.0
        else:
            x0 = math.log(2.0 * b_eff / (2.0 * spec.A + 1.0))
        return GridSpec.from_spacing(x0 - 8.0, x0 + 8.0 / _decay_rate(spec.A), h), 'right'

    if system == 'scarf2':
        return GridSpec.from_spacing(-8.0, 8.0 / _decay_rate(params.A), h), 'both'

    if system in ('radial', 'radial-ext', 'coulomb', 'coulomb-ext'):
        return GridSpec.from_spacing(0.0, 8.0 * radial_length_scale(system, params), h), 'right'

    raise DomainError(f"no default domain for system '{system}'")


# ============ SOLVER ============

class BoundStateSolver:
    """
    Lowest k bound states of -d²/dx² + V with automatic box enlargement

    Each attempt solves on h and h/2 concurrently and extrapolates
    E = (4 E_{h/2} - E_h) / 3. The box doubles until no extrapolated
    energy moves by more than tol.
    """

    def __init__(self, V: Callable, domain: GridSpec, k: int, tol: Optional[float] = None,
                 grow: str = 'both', vectors: bool = False):
        """
        Args:
            V: Vectorized potential, only evaluated on interior nodes
            domain: Starting box
            k: Number of states
            tol: Convergence tolerance on the energies (default SOLVER_DEFAULTS['tol'])
            grow: 'both' doubles symmetrically, 'right' extends x_max only
            vectors: Keep normalized eigenvectors from the h/2 grid
        """
        if isinstance(k, bool) or int(k) != k or k < 1:
            raise DomainError(f"k must be an integer >= 1, got {k}")
        if grow not in ('both', 'right'):
            raise DomainError(f"grow must be 'both' or 'right', got '{grow}'")
        self.V = V
        self.domain = domain
        self.k = int(k)
        self.tol = SOLVER_DEFAULTS['tol'] if tol is None else tol
        self.grow = grow
        self.vectors = vectors
        self.max_doublings = SOLVER_DEFAULTS['max_doublings']
        self.max_correction = SOLVER_DEFAULTS['max_correction']
        self.history = []

    def sample(self, grid: GridSpec) -> SampledFunction:
        """Potential on the grid, boundary samples copied from their neighbours"""
        inner = np.asarray(self.V(grid.nodes()[1:-1]), dtype=float)
        if not np.all(np.isfinite(inner)):
            raise DomainError("potential is not finite on the grid interior")
        return SampledFunction(grid, np.concatenate([inner[:1], inner, inner[-1:]]))

    def _solve_grid(self, grid: GridSpec, vectors: bool):
        V = self.sample(grid)
        diag, offdiag = build_hamiltonian(V)
        if self.k > diag.size:
            raise DomainError(f"k = {self.k} exceeds the {diag.size} interior nodes")
        energies, vecs = eigen_lowest(diag, offdiag, self.k, vectors=vectors)
        return V, energies, vecs

    def _solve_pair(self, box: GridSpec):
        """Coarse and fine solves, refining the base grid while the correction is too large"""
        while True:
            fine_grid = box.refined()
            if fine_grid.count > MAX_NODES:
                raise ConvergenceError(f"grid of {fine_grid.count} nodes exceeds the {MAX_NODES} node limit",
                                       {'history': self.history})
            with ThreadPoolExecutor(max_workers=min(2, worker_count())) as pool:
                coarse = pool.submit(self._solve_grid, box, False)
                fine = pool.submit(self._solve_grid, fine_grid, True)
                _, coarse_energies, _ = coarse.result()
                fine_V, fine_energies, fine_vecs = fine.result()
            corrections = np.abs(fine_energies - coarse_energies) / 3.0
            if np.max(corrections) <= self.max_correction:
                return box, coarse_energies, fine_V, fine_energies, fine_vecs, corrections
            logger.debug("Richardson correction %.3g above cap, halving h = %.4g",
                         float(np.max(corrections)), box.spacing)
            box = fine_grid

    def _grown(self, box: GridSpec) -> GridSpec:
        width = box.x_max - box.x_min
        intervals = 2 * (box.count - 1)
        if self.grow == 'right':
            return GridSpec(box.x_min, box.x_max + width, intervals + 1)
        return GridSpec(box.x_min - 0.5 * width, box.x_max + 0.5 * width, intervals + 1)

    def run(self) -> SpectralResult:
        box = self.domain
        previous = None
        for doubling in range(self.max_doublings + 1):
            box, coarse, fine_V, fine, fine_vecs, corrections = self._solve_pair(box)
            extrapolated = (4.0 * fine - coarse) / 3.0
            change = None if previous is None else float(np.max(np.abs(extrapolated - previous)))
            self.history.append({
                'box': [box.x_min, box.x_max],
                'h': box.spacing,
                'energies': extrapolated.tolist(),
                'change': change,
            })
            logger.debug("Box [%.4g, %.4g] h=%.4g energies=%s change=%s",
                         box.x_min, box.x_max, box.spacing, extrapolated.tolist(), change)
            if change is not None and change < self.tol:
                return self._result(box, fine_V, extrapolated, fine_vecs, corrections, doubling)
            previous = extrapolated
            if doubling < self.max_doublings:
                box = self._grown(box)

        raise ConvergenceError(
            f"energies did not settle to {self.tol} within {self.max_doublings} domain doublings",
            {'history': self.history, 'tol': self.tol, 'k': self.k},
        )

    def _result(self, box, fine_V, energies, fine_vecs, corrections, doublings) -> SpectralResult:
        eigenvectors = []
        residuals = []
        for j in range(self.k):
            padded = np.concatenate([[0.0], fine_vecs[:, j], [0.0]])
            psi = normalize(fine_V.with_values(padded))
            eigenvectors.append(psi)
            residuals.append(schrodinger_residual(psi, fine_V, float(energies[j])))
        return SpectralResult(
            energies=energies,
            eigenvectors=eigenvectors if self.vectors else None,
            h=fine_V.grid.spacing,
            extrapolated=True,
            residuals=np.asarray(residuals),
            domain=fine_V.grid,
            corrections=corrections,
            doublings=doublings,
        )


def solve_bound_states(V: Callable, domain: GridSpec, k: int, tol: Optional[float] = None,
                       grow: str = 'both', vectors: bool = False) -> SpectralResult:
    """Lowest k bound states of -d²/dx² + V, see BoundStateSolver"""
    return BoundStateSolver(V, domain, k, tol=tol, grow=grow, vectors=vectors).run()


__all__ = ['SpectralResult', 'BoundStateSolver', 'build_hamiltonian', 'sturm_count', 'eigen_lowest',
           'solve_bound_states', 'schrodinger_residual', 'default_domain',
           'quadrature', 'first_derivative', 'second_derivative', 'overlap']


if __name__ == "__main__":
    print("Testing eigensolver on the harmonic oscillator...")
    print("=" * 60)
    result = solve_bound_states(lambda x: x * x, GridSpec(-8.0, 8.0, 2001), 4)
    for n, energy in enumerate(result.energies):
        print(f"  E_{n} = {energy:.10f}   (exact {2 * n + 1})")
    print(f"  h = {result.h}, doublings = {result.doublings}")
