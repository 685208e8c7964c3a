"""
Domain Model
Parameter records, grids and the exception hierarchy shared by every module
"""

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np


# ============ ERRORS ============

class SusyExtendError(Exception):
    """Root of all errors raised by the library"""


class DomainError(SusyExtendError, ValueError):
    """Argument outside the mathematical domain of an operation"""


class ParameterError(DomainError):
    """Constructor invariant violation, names the offending field"""

    def __init__(self, field_name: str, message: str):
        super().__init__(f"{field_name}: {message}")
        self.field = field_name


class LevelError(DomainError):
    """Level index outside 0 <= n < A"""


class BoundaryError(SusyExtendError):
    """Sampled function has not decayed at the grid ends"""


class DegenerateError(SusyExtendError):
    """Norm is zero or underflows"""


class ConvergenceError(SusyExtendError):
    """Eigen-solve did not converge"""

    def __init__(self, message: str, diagnostics: Optional[dict] = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


def _require_finite(name: str, value) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ParameterError(name, f"must be finite, got {value}")
    return value


def require_level(name: str, value) -> int:
    if isinstance(value, bool) or int(value) != value:
        raise ParameterError(name, f"must be an integer, got {value}")
    if value < 0:
        raise ParameterError(name, f"must be >= 0, got {value}")
    return int(value)


def q_of(Q: float) -> float:
    """
    Shift q of the Scarf II variable z = x - q, defined by Q = e^{2q}

    Args:
        Q: Extension parameter, must be > 0

    Returns:
        (1/2) ln Q
    """
    if not Q > 0:
        raise DomainError(f"q is undefined for Q = {Q} (requires Q > 0)")
    return 0.5 * math.log(Q)


# ============ PARAMETER RECORDS ============

@dataclass(frozen=True)
class MorseParams:
    """Depth/shape parameter A and strength B of V_{A,B}(x)"""
    A: float
    B: float

    def __post_init__(self):
        a = _require_finite('A', self.A)
        b = _require_finite('B', self.B)
        if a <= 0:
            raise ParameterError('A', f"must be > 0, got {a}")
        if b <= 0:
            raise ParameterError('B', f"must be > 0, got {b}")
        object.__setattr__(self, 'A', a)
        object.__setattr__(self, 'B', b)

    @property
    def level_count(self) -> int:
        """Number of bound levels n = 0, 1, ... with n < A"""
        return int(math.ceil(self.A))

    def check_level(self, n: int) -> int:
        n = require_level('n', n)
        if not n < self.A:
            raise LevelError(f"level n = {n} requires n < A = {self.A}")
        return n


@dataclass(frozen=True)
class ExtensionParams:
    """Constants P and Q of the isospectral extension (P = Q = 0 is plain Morse)"""
    P: float = 0.0
    Q: float = 0.0

    def __post_init__(self):
        p = _require_finite('P', self.P)
        q = _require_finite('Q', self.Q)
        if q < 0:
            raise ParameterError('Q', f"must be >= 0, got {q}")
        object.__setattr__(self, 'P', p)
        object.__setattr__(self, 'Q', q)

    @property
    def q(self) -> float:
        return q_of(self.Q)

    @property
    def is_trivial(self) -> bool:
        return self.P == 0.0 and self.Q == 0.0


@dataclass(frozen=True)
class ScarfParams:
    """Scarf II parameters A and B' (Bp)"""
    A: float
    Bp: float = 0.0

    def __post_init__(self):
        a = _require_finite('A', self.A)
        if a <= 0:
            raise ParameterError('A', f"must be > 0, got {a}")
        object.__setattr__(self, 'A', a)
        object.__setattr__(self, 'Bp', _require_finite('Bp', self.Bp))

    def check_level(self, n: int) -> int:
        n = require_level('n', n)
        if not n < self.A:
            raise LevelError(f"level n = {n} requires n < A = {self.A}")
        return n


@dataclass(frozen=True)
class RadialExtParams:
    """Extended radial oscillator: frequency, effective l, QES level n and P, Q"""
    omega: float
    l: float
    n: int = 0
    P: float = 0.0
    Q: float = 0.0

    def __post_init__(self):
        omega = _require_finite('omega', self.omega)
        l = _require_finite('l', self.l)
        if omega <= 0:
            raise ParameterError('omega', f"must be > 0, got {omega}")
        if l < 0:
            raise ParameterError('l', f"must be >= 0, got {l}")
        object.__setattr__(self, 'omega', omega)
        object.__setattr__(self, 'l', l)
        object.__setattr__(self, 'n', require_level('n', self.n))
        ext = ExtensionParams(self.P, self.Q)
        object.__setattr__(self, 'P', ext.P)
        object.__setattr__(self, 'Q', ext.Q)

    @property
    def ext(self) -> ExtensionParams:
        return ExtensionParams(self.P, self.Q)


@dataclass(frozen=True)
class CoulombExtParams:
    """Extended Coulomb: charge Z, effective l, QES level n and P, Q"""
    Z: float
    l: float
    n: int = 0
    P: float = 0.0
    Q: float = 0.0

    def __post_init__(self):
        z = _require_finite('Z', self.Z)
        l = _require_finite('l', self.l)
        if z <= 0:
            raise ParameterError('Z', f"must be > 0, got {z}")
        if l < 0:
            raise ParameterError('l', f"must be >= 0, got {l}")
        object.__setattr__(self, 'Z', z)
        object.__setattr__(self, 'l', l)
        object.__setattr__(self, 'n', require_level('n', self.n))
        ext = ExtensionParams(self.P, self.Q)
        object.__setattr__(self, 'P', ext.P)
        object.__setattr__(self, 'Q', ext.Q)

    @property
    def ext(self) -> ExtensionParams:
        return ExtensionParams(self.P, self.Q)


@dataclass(frozen=True)
class SuperpotentialSpec:
    """W(x, A) = A X1(x) + X2(x) for given Morse and extension parameters"""
    morse: MorseParams
    ext: ExtensionParams = field(default_factory=ExtensionParams)

    @classmethod
    def of(cls, A: float, B: float, P: float = 0.0, Q: float = 0.0) -> 'SuperpotentialSpec':
        return cls(MorseParams(A, B), ExtensionParams(P, Q))

    @property
    def A(self) -> float:
        return self.morse.A

    @property
    def B(self) -> float:
        return self.morse.B

    @property
    def P(self) -> float:
        return self.ext.P

    @property
    def Q(self) -> float:
        return self.ext.Q

    @property
    def q(self) -> float:
        return self.ext.q

    @property
    def b_prime(self) -> float:
        """Scarf II B' = (2P - B) e^{-q} / 2, defined for Q > 0"""
        return 0.5 * (2.0 * self.P - self.B) * math.exp(-self.q)

    def with_a(self, a: float) -> 'SuperpotentialSpec':
        """Same B, P, Q with A replaced (partner and ladder chains)"""
        return SuperpotentialSpec(MorseParams(a, self.B), self.ext)


# ============ GRIDS ============

@dataclass(frozen=True)
class GridSpec:
    """Uniform 1-D grid of `count` nodes on [x_min, x_max]"""
    x_min: float
    x_max: float
    count: int

    def __post_init__(self):
        lo = _require_finite('x_min', self.x_min)
        hi = _require_finite('x_max', self.x_max)
        if not lo < hi:
            raise ParameterError('x_max', f"must exceed x_min ({lo}), got {hi}")
        if isinstance(self.count, bool) or int(self.count) != self.count or self.count < 3:
            raise ParameterError('count', f"must be an integer >= 3, got {self.count}")
        object.__setattr__(self, 'x_min', lo)
        object.__setattr__(self, 'x_max', hi)
        object.__setattr__(self, 'count', int(self.count))

    @classmethod
    def from_spacing(cls, x_min: float, x_max: float, h: float) -> 'GridSpec':
        """Grid with spacing as close to h as the interval allows"""
        if not h > 0:
            raise ParameterError('h', f"must be > 0, got {h}")
        intervals = max(2, int(round((x_max - x_min) / h)))
        return cls(x_min, x_max, intervals + 1)

    @classmethod
    def parse(cls, text: str) -> 'GridSpec':
        """Parse the command-line form 'min:max:count'"""
        parts = text.split(':')
        if len(parts) != 3:
            raise ParameterError('grid', f"expected 'min:max:count', got '{text}'")
        try:
            return cls(float(parts[0]), float(parts[1]), int(parts[2]))
        except ValueError as e:
            raise ParameterError('grid', f"cannot parse '{text}': {e}") from e

    @property
    def spacing(self) -> float:
        return (self.x_max - self.x_min) / (self.count - 1)

    def nodes(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.count)

    def refined(self) -> 'GridSpec':
        """Same interval, spacing h/2"""
        return GridSpec(self.x_min, self.x_max, 2 * (self.count - 1) + 1)


@dataclass(frozen=True, eq=False)
class SampledFunction:
    """Real samples of a function on a GridSpec"""
    grid: GridSpec
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.ndim != 1 or values.size != self.grid.count:
            raise ParameterError('values', f"length {values.size} does not match grid count {self.grid.count}")
        if not np.all(np.isfinite(values)):
            raise ParameterError('values', "all samples must be finite")
        values.flags.writeable = False
        object.__setattr__(self, 'values', values)

    @classmethod
    def from_callable(cls, func: Callable, grid: GridSpec) -> 'SampledFunction':
        return cls(grid, func(grid.nodes()))

    @property
    def nodes(self) -> np.ndarray:
        return self.grid.nodes()

    def with_values(self, values) -> 'SampledFunction':
        return SampledFunction(self.grid, values)
