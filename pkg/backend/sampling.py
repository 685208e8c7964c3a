"""
Sampling Tools
Finite-difference stencils, Simpson quadrature, normalization and node counting on uniform grids
"""

from typing import Optional, Tuple

import numpy as np
from scipy.integrate import simpson

from domain_model import DegenerateError, DomainError, SampledFunction

NODE_NOISE_FLOOR = 1e-9


def first_derivative(values, h: float) -> np.ndarray:
    """
    4th-order first derivative on a uniform grid

    Central 5-point stencil in the interior, one-sided 4th-order closures at
    the two nodes next to each end.

    Args:
        values: Samples, at least 5
        h: Grid spacing

    Returns:
        Array of the same length as values
    """
    f = np.asarray(values, dtype=float)
    if f.size < 5:
        raise DomainError(f"first_derivative needs at least 5 samples, got {f.size}")
    d = np.empty_like(f)
    d[2:-2] = f[:-4] - 8.0 * f[1:-3] + 8.0 * f[3:-1] - f[4:]
    d[0] = -25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]
    d[1] = -3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]
    d[-1] = 25.0 * f[-1] - 48.0 * f[-2] + 36.0 * f[-3] - 16.0 * f[-4] + 3.0 * f[-5]
    d[-2] = 3.0 * f[-1] + 10.0 * f[-2] - 18.0 * f[-3] + 6.0 * f[-4] - f[-5]
    return d / (12.0 * h)


def second_derivative(values, h: float) -> np.ndarray:
    """
    4th-order 5-point second difference

    Returns:
        Array of length len(values) - 4, aligned with values[2:-2]
    """
    f = np.asarray(values, dtype=float)
    if f.size < 5:
        raise DomainError(f"second_derivative needs at least 5 samples, got {f.size}")
    return (-f[:-4] + 16.0 * f[1:-3] - 30.0 * f[2:-2] + 16.0 * f[3:-1] - f[4:]) / (12.0 * h * h)


def _integrate(values: np.ndarray, h: float) -> float:
    # Simpson needs an odd node count, an even count closes with one trapezoid panel
    if values.size % 2 == 1:
        return float(simpson(values, dx=h))
    head = float(simpson(values[:-1], dx=h)) if values.size > 2 else 0.0
    return head + 0.5 * h * float(values[-2] + values[-1])


def quadrature(psi: SampledFunction) -> float:
    """Simpson approximation of the integral of the samples"""
    return _integrate(np.asarray(psi.values), psi.grid.spacing)


def _window_slice(psi: SampledFunction, window: Optional[Tuple[float, float]]) -> slice:
    if window is None:
        return slice(0, psi.grid.count)
    nodes = psi.grid.nodes()
    inside = np.nonzero((nodes >= window[0]) & (nodes <= window[1]))[0]
    if inside.size < 3:
        raise DomainError(f"window {window} holds fewer than 3 grid nodes")
    return slice(int(inside[0]), int(inside[-1]) + 1)


def norm(psi: SampledFunction) -> float:
    """L2 norm under Simpson quadrature"""
    values = np.asarray(psi.values)
    return float(np.sqrt(max(_integrate(values * values, psi.grid.spacing), 0.0)))


def normalize(psi: SampledFunction) -> SampledFunction:
    """
    Unit L2 norm under Simpson quadrature, first significant sample positive

    Raises:
        DegenerateError: norm is zero, underflows or is not finite
    """
    values = np.asarray(psi.values, dtype=float)
    scale = float(np.max(np.abs(values))) if values.size else 0.0
    if not np.isfinite(scale) or scale == 0.0:
        raise DegenerateError("cannot normalize a zero function")
    # Rescale first so squaring neither underflows nor overflows
    scaled = values / scale
    norm_sq = _integrate(scaled * scaled, psi.grid.spacing)
    if not np.isfinite(norm_sq) or norm_sq <= np.finfo(float).tiny:
        raise DegenerateError(f"norm underflows (norm^2 = {norm_sq})")
    unit = scaled / np.sqrt(norm_sq)
    significant = np.nonzero(np.abs(unit) > NODE_NOISE_FLOOR * np.max(np.abs(unit)))[0]
    if unit[significant[0]] < 0:
        unit = -unit
    return psi.with_values(unit)


def count_nodes(psi: SampledFunction) -> int:
    """Strict sign changes among samples above the noise floor"""
    values = np.asarray(psi.values, dtype=float)
    peak = float(np.max(np.abs(values))) if values.size else 0.0
    if peak == 0.0:
        return 0
    kept = values[np.abs(values) > NODE_NOISE_FLOOR * peak]
    signs = np.sign(kept)
    return int(np.count_nonzero(signs[1:] != signs[:-1]))


def overlap(a: SampledFunction, b: SampledFunction,
            window: Optional[Tuple[float, float]] = None) -> float:
    """
    |<a, b>| / (||a|| ||b||) by Simpson quadrature

    Args:
        a, b: Samples on the same grid
        window: Optional (lo, hi) coordinate window restricting the integrals
    """
    if a.grid != b.grid:
        raise DomainError("overlap needs both functions on the same grid")
    part = _window_slice(a, window)
    h = a.grid.spacing
    va = np.asarray(a.values)[part]
    vb = np.asarray(b.values)[part]
    # Rescale to avoid under/overflow in the products
    va = va / max(float(np.max(np.abs(va))), np.finfo(float).tiny)
    vb = vb / max(float(np.max(np.abs(vb))), np.finfo(float).tiny)
    denominator = np.sqrt(_integrate(va * va, h) * _integrate(vb * vb, h))
    if denominator == 0.0:
        raise DegenerateError("overlap of a zero function")
    return abs(_integrate(va * vb, h)) / float(denominator)
