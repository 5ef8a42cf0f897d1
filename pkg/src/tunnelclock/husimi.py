"""Phase-space (Husimi) maps of the outgoing position-space solution.

|H(x, p)| = |<g_{x,p}|psi>| with g a normalized Gaussian coherent state of
spatial width `width`.  The ridge (argmax over p at fixed x) is compared
against the classical trajectory p(x) = sqrt(2 F (x - x0)) far from the
tunnel exit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CoverageError, DomainError
from .sfa import ComplexGrid1D


@dataclass(frozen=True)
class PhaseSpaceGrid:
    """Rectangular |H(x, p)| map with the coherent-state width recorded."""

    x_values: np.ndarray
    p_values: np.ndarray
    magnitude: np.ndarray  # (n_x, n_p), >= 0
    width: float

    def __post_init__(self):
        if self.magnitude.shape != (len(self.x_values), len(self.p_values)):
            raise DomainError("magnitude shape does not match the axes")
        if self.width <= 0.0:
            raise DomainError("width must be positive")
        if np.any(self.magnitude < 0.0):
            raise DomainError("magnitudes must be non-negative")


def _physical_positions(psi: ComplexGrid1D) -> np.ndarray:
    """Physical x samples of a position-space grid (coordinates are xi = x/x0)."""
    if psi.coordinate_kind != "position_xi":
        raise DomainError("husimi maps require a position-space grid")
    return psi.coordinates * psi.params.x0


def _check_coverage(xs: np.ndarray, x: float, width: float) -> None:
    lo, hi = xs[0], xs[-1]
    if x - 6.0 * width < lo or x + 6.0 * width > hi:
        raise CoverageError(
            f"grid [{lo:.3f}, {hi:.3f}] does not span "
            f"[{x - 6 * width:.3f}, {x + 6 * width:.3f}]")


def husimi_point(psi: ComplexGrid1D, x: float, p: float, width: float) -> float:
    """|<g_{x,p}|psi>| by trapezoid quadrature on the psi grid."""
    if width <= 0.0:
        raise DomainError("width must be positive")
    xs = _physical_positions(psi)
    _check_coverage(xs, x, width)
    g = ((1.0 / (np.pi * width * width)) ** 0.25
         * np.exp(-((xs - x) ** 2) / (2.0 * width * width) + 1j * p * xs))
    return float(abs(np.trapezoid(np.conj(g) * psi.values, xs)))


def husimi_grid(psi: ComplexGrid1D, x_grid, p_grid, width: float) -> PhaseSpaceGrid:
    """Vectorized |H| over a rectangular (x, p) grid."""
    x_grid = np.asarray(x_grid, dtype=float)
    p_grid = np.asarray(p_grid, dtype=float)
    if x_grid.size == 0 or p_grid.size == 0:
        raise DomainError("grids must be non-empty")
    if width <= 0.0:
        raise DomainError("width must be positive")
    xs = _physical_positions(psi)
    _check_coverage(xs, float(x_grid.min()), width)
    _check_coverage(xs, float(x_grid.max()), width)
    norm = (1.0 / (np.pi * width * width)) ** 0.25
    # f_p(x') = e^{-i p x'} psi(x'); Gaussian windows applied per x row.
    phase = np.exp(-1j * np.outer(p_grid, xs)) * psi.values[None, :]  # (n_p, n_x')
    mag = np.empty((x_grid.size, p_grid.size))
    for i, x in enumerate(x_grid):
        window = norm * np.exp(-((xs - x) ** 2) / (2.0 * width * width))
        mag[i] = np.abs(np.trapezoid(phase * window[None, :], xs, axis=1))
    return PhaseSpaceGrid(x_values=x_grid, p_values=p_grid,
                          magnitude=mag, width=width)


def ridge_momenta(grid: PhaseSpaceGrid) -> np.ndarray:
    """argmax over p at each x."""
    return grid.p_values[np.argmax(grid.magnitude, axis=1)]
