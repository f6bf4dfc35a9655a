"""Per-cell Gauss-Legendre quadrature on radial grids."""
from functools import lru_cache

import numpy as np

from .grid import RadialGrid
from .mass import MassFunction

GAUSS_ORDER = 4


@lru_cache(maxsize=8)
def _legendre(order: int) -> tuple[np.ndarray, np.ndarray]:
    return np.polynomial.legendre.leggauss(order)


def cell_nodes(grid: RadialGrid, order: int = GAUSS_ORDER) -> tuple[np.ndarray, np.ndarray]:
    """
    Gauss nodes inside every cell and the matching dr-weights.

    Returns:
        (radii, weights), both of shape (n_cells, order); summing
        f(radii) * weights over axis 1 integrates f dr over each cell.
    """
    nodes, weights = _legendre(order)
    left = grid.face_radii[:-1, None]
    half = 0.5 * grid.cell_widths[:, None]
    radii = left + half * (nodes[None, :] + 1.0)
    return radii, half * weights[None, :]


def mass_at_nodes(mass: MassFunction, grid: RadialGrid, radii: np.ndarray) -> np.ndarray:
    """
    M(r) inside each cell for a density that is constant per cell.

    ``radii`` has one row per cell (as returned by :func:`cell_nodes`).
    """
    density = np.diff(mass.values) / grid.shell_volumes
    inner = grid.face_radii[:-1, None]
    ball = grid.sigma / grid.d
    return mass.values[:-1, None] + density[:, None] * ball * (radii ** grid.d - inner ** grid.d)


def integrate_cells(values: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """Per-cell integrals from node values and weights."""
    return (values * weights).sum(axis=1)
