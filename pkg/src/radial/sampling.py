"""Cell averages of densities given as functions of r."""
from collections.abc import Callable

import numpy as np

from .grid import RadialGrid
from .mass import MassFunction, RadialDensity, mass_from_density
from .quadrature import cell_nodes, integrate_cells


def sample_density(profile: Callable[[np.ndarray], np.ndarray], grid: RadialGrid) -> RadialDensity:
    """
    Cell averages of a radial density ``profile(r)``.

    Each shell is integrated with the per-cell Gauss rule weighted by
    σ r^{d-1}.
    """
    radii, weights = cell_nodes(grid)
    integrand = np.asarray(profile(radii), dtype=float) * grid.sigma * radii ** (grid.d - 1)
    cell_mass = np.maximum(integrate_cells(integrand, weights), 0.0)
    return RadialDensity(cell_mass / grid.shell_volumes)


def sample_mass(
    profile: Callable[[np.ndarray], np.ndarray],
    grid: RadialGrid,
    total_mass: float | None = None,
) -> MassFunction:
    """Mass function of ``profile``, optionally rescaled to ``total_mass``."""
    mass = mass_from_density(sample_density(profile, grid), grid)
    if total_mass is None or mass.total <= 0:
        return mass
    return mass.scaled(total_mass / mass.total)
