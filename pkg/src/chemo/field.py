"""Chemo-attractant solve entry points and interaction energy."""
import numpy as np

from radial.coefficients import Coefficients
from radial.grid import RadialGrid
from radial.mass import MassFunction, RadialDensity, mass_from_density
from .dependencies import create_chemo_solver
from .models import ChemoField
from .solvers.boundary_value import BoundaryValueChemoSolver
from .solvers.newtonian import NewtonianChemoSolver


def solve_gamma_zero(
    mass: MassFunction,
    coeffs: Coefficients,
    grid: RadialGrid,
    source_mass_scale: float = 1.0,
) -> ChemoField:
    """Closed-form radial field for γ ≡ 0 (flux identity through each sphere)."""
    return NewtonianChemoSolver(coeffs, source_mass_scale).solve(mass, grid)


def solve_gamma_positive(
    u: RadialDensity,
    coeffs: Coefficients,
    grid: RadialGrid,
    source_mass_scale: float = 1.0,
) -> ChemoField:
    """Tridiagonal two-point boundary-value solve (any γ ≥ 0)."""
    return BoundaryValueChemoSolver(coeffs, source_mass_scale).solve(mass_from_density(u, grid), grid)


def potential_energy(
    mass: MassFunction,
    field_or_coeffs: ChemoField | Coefficients,
    grid: RadialGrid,
    source_mass_scale: float = 1.0,
) -> float:
    """
    Interaction energy (1/2)∫uc.

    A :class:`Coefficients` with γ ≡ 0 uses the closed form
    (s/2)∫ M²/(σ r^{d-1} a) dr plus the far-field tail; a solved
    :class:`ChemoField` is integrated directly as (1/2)Σ u_j c_j shellvol_j.
    """
    if isinstance(field_or_coeffs, ChemoField):
        cell_mass = np.diff(mass.values)
        return float(0.5 * np.dot(cell_mass, field_or_coeffs.c_values))

    solver = create_chemo_solver(field_or_coeffs, source_mass_scale)
    return solver.potential_energy(mass, grid)
