"""
Tridiagonal implementation of ChemoSolver.
Solves -(1/r^{d-1})(r^{d-1} a c')' + γ c = s u with c'(0) = 0, c(r_max) = 0.
"""
import logging

import numpy as np
import scipy.linalg

from domain.exceptions import SolverInternalError
from radial.coefficients import Coefficients
from radial.grid import RadialGrid
from radial.mass import MassFunction
from ..models import ChemoField

logger = logging.getLogger(__name__)


class BoundaryValueChemoSolver:
    """
    Finite-volume two-point boundary-value solver on cell centers.

    Integrating the equation over cell j gives

        T_j (c_j - c_{j-1}) - T_{j+1} (c_{j+1} - c_j) + γ_j V_j c_j = s m_j

    with face transmissibilities T_i = σ r_i^{d-1} a(r_i) / Δ_i, T_0 = 0
    (Neumann at the origin) and c_n = 0 behind the outer face (Dirichlet).
    Interior face fluxes telescope to -s M(r_i) when γ ≡ 0, so the drift
    matches the Newtonian closed form to round-off.
    """

    def __init__(self, coeffs: Coefficients, source_mass_scale: float = 1.0):
        self.coeffs = coeffs
        self.source_mass_scale = source_mass_scale

    def _distances(self, grid: RadialGrid) -> np.ndarray:
        """Δ_i for faces 1..n (the last one reaches the Dirichlet face)."""
        outer = grid.r_max - grid.center_radii[-1]
        return np.concatenate((grid.center_spacing, [outer]))

    def solve(self, mass: MassFunction, grid: RadialGrid) -> ChemoField:
        n = grid.n_cells
        s = self.source_mass_scale
        a_faces = self.coeffs.a_at(grid.face_radii)
        gamma_cells = self.coeffs.gamma_at(grid.center_radii)
        distances = self._distances(grid)

        transmissibility = np.zeros(n + 1)
        transmissibility[1:] = grid.face_areas[1:] * a_faces[1:] / distances

        diagonal = transmissibility[:-1] + transmissibility[1:] + gamma_cells * grid.shell_volumes
        banded = np.zeros((3, n))
        banded[0, 1:] = -transmissibility[1:-1]
        banded[1, :] = diagonal
        banded[2, :-1] = -transmissibility[1:-1]
        rhs = s * np.diff(mass.values)

        try:
            c_values = scipy.linalg.solve_banded((1, 1), banded, rhs)
        except (np.linalg.LinAlgError, ValueError) as e:
            raise SolverInternalError(f"singular chemo-attractant system: {e}") from e
        if not np.all(np.isfinite(c_values)):
            raise SolverInternalError("chemo-attractant solve produced non-finite values")

        dc_dr = np.zeros(n + 1)
        dc_dr[1:-1] = np.diff(c_values) / grid.center_spacing
        dc_dr[-1] = -c_values[-1] / distances[-1]
        return ChemoField(c_values=c_values, dc_dr=dc_dr, source_mass_scale=s)

    def potential_energy(self, mass: MassFunction, grid: RadialGrid) -> float:
        field = self.solve(mass, grid)
        return float(0.5 * np.dot(np.diff(mass.values), field.c_values))
