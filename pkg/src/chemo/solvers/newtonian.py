"""
Closed-form implementation of ChemoSolver for γ ≡ 0.
By the divergence theorem, a c'(r) σ r^{d-1} = -s M(r) through every sphere,
so no linear solve is needed.
"""
import numpy as np

from domain.exceptions import WrongSolverError
from radial.coefficients import Coefficients
from radial.grid import RadialGrid
from radial.mass import MassFunction
from radial.quadrature import cell_nodes, integrate_cells, mass_at_nodes
from stationary.constants import compute_cd
from ..models import ChemoField


class NewtonianChemoSolver:
    """
    Radial Newtonian field of a mass function.

    The far field beyond r_max is closed by assuming a(r) = a(r_max) there,
    so c(r_max) = s M_total c_d / (a(r_max) r_max^{d-2}).
    """

    def __init__(self, coeffs: Coefficients, source_mass_scale: float = 1.0):
        """
        Initialize the solver.

        Args:
            coeffs: Coefficients; gamma must vanish identically
            source_mass_scale: Factor s multiplying the source (μ^{-1})

        Raises:
            WrongSolverError: If gamma is not identically zero
        """
        if not coeffs.gamma_is_zero:
            raise WrongSolverError("solve_gamma_zero", "solve_gamma_positive (gamma is not identically zero)")
        self.coeffs = coeffs
        self.source_mass_scale = source_mass_scale

    def face_gradient(self, mass: MassFunction, grid: RadialGrid) -> np.ndarray:
        """c'(r_i) = -s M(r_i) / (σ r_i^{d-1} a(r_i)); zero at the origin."""
        a_faces = self.coeffs.a_at(grid.face_radii)
        dc_dr = np.zeros(grid.n_cells + 1)
        dc_dr[1:] = -self.source_mass_scale * mass.values[1:] / (grid.face_areas[1:] * a_faces[1:])
        return dc_dr

    def far_field_value(self, mass: MassFunction, grid: RadialGrid) -> float:
        a_outer = float(self.coeffs.a_at(grid.r_max))
        return (
            self.source_mass_scale * mass.total * compute_cd(grid.d)
            / (a_outer * grid.r_max ** (grid.d - 2))
        )

    def solve(self, mass: MassFunction, grid: RadialGrid) -> ChemoField:
        s = self.source_mass_scale
        d = grid.d
        radii, weights = cell_nodes(grid)
        m_nodes = mass_at_nodes(mass, grid, radii)
        a_nodes = self.coeffs.a_at(radii)

        # -c' integrated over each cell, then accumulated inward from r_max
        drop = integrate_cells(s * m_nodes / (grid.sigma * radii ** (d - 1) * a_nodes), weights)
        c_faces = np.empty(grid.n_cells + 1)
        c_faces[-1] = self.far_field_value(mass, grid)
        c_faces[:-1] = c_faces[-1] + np.cumsum(drop[::-1])[::-1]

        # volume averages by parts: ∫ c σ r^{d-1} = [c σ r^d / d] + ∫ s M r / (d a)
        ball = grid.sigma / d * grid.face_radii ** d
        by_parts = integrate_cells(s * m_nodes * radii / (d * a_nodes), weights)
        c_values = (c_faces[1:] * ball[1:] - c_faces[:-1] * ball[:-1] + by_parts) / grid.shell_volumes

        return ChemoField(
            c_values=c_values,
            dc_dr=self.face_gradient(mass, grid),
            source_mass_scale=s,
        )

    def potential_energy(self, mass: MassFunction, grid: RadialGrid) -> float:
        """(s/2)[∫₀^{r_max} M²/(σ r^{d-1} a) dr + M_tot² r_max^{2-d} / (σ (d-2) a(r_max))]."""
        s = self.source_mass_scale
        d = grid.d
        radii, weights = cell_nodes(grid)
        m_nodes = mass_at_nodes(mass, grid, radii)
        a_nodes = self.coeffs.a_at(radii)
        inner = integrate_cells(m_nodes ** 2 / (grid.sigma * radii ** (d - 1) * a_nodes), weights).sum()
        a_outer = float(self.coeffs.a_at(grid.r_max))
        tail = mass.total ** 2 * grid.r_max ** (2 - d) / (grid.sigma * (d - 2) * a_outer)
        return float(0.5 * s * (inner + tail))
