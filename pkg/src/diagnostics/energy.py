"""Entropy, interaction energy and free energy of radial densities."""
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from chemo.dependencies import create_chemo_solver
from common.models import DiagnosticsRow, ModelParams
from radial.coefficients import Coefficients
from radial.grid import RadialGrid
from radial.mass import MassFunction, RadialDensity, density_from_mass


@dataclass(frozen=True)
class EnergyParts:
    entropy: float
    potential_energy: float

    @property
    def free_energy(self) -> float:
        return self.entropy - self.potential_energy


def entropy(u: RadialDensity, grid: RadialGrid, m: float) -> float:
    """(1/(m-1)) Σ u_j^m shellvol_j."""
    return float(np.dot(u.values ** m, grid.shell_volumes) / (m - 1.0))


def free_energy(
    mass: MassFunction,
    params: ModelParams,
    coeffs: Coefficients,
    grid: RadialGrid,
) -> EnergyParts:
    """
    Entropy, interaction energy and their difference.

    For the μ-rescaled system the interaction term carries the drift
    prefactor μ^{1-2/d}, which makes F the functional dissipated by the
    rescaled flow (it equals μ^m times the free energy of the unscaled
    density). At μ = 1 this is the usual (1/2)∫uc.
    """
    u = density_from_mass(mass, grid)
    solver = create_chemo_solver(coeffs, params.source_mass_scale)
    interaction = params.drift_factor * solver.potential_energy(mass, grid)
    return EnergyParts(entropy=entropy(u, grid, params.m), potential_energy=interaction)


def dissipation_violations(
    rows: Sequence[DiagnosticsRow],
    tolerance_factor: float = 1e-8,
    steps_per_row: int = 1,
) -> list[int]:
    """
    Indices k where F(t_{k+1}) > F(t_k) + tolerance.

    The tolerance is tolerance_factor * (1 + |F(t_0)|) per step, so rows
    recorded every ``steps_per_row`` steps get that many allowances.
    """
    if not rows:
        return []
    allowance = tolerance_factor * (1.0 + abs(rows[0].free_energy)) * steps_per_row
    energies = np.array([row.free_energy for row in rows])
    return [int(k) for k in np.nonzero(np.diff(energies) > allowance)[0]]


def scheme_potential_energy(
    mass: MassFunction,
    coeffs: Coefficients,
    grid: RadialGrid,
    source_mass_scale: float = 1.0,
) -> float:
    """
    Interaction energy in the face-sum form whose gradient is the scheme's drift.

    For γ ≡ 0 this is (s/2) Σ_i M_i² Δ_i / (A_i a(r_i)) over the faces,
    closed by the same far field as the Newtonian solver; it differs from
    the quadrature value by O(h²). For γ > 0 it is (1/2) Σ_j m_j c_j from
    the tridiagonal solve.
    """
    if not coeffs.gamma_is_zero:
        return create_chemo_solver(coeffs, source_mass_scale).potential_energy(mass, grid)
    s = source_mass_scale
    a_faces = coeffs.a_at(grid.face_radii[1:])
    distances = np.concatenate((grid.center_spacing, [grid.r_max - grid.center_radii[-1]]))
    inner = np.sum(mass.values[1:] ** 2 * distances / (grid.face_areas[1:] * a_faces))
    tail = mass.total ** 2 * grid.r_max ** (2 - grid.d) / (grid.sigma * (grid.d - 2) * a_faces[-1])
    return float(0.5 * s * (inner + tail))


def scheme_free_energy(
    mass: MassFunction,
    params: ModelParams,
    coeffs: Coefficients,
    grid: RadialGrid,
) -> EnergyParts:
    """Free energy with :func:`scheme_potential_energy`; non-increasing along runs."""
    u = density_from_mass(mass, grid)
    interaction = params.drift_factor * scheme_potential_energy(
        mass, coeffs, grid, params.source_mass_scale
    )
    return EnergyParts(entropy=entropy(u, grid, params.m), potential_energy=interaction)
