"""Sharp HLS-type ratio D(f) / (‖f‖₁^{2-m} ‖f‖_m^m) for radial densities."""
import numpy as np

from chemo.solvers.newtonian import NewtonianChemoSolver
from domain.exceptions import OutOfDomainError
from radial.coefficients import Coefficients
from radial.grid import RadialGrid
from radial.mass import RadialDensity, mass_from_density
from radial.quadrature import cell_nodes
from stationary.constants import SharpConstants, compute_cd

_UNIT_COEFFICIENTS = Coefficients()


def interaction_integral(u: RadialDensity, grid: RadialGrid) -> float:
    """
    D(f) = ∫∫ f(x) f(y) |x-y|^{2-d} dx dy through the mass function.

    With a ≡ 1 the Newtonian interaction energy is (c_d/2) D(f), so
    D(f) = (1/c_d)[∫₀^{r_max} M²/(σ r^{d-1}) dr + M_tot² r_max^{2-d}/(σ(d-2))].
    """
    mass = mass_from_density(u, grid)
    energy = NewtonianChemoSolver(_UNIT_COEFFICIENTS).potential_energy(mass, grid)
    return 2.0 * energy / compute_cd(grid.d)


def _norm_product(u: RadialDensity, grid: RadialGrid, m: float) -> float:
    l1 = float(np.dot(u.values, grid.shell_volumes))
    lm = float(np.dot(u.values ** m, grid.shell_volumes))
    if l1 <= 0.0:
        raise OutOfDomainError("u", "0", "HLS ratio is undefined for a vanishing density")
    return l1 ** (2.0 - m) * lm


def hls_ratio(u: RadialDensity, g: RadialGrid, k: SharpConstants) -> float:
    """
    D(f) / (‖f‖₁^{2-m} ‖f‖_m^m); bounded by C⋆ with equality at the extremal.

    Raises:
        OutOfDomainError: If u vanishes identically or dimensions disagree
    """
    if g.d != k.d:
        raise OutOfDomainError("grid.d", g.d, f"constants are for d={k.d}")
    return interaction_integral(u, g) / _norm_product(u, g, k.m)


def hls_ratio_double_quadrature(u: RadialDensity, g: RadialGrid, k: SharpConstants) -> float:
    """
    O(n²) reference value of the HLS ratio.

    Uses Newton's theorem for spheres, ∫∫_{|x|=r,|y|=s} |x-y|^{2-d} =
    σ² r^{d-1} s^{d-1} max(r, s)^{2-d}, and sums the kernel over all pairs
    of Gauss nodes.
    """
    radii, weights = cell_nodes(g)
    shell_mass = (u.values[:, None] * g.sigma * radii ** (g.d - 1) * weights).ravel()
    nodes = radii.ravel()
    kernel = np.maximum(nodes[:, None], nodes[None, :]) ** (2.0 - g.d)
    interaction = float(shell_mass @ kernel @ shell_mass)
    return interaction / _norm_product(u, g, k.m)
