"""Solver selection for the chemo-attractant equation."""
import logging

from domain.interfaces import ChemoSolver
from radial.coefficients import Coefficients
from .solvers.boundary_value import BoundaryValueChemoSolver
from .solvers.newtonian import NewtonianChemoSolver

logger = logging.getLogger(__name__)


def create_chemo_solver(
    coeffs: Coefficients,
    source_mass_scale: float = 1.0,
    force_bvp: bool = False,
) -> ChemoSolver:
    """
    Create the chemo-attractant solver for ``coeffs``.

    γ ≡ 0 uses the Newtonian closed form unless ``force_bvp`` asks for the
    tridiagonal path; any γ > 0 always uses the tridiagonal path.
    """
    if coeffs.gamma_is_zero and not force_bvp:
        return NewtonianChemoSolver(coeffs, source_mass_scale)
    logger.debug("Using tridiagonal boundary-value chemo solver")
    return BoundaryValueChemoSolver(coeffs, source_mass_scale)
