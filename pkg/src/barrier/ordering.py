"""Mass-comparison checks between solutions and barriers."""
import logging
from dataclasses import dataclass

import numpy as np

from domain.exceptions import InvalidStateError, OutOfDomainError
from radial.grid import RadialGrid
from radial.mass import MassFunction
from .collapse import Barrier, barrier_mass, collapse_time, radius_at

logger = logging.getLogger(__name__)

ORDERING_SLACK = 1e-12


@dataclass(frozen=True)
class OrderingReport:
    passed: bool
    worst_margin: float
    violating_radius: float | None = None


def _worst(margins: np.ndarray, radii: np.ndarray) -> tuple[float, float]:
    i = int(np.argmin(margins))
    return float(margins[i]), float(radii[i])


def check_initial_ordering(u0: MassFunction, b: Barrier, grid: RadialGrid) -> OrderingReport:
    """
    Check M̄(0, r) <= (M_c / M0) M(0, r) at every face radius in [0, R0].

    ``u0`` is the mass function of the unscaled initial data.

    Raises:
        InvalidStateError: If the grid does not reach R0
    """
    if not grid.covers(b.R0):
        raise InvalidStateError("grid", f"r_max={grid.r_max:.6g} does not cover R0={b.R0:.6g}")
    faces = grid.face_radii
    inside = faces <= b.R0
    radii = faces[inside]
    margins = b.mu * u0.values[inside] - barrier_mass(b, 0.0, radii)
    worst, at = _worst(margins, radii)
    passed = worst >= -ORDERING_SLACK * b.M_c
    if not passed:
        logger.warning(f"Initial data not ordered against the barrier: margin {worst:.6g} at r={at:.6g}")
    return OrderingReport(passed=passed, worst_margin=worst, violating_radius=None if passed else at)


def locate_comparison_gap(
    M: MassFunction, b: Barrier, t: float, grid: RadialGrid
) -> tuple[float, float]:
    """Minimum of M - M̄ over faces in [0, R(t)] and the radius attaining it."""
    if t >= collapse_time(b):
        raise OutOfDomainError("t", t, "comparison is only defined before the collapse time")
    radius = radius_at(b, t)
    faces = grid.face_radii
    inside = faces <= radius
    radii = faces[inside]
    return _worst(M.values[inside] - barrier_mass(b, t, radii), radii)


def comparison_gap(M: MassFunction, b: Barrier, t: float, grid: RadialGrid) -> float:
    """min over faces r <= R(t) of M(t, r) - M̄(t, r), in the rescaled frame."""
    return locate_comparison_gap(M, b, t, grid)[0]
