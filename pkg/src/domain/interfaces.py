"""
Domain interfaces using Python's Protocol (structural typing).
Solvers and monitors are swapped behind these contracts so the evolution
loop never needs to know which implementation it is driving.
"""
from __future__ import annotations

from typing import TYPE_CHECKING, Protocol, runtime_checkable

if TYPE_CHECKING:
    from chemo.models import ChemoField
    from radial.grid import RadialGrid
    from radial.mass import MassFunction


@runtime_checkable
class ChemoSolver(Protocol):
    """
    Interface for the radial chemo-attractant solve.

    Implemented by the Newtonian closed form (gamma identically zero) and
    by the tridiagonal boundary-value solver. Both must return the same
    drift on the interior faces when gamma vanishes.
    """

    source_mass_scale: float

    def solve(self, mass: MassFunction, grid: RadialGrid) -> ChemoField:
        """
        Solve for the chemo-attractant generated by ``mass``.

        Args:
            mass: Cumulative mass at the grid faces
            grid: Radial grid

        Returns:
            Field values at cell centers and radial derivative at faces
        """
        ...

    def potential_energy(self, mass: MassFunction, grid: RadialGrid) -> float:
        """
        Interaction energy (1/2)∫uc of ``mass``.

        Returns:
            Nonnegative potential energy
        """
        ...


@runtime_checkable
class MassMonitor(Protocol):
    """
    Live ordering check between the solution's mass function and a barrier.

    ``gap`` is positive while the ordering holds; ``tolerance`` is the
    discretization allowance below zero.
    """

    name: str

    def gap(self, mass: MassFunction, grid: RadialGrid, t: float) -> float:
        """Signed ordering margin at time ``t`` (rescaled frame)."""
        ...

    def locate(self, mass: MassFunction, grid: RadialGrid, t: float) -> tuple[float, float | None]:
        """The gap together with the face radius where it is attained."""
        ...

    def tolerance(self, grid: RadialGrid) -> float:
        """Allowed negative excursion of the gap, in mass units."""
        ...

    def active(self, t: float) -> bool:
        """Whether the monitor is defined at time ``t``."""
        ...
