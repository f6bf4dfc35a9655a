"""Explicit time integration of the radial mass-function PDE."""
from .barenblatt import BarenblattFixture, barenblatt_mass
from .runner import RunControls, Trajectory, run
from .scheme import RadialScheme, SimulationState, step

__all__ = [
    "BarenblattFixture",
    "barenblatt_mass",
    "RunControls",
    "Trajectory",
    "run",
    "RadialScheme",
    "SimulationState",
    "step",
]
