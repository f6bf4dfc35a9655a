"""ChemoSolver implementations."""
from .boundary_value import BoundaryValueChemoSolver
from .newtonian import NewtonianChemoSolver

__all__ = ["BoundaryValueChemoSolver", "NewtonianChemoSolver"]
