"""Cumulative mass functions and cell densities."""
from dataclasses import dataclass

import numpy as np

from domain.exceptions import InvalidStateError
from .grid import RadialGrid


def _frozen(values) -> np.ndarray:
    array = np.array(values, dtype=float)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class MassFunction:
    """M(t, r_i): mass inside the ball of radius r_i, one value per face."""

    values: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", _frozen(self.values))

    @property
    def total(self) -> float:
        return float(self.values[-1])

    def validate(self) -> "MassFunction":
        """Check M(0) = 0 and monotonicity."""
        if self.values[0] != 0.0:
            raise InvalidStateError("mass function", f"M(0) = {self.values[0]!r}, expected 0")
        steps = np.diff(self.values)
        if np.any(steps < 0):
            i = int(np.argmin(steps))
            raise InvalidStateError(
                "mass function", f"decreasing between faces {i} and {i + 1} ({steps[i]:.3g})"
            )
        if not np.all(np.isfinite(self.values)):
            raise InvalidStateError("mass function", "non-finite values")
        return self

    def at(self, grid: RadialGrid, r: float | np.ndarray) -> float | np.ndarray:
        """Linear interpolation between faces; M(r) = total beyond r_max."""
        result = np.interp(r, grid.face_radii, self.values)
        return float(result) if np.ndim(result) == 0 else result

    def scaled(self, factor: float) -> "MassFunction":
        return MassFunction(self.values * factor)


@dataclass(frozen=True, eq=False)
class RadialDensity:
    """u(t, r_j): cell-average density, one value per cell."""

    values: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", _frozen(self.values))

    def validate(self) -> "RadialDensity":
        if np.any(self.values < 0):
            j = int(np.argmin(self.values))
            raise InvalidStateError("density", f"negative value {self.values[j]:.3g} in cell {j}")
        if not np.all(np.isfinite(self.values)):
            raise InvalidStateError("density", "non-finite values")
        return self

    @property
    def peak(self) -> float:
        return float(self.values.max()) if self.values.size else 0.0


def mass_from_density(u: RadialDensity, grid: RadialGrid) -> MassFunction:
    """Integrate cell densities into the cumulative mass at every face."""
    if u.values.size != grid.n_cells:
        raise InvalidStateError(
            "density", f"{u.values.size} values for a grid of {grid.n_cells} cells"
        )
    u.validate()
    cell_mass = u.values * grid.shell_volumes
    return MassFunction(np.concatenate(([0.0], np.cumsum(cell_mass))))


def density_from_mass(mass: MassFunction, grid: RadialGrid) -> RadialDensity:
    """Difference quotient (M(r_{j+1}) - M(r_j)) / shellvol_j."""
    if mass.values.size != grid.n_cells + 1:
        raise InvalidStateError(
            "mass function", f"{mass.values.size} values for a grid of {grid.n_cells + 1} faces"
        )
    mass.validate()
    return RadialDensity(np.diff(mass.values) / grid.shell_volumes)


def cell_masses(mass: MassFunction) -> np.ndarray:
    return np.diff(mass.values)

