"""MassMonitor implementations attached to evolution runs."""
import numpy as np

from radial.grid import RadialGrid
from radial.mass import MassFunction
from stationary.shooting import StationaryProfile
from domain.exceptions import InvalidStateError, OutOfDomainError
from .collapse import Barrier, collapse_time
from .ordering import OrderingReport, locate_comparison_gap

DEFAULT_TOLERANCE_FACTOR = 10.0


def grid_tolerance(grid: RadialGrid, reference_mass: float, factor: float) -> float:
    """ε_grid = factor · (Δr / r_max) · reference mass, with Δr the mean cell width."""
    return factor * reference_mass / grid.n_cells


class ComparisonMonitor:
    """Subsolution ordering: M(t, r) >= M̄(t, r) on [0, R(t)] until T⋆."""

    name = "barrier"

    def __init__(self, barrier: Barrier, tolerance_factor: float = DEFAULT_TOLERANCE_FACTOR):
        self.barrier = barrier
        self.tolerance_factor = tolerance_factor
        self._t_star = collapse_time(barrier)

    def active(self, t: float) -> bool:
        return t < self._t_star

    def locate(self, mass: MassFunction, grid: RadialGrid, t: float) -> tuple[float, float | None]:
        return locate_comparison_gap(mass, self.barrier, t, grid)

    def gap(self, mass: MassFunction, grid: RadialGrid, t: float) -> float:
        return self.locate(mass, grid, t)[0]

    def tolerance(self, grid: RadialGrid) -> float:
        return grid_tolerance(grid, self.barrier.M_c, self.tolerance_factor)


class FixedSupersolution:
    """
    Extremal with frozen radius R and amplitude ā^{d/2}.

    Its mass function ā^{d/2} M_V(r/R) bounds radial solutions of critical
    mass from above once they start below it.
    """

    def __init__(self, profile: StationaryProfile, radius: float, a_min: float):
        if radius <= 0:
            raise OutOfDomainError("radius", radius, "must be > 0")
        if a_min <= 0:
            raise OutOfDomainError("a_min", a_min, "must be > 0")
        if abs(profile.support_radius - 1.0) > 1e-12:
            raise InvalidStateError("supersolution", "profile must be normalized to unit support")
        self.profile = profile
        self.radius = radius
        self.amplitude = a_min ** (profile.d / 2.0)

    @property
    def total_mass(self) -> float:
        return self.amplitude * self.profile.mass

    def mass(self, r: np.ndarray | float) -> np.ndarray:
        return self.amplitude * self.profile.mass_at(np.asarray(r, dtype=float) / self.radius)

    def locate_gap(self, mass: MassFunction, grid: RadialGrid) -> tuple[float, float]:
        """Minimum of M̄_fixed - M over all faces and where it is attained."""
        margins = self.mass(grid.face_radii) - mass.values
        i = int(np.argmin(margins))
        return float(margins[i]), float(grid.face_radii[i])

    def check_ordering(self, mass: MassFunction, grid: RadialGrid) -> OrderingReport:
        worst, at = self.locate_gap(mass, grid)
        passed = worst >= -1e-12 * self.total_mass
        return OrderingReport(passed=passed, worst_margin=worst, violating_radius=None if passed else at)


class SupersolutionMonitor:
    """Ordering M(t, r) <= M̄_fixed(r), active for all times."""

    name = "supersolution"

    def __init__(self, supersolution: FixedSupersolution, tolerance_factor: float = DEFAULT_TOLERANCE_FACTOR):
        self.supersolution = supersolution
        self.tolerance_factor = tolerance_factor

    def active(self, t: float) -> bool:
        return True

    def locate(self, mass: MassFunction, grid: RadialGrid, t: float) -> tuple[float, float | None]:
        return self.supersolution.locate_gap(mass, grid)

    def gap(self, mass: MassFunction, grid: RadialGrid, t: float) -> float:
        return self.locate(mass, grid, t)[0]

    def tolerance(self, grid: RadialGrid) -> float:
        return grid_tolerance(grid, self.supersolution.total_mass, self.tolerance_factor)
