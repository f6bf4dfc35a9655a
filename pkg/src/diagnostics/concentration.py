"""Mass concentration at the origin against the critical threshold."""
from dataclasses import dataclass

from radial.coefficients import Coefficients
from radial.grid import RadialGrid
from radial.mass import MassFunction
from stationary.constants import SharpConstants

EARLY_WARNING_FACTOR = 0.9


@dataclass(frozen=True)
class ConcentrationReport:
    local_mass: float
    threshold: float
    flagged: bool

    @property
    def fraction(self) -> float:
        return self.local_mass / self.threshold


def concentration_threshold(coeffs: Coefficients, k: SharpConstants) -> float:
    """a(0)^{d/2} M_c⋆."""
    return float(coeffs.a_at(0.0)) ** (k.d / 2.0) * k.M_c_star


def concentration_monitor(
    M: MassFunction,
    coeffs: Coefficients,
    k: SharpConstants,
    r_local: float,
    grid: RadialGrid,
    factor: float = EARLY_WARNING_FACTOR,
) -> ConcentrationReport:
    """Mass inside r_local, the origin threshold, and whether it is within ``factor`` of it."""
    local = float(M.at(grid, r_local))
    threshold = concentration_threshold(coeffs, k)
    return ConcentrationReport(local_mass=local, threshold=threshold, flagged=local >= factor * threshold)
