"""Self-similar porous-medium solution used to validate the pure-diffusion path."""
import math
from dataclasses import dataclass

import numpy as np

from domain.exceptions import OutOfDomainError
from radial.grid import RadialGrid
from radial.mass import MassFunction
from radial.sampling import sample_mass


@dataclass(frozen=True)
class BarenblattFixture:
    """
    Pressure profile B(r, t) = t^{-λ} (C - k r² / t^{2 mu_exp})_+.

    The exponents make B an exact solution of B_t = (m-1) B ΔB + |∇B|²,
    so the density ((m-1)B/m)^{1/(m-1)} solves u_t = Δu^m.
    """

    C: float
    lambda_: float
    mu_exp: float
    k: float
    d: int
    m: float

    @classmethod
    def for_dimension(cls, d: int, C: float = 1.0) -> "BarenblattFixture":
        if d < 3:
            raise OutOfDomainError("d", d, "d must be >= 3")
        if C <= 0:
            raise OutOfDomainError("C", C, "must be > 0")
        m = 2.0 - 2.0 / d
        spread = d * (m - 1.0)
        lam = spread / (spread + 2.0)
        return cls(
            C=C,
            lambda_=lam,
            mu_exp=lam / spread,
            k=lam / (2.0 * spread),
            d=d,
            m=m,
        )

    def _check_time(self, t: float) -> None:
        if t <= 0:
            raise OutOfDomainError("t", t, "Barenblatt profile is defined for t > 0")

    def pressure(self, r: np.ndarray | float, t: float) -> np.ndarray:
        self._check_time(t)
        r = np.asarray(r, dtype=float)
        inner = self.C - self.k * r ** 2 / t ** (2.0 * self.mu_exp)
        return t ** (-self.lambda_) * np.maximum(inner, 0.0)

    def density(self, r: np.ndarray | float, t: float) -> np.ndarray:
        m = self.m
        return ((m - 1.0) * self.pressure(r, t) / m) ** (1.0 / (m - 1.0))

    def support_radius(self, t: float) -> float:
        self._check_time(t)
        return math.sqrt(self.C / self.k) * t ** self.mu_exp


def barenblatt_mass(t: float, fixture: BarenblattFixture, g: RadialGrid) -> MassFunction:
    """Cell-averaged Barenblatt density at time ``t``, integrated into M."""
    if t <= 0:
        raise OutOfDomainError("t", t, "Barenblatt profile is defined for t > 0")
    if g.d != fixture.d:
        raise OutOfDomainError("grid.d", g.d, f"fixture is for d={fixture.d}")
    return sample_mass(lambda r: fixture.density(r, t), g)
