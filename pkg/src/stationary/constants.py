"""Sharp constants derived from the normalized extremal."""
import logging
import math
from dataclasses import dataclass
from functools import lru_cache

from scipy.special import gamma as gamma_fn

from common.config import get_settings
from domain.exceptions import OutOfDomainError
from .shooting import StationaryProfile, normalize_unit_support, shoot_profile

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SharpConstants:
    """c_d, C⋆ and M_c⋆ for one dimension."""

    c_d: float
    C_star: float
    M_c_star: float
    d: int

    @property
    def m(self) -> float:
        return 2.0 - 2.0 / self.d

    def mass_identity_residual(self) -> float:
        """Relative defect of M_c⋆ = (2/((m-1) C⋆ c_d))^{d/2}."""
        predicted = (2.0 / ((self.m - 1.0) * self.C_star * self.c_d)) ** (self.d / 2.0)
        return abs(predicted - self.M_c_star) / self.M_c_star


def compute_cd(d: int) -> float:
    """Normalization of the Newtonian potential, Γ(d/2+1)/(d(d-2)π^{d/2})."""
    if d < 3:
        raise OutOfDomainError("d", d, "d must be >= 3")
    return float(gamma_fn(d / 2.0 + 1.0) / (d * (d - 2) * math.pi ** (d / 2.0)))


def sharp_constants(profile: StationaryProfile) -> SharpConstants:
    """Read M_c⋆ off the normalized profile and invert the mass identity for C⋆."""
    profile = normalize_unit_support(profile)
    d = profile.d
    m = profile.m
    c_d = compute_cd(d)
    mass = profile.mass
    c_star = 2.0 / ((m - 1.0) * c_d * mass ** (2.0 / d))
    return SharpConstants(c_d=c_d, C_star=c_star, M_c_star=mass, d=d)


def critical_mass(a_min: float, constants: SharpConstants) -> float:
    """M_c = (2 a_min / ((m-1) C⋆ c_d))^{d/2} = a_min^{d/2} M_c⋆."""
    if a_min <= 0:
        raise OutOfDomainError("a_min", a_min, "must be > 0")
    return a_min ** (constants.d / 2.0) * constants.M_c_star


@lru_cache(maxsize=8)
def reference_profile(d: int) -> tuple[StationaryProfile, SharpConstants]:
    """Normalized extremal and its constants, computed once per dimension."""
    settings = get_settings()
    logger.info(f"Shooting reference profile for d={d}")
    profile = normalize_unit_support(shoot_profile(d, settings.profile_center_height))
    constants = sharp_constants(profile)
    logger.info(
        f"d={d}: c_d={constants.c_d:.10g}, M_c*={constants.M_c_star:.10g}, C*={constants.C_star:.10g}"
    )
    return profile, constants
