"""Stationary extremal profile and the sharp constants derived from it."""
from .constants import SharpConstants, compute_cd, critical_mass, reference_profile, sharp_constants
from .shooting import (
    StationaryProfile,
    normalize_unit_support,
    profile_mass_on,
    rescaled,
    shoot_profile,
    stationarity_residual,
)

__all__ = [
    "SharpConstants",
    "compute_cd",
    "critical_mass",
    "reference_profile",
    "sharp_constants",
    "StationaryProfile",
    "normalize_unit_support",
    "profile_mass_on",
    "rescaled",
    "shoot_profile",
    "stationarity_residual",
]
