"""Radial discretization primitives shared by all solvers."""
from .coefficients import (
    Coefficients,
    CoefficientSpec,
    ConstantSpec,
    PolynomialSpec,
    TableSpec,
    eval_coefficient,
)
from .grid import RadialGrid, sphere_area
from .mass import MassFunction, RadialDensity, density_from_mass, mass_from_density

__all__ = [
    "Coefficients",
    "CoefficientSpec",
    "ConstantSpec",
    "PolynomialSpec",
    "TableSpec",
    "eval_coefficient",
    "RadialGrid",
    "sphere_area",
    "MassFunction",
    "RadialDensity",
    "density_from_mass",
    "mass_from_density",
]
