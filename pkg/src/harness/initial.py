"""Initial mass functions for the scenario kinds."""
import logging

import numpy as np

from barrier.collapse import Barrier, barrier_mass
from domain.exceptions import InvalidStateError
from evolution.barenblatt import BarenblattFixture, barenblatt_mass
from radial.grid import RadialGrid
from radial.mass import MassFunction
from radial.sampling import sample_mass
from stationary.constants import reference_profile
from stationary.shooting import profile_mass_on
from .config import InitialSection

logger = logging.getLogger(__name__)


def gaussian(center: float, width: float):
    return lambda r: np.exp(-(((r - center) / width) ** 2))


def shell(inner: float, outer: float):
    return lambda r: ((r >= inner) & (r <= outer)).astype(float)


def tabulated(points: tuple[tuple[float, float], ...]):
    radii = np.array([p[0] for p in points])
    values = np.array([p[1] for p in points])
    if np.any(values < 0):
        raise InvalidStateError("initial.table", "densities must be >= 0")
    return lambda r: np.interp(r, radii, values, right=0.0)


def _normalized(profile, grid: RadialGrid, total: float, what: str) -> MassFunction:
    mass = sample_mass(profile, grid)
    if mass.total <= 0:
        raise InvalidStateError(what, "carries no mass on the grid")
    return mass.scaled(total / mass.total)


def build_initial(
    section: InitialSection,
    grid: RadialGrid,
    total_mass: float,
    barrier: Barrier | None = None,
) -> MassFunction:
    """
    Mass function of the unscaled initial data with total ``total_mass``.

    ``extremal`` is the normalized profile with support ``section.width``.
    ``barrier_scaled`` needs the barrier: the data are (M0/M_c) ū(0, ·)
    with the profile radius shrunk by ``section.scale``.
    """
    kind = section.kind
    if kind == "extremal":
        profile, _ = reference_profile(grid.d)
        mass = profile_mass_on(profile, grid, radius=section.width)
        return mass.scaled(total_mass / mass.total)
    if kind == "gaussian_bump":
        return _normalized(gaussian(section.center, section.width), grid, total_mass, "gaussian bump")
    if kind == "annulus":
        return _normalized(shell(section.inner, section.outer), grid, total_mass, "annulus")
    if kind == "table":
        return _normalized(tabulated(section.table), grid, total_mass, "table")
    if kind == "spike_plus_shell":
        spike = _normalized(gaussian(0.0, section.spike_width), grid, 1.0, "spike")
        outer = _normalized(shell(section.inner, section.outer), grid, 1.0, "shell")
        f = section.spike_fraction
        return MassFunction(total_mass * (f * spike.values + (1.0 - f) * outer.values))
    if kind == "barrier_scaled":
        if barrier is None:
            raise InvalidStateError("initial", "kind 'barrier_scaled' requires barrier.R0")
        compressed = Barrier(
            R0=barrier.R0 * section.scale,
            a_at_R0=barrier.a_at_R0,
            mu=barrier.mu,
            M_c=barrier.M_c,
            profile=barrier.profile,
            d=barrier.d,
        )
        values = barrier_mass(compressed, 0.0, grid.face_radii) / barrier.mu
        values[0] = 0.0
        mass = MassFunction(np.maximum.accumulate(values))
        if abs(mass.total - total_mass) > 1e-9 * total_mass:
            logger.warning(
                f"barrier-scaled data carry {mass.total:.10g}, model mass is {total_mass:.10g}; "
                "keeping the barrier shape"
            )
        return mass
    raise InvalidStateError("initial", f"kind {kind!r} needs a dedicated builder")


def build_barenblatt(section: InitialSection, grid: RadialGrid) -> tuple[BarenblattFixture, MassFunction]:
    fixture = BarenblattFixture.for_dimension(grid.d, section.C)
    return fixture, barenblatt_mass(section.t0, fixture, grid)
