"""Radial shooting for the stationary extremal profile V."""
import logging
import math
from dataclasses import dataclass, replace

import numpy as np

from common.config import get_settings
from domain.exceptions import ConvergenceError, InvalidStateError, OutOfDomainError
from radial.grid import RadialGrid, sphere_area
from radial.mass import MassFunction

logger = logging.getLogger(__name__)

MIN_STEPS_TO_TOUCHDOWN = 1000
SERIES_RADIUS_FRACTION = 0.01


@dataclass(frozen=True, eq=False)
class StationaryProfile:
    """
    Samples of a compactly supported stationary profile.

    ``radii`` are the uniform shooting nodes followed by the touchdown
    radius; ``mass_function`` is M_V at the same radii.
    """

    radii: np.ndarray
    values: np.ndarray
    mass_function: np.ndarray
    support_radius: float
    mass: float
    d: int
    step: float

    @property
    def m(self) -> float:
        return 2.0 - 2.0 / self.d

    @property
    def center_height(self) -> float:
        return float(self.values[0])

    def density_at(self, r: np.ndarray | float) -> np.ndarray:
        return np.interp(r, self.radii, self.values, right=0.0)

    def mass_at(self, r: np.ndarray | float) -> np.ndarray:
        return np.interp(r, self.radii, self.mass_function, right=self.mass)


def natural_length(d: int, center_height: float) -> float:
    """Length scale sqrt(p0 / V0) of the profile with V(0) = center_height."""
    m = 2.0 - 2.0 / d
    return math.sqrt(m / (m - 1.0) * center_height ** (m - 2.0))


def shoot_profile(
    d: int,
    center_height: float,
    step: float | None = None,
    radius_bound: float | None = None,
) -> StationaryProfile:
    """
    Integrate the stationary equation outward from the origin until V = 0.

    The profile satisfies (V^m)' = -V M_V / (σ r^{d-1}). It is integrated in
    the pressure variable p = m/(m-1) V^{m-1}, which obeys
    p' = -M_V/(σ r^{d-1}), M_V' = σ r^{d-1} V and vanishes linearly at the
    support edge, with classical fixed-step RK4. Nodes within 1% of the
    natural length come from the even series expansion at the origin.

    Args:
        d: Dimension (>= 3)
        center_height: V(0) > 0
        step: Radial step; defaults to a fraction of the natural length
        radius_bound: Radius at which the search gives up

    Returns:
        Profile sampled at the shooting nodes plus the touchdown radius

    Raises:
        OutOfDomainError: If d < 3 or center_height <= 0
        ConvergenceError: If V does not reach zero, or touches down in
            fewer than 1000 steps
    """
    if d < 3:
        raise OutOfDomainError("d", d, "d must be >= 3")
    if center_height <= 0:
        raise OutOfDomainError("center_height", center_height, "must be > 0")

    m = 2.0 - 2.0 / d
    n_exp = 1.0 / (m - 1.0)
    q = (m - 1.0) / m
    sigma = sphere_area(d)
    length = natural_length(d, center_height)
    if step is None:
        step = length / get_settings().profile_step_fraction
    if step <= 0:
        raise OutOfDomainError("step", step, "must be > 0")
    if radius_bound is None:
        radius_bound = 200.0 * length

    def density(p: float) -> float:
        return (q * p) ** n_exp if p > 0.0 else 0.0

    def rhs(r: float, p: float, mass: float) -> tuple[float, float]:
        area = sigma * r ** (d - 1)
        return -mass / area, area * density(p)

    v0 = center_height
    p0 = v0 ** (m - 1.0) / q
    # even series p = p0 + p2 r² + p4 r⁴ + p6 r⁶ and V = v0 + v2 r² + v4 r⁴
    p2 = -v0 / (2.0 * d)
    v2 = n_exp * v0 * p2 / p0
    p4 = -v2 / (4.0 * (d + 2))
    v4 = v0 * (n_exp * p4 / p0 + 0.5 * n_exp * (n_exp - 1.0) * (p2 / p0) ** 2)
    p6 = -v4 / (6.0 * (d + 4))

    def series(r: float) -> tuple[float, float]:
        p = p0 + p2 * r ** 2 + p4 * r ** 4 + p6 * r ** 6
        mass = sigma * r ** d * (v0 / d + v2 * r ** 2 / (d + 2) + v4 * r ** 4 / (d + 4))
        return p, mass

    # RK4 loses order next to the origin, so the first nodes come from the series
    h = step
    seeded = max(1, math.ceil(SERIES_RADIUS_FRACTION * length / h))
    radii = [0.0]
    pressures = [p0]
    masses = [0.0]
    for k in range(1, seeded + 1):
        p_k, mass_k = series(k * h)
        radii.append(k * h)
        pressures.append(p_k)
        masses.append(mass_k)
    r, p, mass = radii[-1], pressures[-1], masses[-1]

    touchdown: tuple[float, float] | None = None
    while r < radius_bound:
        k1p, k1m = rhs(r, p, mass)
        k2p, k2m = rhs(r + 0.5 * h, p + 0.5 * h * k1p, mass + 0.5 * h * k1m)
        k3p, k3m = rhs(r + 0.5 * h, p + 0.5 * h * k2p, mass + 0.5 * h * k2m)
        k4p, k4m = rhs(r + h, p + h * k3p, mass + h * k3m)
        p_next = p + h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p)
        mass_next = mass + h / 6.0 * (k1m + 2.0 * k2m + 2.0 * k3m + k4m)
        if p_next <= 0.0:
            fraction = p / (p - p_next)
            touchdown = (r + fraction * h, mass + fraction * (mass_next - mass))
            break
        r += h
        p, mass = p_next, mass_next
        radii.append(r)
        pressures.append(p)
        masses.append(mass)

    if touchdown is None:
        raise ConvergenceError(
            f"V did not reach zero before r={radius_bound:.6g} (step {step:.3g}, d={d})"
        )
    if len(radii) < MIN_STEPS_TO_TOUCHDOWN:
        raise ConvergenceError(
            f"touchdown after {len(radii)} steps; step {step:.3g} is too coarse to resolve the profile"
        )

    support, total = touchdown
    radii.append(support)
    pressures.append(0.0)
    masses.append(total)
    values = np.array([density(pp) for pp in pressures])
    values[0] = v0

    logger.debug(f"Shot profile d={d}, V(0)={v0:.6g}: support {support:.8g}, mass {total:.10g}")
    return StationaryProfile(
        radii=np.array(radii),
        values=values,
        mass_function=np.array(masses),
        support_radius=support,
        mass=total,
        d=d,
        step=step,
    )


def rescaled(profile: StationaryProfile, factor: float) -> StationaryProfile:
    """L1 (mass-preserving) dilation: V_λ(r) = λ^{-d} V(r/λ)."""
    if factor <= 0:
        raise OutOfDomainError("factor", factor, "must be > 0")
    d = profile.d
    return StationaryProfile(
        radii=profile.radii * factor,
        values=profile.values * factor ** (-d),
        mass_function=profile.mass_function.copy(),
        support_radius=profile.support_radius * factor,
        mass=profile.mass,
        d=d,
        step=profile.step * factor,
    )


def normalize_unit_support(profile: StationaryProfile) -> StationaryProfile:
    """Rescale to support radius one, keeping the mass."""
    if profile.support_radius <= 0:
        raise OutOfDomainError("support_radius", profile.support_radius, "must be > 0")
    if profile.support_radius == 1.0:
        return profile
    result = rescaled(profile, 1.0 / profile.support_radius)
    radii = result.radii.copy()
    radii[-1] = 1.0
    return replace(result, radii=radii, support_radius=1.0)


def stationarity_residual(profile: StationaryProfile) -> float:
    """
    Max interior residual of (V^m)' + V M_V/(σ r^{d-1}), relative to max(V)^m.

    Uses a fourth-order centered difference on the uniform shooting nodes.
    """
    d = profile.d
    sigma = sphere_area(d)
    radii = profile.radii[:-1]
    values = profile.values[:-1]
    masses = profile.mass_function[:-1]
    h = profile.step
    w = values ** profile.m
    k = np.arange(2, radii.size - 2)
    dw = (-w[k + 2] + 8.0 * w[k + 1] - 8.0 * w[k - 1] + w[k - 2]) / (12.0 * h)
    residual = dw + values[k] * masses[k] / (sigma * radii[k] ** (d - 1))
    return float(np.abs(residual).max() / values.max() ** profile.m)


def profile_mass_on(
    profile: StationaryProfile,
    grid: RadialGrid,
    radius: float = 1.0,
    amplitude: float = 1.0,
) -> MassFunction:
    """
    Mass function of amplitude * V_radius at the grid faces.

    ``profile`` must be normalized to unit support; V_radius is its L1
    dilation with support ``radius``.
    """
    if abs(profile.support_radius - 1.0) > 1e-12:
        raise InvalidStateError("profile", "expected a profile normalized to unit support")
    if radius <= 0:
        raise OutOfDomainError("radius", radius, "must be > 0")
    values = amplitude * profile.mass_at(grid.face_radii / radius)
    values[0] = 0.0
    values = np.maximum.accumulate(values)
    return MassFunction(values)
