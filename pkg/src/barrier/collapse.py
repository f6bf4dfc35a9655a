"""
Self-similarly collapsing subsolution built from the normalized extremal.

The barrier mass function is M̄(t, r) = a(R0)^{d/2} M_V(r / R(t)), where
R(t)^d decreases linearly and reaches zero at the collapse time T⋆.
"""
import logging
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from domain.exceptions import InvalidStateError, OutOfDomainError
from radial.grid import sphere_area
from stationary.shooting import StationaryProfile

logger = logging.getLogger(__name__)

LOWER_BOUND_SLACK = 1e-10


@dataclass(frozen=True, eq=False)
class Barrier:
    R0: float
    a_at_R0: float
    mu: float
    M_c: float
    profile: StationaryProfile
    d: int

    def __post_init__(self) -> None:
        if self.R0 <= 0:
            raise OutOfDomainError("R0", self.R0, "must be > 0")
        if self.a_at_R0 <= 0:
            raise OutOfDomainError("a_at_R0", self.a_at_R0, "must be > 0")
        if self.M_c <= 0:
            raise OutOfDomainError("M_c", self.M_c, "must be > 0")
        if not 0.0 < self.mu:
            raise OutOfDomainError("mu", self.mu, "must be > 0")
        if self.profile.d != self.d:
            raise InvalidStateError("barrier", f"profile is for d={self.profile.d}, barrier for d={self.d}")
        if abs(self.profile.support_radius - 1.0) > 1e-12:
            raise InvalidStateError("barrier", "profile must be normalized to unit support")
        if self.amplitude * self.profile.mass < (1.0 - LOWER_BOUND_SLACK) * self.M_c:
            raise OutOfDomainError(
                "M_c",
                self.M_c,
                f"must not exceed the barrier mass a(R0)^{{d/2}} M_c* = {self.amplitude * self.profile.mass:.10g}",
            )

    @classmethod
    def from_masses(
        cls,
        profile: StationaryProfile,
        a_at_R0: float,
        R0: float,
        M_c: float,
        M0: float,
    ) -> "Barrier":
        """Barrier for initial mass ``M0`` above the critical mass ``M_c`` (μ = M_c/M0)."""
        if M0 <= 0:
            raise OutOfDomainError("M0", M0, "must be > 0")
        return cls(R0=R0, a_at_R0=a_at_R0, mu=M_c / M0, M_c=M_c, profile=profile, d=profile.d)

    @property
    def amplitude(self) -> float:
        """a(R0)^{d/2}."""
        return self.a_at_R0 ** (self.d / 2.0)

    @property
    def sigma(self) -> float:
        return sphere_area(self.d)

    @property
    def collapse_rate(self) -> float:
        """-d(R^d)/dt = d M_c (μ^{-2/d} - 1) / (a(R0) σ)."""
        if self.mu >= 1.0:
            raise OutOfDomainError("mu", self.mu, "the barrier only collapses for mu < 1")
        return self.d * self.M_c * (self.mu ** (-2.0 / self.d) - 1.0) / (self.a_at_R0 * self.sigma)


def collapse_time(b: Barrier) -> float:
    """T⋆ = R0^d a(R0) σ / (d M_c (μ^{-2/d} - 1))."""
    return b.R0 ** b.d / b.collapse_rate


def blow_up_time_bound(b: Barrier) -> float:
    """μ^{2/d-1} T⋆, the blow-up time bound stated in original time."""
    return b.mu ** (2.0 / b.d - 1.0) * collapse_time(b)


def radius_at(b: Barrier, t: float) -> float:
    """R(t) = (R0^d - rate t)^{1/d} for 0 <= t <= T⋆."""
    t_star = collapse_time(b)
    if t < 0 or t > t_star * (1.0 + 1e-12):
        raise OutOfDomainError("t", t, f"must lie in [0, T*={t_star:.10g}]")
    remaining = max(b.R0 ** b.d - b.collapse_rate * t, 0.0)
    return remaining ** (1.0 / b.d)


def barrier_mass(b: Barrier, t: float, r: np.ndarray | float) -> np.ndarray:
    """
    M̄(t, r) = a(R0)^{d/2} M_V(r / R(t)).

    The lower bound M̄ >= M_c (r/R)^d on [0, R(t)] is checked on every
    evaluation.
    """
    radius = radius_at(b, t)
    if radius <= 0.0:
        raise OutOfDomainError("t", t, "barrier has collapsed to a point")
    r = np.asarray(r, dtype=float)
    scaled = r / radius
    values = b.amplitude * b.profile.mass_at(scaled)

    inside = scaled <= 1.0
    floor = b.M_c * np.minimum(scaled, 1.0) ** b.d
    deficit = np.where(inside, floor - values, -np.inf)
    if np.any(deficit > LOWER_BOUND_SLACK * b.M_c):
        worst = float(np.max(deficit))
        raise InvalidStateError("barrier", f"mass below M_c (r/R)^d by {worst:.3g} at t={t:.6g}")
    return values


def _solve_radius_ode(b: Barrier, t_eval: np.ndarray | None = None):
    """
    Integrate the radius law in the variable s = R^d, where it reads
    ṡ = -d M_c (μ^{-2/d} - 1) / (a(R0) σ) and stays regular up to s = 0.
    """
    rate = b.collapse_rate
    horizon = 2.0 * collapse_time(b)
    if t_eval is not None and t_eval.size:
        horizon = max(horizon, float(t_eval[-1]))

    def rhs(_t, y):
        return [-rate]

    def touchdown(_t, y):
        return y[0]

    touchdown.terminal = True
    touchdown.direction = -1

    solution = solve_ivp(
        rhs,
        (0.0, horizon),
        [b.R0 ** b.d],
        t_eval=t_eval,
        events=touchdown,
        rtol=1e-12,
        atol=1e-14 * b.R0 ** b.d,
    )
    if solution.status == -1:
        raise InvalidStateError("radius ODE", solution.message)
    return solution


def integrate_radius_ode(b: Barrier, times: np.ndarray) -> np.ndarray:
    """
    R(t) from the radius ODE Ṙ = -M_c (μ^{-2/d} - 1) / (a(R0) σ R^{d-1}).

    Integrated numerically for R^d and stopped by a terminal event at
    R = 0; samples at or past the event are NaN.
    """
    times = np.asarray(times, dtype=float)
    if np.any(times < 0):
        raise OutOfDomainError("times", float(times.min()), "must be >= 0")
    unique, inverse = np.unique(times, return_inverse=True)
    solution = _solve_radius_ode(b, t_eval=unique)
    radii = np.full(unique.shape, np.nan)
    volumes = solution.y[0]
    radii[: volumes.size] = np.maximum(volumes, 0.0) ** (1.0 / b.d)
    if solution.t_events[0].size:
        radii[unique >= solution.t_events[0][0]] = np.nan
    logger.debug(f"radius ODE sampled at {volumes.size} of {unique.size} times")
    return radii[inverse].reshape(times.shape)


def ode_collapse_time(b: Barrier) -> float:
    """Zero crossing of the radius ODE, located by its terminal event."""
    solution = _solve_radius_ode(b)
    if not solution.t_events[0].size:
        raise InvalidStateError("radius ODE", "no zero crossing found")
    return float(solution.t_events[0][0])
