"""Explicit conservative finite-volume step for the mass-function PDE."""
import logging
from dataclasses import dataclass, replace
from typing import Literal

import numpy as np

from chemo.dependencies import create_chemo_solver
from common.models import ModelParams
from domain.exceptions import NumericalFailureError
from radial.coefficients import Coefficients
from radial.grid import RadialGrid
from radial.mass import MassFunction, cell_masses

logger = logging.getLogger(__name__)

DriftRoute = Literal["closed", "field"]


@dataclass(frozen=True)
class SimulationState:
    """Mass function at time ``t`` after ``step_count`` accepted steps."""

    t: float
    M: MassFunction
    dt_last: float = 0.0
    step_count: int = 0


@dataclass(frozen=True, eq=False)
class FaceFluxes:
    """Outward mass fluxes at the interior faces and the stable step for them."""

    flux: np.ndarray
    dt_stable: float
    density: np.ndarray

    @property
    def peak_density(self) -> float:
        return float(self.density.max()) if self.density.size else 0.0


class RadialScheme:
    """
    Flux form of ∂_t M on a fixed grid.

    With the drift switched on, every interior face carries the net velocity

        W_i = -(p_i - p_{i-1}) / h_i + v_i,    p = m/(m-1) u^{m-1}

    and the outward flux F_i = A_i (u⁻ max(W_i, 0) + u⁺ min(W_i, 0)), where
    u⁻ and u⁺ are minmod reconstructions of the density on either side of
    the face. W vanishes on discrete stationary states, and the scheme
    dissipates the energy of :func:`diagnostics.energy.scheme_free_energy`
    exactly between steps. For γ ≡ 0 the closed route uses
    v = -μ^{-2/d} M/(A a); the field route takes v = μ^{1-2/d} c' from the
    chemo-attractant solver. Pure diffusion uses centered differences of
    u^m instead. M(0) = 0 and M(r_max) = total are never updated.
    """

    def __init__(
        self,
        grid: RadialGrid,
        params: ModelParams,
        coeffs: Coefficients,
        cfl: float = 0.4,
        drift_route: DriftRoute = "closed",
        drift_enabled: bool = True,
    ):
        if grid.d != params.d:
            raise NumericalFailureError(f"grid dimension {grid.d} does not match model dimension {params.d}")
        if drift_route == "closed" and not coeffs.gamma_is_zero:
            logger.debug("gamma is not identically zero; using the field drift route")
            drift_route = "field"

        self.grid = grid
        self.params = params
        self.coeffs = coeffs
        self.cfl = cfl
        self.drift_route = drift_route
        self.drift_enabled = drift_enabled

        self._m = params.m
        self._pressure_scale = params.m / (params.m - 1.0)
        self._areas = grid.face_areas[1:-1]
        self._spacing = grid.center_spacing
        self._half_widths = 0.5 * grid.cell_widths
        self._local_width = np.minimum(grid.cell_widths[:-1], grid.cell_widths[1:])
        self._volumes = grid.shell_volumes
        self._a_faces = coeffs.a_at(grid.face_radii[1:-1])
        self._solver = (
            create_chemo_solver(coeffs, params.source_mass_scale, force_bvp=True)
            if drift_route == "field"
            else None
        )

    def velocity(self, mass: MassFunction) -> np.ndarray:
        """Outward drift velocity at the interior faces."""
        if not self.drift_enabled:
            return np.zeros(self.grid.n_cells - 1)
        if self._solver is None:
            closed_scale = self.params.mu ** (-2.0 / self.params.d)
            return -closed_scale * mass.values[1:-1] / (self._areas * self._a_faces)
        field = self._solver.solve(mass, self.grid)
        return self.params.drift_factor * field.dc_dr[1:-1]

    def net_velocity(self, mass: MassFunction, u: np.ndarray | None = None) -> np.ndarray:
        """W at the interior faces; zero on discrete stationary states."""
        if u is None:
            u = cell_masses(mass) / self._volumes
        pressure = self._pressure_scale * u ** (self._m - 1.0)
        return -np.diff(pressure) / self._spacing + self.velocity(mass)

    def _face_densities(self, u: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Minmod-limited density just inside and just outside every interior face."""
        slopes = np.diff(u) / self._spacing
        limited = np.zeros(u.size)
        inner, outer = slopes[:-1], slopes[1:]
        limited[1:-1] = np.where(
            inner * outer > 0.0,
            np.sign(inner) * np.minimum(np.abs(inner), np.abs(outer)),
            0.0,
        )
        edge = self._half_widths * limited
        below = np.maximum(u[:-1] + edge[:-1], 0.0)
        above = np.maximum(u[1:] - edge[1:], 0.0)
        return below, above

    def fluxes(self, mass: MassFunction) -> FaceFluxes:
        u = cell_masses(mass) / self._volumes
        if not np.all(np.isfinite(u)):
            raise NumericalFailureError("non-finite density")
        m = self._m

        if self.drift_enabled:
            net = self.net_velocity(mass, u)
            below, above = self._face_densities(u)
            flux = self._areas * (below * np.maximum(net, 0.0) + above * np.minimum(net, 0.0))
            speed = np.abs(net)
        else:
            um = u ** m
            flux = -self._areas * (um[1:] - um[:-1]) / self._spacing
            speed = np.zeros(flux.size)

        # stability bounds per face, from the larger neighbouring density
        u_face = np.maximum(u[1:], u[:-1])
        diffusivity = 2.0 * m * u_face ** (m - 1.0) * self.grid.d
        with np.errstate(divide="ignore"):
            dt_diff = np.where(diffusivity > 0, self._local_width ** 2 / diffusivity, np.inf)
            dt_adv = np.where(speed > 0, self._local_width / speed, np.inf)
        dt_stable = self.cfl * float(min(dt_diff.min(initial=np.inf), dt_adv.min(initial=np.inf)))

        return FaceFluxes(flux=flux, dt_stable=dt_stable, density=u)

    def apply(self, state: SimulationState, fluxes: FaceFluxes, dt: float) -> SimulationState:
        """Advance by ``dt`` with donor-cell limiting of the outgoing fluxes."""
        values = state.M.values
        cell_mass = cell_masses(state.M)
        flux = fluxes.flux

        full = np.zeros(values.size)
        full[1:-1] = flux
        outgoing = dt * (np.maximum(full[1:], 0.0) + np.maximum(-full[:-1], 0.0))
        with np.errstate(divide="ignore", invalid="ignore"):
            theta = np.where(outgoing > cell_mass, cell_mass / outgoing, 1.0)
        donor_limit = np.where(flux > 0.0, theta[:-1], theta[1:])
        limited = flux * donor_limit
        if np.any(donor_limit < 1.0):
            logger.debug(f"flux limiter active at {int(np.sum(donor_limit < 1.0))} faces (t={state.t:.6g})")

        total = values[-1]
        updated = values.copy()
        updated[1:-1] = values[1:-1] - dt * limited
        updated[0] = 0.0
        updated[-1] = total
        if not np.all(np.isfinite(updated)):
            raise NumericalFailureError(f"non-finite mass function after step at t={state.t:.6g}")
        # round-off only; the limiter already guarantees monotonicity
        updated = np.minimum(np.maximum.accumulate(updated), total)

        return SimulationState(
            t=state.t + dt,
            M=MassFunction(updated),
            dt_last=dt,
            step_count=state.step_count + 1,
        )

    def advance(self, state: SimulationState, dt_max: float = np.inf) -> SimulationState:
        fluxes = self.fluxes(state.M)
        dt = min(fluxes.dt_stable, dt_max)
        if not np.isfinite(dt):
            # nothing moves and no horizon was given
            return replace(state, dt_last=0.0)
        return self.apply(state, fluxes, dt)


def step(
    s: SimulationState,
    p: ModelParams,
    coeffs: Coefficients,
    g: RadialGrid,
    *,
    cfl: float = 0.4,
    dt_max: float = np.inf,
    drift_route: DriftRoute = "closed",
    drift_enabled: bool = True,
) -> SimulationState:
    """
    One explicit step of the stability-limited size (capped by ``dt_max``).

    Raises:
        NumericalFailureError: On non-finite densities or masses
    """
    scheme = RadialScheme(g, p, coeffs, cfl=cfl, drift_route=drift_route, drift_enabled=drift_enabled)
    return scheme.advance(s, dt_max)
