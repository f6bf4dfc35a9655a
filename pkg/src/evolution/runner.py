"""Time loop: diagnostics cadence, ordering monitors and termination policy."""
import logging
from dataclasses import dataclass, field
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from common.models import DiagnosticsRow, ModelParams, Outcome, OutcomeKind
from diagnostics.energy import scheme_free_energy
from domain.exceptions import InvalidStateError, NumericalFailureError
from domain.interfaces import MassMonitor
from radial.coefficients import Coefficients
from radial.grid import RadialGrid
from radial.mass import MassFunction
from .scheme import FaceFluxes, RadialScheme, SimulationState

logger = logging.getLogger(__name__)


class RunControls(BaseModel):
    """Stepping, detection and reporting controls of one run."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    t_end: float = Field(..., ge=0)
    cfl: float = Field(0.4, gt=0, le=1)
    dt_min: float = Field(1e-12, gt=0)
    dt_min_fraction: float | None = Field(
        None, gt=0, lt=1, description="Raise dt_min to this fraction of the initial stable step"
    )
    u_blowup_factor: float = Field(1e6, gt=1, description="Blow-up threshold over the initial peak")
    cadence: int = Field(50, ge=1)
    max_steps: int = Field(5_000_000, ge=1)
    drift_enabled: bool = True
    drift_route: Literal["closed", "field"] = "closed"
    r_local: float = Field(0.05, gt=0)
    stop_on_violation: bool = True
    monitors: tuple[MassMonitor, ...] = ()


@dataclass
class Trajectory:
    """Diagnostics rows in the frame of the evolved density."""

    rows: list[DiagnosticsRow] = field(default_factory=list)
    final_mass: MassFunction | None = None

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def times(self) -> np.ndarray:
        return np.array([row.t for row in self.rows])

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(row, name) for row in self.rows], dtype=float)

    @property
    def last(self) -> DiagnosticsRow:
        return self.rows[-1]

    def to_original_time(self, mu: float, d: int) -> "Trajectory":
        """Rescaled time τ to original time μ^{1-2/d} τ."""
        factor = mu ** (1.0 - 2.0 / d)
        return Trajectory(
            [row.model_copy(update={"t": row.t * factor}) for row in self.rows],
            final_mass=self.final_mass,
        )


class _Recorder:
    def __init__(self, params: ModelParams, coeffs: Coefficients, grid: RadialGrid, controls: RunControls):
        self.params = params
        self.coeffs = coeffs
        self.grid = grid
        self.controls = controls
        self.trajectory = Trajectory()
        self.last_step: int | None = None

    def record(self, state: SimulationState, peak: float, gap: float | None) -> DiagnosticsRow:
        energy = scheme_free_energy(state.M, self.params, self.coeffs, self.grid)
        row = DiagnosticsRow(
            t=state.t,
            peak_density=peak,
            entropy=energy.entropy,
            potential_energy=energy.potential_energy,
            total_mass=state.M.total,
            comparison_gap=gap,
            local_mass_at_origin=state.M.at(self.grid, self.controls.r_local),
        )
        self.trajectory.rows.append(row)
        self.last_step = state.step_count
        logger.debug(
            f"t={row.t:.8g} step={state.step_count} peak={row.peak_density:.6g} "
            f"F={row.free_energy:.10g} gap={gap}"
        )
        return row


def _check_monitors(
    monitors: tuple[MassMonitor, ...],
    state: SimulationState,
    grid: RadialGrid,
) -> tuple[float | None, dict | None]:
    """First active monitor's gap, and violation details if any monitor is below tolerance."""
    reported: float | None = None
    violation: dict | None = None
    for monitor in monitors:
        if not monitor.active(state.t):
            continue
        gap, radius = monitor.locate(state.M, grid, state.t)
        if reported is None:
            reported = gap
        tolerance = monitor.tolerance(grid)
        if gap < -tolerance and violation is None:
            logger.warning(
                f"{monitor.name}: ordering gap {gap:.6g} below -{tolerance:.3g} "
                f"at r={radius} (t={state.t:.8g})"
            )
            violation = {
                "monitor": monitor.name,
                "gap": gap,
                "tolerance": tolerance,
                "violating_radius": radius,
            }
    return reported, violation


def run(
    initial: MassFunction,
    p: ModelParams,
    coeffs: Coefficients,
    g: RadialGrid,
    controls: RunControls,
) -> tuple[Trajectory, Outcome]:
    """
    Advance ``initial`` until ``t_end``, blow-up detection or failure.

    Blow-up is declared when the peak density reaches the threshold while
    the stable step is at or below dt_min; a step below dt_min without the
    threshold is a numerical failure. Solver failures are returned as
    outcomes, never raised.

    Raises:
        InvalidStateError: If ``initial`` is not a valid mass function on ``g``
    """
    initial.validate()
    if initial.values.size != g.n_cells + 1:
        raise InvalidStateError("initial data", f"{initial.values.size} faces for a grid of {g.n_cells + 1}")
    if abs(initial.total - p.total_mass) > 1e-9 * max(1.0, p.total_mass):
        logger.warning(f"initial mass {initial.total:.10g} differs from model total {p.total_mass:.10g}")

    scheme = RadialScheme(
        g, p, coeffs,
        cfl=controls.cfl,
        drift_route=controls.drift_route,
        drift_enabled=controls.drift_enabled,
    )
    recorder = _Recorder(p, coeffs, g, controls)
    state = SimulationState(t=0.0, M=initial)
    peak = 0.0

    def finish(kind: OutcomeKind, **detail) -> tuple[Trajectory, Outcome]:
        if recorder.last_step != state.step_count:
            final_gap, _ = _check_monitors(controls.monitors, state, g)
            recorder.record(state, peak, final_gap)
        recorder.trajectory.final_mass = state.M
        outcome = Outcome(kind=kind, t_final=state.t, steps=state.step_count, detail=detail)
        logger.info(f"Run finished: {kind.value} at t={state.t:.10g} after {state.step_count} steps")
        return recorder.trajectory, outcome

    try:
        fluxes: FaceFluxes = scheme.fluxes(state.M)
    except NumericalFailureError as e:
        return finish(OutcomeKind.NUMERICAL_FAILURE, reason=str(e))

    peak = fluxes.peak_density
    threshold = controls.u_blowup_factor * peak if peak > 0 else np.inf
    dt_floor = controls.dt_min
    if controls.dt_min_fraction is not None and np.isfinite(fluxes.dt_stable):
        dt_floor = max(dt_floor, controls.dt_min_fraction * fluxes.dt_stable)

    gap, violation = _check_monitors(controls.monitors, state, g)
    recorder.record(state, peak, gap)
    if violation is not None and controls.stop_on_violation:
        return finish(OutcomeKind.COMPARISON_VIOLATED, peak_density=peak, **violation)

    while state.t < controls.t_end:
        if state.step_count >= controls.max_steps:
            return finish(OutcomeKind.NUMERICAL_FAILURE, reason="step budget exhausted", peak_density=peak)
        if fluxes.dt_stable <= dt_floor:
            if peak >= threshold:
                return finish(
                    OutcomeKind.BLOW_UP,
                    peak_density=peak,
                    threshold=threshold,
                    dt_stable=fluxes.dt_stable,
                    note="t_final is the grid-resolution proxy for the blow-up time",
                )
            return finish(
                OutcomeKind.NUMERICAL_FAILURE,
                reason="time step underflow",
                peak_density=peak,
                dt_stable=fluxes.dt_stable,
            )

        dt = min(fluxes.dt_stable, controls.t_end - state.t)
        try:
            state = scheme.apply(state, fluxes, dt)
            fluxes = scheme.fluxes(state.M)
        except NumericalFailureError as e:
            return finish(OutcomeKind.NUMERICAL_FAILURE, reason=str(e), peak_density=peak)
        peak = fluxes.peak_density

        if state.step_count % controls.cadence == 0 or state.t >= controls.t_end:
            gap, violation = _check_monitors(controls.monitors, state, g)
            recorder.record(state, peak, gap)
            if violation is not None and controls.stop_on_violation:
                return finish(OutcomeKind.COMPARISON_VIOLATED, peak_density=peak, **violation)

    return finish(OutcomeKind.COMPLETED, peak_density=peak)
