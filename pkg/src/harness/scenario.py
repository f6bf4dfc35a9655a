"""Scenario orchestration: grid, coefficients, initial data, monitors, run, CSV."""
import logging
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from barrier.collapse import Barrier, blow_up_time_bound, collapse_time
from barrier.monitors import ComparisonMonitor, FixedSupersolution, SupersolutionMonitor
from barrier.ordering import OrderingReport, check_initial_ordering
from common.models import ModelParams, Outcome
from diagnostics.energy import EnergyParts, free_energy
from domain.exceptions import OrderingRefusedError
from domain.interfaces import MassMonitor
from evolution.barenblatt import BarenblattFixture, barenblatt_mass
from evolution.runner import RunControls, Trajectory, run
from radial.coefficients import Coefficients
from radial.grid import RadialGrid
from radial.mass import MassFunction
from stationary.constants import SharpConstants, critical_mass, reference_profile
from .config import ScenarioConfig
from .initial import build_barenblatt, build_initial
from .output import resolve_output_path, write_trajectory_csv

logger = logging.getLogger(__name__)


@dataclass
class PreparedScenario:
    """Everything a run needs, before any time step is taken."""

    config: ScenarioConfig
    grid: RadialGrid
    coeffs: Coefficients
    constants: SharpConstants
    critical_mass: float
    initial: MassFunction
    params: ModelParams
    controls: RunControls
    barrier: Barrier | None = None
    ordering: OrderingReport | None = None
    supersolution: FixedSupersolution | None = None
    barenblatt: BarenblattFixture | None = None

    @property
    def mu(self) -> float:
        return self.params.mu

    @property
    def evolved(self) -> MassFunction:
        """Initial data of the simulated (μ-rescaled) density."""
        return self.initial.scaled(self.mu)

    def initial_energy(self) -> EnergyParts:
        unscaled = ModelParams(d=self.grid.d, total_mass=self.initial.total, mu=1.0)
        return free_energy(self.initial, unscaled, self.coeffs, self.grid)


@dataclass
class ScenarioResult:
    outcome: Outcome
    trajectory: Trajectory
    scenario: PreparedScenario
    initial_energy: EnergyParts
    csv_path: Path | None = None
    blow_up_time_bound: float | None = None
    barenblatt_error: float | None = None
    notes: list[str] = field(default_factory=list)


def _total_mass(cfg: ScenarioConfig, m_c: float) -> float:
    if cfg.model.total_mass is not None:
        return cfg.model.total_mass
    return cfg.model.mass_ratio * m_c


def prepare_scenario(cfg: ScenarioConfig, force: bool = False) -> PreparedScenario:
    """
    Build grid, coefficients, initial data, barrier and monitors.

    Raises:
        InvalidStateError: If coefficients or initial data are invalid on the grid
        OrderingRefusedError: If barrier ordering fails and ``force`` is not set
    """
    d = cfg.model.d
    grid = RadialGrid.graded(cfg.grid.r_max, cfg.grid.n_cells, d, cfg.grid.grading)
    coeffs = cfg.coefficients.to_coefficients()
    a_min = coeffs.validate_on(grid)
    profile, constants = reference_profile(d)
    m_c = critical_mass(a_min, constants)

    monitors: list[MassMonitor] = []
    barrier = ordering = supersolution = fixture = None
    mu = cfg.model.mu

    if cfg.initial.kind == "barenblatt":
        fixture, initial = build_barenblatt(cfg.initial, grid)
        total = initial.total
    else:
        total = _total_mass(cfg, m_c)
        if cfg.barrier.R0 is not None:
            barrier = Barrier.from_masses(
                profile,
                a_at_R0=float(coeffs.a_at(cfg.barrier.R0)),
                R0=cfg.barrier.R0,
                M_c=m_c,
                M0=cfg.barrier.M0 or total,
            )
            mu = barrier.mu
        initial = build_initial(cfg.initial, grid, total, barrier)

    if barrier is not None:
        ordering = check_initial_ordering(initial, barrier, grid)
        if not ordering.passed:
            if not force:
                raise OrderingRefusedError(ordering.worst_margin, ordering.violating_radius)
            logger.warning("Running despite failed barrier ordering (--force)")
        monitors.append(ComparisonMonitor(barrier, cfg.barrier.tolerance_factor))
        logger.info(
            f"Barrier R0={barrier.R0:.6g}, mu={barrier.mu:.6g}: T*={collapse_time(barrier):.8g}, "
            f"blow-up bound {blow_up_time_bound(barrier):.8g}"
        )

    if cfg.barrier.radius is not None:
        supersolution = FixedSupersolution(profile, cfg.barrier.radius, a_min)
        report = supersolution.check_ordering(initial.scaled(mu), grid)
        if report.passed:
            monitors.append(SupersolutionMonitor(supersolution, cfg.barrier.tolerance_factor))
        else:
            logger.warning(
                f"Initial data exceed the fixed supersolution (margin {report.worst_margin:.6g} "
                f"at r={report.violating_radius}); not monitoring it"
            )

    params = ModelParams(d=d, total_mass=mu * initial.total, mu=mu)
    controls = RunControls(
        t_end=cfg.time.t_end,
        cfl=cfg.time.cfl,
        dt_min=cfg.time.dt_min,
        dt_min_fraction=cfg.time.dt_min_fraction,
        u_blowup_factor=cfg.time.u_blowup,
        cadence=cfg.cadence,
        max_steps=cfg.time.max_steps,
        drift_enabled=fixture is None,
        drift_route=cfg.time.drift_route,
        r_local=cfg.output.r_local,
        monitors=tuple(monitors),
    )
    return PreparedScenario(
        config=cfg,
        grid=grid,
        coeffs=coeffs,
        constants=constants,
        critical_mass=m_c,
        initial=initial,
        params=params,
        controls=controls,
        barrier=barrier,
        ordering=ordering,
        supersolution=supersolution,
        barenblatt=fixture,
    )


def _in_original_time(outcome: Outcome, mu: float, d: int) -> Outcome:
    factor = mu ** (1.0 - 2.0 / d)
    detail = dict(outcome.detail)
    if factor != 1.0:
        detail["t_final_rescaled"] = outcome.t_final
    return outcome.model_copy(update={"t_final": outcome.t_final * factor, "detail": detail})


def run_scenario(cfg: ScenarioConfig, force: bool = False, write_csv: bool = True) -> ScenarioResult:
    """
    Run one scenario and write its trajectory CSV.

    Times in the returned trajectory and outcome are original times; the
    other columns stay in the frame of the simulated density.
    """
    scenario = prepare_scenario(cfg, force=force)
    logger.info(
        f"Scenario {cfg.model.preset!r}: d={cfg.model.d}, M0={scenario.initial.total:.10g} "
        f"({scenario.initial.total / scenario.critical_mass:.6g} M_c), mu={scenario.mu:.6g}"
    )
    energy = scenario.initial_energy()
    logger.info(f"Initial free energy {energy.free_energy:.10g}")

    trajectory, outcome = run(scenario.evolved, scenario.params, scenario.coeffs, scenario.grid, scenario.controls)
    trajectory = trajectory.to_original_time(scenario.mu, cfg.model.d)
    outcome = _in_original_time(outcome, scenario.mu, cfg.model.d)

    result = ScenarioResult(outcome=outcome, trajectory=trajectory, scenario=scenario, initial_energy=energy)
    if scenario.barrier is not None:
        result.blow_up_time_bound = blow_up_time_bound(scenario.barrier)
        result.notes.append("comparison_gap is measured in the rescaled frame")
    if scenario.barenblatt is not None and trajectory.final_mass is not None:
        t_final = cfg.initial.t0 + outcome.t_final
        exact = barenblatt_mass(t_final, scenario.barenblatt, scenario.grid)
        error = np.abs(trajectory.final_mass.values - exact.values).max() / exact.total
        result.barenblatt_error = float(error)
        logger.info(f"Barenblatt max relative mass error at t={t_final:.6g}: {error:.3e}")

    if write_csv:
        result.csv_path = write_trajectory_csv(trajectory, resolve_output_path(cfg.output.path))
    return result
