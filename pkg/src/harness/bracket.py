"""Empirical critical-mass bisection over full runs."""
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Literal

from barrier.collapse import Barrier, collapse_time
from barrier.ordering import OrderingReport, check_initial_ordering
from common.config import get_settings
from common.models import OutcomeKind
from domain.exceptions import BracketSetupError, ClassificationError, OrderingRefusedError
from radial.grid import RadialGrid
from stationary.constants import critical_mass, reference_profile
from .config import ScenarioConfig
from .initial import build_initial
from .scenario import run_scenario

logger = logging.getLogger(__name__)

Classification = Literal["bounded", "blow-up"]

PEAK_GROWTH_LIMIT = 10.0
HORIZON_COLLAPSE_TIMES = 20.0
ORDERING_SEARCH_STEPS = 40


@dataclass(frozen=True)
class Trial:
    """One classified run of the family at ``mass``."""

    mass: float
    classification: Classification
    outcome: str
    t_final: float
    peak_growth: float


@dataclass
class BracketResult:
    lo: float
    hi: float
    horizon: float
    barrier_radius: float
    trials: list[Trial] = field(default_factory=list)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lo + self.hi)


@dataclass(frozen=True)
class _Family:
    """Grid, coefficients and critical mass shared by every run of the template."""

    cfg: ScenarioConfig
    grid: RadialGrid
    critical_mass: float

    @classmethod
    def from_template(cls, cfg: ScenarioConfig) -> "_Family":
        d = cfg.model.d
        grid = RadialGrid.graded(cfg.grid.r_max, cfg.grid.n_cells, d, cfg.grid.grading)
        coeffs = cfg.coefficients.to_coefficients()
        _, constants = reference_profile(d)
        return cls(family_template(cfg), grid, critical_mass(coeffs.validate_on(grid), constants))


def family_template(cfg: ScenarioConfig) -> ScenarioConfig:
    """
    The template with every barrier setting removed.

    ``barrier_scaled`` data become the extremal of radius R0 · scale, so the
    family keeps its shape when the mass changes.
    """
    overrides = {"barrier.R0": None, "barrier.M0": None, "barrier.radius": None, "model.mu": 1.0}
    if cfg.initial.kind == "barrier_scaled":
        if cfg.barrier.R0 is None:
            raise BracketSetupError("kind 'barrier_scaled' requires barrier.R0")
        overrides["initial.kind"] = "extremal"
        overrides["initial.width"] = cfg.barrier.R0 * cfg.initial.scale
    return cfg.with_overrides(**overrides)


def ordering_radius(family: _Family, mass: float, R0: float | None = None) -> float:
    """
    Smallest barrier radius the family member of ``mass`` is ordered under.

    With ``R0`` given only that radius is checked. Otherwise the faces are
    scanned outwards for the first one that passes and the radius is then
    bisected between it and the face before.

    Raises:
        OrderingRefusedError: If no radius up to r_max orders the data
    """
    cfg = family.cfg
    grid = family.grid
    coeffs = cfg.coefficients.to_coefficients()
    profile, _ = reference_profile(cfg.model.d)
    data = build_initial(cfg.initial, grid, mass)

    def report(radius: float) -> OrderingReport:
        barrier = Barrier.from_masses(profile, float(coeffs.a_at(radius)), radius, family.critical_mass, mass)
        return check_initial_ordering(data, barrier, grid)

    if R0 is not None:
        checked = report(R0)
        if not checked.passed:
            raise OrderingRefusedError(checked.worst_margin, checked.violating_radius)
        return R0

    faces = grid.face_radii
    worst = None
    for i in range(1, faces.size):
        checked = report(float(faces[i]))
        if checked.passed:
            break
        if worst is None or checked.worst_margin > worst.worst_margin:
            worst = checked
    else:
        raise OrderingRefusedError(worst.worst_margin, worst.violating_radius)

    lo, hi = float(faces[i - 1]), float(faces[i])
    for _ in range(ORDERING_SEARCH_STEPS):
        mid = 0.5 * (lo + hi)
        if report(mid).passed:
            hi = mid
        else:
            lo = mid
    return hi


def classification_horizon(family: _Family, lo: float, hi: float, radius: float) -> float:
    """20 T⋆ of the barrier of ``radius`` with μ = lo/hi."""
    coeffs = family.cfg.coefficients.to_coefficients()
    profile, _ = reference_profile(family.cfg.model.d)
    m_c = family.critical_mass
    barrier = Barrier.from_masses(profile, float(coeffs.a_at(radius)), radius, m_c, hi * m_c / lo)
    return HORIZON_COLLAPSE_TIMES * collapse_time(barrier)


def classify_mass(cfg: ScenarioConfig, mass: float, horizon: float) -> Trial:
    """
    Full unmonitored run of the family member of ``mass`` up to ``horizon``.

    BlowUp is "blow-up"; Completed with the peak below 10x its initial
    value is "bounded".

    Raises:
        ClassificationError: For any other ending
    """
    run_cfg = family_template(cfg).with_overrides(
        **{"model.total_mass": mass, "model.mass_ratio": None, "time.t_end": horizon}
    )
    result = run_scenario(run_cfg, write_csv=False)
    column = result.trajectory.column("peak_density")
    growth = float(column.max() / column[0]) if column[0] > 0 else 0.0
    outcome = result.outcome
    if outcome.kind is OutcomeKind.BLOW_UP:
        classification: Classification = "blow-up"
    elif outcome.kind is OutcomeKind.COMPLETED and growth < PEAK_GROWTH_LIMIT:
        classification = "bounded"
    else:
        raise ClassificationError(mass, outcome.kind.value, growth, outcome.detail.get("reason"))
    logger.info(f"mass {mass:.8g}: {classification} ({outcome.kind.value}, peak x{growth:.3g})")
    return Trial(mass, classification, outcome.kind.value, outcome.t_final, growth)


def _classify_many(cfg: ScenarioConfig, masses: list[float], horizon: float, max_workers: int) -> list[Trial]:
    if max_workers <= 1 or len(masses) == 1:
        trials = [classify_mass(cfg, mass, horizon) for mass in masses]
    else:
        with ProcessPoolExecutor(max_workers=min(max_workers, len(masses))) as pool:
            trials = list(pool.map(classify_mass, [cfg] * len(masses), masses, [horizon] * len(masses)))
    return sorted(trials, key=lambda trial: trial.mass)


def bracket_critical_mass(
    cfg_template: ScenarioConfig,
    lo: float,
    hi: float,
    iters: int,
    horizon: float | None = None,
    max_workers: int | None = None,
) -> BracketResult:
    """
    Bisect on total mass between a bounded ``lo`` run and a blow-up ``hi`` run.

    Every endpoint above the critical mass must be ordered under a
    collapsing barrier (the tightest one, unless barrier.R0 fixes it). Both
    endpoints are classified first (concurrently); each iteration then
    classifies the midpoint with the horizon 20 T⋆ at μ = lo/hi of the
    current bracket, unless ``horizon`` pins it.

    Raises:
        BracketSetupError: If lo is not bounded, hi does not blow up, or hi
            is not above the critical mass
        OrderingRefusedError: If an endpoint is not ordered under a barrier
        ClassificationError: If a run neither blows up nor stays bounded
    """
    if not 0 < lo < hi:
        raise BracketSetupError(f"need 0 < lo < hi, got lo={lo:.8g}, hi={hi:.8g}", lo, hi)
    family = _Family.from_template(cfg_template)
    m_c = family.critical_mass
    if hi <= m_c:
        raise BracketSetupError(f"hi={hi:.8g} is not above the critical mass {m_c:.8g}", lo, hi)

    radius = ordering_radius(family, hi, cfg_template.barrier.R0)
    if lo > m_c:
        ordering_radius(family, lo, radius)
    else:
        logger.info(f"lo={lo:.8g} is at or below the critical mass; no barrier to order against")

    def horizon_for(low: float, high: float) -> float:
        return horizon if horizon is not None else classification_horizon(family, low, high, radius)

    workers = max_workers or get_settings().max_workers
    first = horizon_for(lo, hi)
    logger.info(
        f"Bracketing critical mass in [{lo:.8g}, {hi:.8g}], {iters} iterations, "
        f"barrier radius {radius:.6g}, first horizon {first:.6g}"
    )

    result = BracketResult(lo=lo, hi=hi, horizon=first, barrier_radius=radius)
    low_trial, high_trial = _classify_many(cfg_template, [lo, hi], first, workers)
    result.trials.extend([low_trial, high_trial])
    if low_trial.classification != "bounded" or high_trial.classification != "blow-up":
        raise BracketSetupError.inconsistent(lo, low_trial.classification, hi, high_trial.classification)

    for i in range(iters):
        result.horizon = horizon_for(result.lo, result.hi)
        trial = classify_mass(cfg_template, result.midpoint, result.horizon)
        result.trials.append(trial)
        if trial.classification == "bounded":
            result.lo = trial.mass
        else:
            result.hi = trial.mass
        logger.info(
            f"iteration {i + 1}/{iters}: [{result.lo:.10g}, {result.hi:.10g}] (horizon {result.horizon:.6g})"
        )
    return result
