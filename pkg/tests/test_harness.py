import csv

import pytest
from pydantic import ValidationError

from common.models import OutcomeKind
from diagnostics import concentration_monitor, dissipation_violations
from domain.exceptions import BracketSetupError, ConfigError, OrderingRefusedError
from harness import (
    CSV_COLUMNS,
    PRESET_NAMES,
    bracket_critical_mass,
    load_scenario,
    parse_coefficient,
    parse_config,
    prepare_scenario,
    preset_text,
    run_scenario,
)
from harness.bracket import family_template
from harness.config import tokenize
from harness.output import resolve_output_path
from radial.coefficients import ConstantSpec, PolynomialSpec, TableSpec
from stationary.constants import reference_profile


class TestParseCoefficient:
    def test_constant(self):
        assert parse_coefficient("constant 2.5") == ConstantSpec(value=2.5)

    def test_table(self):
        spec = parse_coefficient("table 0:1 0.5:1.5 2:2")
        assert isinstance(spec, TableSpec)
        assert spec.points == ((0.0, 1.0), (0.5, 1.5), (2.0, 2.0))

    def test_polynomial_with_cap(self):
        spec = parse_coefficient("poly 1 0 1 cap 2")
        assert isinstance(spec, PolynomialSpec)
        assert spec.coeffs == (1.0, 0.0, 1.0)
        assert spec.cap == 2.0

    @pytest.mark.parametrize(
        "text",
        ["", "constant", "constant 1 2", "table", "table 0", "table 1:1 0:2", "poly", "poly cap 2", "poly 1 cap 2 3", "spline 1"],
    )
    def test_malformed(self, text):
        with pytest.raises(ValueError):
            parse_coefficient(text)


class TestParseConfig:
    def test_minimal(self):
        cfg = parse_config("model.mass_ratio = 0.5\n")
        assert cfg.model.d == 3
        assert cfg.model.mass_ratio == 0.5
        assert cfg.model.preset == "custom"
        assert cfg.coefficients.a == ConstantSpec(value=1.0)
        assert cfg.cadence == cfg.time.cadence

    def test_comments_and_later_lines_win(self):
        text = "# header\nmodel.mass_ratio = 0.5  # below critical\n\nmodel.mass_ratio = 0.7\n"
        assert parse_config(text).model.mass_ratio == 0.7

    def test_tokenize_reports_every_line(self):
        text = "model.d = 3\nmodel.mass_ratio = 0.5\nbogus.x = 1\ngrid.nope = 2\nno equals sign\ngrid.r_max =\n"
        _, issues = tokenize(text)
        assert [issue.line for issue in issues] == [3, 4, 5, 6]
        assert "unknown section" in issues[0].message
        assert issues[1].message == "unknown key"

    def test_validation_errors_carry_line_numbers(self):
        text = "model.mass_ratio = 0.5\ngrid.n_cells = abc\ntime.cfl = 2\n"
        with pytest.raises(ConfigError) as info:
            parse_config(text)
        located = {issue.key: issue.line for issue in info.value.issues}
        assert located == {"grid.n_cells": 2, "time.cfl": 3}
        assert "line 2: grid.n_cells" in str(info.value)

    def test_missing_model_section(self):
        with pytest.raises(ConfigError, match="missing section"):
            parse_config("grid.r_max = 4\n")

    @pytest.mark.parametrize(
        "text",
        [
            "model.d = 3\n",
            "model.total_mass = 10\nmodel.mass_ratio = 0.5\n",
            "model.mass_ratio = 0.5\ninitial.kind = barenblatt\n",
        ],
    )
    def test_mass_given_exactly_once(self, text):
        with pytest.raises(ConfigError):
            parse_config(text)

    def test_barenblatt_needs_no_mass(self):
        cfg = parse_config("model.d = 3\ninitial.kind = barenblatt\n")
        assert cfg.model.total_mass is None

    @pytest.mark.parametrize(
        "text",
        [
            "model.mass_ratio = 0.5\nmodel.d = 2\n",
            "model.mass_ratio = 0.5\nmodel.mu = 1.5\n",
            "model.mass_ratio = 0.5\ninitial.kind = annulus\ninitial.inner = 2\ninitial.outer = 1\n",
            "model.mass_ratio = 0.5\ninitial.kind = table\n",
            "model.mass_ratio = 0.5\ncoefficients.a = spline 1\n",
        ],
    )
    def test_range_and_shape_errors(self, text):
        with pytest.raises(ConfigError):
            parse_config(text)


class TestPresets:
    @pytest.mark.parametrize("name", PRESET_NAMES)
    def test_every_preset_loads(self, name):
        cfg = load_scenario(preset=name)
        assert cfg.model.preset == name
        assert cfg.output.path == f"{name}.csv"

    def test_text_overrides_preset(self):
        cfg = load_scenario("time.t_end = 0.5\n", preset="subcritical")
        assert cfg.time.t_end == 0.5
        assert cfg.model.mass_ratio == 0.9

    def test_unknown_preset(self):
        with pytest.raises(ConfigError, match="unknown preset"):
            preset_text("nope")

    def test_nothing_given(self):
        with pytest.raises(ConfigError, match="no configuration"):
            load_scenario()

    def test_with_overrides(self):
        cfg = load_scenario(preset="critical_supersolution")
        changed = cfg.with_overrides(**{"model.mass_ratio": 0.5, "grid.n_cells": 64})
        assert changed.model.mass_ratio == 0.5
        assert changed.grid.n_cells == 64
        assert changed.coefficients.a == cfg.coefficients.a
        assert cfg.model.mass_ratio == 1.0

    def test_with_overrides_revalidates(self):
        cfg = load_scenario(preset="subcritical")
        with pytest.raises(ValidationError):
            cfg.with_overrides(**{"grid.n_cells": 2})
        with pytest.raises(ValidationError):
            cfg.with_overrides(**{"model.total_mass": 10.0})


class TestPrepare:
    def test_subcritical_scenario(self):
        scenario = prepare_scenario(load_scenario(preset="subcritical"))
        assert scenario.mu == 1.0
        assert scenario.barrier is None
        assert scenario.initial.total == pytest.approx(0.9 * scenario.critical_mass, rel=1e-12)
        assert scenario.controls.drift_enabled

    def test_barrier_ordering_holds_for_preset(self):
        scenario = prepare_scenario(load_scenario(preset="supercritical_blowup"))
        assert scenario.ordering.passed
        assert scenario.mu == pytest.approx(1.0 / 1.5)
        assert scenario.params.total_mass == pytest.approx(scenario.critical_mass, rel=1e-9)
        assert [monitor.name for monitor in scenario.controls.monitors] == ["barrier"]

    def test_spread_data_refused_unless_forced(self):
        cfg = load_scenario(preset="supercritical_blowup").with_overrides(
            **{"initial.kind": "gaussian_bump", "initial.width": 1.0}
        )
        with pytest.raises(OrderingRefusedError, match="--force"):
            prepare_scenario(cfg)
        scenario = prepare_scenario(cfg, force=True)
        assert not scenario.ordering.passed

    def test_forced_spread_data_violate_the_barrier(self):
        cfg = load_scenario(preset="supercritical_blowup").with_overrides(
            **{"initial.kind": "gaussian_bump", "initial.width": 1.0}
        )
        result = run_scenario(cfg, force=True, write_csv=False)
        outcome = result.outcome
        assert outcome.kind is OutcomeKind.COMPARISON_VIOLATED
        assert outcome.exit_code == 3
        assert outcome.steps == 0
        assert outcome.detail["monitor"] == "barrier"
        assert outcome.detail["gap"] < -outcome.detail["tolerance"]
        assert outcome.detail["tolerance"] == pytest.approx(10 * result.scenario.critical_mass / 150)

    def test_supersolution_monitor(self):
        scenario = prepare_scenario(load_scenario(preset="critical_supersolution"))
        assert scenario.supersolution is not None
        assert scenario.critical_mass > 0

    def test_barenblatt_scenario_disables_drift(self):
        scenario = prepare_scenario(load_scenario(preset="barenblatt_validation"))
        assert scenario.barenblatt is not None
        assert not scenario.controls.drift_enabled


class TestOutput:
    def test_output_dir_replaces_directory(self, tmp_path):
        assert resolve_output_path("somewhere/else/run.csv") == tmp_path / "run.csv"

    def test_short_run_writes_csv(self, tmp_path):
        cfg = load_scenario("time.t_end = 0.002\ntime.cadence = 10\n", preset="subcritical")
        result = run_scenario(cfg)
        assert result.outcome.kind is OutcomeKind.COMPLETED
        assert result.outcome.t_final == pytest.approx(0.002)
        assert result.csv_path == tmp_path / "subcritical.csv"

        with result.csv_path.open(encoding="utf-8") as f:
            rows = list(csv.reader(f))
        assert tuple(rows[0]) == CSV_COLUMNS
        assert len(rows) == len(result.trajectory) + 1
        first = dict(zip(CSV_COLUMNS, rows[1]))
        assert float(first["t"]) == 0.0
        assert first["comparison_gap"] == ""
        assert float(first["total_mass"]) == pytest.approx(result.scenario.initial.total, rel=1e-15)

    def test_run_without_csv(self, tmp_path):
        cfg = load_scenario("time.t_end = 0.0\n", preset="subcritical")
        result = run_scenario(cfg, write_csv=False)
        assert result.csv_path is None
        assert not (tmp_path / "subcritical.csv").exists()


BRACKET_TEMPLATE = """
model.d = 3
model.mass_ratio = 1.0
coefficients.a = constant 1
grid.r_max = 2
grid.n_cells = 80
initial.kind = extremal
initial.width = 0.5
time.u_blowup = 4
time.dt_min_fraction = 0.6
time.cadence = 5000
time.max_steps = 50000000
"""


class TestBracketSetup:
    def test_rejects_inverted_interval(self):
        cfg = load_scenario(preset="subcritical")
        with pytest.raises(BracketSetupError):
            bracket_critical_mass(cfg, 2.0, 1.0, iters=1, horizon=0.01)

    def test_upper_end_must_be_supercritical(self, profile_d3):
        _, constants = profile_d3
        cfg = parse_config(BRACKET_TEMPLATE)
        with pytest.raises(BracketSetupError, match="not above the critical mass"):
            bracket_critical_mass(cfg, 0.5 * constants.M_c_star, 0.9 * constants.M_c_star, iters=1)

    def test_spread_family_is_refused(self, profile_d3):
        _, constants = profile_d3
        cfg = parse_config(BRACKET_TEMPLATE).with_overrides(
            **{"initial.kind": "gaussian_bump", "initial.width": 3.0}
        )
        with pytest.raises(OrderingRefusedError):
            bracket_critical_mass(cfg, 0.5 * constants.M_c_star, 2.0 * constants.M_c_star, iters=1)

    def test_fixed_radius_checked_at_upper_end(self, profile_d3):
        _, constants = profile_d3
        cfg = parse_config(BRACKET_TEMPLATE + "barrier.R0 = 0.25\n")
        with pytest.raises(OrderingRefusedError):
            bracket_critical_mass(cfg, 0.5 * constants.M_c_star, 2.0 * constants.M_c_star, iters=1)

    def test_barrier_scaled_family_becomes_extremal(self):
        family = family_template(load_scenario(preset="supercritical_blowup"))
        assert family.initial.kind == "extremal"
        assert family.initial.width == pytest.approx(0.5 * 0.75)
        assert family.barrier.R0 is None
        assert family.model.mu == 1.0


@pytest.fixture(scope="module")
def supercritical_run():
    return run_scenario(load_scenario(preset="supercritical_blowup"), write_csv=False)


@pytest.fixture(scope="module")
def unit_bracket():
    constants = reference_profile(3)[1]
    cfg = parse_config(BRACKET_TEMPLATE)
    return bracket_critical_mass(cfg, 0.5 * constants.M_c_star, 2.0 * constants.M_c_star, iters=8)


def _energy_rows_are_nonincreasing(result) -> bool:
    rows = result.trajectory.rows
    if result.outcome.kind is OutcomeKind.BLOW_UP:
        rows = rows[:-1]
    return dissipation_violations(rows, steps_per_row=result.scenario.config.cadence) == []


@pytest.mark.slow
class TestPresetRuns:
    def test_supercritical_blowup_before_bound(self, supercritical_run):
        result = supercritical_run
        assert result.outcome.kind is OutcomeKind.BLOW_UP
        assert result.outcome.exit_code == 2
        assert result.outcome.t_final <= result.blow_up_time_bound

    def test_supercritical_stays_ordered_against_barrier(self, supercritical_run):
        result = supercritical_run
        (monitor,) = result.scenario.controls.monitors
        tolerance = monitor.tolerance(result.scenario.grid)
        gaps = [row.comparison_gap for row in result.trajectory.rows if row.comparison_gap is not None]
        assert len(gaps) > 3
        assert min(gaps) >= -tolerance

    def test_blowup_concentrates_at_origin(self, supercritical_run):
        result = supercritical_run
        scenario = result.scenario
        original = result.trajectory.final_mass.scaled(1.0 / scenario.mu)
        report = concentration_monitor(
            original, scenario.coeffs, scenario.constants, scenario.config.output.r_local, scenario.grid
        )
        assert report.threshold == pytest.approx(scenario.constants.M_c_star)
        assert report.local_mass >= 0.9 * report.threshold
        assert report.flagged

    def test_positive_energy_blowup(self):
        result = run_scenario(load_scenario(preset="positive_energy_blowup"), write_csv=False)
        assert result.initial_energy.free_energy > 0
        assert result.scenario.initial.total > result.scenario.critical_mass
        assert result.outcome.kind is OutcomeKind.BLOW_UP

    @pytest.mark.parametrize("name", ["critical_radial", "critical_supersolution"])
    def test_critical_mass_stays_bounded(self, name):
        cfg = load_scenario(preset=name)
        scenario = prepare_scenario(cfg)
        characteristic = scenario.grid.sigma * cfg.barrier.radius ** 3 / (3 * scenario.critical_mass)
        assert cfg.time.t_end >= 50 * characteristic
        assert "supersolution" in [monitor.name for monitor in scenario.controls.monitors]

        result = run_scenario(cfg, write_csv=False)
        assert result.outcome.kind is OutcomeKind.COMPLETED
        peaks = result.trajectory.column("peak_density")
        assert peaks.max() < 10 * peaks[0]
        assert _energy_rows_are_nonincreasing(result)

    def test_free_energy_dissipates_on_presets(self, supercritical_run):
        subcritical = run_scenario(load_scenario(preset="subcritical"), write_csv=False)
        assert subcritical.outcome.kind is OutcomeKind.COMPLETED
        assert _energy_rows_are_nonincreasing(subcritical)
        assert _energy_rows_are_nonincreasing(supercritical_run)

    def test_barenblatt_validation(self):
        result = run_scenario(load_scenario(preset="barenblatt_validation"), write_csv=False)
        assert result.outcome.kind is OutcomeKind.COMPLETED
        assert result.barenblatt_error < 1e-2

    def test_barenblatt_fine_grid_converges(self):
        cfg = load_scenario(preset="barenblatt_validation")
        errors = [
            run_scenario(cfg.with_overrides(**{"grid.n_cells": n}), write_csv=False).barenblatt_error
            for n in (1024, 2048)
        ]
        assert errors[1] <= 1e-3
        assert errors[0] / errors[1] >= 2.0 * 0.7


@pytest.mark.slow
class TestCriticalMassBracket:
    def test_brackets_sharp_critical_mass(self, unit_bracket, profile_d3):
        _, constants = profile_d3
        m_c = constants.M_c_star
        result = unit_bracket
        assert result.lo <= m_c <= result.hi
        assert result.width <= 0.015 * m_c
        assert len(result.trials) == 10
        assert result.trials[0].classification == "bounded"
        assert result.trials[1].classification == "blow-up"
        assert result.barrier_radius == pytest.approx(0.5, abs=0.03)

    def test_doubled_diffusivity_scales_threshold(self, unit_bracket, profile_d3):
        _, constants = profile_d3
        scale = 2.0 ** 1.5
        cfg = parse_config(BRACKET_TEMPLATE + "coefficients.a = constant 2\n")
        m_c = scale * constants.M_c_star
        result = bracket_critical_mass(cfg, 0.5 * m_c, 2.0 * m_c, iters=4)
        assert result.lo / scale <= unit_bracket.midpoint <= result.hi / scale

    def test_threshold_is_set_by_the_diffusivity_at_the_origin(self, unit_bracket, profile_d3):
        _, constants = profile_d3
        m_c = constants.M_c_star
        cfg = parse_config(
            BRACKET_TEMPLATE
            + "coefficients.a = table 0:1 0.5:1 1:2\ngrid.r_max = 1\ninitial.width = 0.25\n"
        )
        result = bracket_critical_mass(cfg, 0.5 * m_c, 2.0 * m_c, iters=4)
        assert result.lo <= unit_bracket.midpoint <= result.hi
