import math

import numpy as np
import pytest

from common.models import ModelParams, OutcomeKind
from diagnostics.energy import dissipation_violations, free_energy, scheme_free_energy
from domain.exceptions import InvalidStateError, NumericalFailureError, OutOfDomainError
from evolution import BarenblattFixture, RadialScheme, RunControls, SimulationState, barenblatt_mass, run, step
from radial.coefficients import Coefficients, ConstantSpec
from radial.grid import RadialGrid
from radial.mass import MassFunction
from radial.sampling import sample_mass
from stationary.shooting import profile_mass_on


def gaussian_mass(grid: RadialGrid, total: float, width: float) -> MassFunction:
    return sample_mass(lambda r: np.exp(-((r / width) ** 2)), grid, total_mass=total)


@pytest.fixture
def subcritical(profile_d3):
    _, constants = profile_d3
    grid = RadialGrid.uniform(4.0, 80, 3)
    mass = gaussian_mass(grid, 0.5 * constants.M_c_star, 0.5)
    return grid, mass, ModelParams(d=3, total_mass=mass.total)


class TestStep:
    def test_conserves_mass_and_monotonicity(self, subcritical):
        grid, mass, params = subcritical
        state = SimulationState(t=0.0, M=mass)
        for _ in range(20):
            state = step(state, params, Coefficients(), grid)
            state.M.validate()
            assert state.M.values[0] == 0.0
            assert state.M.total == mass.total
        assert state.step_count == 20
        assert state.t > 0
        assert state.dt_last > 0

    def test_dt_max_caps_the_step(self, subcritical):
        grid, mass, params = subcritical
        state = step(SimulationState(t=0.0, M=mass), params, Coefficients(), grid, dt_max=1e-9)
        assert state.dt_last == 1e-9
        assert state.t == 1e-9

    def test_pure_diffusion_spreads(self, subcritical):
        grid, mass, params = subcritical
        scheme = RadialScheme(grid, params, Coefficients(), drift_enabled=False)
        before = scheme.fluxes(mass).peak_density
        state = SimulationState(t=0.0, M=mass)
        for _ in range(50):
            state = scheme.advance(state)
        assert scheme.fluxes(state.M).peak_density < before

    def test_drift_points_inward(self, subcritical):
        grid, mass, params = subcritical
        velocity = RadialScheme(grid, params, Coefficients()).velocity(mass)
        assert np.all(velocity <= 0)

    def test_field_route_matches_closed_route(self, subcritical):
        grid, mass, _ = subcritical
        params = ModelParams(d=3, total_mass=0.5 * mass.total, mu=0.5)
        scaled = mass.scaled(0.5)
        closed = RadialScheme(grid, params, Coefficients(), drift_route="closed").velocity(scaled)
        field = RadialScheme(grid, params, Coefficients(), drift_route="field").velocity(scaled)
        np.testing.assert_allclose(field, closed, rtol=1e-9, atol=1e-12 * np.abs(closed).max())

    def test_extremal_is_nearly_stationary(self, profile_d3):
        profile, _ = profile_d3

        def deviation(n_cells: int) -> float:
            grid = RadialGrid.uniform(1.5, n_cells, 3)
            mass = profile_mass_on(profile, grid, radius=1.0)
            scheme = RadialScheme(grid, ModelParams(d=3, total_mass=mass.total), Coefficients())
            state = SimulationState(t=0.0, M=mass)
            while state.t < 1e-3:
                state = scheme.advance(state, dt_max=1e-3 - state.t)
            return float(np.abs(state.M.values - mass.values).max() / mass.total)

        coarse, fine = deviation(100), deviation(200)
        assert fine < coarse
        assert fine < 2e-2

    def test_dimension_mismatch(self, subcritical):
        grid, mass, _ = subcritical
        with pytest.raises(NumericalFailureError, match="dimension"):
            RadialScheme(grid, ModelParams(d=4, total_mass=mass.total), Coefficients())


class TestRun:
    def test_subcritical_completes(self, subcritical):
        grid, mass, params = subcritical
        controls = RunControls(t_end=0.02, cadence=10)
        trajectory, outcome = run(mass, params, Coefficients(), grid, controls)
        assert outcome.kind is OutcomeKind.COMPLETED
        assert outcome.exit_code == 0
        assert outcome.t_final == pytest.approx(0.02)
        assert trajectory.rows[0].t == 0.0
        assert trajectory.last.t == pytest.approx(0.02)
        assert np.all(np.diff(trajectory.times) > 0)
        np.testing.assert_allclose(trajectory.column("total_mass"), mass.total, rtol=1e-14)
        assert trajectory.final_mass is not None
        assert trajectory.final_mass.total == mass.total
        assert all(row.comparison_gap is None for row in trajectory.rows)

    def test_free_energy_dissipates(self, subcritical):
        grid, mass, params = subcritical
        controls = RunControls(t_end=0.02, cadence=5)
        trajectory, _ = run(mass, params, Coefficients(), grid, controls)
        assert len(trajectory) > 3
        assert dissipation_violations(trajectory.rows, steps_per_row=controls.cadence) == []

    def test_recorded_energy_is_close_to_quadrature_value(self, subcritical):
        grid, mass, params = subcritical
        fine = RadialGrid.uniform(4.0, 800, 3)
        mass = gaussian_mass(fine, mass.total, 0.5)
        recorded = scheme_free_energy(mass, params, Coefficients(), fine)
        quadrature = free_energy(mass, params, Coefficients(), fine)
        assert recorded.entropy == quadrature.entropy
        assert recorded.potential_energy == pytest.approx(quadrature.potential_energy, rel=1e-3)

    def test_decay_run_dissipates(self, subcritical):
        grid, mass, params = subcritical
        coeffs = Coefficients(gamma=ConstantSpec(value=1.0))
        controls = RunControls(t_end=0.02, cadence=5)
        trajectory, outcome = run(mass, params, coeffs, grid, controls)
        assert outcome.kind is OutcomeKind.COMPLETED
        assert len(trajectory) > 3
        assert dissipation_violations(trajectory.rows, steps_per_row=controls.cadence) == []
        first = trajectory.rows[0]
        expected = scheme_free_energy(mass, params, coeffs, grid)
        assert first.potential_energy == pytest.approx(expected.potential_energy, rel=1e-12)
        assert first.potential_energy == pytest.approx(
            free_energy(mass, params, coeffs, grid).potential_energy, rel=1e-12
        )

    def test_step_budget(self, subcritical):
        grid, mass, params = subcritical
        _, outcome = run(mass, params, Coefficients(), grid, RunControls(t_end=1.0, max_steps=3))
        assert outcome.kind is OutcomeKind.NUMERICAL_FAILURE
        assert outcome.detail["reason"] == "step budget exhausted"
        assert outcome.steps == 3
        assert outcome.exit_code == 5

    def test_time_step_underflow(self, subcritical):
        grid, mass, params = subcritical
        _, outcome = run(mass, params, Coefficients(), grid, RunControls(t_end=1.0, dt_min=1.0))
        assert outcome.kind is OutcomeKind.NUMERICAL_FAILURE
        assert outcome.detail["reason"] == "time step underflow"
        assert outcome.steps == 0

    def test_zero_horizon(self, subcritical):
        grid, mass, params = subcritical
        trajectory, outcome = run(mass, params, Coefficients(), grid, RunControls(t_end=0.0))
        assert outcome.kind is OutcomeKind.COMPLETED
        assert outcome.steps == 0
        assert len(trajectory) == 1

    def test_invalid_initial_data(self, subcritical):
        grid, _, params = subcritical
        bad = MassFunction(np.linspace(1.0, 0.0, grid.n_cells + 1))
        with pytest.raises(InvalidStateError):
            run(bad, params, Coefficients(), grid, RunControls(t_end=0.1))

    def test_supercritical_spike_blows_up(self, profile_d3):
        _, constants = profile_d3
        grid = RadialGrid.uniform(1.5, 75, 3)
        mass = gaussian_mass(grid, 10.0 * constants.M_c_star, 0.3)
        params = ModelParams(d=3, total_mass=mass.total)
        controls = RunControls(t_end=1.0, u_blowup_factor=8.0, dt_min_fraction=0.4, cadence=20)
        trajectory, outcome = run(mass, params, Coefficients(), grid, controls)
        assert outcome.kind is OutcomeKind.BLOW_UP
        assert outcome.exit_code == 2
        assert outcome.detail["peak_density"] >= outcome.detail["threshold"]
        assert outcome.t_final < 1.0
        peaks = trajectory.column("peak_density")
        assert peaks[-1] >= 8.0 * peaks[0]

    def test_rescaled_system_matches_original(self, profile_d3):
        _, constants = profile_d3
        grid = RadialGrid.uniform(3.0, 60, 3)
        mass = gaussian_mass(grid, 0.8 * constants.M_c_star, 0.6)
        mu, tau = 0.5, 0.004
        factor = mu ** (1.0 - 2.0 / 3.0)

        original, _ = run(
            mass, ModelParams(d=3, total_mass=mass.total), Coefficients(), grid,
            RunControls(t_end=factor * tau),
        )
        rescaled, _ = run(
            mass.scaled(mu), ModelParams(d=3, total_mass=mu * mass.total, mu=mu), Coefficients(), grid,
            RunControls(t_end=tau),
        )
        np.testing.assert_allclose(
            rescaled.final_mass.values, mu * original.final_mass.values, rtol=0, atol=1e-9 * mass.total
        )
        converted = rescaled.to_original_time(mu, 3)
        assert converted.last.t == pytest.approx(original.last.t, rel=1e-12)


class TestBarenblatt:
    def test_exponents_in_three_dimensions(self):
        fixture = BarenblattFixture.for_dimension(3, C=1.0 / 6.0)
        assert fixture.lambda_ == pytest.approx(1.0 / 3.0)
        assert fixture.mu_exp == pytest.approx(1.0 / 3.0)
        assert fixture.k == pytest.approx(1.0 / 6.0)
        assert fixture.support_radius(1.0) == pytest.approx(1.0)
        assert fixture.support_radius(2.0) == pytest.approx(2.0 ** (1.0 / 3.0))

    def test_density_vanishes_outside_support(self):
        fixture = BarenblattFixture.for_dimension(3, C=1.0 / 6.0)
        assert fixture.density(1.01, 1.0) == 0.0
        assert fixture.density(0.0, 1.0) == pytest.approx((1.0 / 24.0) ** 3)

    def test_time_domain(self):
        fixture = BarenblattFixture.for_dimension(3)
        with pytest.raises(OutOfDomainError):
            fixture.pressure(0.5, 0.0)

    @pytest.mark.parametrize("d", [3, 4, 5])
    def test_mass_is_conserved_in_time(self, d):
        fixture = BarenblattFixture.for_dimension(d, C=0.5)
        r_max = 1.2 * fixture.support_radius(3.0)
        grid = RadialGrid.uniform(r_max, 400, d)
        early = barenblatt_mass(1.0, fixture, grid)
        late = barenblatt_mass(3.0, fixture, grid)
        assert late.total == pytest.approx(early.total, rel=1e-5)

    def test_pure_diffusion_tracks_barenblatt(self):
        fixture = BarenblattFixture.for_dimension(3, C=1.0 / 6.0)
        grid = RadialGrid.uniform(1.5, 128, 3)
        initial = barenblatt_mass(1.0, fixture, grid)
        params = ModelParams(d=3, total_mass=initial.total)
        controls = RunControls(t_end=0.3, drift_enabled=False, cadence=200)
        trajectory, outcome = run(initial, params, Coefficients(), grid, controls)
        assert outcome.kind is OutcomeKind.COMPLETED
        exact = barenblatt_mass(1.3, fixture, grid)
        error = np.abs(trajectory.final_mass.values - exact.values).max() / exact.total
        assert error < 1e-2
        assert math.isfinite(trajectory.last.free_energy)
