"""
``pks`` command line: profile, simulate, bracket, validate.

Exit codes: 0 Completed, 2 BlowUp, 3 ComparisonViolated,
4 configuration or setup error, 5 numerical failure.
"""
import argparse
import csv
import sys
from pathlib import Path

from common.config import get_settings
from common.logging import setup_logging
from common.models import CONFIG_ERROR_EXIT, EXIT_CODES, OutcomeKind
from domain.exceptions import (
    BracketSetupError,
    ConfigError,
    ConfigIssue,
    ConvergenceError,
    DomainException,
    InvalidStateError,
    OrderingRefusedError,
    OutOfDomainError,
    SolverInternalError,
)
from harness.bracket import bracket_critical_mass
from harness.config import PRESET_NAMES, load_scenario
from harness.scenario import run_scenario
from radial.grid import RadialGrid
from stationary.constants import critical_mass, reference_profile, sharp_constants
from stationary.shooting import normalize_unit_support, shoot_profile, stationarity_residual

NUMERICAL_FAILURE_EXIT = EXIT_CODES[OutcomeKind.NUMERICAL_FAILURE]


def _read(path: str | None) -> str | None:
    if path is None:
        return None
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError([ConfigIssue(None, "--config", f"cannot read {path}: {e.strerror}")]) from e


def cmd_profile(args: argparse.Namespace) -> int:
    raw = shoot_profile(args.dim, args.height, step=args.step)
    profile = normalize_unit_support(raw)
    constants = sharp_constants(profile)
    rows = [
        ("d", f"{constants.d}"),
        ("m", f"{constants.m:.12g}"),
        ("V(0) shot", f"{raw.center_height:.12g}"),
        ("support (shot)", f"{raw.support_radius:.12g}"),
        ("V(0) normalized", f"{profile.center_height:.12g}"),
        ("c_d", f"{constants.c_d:.12g}"),
        ("M_c*", f"{constants.M_c_star:.12g}"),
        ("C*", f"{constants.C_star:.12g}"),
        ("mass identity residual", f"{constants.mass_identity_residual():.3e}"),
        ("stationarity residual", f"{stationarity_residual(raw):.3e}"),
    ]
    width = max(len(name) for name, _ in rows)
    for name, value in rows:
        print(f"{name:<{width}}  {value}")

    if args.csv:
        path = Path(args.csv)
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(("r", "V", "M_V"))
            for r, v, m in zip(profile.radii, profile.values, profile.mass_function):
                writer.writerow((f"{r:.17g}", f"{v:.17g}", f"{m:.17g}"))
        print(f"profile written to {path}")
    return 0


def cmd_simulate(args: argparse.Namespace) -> int:
    cfg = load_scenario(_read(args.config), args.preset)
    result = run_scenario(cfg, force=args.force)
    outcome = result.outcome

    print(f"outcome          {outcome.kind.value}")
    print(f"t_final          {outcome.t_final:.10g}")
    print(f"steps            {outcome.steps}")
    print(f"initial F        {result.initial_energy.free_energy:.10g}")
    if result.blow_up_time_bound is not None:
        print(f"blow-up bound    {result.blow_up_time_bound:.10g}")
    if result.barenblatt_error is not None:
        print(f"Barenblatt error {result.barenblatt_error:.3e}")
    for key, value in outcome.detail.items():
        print(f"  {key}: {value}")
    for note in result.notes:
        print(f"note: {note}")
    if result.csv_path is not None:
        print(f"trajectory       {result.csv_path}")
    return outcome.exit_code


def cmd_bracket(args: argparse.Namespace) -> int:
    cfg = load_scenario(_read(args.config), args.preset)
    lo, hi = args.lo, args.hi
    if args.relative:
        grid = RadialGrid.graded(cfg.grid.r_max, cfg.grid.n_cells, cfg.model.d, cfg.grid.grading)
        coeffs = cfg.coefficients.to_coefficients()
        _, constants = reference_profile(cfg.model.d)
        m_c = critical_mass(coeffs.validate_on(grid), constants)
        lo, hi = lo * m_c, hi * m_c
    result = bracket_critical_mass(cfg, lo, hi, args.iters, horizon=args.horizon, max_workers=args.workers)

    print(f"barrier  R0 {result.barrier_radius:.6g}")
    print(f"horizon  {result.horizon:.10g}")
    for trial in result.trials:
        print(f"  mass {trial.mass:.10g}: {trial.classification} ({trial.outcome}, peak x{trial.peak_growth:.3g})")
    print(f"bracket  [{result.lo:.10g}, {result.hi:.10g}]  width {result.width:.3e}")
    return 0


def cmd_validate(args: argparse.Namespace) -> int:
    cfg = load_scenario(_read(args.config), args.preset)
    print(f"configuration valid: preset {cfg.model.preset!r}, d={cfg.model.d}, initial {cfg.initial.kind}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pks", description="Radial L1-critical Keller-Segel laboratory")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    commands = parser.add_subparsers(dest="command", required=True)

    profile = commands.add_parser("profile", help="shoot the stationary extremal and print sharp constants")
    profile.add_argument("--dim", type=int, required=True)
    profile.add_argument("--height", type=float, default=1.0, help="V(0) for the shot")
    profile.add_argument("--step", type=float, default=None)
    profile.add_argument("--csv", default=None, help="write the normalized profile")
    profile.set_defaults(handler=cmd_profile)

    def scenario_arguments(sub: argparse.ArgumentParser) -> None:
        sub.add_argument("--config", help="scenario file; keys override the preset")
        sub.add_argument("--preset", choices=PRESET_NAMES, default=None)

    simulate = commands.add_parser("simulate", help="run one scenario")
    scenario_arguments(simulate)
    simulate.add_argument("--force", action="store_true", help="run even if barrier ordering fails")
    simulate.set_defaults(handler=cmd_simulate)

    bracket = commands.add_parser("bracket", help="bisect the empirical critical mass")
    scenario_arguments(bracket)
    bracket.add_argument("--lo", type=float, required=True)
    bracket.add_argument("--hi", type=float, required=True)
    bracket.add_argument("--iters", type=int, default=8)
    bracket.add_argument("--relative", action="store_true", help="lo/hi are multiples of the critical mass")
    bracket.add_argument("--horizon", type=float, default=None)
    bracket.add_argument("--workers", type=int, default=None)
    bracket.set_defaults(handler=cmd_bracket)

    validate = commands.add_parser("validate", help="parse and validate a configuration")
    scenario_arguments(validate)
    validate.set_defaults(handler=cmd_validate)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    settings = get_settings()
    logger = setup_logging(
        settings.service_name,
        level="DEBUG" if args.verbose else settings.log_level,
        json_logs=settings.json_logs,
    )
    try:
        return args.handler(args)
    except (ConfigError, OrderingRefusedError, BracketSetupError, InvalidStateError, OutOfDomainError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return CONFIG_ERROR_EXIT
    except (ConvergenceError, SolverInternalError, DomainException) as e:
        logger.error(f"{type(e).__name__}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return NUMERICAL_FAILURE_EXIT


if __name__ == "__main__":
    sys.exit(main())
