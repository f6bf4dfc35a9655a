"""Scenario configuration, presets, CSV output and the critical-mass bracket."""
from .bracket import BracketResult, Trial, bracket_critical_mass, classify_mass
from .config import PRESET_NAMES, ScenarioConfig, load_scenario, parse_coefficient, parse_config, preset_text
from .output import CSV_COLUMNS, write_trajectory_csv
from .scenario import PreparedScenario, ScenarioResult, prepare_scenario, run_scenario

__all__ = [
    "BracketResult",
    "Trial",
    "bracket_critical_mass",
    "classify_mass",
    "PRESET_NAMES",
    "ScenarioConfig",
    "load_scenario",
    "parse_coefficient",
    "parse_config",
    "preset_text",
    "CSV_COLUMNS",
    "write_trajectory_csv",
    "PreparedScenario",
    "ScenarioResult",
    "prepare_scenario",
    "run_scenario",
]
