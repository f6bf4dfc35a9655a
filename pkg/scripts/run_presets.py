#!/usr/bin/env python3
"""Run every preset scenario and print one summary line per outcome."""
import sys
from pathlib import Path

# Add src to path
src_path = Path(__file__).parent.parent / "src"
sys.path.insert(0, str(src_path))

from common.config import get_settings
from common.logging import setup_logging
from domain.exceptions import DomainException
from harness.config import PRESET_NAMES, load_scenario
from harness.scenario import run_scenario

if __name__ == "__main__":
    settings = get_settings()
    setup_logging(settings.service_name, level="WARNING", json_logs=settings.json_logs)
    names = sys.argv[1:] or PRESET_NAMES
    print(f"Running {len(names)} preset(s); CSV files go to {settings.output_dir or 'the working directory'}")
    print()

    worst = 0
    for name in names:
        try:
            result = run_scenario(load_scenario(preset=name))
        except DomainException as e:
            print(f"{name:<26} error: {e}")
            worst = max(worst, 4)
            continue
        outcome = result.outcome
        bound = f"  bound {result.blow_up_time_bound:.6g}" if result.blow_up_time_bound is not None else ""
        print(f"{name:<26} {outcome.kind.value:<20} t={outcome.t_final:.6g}  steps={outcome.steps}{bound}")
        if outcome.exit_code not in (0, 2):
            worst = max(worst, outcome.exit_code)
    sys.exit(worst)
