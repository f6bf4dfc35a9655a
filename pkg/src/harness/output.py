"""Trajectory CSV emission."""
import csv
import logging
from pathlib import Path

from common.config import get_settings
from evolution.runner import Trajectory

logger = logging.getLogger(__name__)

CSV_COLUMNS = (
    "t",
    "peak_density",
    "entropy",
    "potential_energy",
    "free_energy",
    "total_mass",
    "comparison_gap",
    "local_mass_origin",
)


def _fmt(value: float | None) -> str:
    return "" if value is None else f"{value:.17g}"


def resolve_output_path(path: str | Path) -> Path:
    """``PKS_OUTPUT_DIR`` replaces the directory part of the configured path."""
    path = Path(path)
    output_dir = get_settings().output_dir
    if output_dir is not None:
        path = Path(output_dir) / path.name
    return path


def format_rows(trajectory: Trajectory) -> list[dict[str, str]]:
    return [
        {
            "t": _fmt(row.t),
            "peak_density": _fmt(row.peak_density),
            "entropy": _fmt(row.entropy),
            "potential_energy": _fmt(row.potential_energy),
            "free_energy": _fmt(row.free_energy),
            "total_mass": _fmt(row.total_mass),
            "comparison_gap": _fmt(row.comparison_gap),
            "local_mass_origin": _fmt(row.local_mass_at_origin),
        }
        for row in trajectory.rows
    ]


def write_trajectory_csv(trajectory: Trajectory, path: str | Path) -> Path:
    """Write header and rows; returns the path written."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as f:
        writer = csv.DictWriter(f, fieldnames=CSV_COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(format_rows(trajectory))
    logger.info(f"Wrote {len(trajectory)} rows to {path}")
    return path
