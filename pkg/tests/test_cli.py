import csv

import pytest

from apps.cli import build_parser, main


def test_validate_preset(capsys):
    assert main(["validate", "--preset", "subcritical"]) == 0
    assert "preset 'subcritical'" in capsys.readouterr().out


def test_invalid_config_exits_with_4(tmp_path, capsys):
    path = tmp_path / "bad.cfg"
    path.write_text("model.mass_ratio = 0.5\ngrid.n_cells = abc\n", encoding="utf-8")
    assert main(["validate", "--config", str(path)]) == 4
    assert "line 2: grid.n_cells" in capsys.readouterr().err


def test_unreadable_config_exits_with_4(tmp_path):
    assert main(["validate", "--config", str(tmp_path / "missing.cfg")]) == 4


def test_refused_ordering_exits_with_4(tmp_path):
    path = tmp_path / "spread.cfg"
    path.write_text("initial.kind = gaussian_bump\ninitial.width = 1.0\n", encoding="utf-8")
    assert main(["simulate", "--preset", "supercritical_blowup", "--config", str(path)]) == 4


def test_forced_spread_data_reports_violation(tmp_path, capsys):
    path = tmp_path / "spread.cfg"
    path.write_text("initial.kind = gaussian_bump\ninitial.width = 1.0\n", encoding="utf-8")
    assert main(["simulate", "--preset", "supercritical_blowup", "--config", str(path), "--force"]) == 3
    assert "ComparisonViolated" in capsys.readouterr().out


def test_simulate_short_run(tmp_path, capsys):
    path = tmp_path / "short.cfg"
    path.write_text("time.t_end = 0.001\n", encoding="utf-8")
    assert main(["simulate", "--preset", "subcritical", "--config", str(path)]) == 0
    out = capsys.readouterr().out
    assert "outcome          Completed" in out
    assert (tmp_path / "subcritical.csv").exists()


def test_profile_writes_csv(tmp_path, capsys):
    target = tmp_path / "profile.csv"
    assert main(["profile", "--dim", "3", "--csv", str(target)]) == 0
    out = capsys.readouterr().out
    assert "M_c*" in out
    with target.open(encoding="utf-8") as f:
        rows = list(csv.reader(f))
    assert rows[0] == ["r", "V", "M_V"]
    assert float(rows[-1][0]) == 1.0
    assert float(rows[-1][1]) == 0.0


def test_profile_bad_dimension_exits_with_4():
    assert main(["profile", "--dim", "2"]) == 4


def test_unknown_preset_rejected_by_parser():
    with pytest.raises(SystemExit):
        build_parser().parse_args(["simulate", "--preset", "nope"])
