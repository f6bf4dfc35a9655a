"""Shared fixtures for the pks-lab test suite."""
import json
from pathlib import Path

import numpy as np
import pytest

from common.config import get_settings
from radial.coefficients import Coefficients
from radial.grid import RadialGrid
from radial.mass import RadialDensity, mass_from_density
from stationary.constants import reference_profile

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def golden() -> dict:
    return json.loads((DATA_DIR / "golden.json").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def profile_d3():
    """Normalized d=3 extremal and its constants."""
    return reference_profile(3)


@pytest.fixture
def unit_coeffs() -> Coefficients:
    return Coefficients()


@pytest.fixture
def grid_d3() -> RadialGrid:
    return RadialGrid.uniform(2.0, 400, 3)


@pytest.fixture
def unit_ball(grid_d3):
    """u = 1 on [0, 1], zero outside, on a grid with a face at r = 1."""
    u = RadialDensity(np.where(grid_d3.center_radii < 1.0, 1.0, 0.0))
    return u, mass_from_density(u, grid_d3)


@pytest.fixture(autouse=True)
def _isolated_settings(monkeypatch, tmp_path):
    """Fresh settings per test, with CSV output redirected to a temp dir."""
    monkeypatch.setenv("PKS_OUTPUT_DIR", str(tmp_path))
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()
