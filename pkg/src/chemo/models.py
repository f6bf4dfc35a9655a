"""Chemo-attractant field values."""
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class ChemoField:
    """c at cell centers (volume averages) and c' at faces."""

    c_values: np.ndarray
    dc_dr: np.ndarray
    source_mass_scale: float = 1.0
