"""Radial grids: faces carry cumulative mass, cells carry densities."""
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np
from scipy.special import gamma as gamma_fn

from domain.exceptions import InvalidStateError, OutOfDomainError


@lru_cache(maxsize=None)
def sphere_area(d: int) -> float:
    """Surface area of the unit sphere in R^d, 2π^{d/2}/Γ(d/2)."""
    if d < 1:
        raise OutOfDomainError("d", d, "dimension must be positive")
    return float(2.0 * np.pi ** (d / 2.0) / gamma_fn(d / 2.0))


def _frozen(values: np.ndarray) -> np.ndarray:
    array = np.array(values, dtype=float)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class RadialGrid:
    """
    Cell-centered radial grid on [0, r_max].

    Faces are strictly increasing from 0 to r_max; cell i spans
    [face_radii[i], face_radii[i+1]] and its center is the midpoint.
    """

    face_radii: np.ndarray
    d: int

    def __post_init__(self) -> None:
        faces = _frozen(self.face_radii)
        object.__setattr__(self, "face_radii", faces)
        if self.d < 3:
            raise OutOfDomainError("d", self.d, "d must be >= 3")
        if faces.ndim != 1 or faces.size < 2:
            raise InvalidStateError("grid", "need at least one cell")
        if faces[0] != 0.0:
            raise InvalidStateError("grid", "first face must be at r = 0")
        if np.any(np.diff(faces) <= 0):
            raise InvalidStateError("grid", "face radii must be strictly increasing")

    @classmethod
    def uniform(cls, r_max: float, n_cells: int, d: int) -> "RadialGrid":
        """Uniform face spacing."""
        if r_max <= 0 or n_cells < 1:
            raise InvalidStateError("grid", f"r_max={r_max}, n_cells={n_cells}")
        faces = np.linspace(0.0, r_max, n_cells + 1)
        return cls(face_radii=faces, d=d)

    @classmethod
    def graded(cls, r_max: float, n_cells: int, d: int, ratio: float) -> "RadialGrid":
        """
        Geometric grading toward the origin.

        Cell widths grow outward as h_{i+1} = ratio * h_i, so the innermost
        cells are the finest. ``ratio == 1`` gives the uniform grid.
        """
        if ratio < 1.0:
            raise InvalidStateError("grid", f"grading ratio must be >= 1, got {ratio}")
        if ratio == 1.0:
            return cls.uniform(r_max, n_cells, d)
        if r_max <= 0 or n_cells < 1:
            raise InvalidStateError("grid", f"r_max={r_max}, n_cells={n_cells}")
        h0 = r_max * (ratio - 1.0) / (ratio ** n_cells - 1.0)
        widths = h0 * ratio ** np.arange(n_cells)
        faces = np.concatenate(([0.0], np.cumsum(widths)))
        faces[-1] = r_max
        return cls(face_radii=faces, d=d)

    @property
    def r_max(self) -> float:
        return float(self.face_radii[-1])

    @property
    def n_cells(self) -> int:
        return self.face_radii.size - 1

    @property
    def sigma(self) -> float:
        return sphere_area(self.d)

    @cached_property
    def center_radii(self) -> np.ndarray:
        return _frozen(0.5 * (self.face_radii[1:] + self.face_radii[:-1]))

    @cached_property
    def cell_widths(self) -> np.ndarray:
        return _frozen(np.diff(self.face_radii))

    @cached_property
    def center_spacing(self) -> np.ndarray:
        """Distance between neighbouring centers, one entry per interior face."""
        return _frozen(np.diff(self.center_radii))

    @cached_property
    def shell_volumes(self) -> np.ndarray:
        powers = self.face_radii ** self.d
        return _frozen(self.sigma / self.d * np.diff(powers))

    @cached_property
    def face_areas(self) -> np.ndarray:
        """σ r^{d-1} at every face (zero at the origin)."""
        return _frozen(self.sigma * self.face_radii ** (self.d - 1))

    @property
    def ball_volume(self) -> float:
        return self.sigma / self.d * self.r_max ** self.d

    @property
    def min_width(self) -> float:
        return float(self.cell_widths.min())

    def covers(self, r: float) -> bool:
        return 0.0 <= r <= self.r_max

    def face_index_at(self, r: float) -> int:
        """Index of the last face with radius <= r."""
        return int(np.searchsorted(self.face_radii, r, side="right") - 1)
