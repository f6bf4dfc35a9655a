"""Radial coefficient specifications for a(r) and γ(r)."""
from typing import Annotated, Literal, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from domain.exceptions import InvalidStateError
from .grid import RadialGrid


class ConstantSpec(BaseModel):
    """Constant coefficient."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["constant"] = "constant"
    value: float


class TableSpec(BaseModel):
    """Piecewise-linear table over r, clamped to the end values outside its range."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["table"] = "table"
    points: tuple[tuple[float, float], ...] = Field(..., min_length=1)

    @field_validator("points")
    @classmethod
    def radii_increasing(cls, points):
        radii = [r for r, _ in points]
        if any(b <= a for a, b in zip(radii, radii[1:])):
            raise ValueError("table radii must be strictly increasing")
        if radii[0] < 0:
            raise ValueError("table radii must be >= 0")
        return points


class PolynomialSpec(BaseModel):
    """Polynomial in r with ascending coefficients, optionally capped from above."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["polynomial"] = "polynomial"
    coeffs: tuple[float, ...] = Field(..., min_length=1)
    cap: float | None = None


CoefficientSpec = Annotated[
    Union[ConstantSpec, TableSpec, PolynomialSpec],
    Field(discriminator="kind"),
]


def evaluate(spec: CoefficientSpec, r: np.ndarray) -> np.ndarray:
    """Vectorised evaluation of a coefficient specification."""
    r = np.asarray(r, dtype=float)
    if isinstance(spec, ConstantSpec):
        return np.full_like(r, spec.value)
    if isinstance(spec, TableSpec):
        radii = np.array([p[0] for p in spec.points])
        values = np.array([p[1] for p in spec.points])
        return np.interp(r, radii, values)
    values = np.polynomial.polynomial.polyval(r, np.array(spec.coeffs))
    if spec.cap is not None:
        values = np.minimum(values, spec.cap)
    return values


def eval_coefficient(spec: CoefficientSpec, r: float, r_max: float | None = None) -> float:
    """
    Evaluate a coefficient at one radius.

    Radii outside [0, r_max] are clamped to the nearest endpoint.
    """
    r = max(float(r), 0.0)
    if r_max is not None:
        r = min(r, r_max)
    return float(evaluate(spec, np.array(r)))


def is_identically_zero(spec: CoefficientSpec) -> bool:
    if isinstance(spec, ConstantSpec):
        return spec.value == 0.0
    if isinstance(spec, TableSpec):
        return all(v == 0.0 for _, v in spec.points)
    return all(c == 0.0 for c in spec.coeffs)


class Coefficients(BaseModel):
    """Diffusivity a(r) and decay γ(r) of the chemo-attractant equation."""

    model_config = ConfigDict(frozen=True)

    a: CoefficientSpec = ConstantSpec(value=1.0)
    gamma: CoefficientSpec = ConstantSpec(value=0.0)
    monotone_radius: float | None = Field(None, gt=0, description="δ₀ of the monotone-near-origin flag")

    @property
    def gamma_is_zero(self) -> bool:
        return is_identically_zero(self.gamma)

    def a_at(self, r: np.ndarray | float) -> np.ndarray:
        return evaluate(self.a, np.clip(r, 0.0, None))

    def gamma_at(self, r: np.ndarray | float) -> np.ndarray:
        return evaluate(self.gamma, np.clip(r, 0.0, None))

    def sample_radii(self, grid: RadialGrid) -> np.ndarray:
        extra = [p[0] for p in self.a.points] if isinstance(self.a, TableSpec) else []
        radii = np.concatenate((grid.face_radii, grid.center_radii, extra))
        return np.unique(np.clip(radii, 0.0, grid.r_max))

    def a_min(self, grid: RadialGrid) -> float:
        return float(self.a_at(self.sample_radii(grid)).min())

    def validate_on(self, grid: RadialGrid) -> float:
        """
        Check positivity, nonnegativity and the optional monotone flag.

        Returns:
            The sampled minimum of a
        """
        radii = self.sample_radii(grid)
        a_values = self.a_at(radii)
        a_min = float(a_values.min())
        if a_min <= 0:
            raise InvalidStateError("coefficients", f"a must be > 0, minimum sampled value {a_min:.6g}")
        g_values = self.gamma_at(radii)
        if np.any(g_values < 0):
            raise InvalidStateError("coefficients", f"gamma must be >= 0, got {g_values.min():.6g}")
        if self.monotone_radius is not None:
            near = radii <= self.monotone_radius
            if np.any(np.diff(a_values[near]) < 0):
                raise InvalidStateError(
                    "coefficients",
                    f"a is not nondecreasing on [0, {self.monotone_radius}]",
                )
        return a_min
