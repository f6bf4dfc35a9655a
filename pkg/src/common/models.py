"""Shared domain models."""
from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, computed_field


class ModelParams(BaseModel):
    """Dimension, mass and rescaling ratio of one simulation."""

    model_config = ConfigDict(frozen=True)

    d: int = Field(..., ge=3, description="Spatial dimension")
    total_mass: float = Field(..., ge=0, description="Total mass of the evolved density")
    mu: float = Field(1.0, gt=0, le=1, description="Mass-rescaling ratio M_c/M0")

    @property
    def m(self) -> float:
        """Diffusion exponent of the L1-critical problem."""
        return 2.0 - 2.0 / self.d

    @property
    def drift_factor(self) -> float:
        """Prefactor mu^(1-2/d) of the drift in the rescaled system."""
        return self.mu ** (1.0 - 2.0 / self.d)

    @property
    def source_mass_scale(self) -> float:
        """Prefactor mu^-1 of the chemo-attractant source."""
        return 1.0 / self.mu


class DiagnosticsRow(BaseModel):
    """One row of the trajectory CSV."""

    model_config = ConfigDict(frozen=True)

    t: float
    peak_density: float = Field(..., ge=0)
    entropy: float
    potential_energy: float
    total_mass: float
    comparison_gap: float | None = None
    local_mass_at_origin: float = 0.0

    @computed_field
    @property
    def free_energy(self) -> float:
        return self.entropy - self.potential_energy


class OutcomeKind(str, Enum):
    """How a simulation ended."""
    COMPLETED = "Completed"
    BLOW_UP = "BlowUp"
    COMPARISON_VIOLATED = "ComparisonViolated"
    NUMERICAL_FAILURE = "NumericalFailure"


EXIT_CODES: dict[OutcomeKind, int] = {
    OutcomeKind.COMPLETED: 0,
    OutcomeKind.BLOW_UP: 2,
    OutcomeKind.COMPARISON_VIOLATED: 3,
    OutcomeKind.NUMERICAL_FAILURE: 5,
}

CONFIG_ERROR_EXIT = 4


class Outcome(BaseModel):
    """Result classification of a run."""

    model_config = ConfigDict(frozen=True)

    kind: OutcomeKind
    t_final: float
    steps: int = Field(0, ge=0)
    detail: dict[str, float | int | str | None] = Field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.kind]
