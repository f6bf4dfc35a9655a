"""
Scenario configuration: line-oriented ``section.key = value`` text.

Parsing collects every problem (unknown keys, malformed values, range
errors) before reporting, each located by its line number.
"""
import logging
from dataclasses import dataclass
from importlib import resources
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from domain.exceptions import ConfigError, ConfigIssue
from radial.coefficients import (
    Coefficients,
    CoefficientSpec,
    ConstantSpec,
    PolynomialSpec,
    TableSpec,
)

logger = logging.getLogger(__name__)

PRESET_NAMES = (
    "subcritical",
    "critical_radial",
    "supercritical_blowup",
    "positive_energy_blowup",
    "barenblatt_validation",
    "critical_supersolution",
)

InitialKind = Literal[
    "barrier_scaled", "extremal", "gaussian_bump", "annulus", "spike_plus_shell", "table", "barenblatt"
]


def parse_coefficient(text: str) -> CoefficientSpec:
    """
    Parse ``constant V`` | ``table r:v r:v ...`` | ``poly c0 c1 ... [cap C]``.

    Raises:
        ValueError: On malformed input
    """
    words = text.split()
    if not words:
        raise ValueError("empty coefficient")
    kind, args = words[0], words[1:]
    if kind == "constant":
        if len(args) != 1:
            raise ValueError("expected 'constant V'")
        return ConstantSpec(value=float(args[0]))
    if kind == "table":
        if not args:
            raise ValueError("expected 'table r:v r:v ...'")
        return TableSpec(points=tuple(_pair(arg) for arg in args))
    if kind == "poly":
        cap = None
        if "cap" in args:
            i = args.index("cap")
            if i != len(args) - 2:
                raise ValueError("'cap C' must come last")
            cap = float(args[i + 1])
            args = args[:i]
        if not args:
            raise ValueError("expected at least one polynomial coefficient")
        return PolynomialSpec(coeffs=tuple(float(c) for c in args), cap=cap)
    raise ValueError(f"unknown coefficient kind {kind!r} (constant, table, poly)")


def _pair(text: str) -> tuple[float, float]:
    left, sep, right = text.partition(":")
    if not sep:
        raise ValueError(f"expected r:value, got {text!r}")
    return float(left), float(right)


def _pairs(text: str) -> tuple[tuple[float, float], ...]:
    return tuple(_pair(word) for word in text.split())


class _Section(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")


class ModelSection(_Section):
    d: int = 3
    total_mass: float | None = Field(None, gt=0)
    mass_ratio: float | None = Field(None, gt=0, description="Total mass as a multiple of M_c")
    mu: float = Field(1.0, gt=0, le=1)
    preset: str = "custom"

    @field_validator("d")
    @classmethod
    def supported_dimension(cls, d: int) -> int:
        if d < 3:
            raise ValueError("d must be >= 3")
        return d


class CoefficientsSection(_Section):
    a: CoefficientSpec = ConstantSpec(value=1.0)
    gamma: CoefficientSpec = ConstantSpec(value=0.0)
    monotone_radius: float | None = Field(None, gt=0)

    @field_validator("a", "gamma", mode="before")
    @classmethod
    def parse_spec(cls, value):
        return parse_coefficient(value) if isinstance(value, str) else value

    def to_coefficients(self) -> Coefficients:
        return Coefficients(a=self.a, gamma=self.gamma, monotone_radius=self.monotone_radius)


class GridSection(_Section):
    r_max: float = Field(8.0, gt=0)
    n_cells: int = Field(400, ge=8)
    grading: float = Field(1.0, ge=1.0)


class TimeSection(_Section):
    t_end: float = Field(1.0, ge=0)
    cfl: float = Field(0.4, gt=0, le=1)
    dt_min: float = Field(1e-12, gt=0)
    dt_min_fraction: float | None = Field(None, gt=0, lt=1)
    u_blowup: float = Field(1e6, gt=1)
    cadence: int = Field(50, ge=1)
    max_steps: int = Field(5_000_000, ge=1)
    drift_route: Literal["closed", "field"] = "closed"


class InitialSection(_Section):
    kind: InitialKind = "gaussian_bump"
    width: float = Field(0.5, gt=0)
    center: float = Field(0.0, ge=0)
    inner: float = Field(1.0, ge=0)
    outer: float = Field(1.5, gt=0)
    spike_fraction: float = Field(0.4, gt=0, lt=1)
    spike_width: float = Field(0.1, gt=0)
    scale: float = Field(1.0, gt=0)
    table: tuple[tuple[float, float], ...] | None = None
    t0: float = Field(1.0, gt=0, description="Barenblatt start time")
    C: float = Field(1.0, gt=0, description="Barenblatt pressure constant")

    @field_validator("table", mode="before")
    @classmethod
    def parse_table(cls, value):
        return _pairs(value) if isinstance(value, str) else value

    @model_validator(mode="after")
    def shell_ordered(self):
        if self.kind in ("annulus", "spike_plus_shell") and self.outer <= self.inner:
            raise ValueError("initial.outer must exceed initial.inner")
        if self.kind == "table" and not self.table:
            raise ValueError("initial.table is required for kind 'table'")
        return self


class BarrierSection(_Section):
    R0: float | None = Field(None, gt=0)
    M0: float | None = Field(None, gt=0)
    radius: float | None = Field(None, gt=0, description="Fixed supersolution radius")
    tolerance_factor: float = Field(10.0, gt=0)


class OutputSection(_Section):
    path: str = "trajectory.csv"
    cadence: int | None = Field(None, ge=1)
    r_local: float = Field(0.05, gt=0)


class ScenarioConfig(_Section):
    model: ModelSection
    coefficients: CoefficientsSection = CoefficientsSection()
    grid: GridSection = GridSection()
    time: TimeSection = TimeSection()
    initial: InitialSection = InitialSection()
    barrier: BarrierSection = BarrierSection()
    output: OutputSection = OutputSection()

    @model_validator(mode="after")
    def mass_given_once(self):
        given = (self.model.total_mass is not None) + (self.model.mass_ratio is not None)
        if self.initial.kind == "barenblatt":
            if given:
                raise ValueError("model.total_mass/mass_ratio are fixed by the Barenblatt profile")
        elif given != 1:
            raise ValueError("exactly one of model.total_mass and model.mass_ratio is required")
        return self

    @property
    def cadence(self) -> int:
        return self.output.cadence or self.time.cadence

    def with_overrides(self, **updates: object) -> "ScenarioConfig":
        """Copy with ``"section.key": value`` updates, re-validated."""
        data = self.model_dump()
        for dotted, value in updates.items():
            section, key = dotted.split(".", 1)
            data[section][key] = value
        return ScenarioConfig.model_validate(data)


SECTIONS: dict[str, type[_Section]] = {
    "model": ModelSection,
    "coefficients": CoefficientsSection,
    "grid": GridSection,
    "time": TimeSection,
    "initial": InitialSection,
    "barrier": BarrierSection,
    "output": OutputSection,
}


@dataclass(frozen=True)
class Entry:
    value: str
    line: int


def tokenize(text: str) -> tuple[dict[str, Entry], list[ConfigIssue]]:
    """Split text into ``section.key`` entries; later lines override earlier ones."""
    entries: dict[str, Entry] = {}
    issues: list[ConfigIssue] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep:
            issues.append(ConfigIssue(number, key or raw.strip(), "expected 'section.key = value'"))
            continue
        section, dot, name = key.partition(".")
        if not dot or not name:
            issues.append(ConfigIssue(number, key, "key must be 'section.key'"))
            continue
        if section not in SECTIONS:
            issues.append(ConfigIssue(number, key, f"unknown section {section!r}"))
            continue
        if name not in SECTIONS[section].model_fields:
            issues.append(ConfigIssue(number, key, "unknown key"))
            continue
        if not value:
            issues.append(ConfigIssue(number, key, "missing value"))
            continue
        entries[key] = Entry(value=value, line=number)
    return entries, issues


def _nest(entries: dict[str, Entry]) -> dict[str, dict[str, str]]:
    data: dict[str, dict[str, str]] = {}
    for key, entry in entries.items():
        section, name = key.split(".", 1)
        data.setdefault(section, {})[name] = entry.value
    return data


def _issues_from_validation(error: ValidationError, entries: dict[str, Entry]) -> list[ConfigIssue]:
    issues = []
    for item in error.errors():
        loc = [str(part) for part in item["loc"]]
        key = ".".join(loc[:2]) if len(loc) >= 2 else (loc[0] if loc else "config")
        entry = entries.get(key)
        message = item["msg"].removeprefix("Value error, ")
        issues.append(ConfigIssue(entry.line if entry else None, key, message))
    return issues


def parse_config(text: str, base: str | None = None) -> ScenarioConfig:
    """
    Parse and validate a scenario.

    Args:
        text: Configuration text
        base: Optional text (a preset) whose keys ``text`` overrides

    Raises:
        ConfigError: With every issue found, each with its line number
    """
    entries: dict[str, Entry] = {}
    issues: list[ConfigIssue] = []
    if base is not None:
        base_entries, base_issues = tokenize(base)
        entries.update(base_entries)
        issues.extend(base_issues)
    own_entries, own_issues = tokenize(text)
    entries.update(own_entries)
    issues.extend(own_issues)

    data = _nest(entries)
    if "model" not in data:
        issues.append(ConfigIssue(None, "model", "missing section"))
    if issues:
        raise ConfigError(issues)
    try:
        config = ScenarioConfig.model_validate(data)
    except ValidationError as e:
        raise ConfigError(_issues_from_validation(e, entries)) from e
    logger.debug(f"Parsed scenario {config.model.preset!r} with {len(entries)} keys")
    return config


def preset_text(name: str) -> str:
    """Committed fixture text of a preset."""
    if name not in PRESET_NAMES:
        raise ConfigError([ConfigIssue(None, "preset", f"unknown preset {name!r}; one of {', '.join(PRESET_NAMES)}")])
    return resources.files("harness").joinpath("presets", f"{name}.cfg").read_text(encoding="utf-8")


def load_scenario(text: str | None = None, preset: str | None = None) -> ScenarioConfig:
    """Preset fixture first, then ``text`` on top of it."""
    base = preset_text(preset) if preset else None
    if text is None:
        if base is None:
            raise ConfigError([ConfigIssue(None, "config", "no configuration given")])
        return parse_config(base)
    return parse_config(text, base=base)
