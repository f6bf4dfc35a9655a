"""Domain exceptions (independent of the command line)."""
from dataclasses import dataclass


class DomainException(Exception):
    """Base exception for domain errors."""
    pass


class InvalidStateError(DomainException):
    """Raised when value data violate their invariants."""

    def __init__(self, what: str, detail: str):
        self.what = what
        self.detail = detail
        super().__init__(f"Invalid {what}: {detail}")


class OutOfDomainError(DomainException):
    """Raised when an argument lies outside the domain of a formula."""

    def __init__(self, name: str, value: object, requirement: str):
        self.name = name
        self.value = value
        self.requirement = requirement
        super().__init__(f"{name}={value!r} is out of domain: {requirement}")


class ConvergenceError(DomainException):
    """Raised when an iterative or shooting procedure does not converge."""
    pass


class WrongSolverError(DomainException):
    """Raised when a solver is asked to handle a case it does not cover."""

    def __init__(self, solver: str, hint: str):
        self.solver = solver
        self.hint = hint
        super().__init__(f"{solver} cannot handle this input; use {hint}")


class SolverInternalError(DomainException):
    """Raised when a linear system that must be regular turns out singular."""
    pass


@dataclass(frozen=True)
class ConfigIssue:
    """A single configuration problem, located by line number."""

    line: int | None
    key: str
    message: str

    def __str__(self) -> str:
        where = f"line {self.line}" if self.line is not None else "config"
        return f"{where}: {self.key}: {self.message}"


class ConfigError(DomainException):
    """Raised when a scenario configuration fails to parse or validate."""

    def __init__(self, issues: list[ConfigIssue]):
        self.issues = list(issues)
        lines = "\n".join(f"  {issue}" for issue in self.issues)
        super().__init__(f"{len(self.issues)} configuration error(s):\n{lines}")


class OrderingRefusedError(DomainException):
    """Raised when supercritical initial data are not ordered against the barrier."""

    def __init__(self, worst_margin: float, violating_radius: float | None):
        self.worst_margin = worst_margin
        self.violating_radius = violating_radius
        super().__init__(
            "Initial data are not more concentrated than the barrier "
            f"(worst margin {worst_margin:.6g} at r={violating_radius}); "
            "pass --force to run anyway"
        )


class BracketSetupError(DomainException):
    """Raised when the bracket endpoints cannot start a bisection."""

    def __init__(self, message: str, lo: float | None = None, hi: float | None = None):
        self.lo = lo
        self.hi = hi
        super().__init__(message)

    @classmethod
    def inconsistent(cls, lo: float, lo_class: str, hi: float, hi_class: str) -> "BracketSetupError":
        return cls(
            f"Inconsistent bracket: mass {lo:.6g} classified {lo_class}, mass {hi:.6g} classified {hi_class}",
            lo,
            hi,
        )


class ClassificationError(DomainException):
    """Raised when a bracket run neither blows up nor stays bounded."""

    def __init__(self, mass: float, outcome: str, peak_growth: float, reason: object = None):
        self.mass = mass
        self.outcome = outcome
        self.peak_growth = peak_growth
        why = f", {reason}" if reason else ""
        super().__init__(
            f"Cannot classify mass {mass:.8g}: run ended {outcome} with peak x{peak_growth:.3g}{why}"
        )


class NumericalFailureError(DomainException):
    """Raised by the time stepper on non-finite values; ``run`` turns it into an Outcome."""
    pass
