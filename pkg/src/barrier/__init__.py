"""Collapsing subsolution, fixed-radius supersolution and ordering monitors."""
from .collapse import (
    Barrier,
    barrier_mass,
    blow_up_time_bound,
    collapse_time,
    integrate_radius_ode,
    ode_collapse_time,
    radius_at,
)
from .monitors import ComparisonMonitor, FixedSupersolution, SupersolutionMonitor
from .ordering import OrderingReport, check_initial_ordering, comparison_gap, locate_comparison_gap

__all__ = [
    "Barrier",
    "barrier_mass",
    "blow_up_time_bound",
    "collapse_time",
    "integrate_radius_ode",
    "ode_collapse_time",
    "radius_at",
    "ComparisonMonitor",
    "FixedSupersolution",
    "SupersolutionMonitor",
    "OrderingReport",
    "check_initial_ordering",
    "comparison_gap",
    "locate_comparison_gap",
]
