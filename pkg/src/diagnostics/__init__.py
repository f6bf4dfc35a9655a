"""Scalar diagnostics: free energy, HLS ratio, concentration and the δ-family norms."""
from .concentration import ConcentrationReport, concentration_monitor, concentration_threshold
from .energy import (
    EnergyParts,
    dissipation_violations,
    entropy,
    free_energy,
    scheme_free_energy,
    scheme_potential_energy,
)
from .hls import hls_ratio, hls_ratio_double_quadrature, interaction_integral
from .reverse_holder import NormTriple, admissible_alpha, norm_at_zero_delta, reverse_holder_family

__all__ = [
    "ConcentrationReport",
    "concentration_monitor",
    "concentration_threshold",
    "EnergyParts",
    "dissipation_violations",
    "entropy",
    "free_energy",
    "scheme_free_energy",
    "scheme_potential_energy",
    "hls_ratio",
    "hls_ratio_double_quadrature",
    "interaction_integral",
    "NormTriple",
    "admissible_alpha",
    "norm_at_zero_delta",
    "reverse_holder_family",
]
