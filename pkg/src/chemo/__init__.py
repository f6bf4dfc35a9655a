"""Radial chemo-attractant solves and the interaction energy."""
from .dependencies import create_chemo_solver
from .field import potential_energy, solve_gamma_positive, solve_gamma_zero
from .models import ChemoField

__all__ = [
    "ChemoField",
    "create_chemo_solver",
    "potential_energy",
    "solve_gamma_positive",
    "solve_gamma_zero",
]
