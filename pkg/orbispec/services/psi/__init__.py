"""
Elliptic profile functions ψ_m, their transforms Ψ_m and cone-sum fitting.
"""

from .decomposition import (
    ConeFit,
    brute_force_cone_sum,
    cone_sum_samples,
    decompose_cone_sum,
    gram_matrix,
    psi_basis,
)
from .functions import Psi_time, Psi_time_grid, psi_asymptotic, psi_integral, psi_value
from .sampled import SampledFunction, uniform_grid

__all__ = [
    "ConeFit",
    "Psi_time",
    "Psi_time_grid",
    "SampledFunction",
    "brute_force_cone_sum",
    "cone_sum_samples",
    "decompose_cone_sum",
    "gram_matrix",
    "psi_asymptotic",
    "psi_basis",
    "psi_integral",
    "psi_value",
    "uniform_grid",
]
