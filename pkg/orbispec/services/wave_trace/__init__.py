"""
Mollified wave trace: synthesis from geometry and inversion back to it.
"""

from .inversion import (
    Detection,
    InverseResult,
    detect_singularities,
    estimate_area,
    full_inverse,
    peel_off,
    residual_to_spectral,
)
from .model import (
    WaveTraceModel,
    iterate_coefficient,
    merge_singularities,
    model_from_spectrum,
    suggest_sigma,
)
from .synthesis import (
    IDENTITY_METHODS,
    PARTS,
    MollifiedTrace,
    add_delta_train,
    gaussian,
    identity_part,
    mollified_psi,
    peak_unit,
    singular_part,
    smooth_part,
    synthesize_mollified,
    transform_grid_max,
)

__all__ = [
    "IDENTITY_METHODS",
    "PARTS",
    "Detection",
    "InverseResult",
    "MollifiedTrace",
    "WaveTraceModel",
    "add_delta_train",
    "detect_singularities",
    "estimate_area",
    "full_inverse",
    "gaussian",
    "identity_part",
    "iterate_coefficient",
    "merge_singularities",
    "model_from_spectrum",
    "mollified_psi",
    "peak_unit",
    "peel_off",
    "residual_to_spectral",
    "singular_part",
    "smooth_part",
    "suggest_sigma",
    "synthesize_mollified",
    "transform_grid_max",
]
