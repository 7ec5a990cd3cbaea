"""Word enumeration, conjugacy classes and the primitive length spectrum."""

from .conjugacy import (
    ConjugacyClasses,
    ConjugacyClassRecord,
    conjugacy_classes,
    primitive_decomposition,
)
from .enumeration import ElementIndex, ElementSet, enumerate_elements, systole_search
from .presentation import GroupPresentation
from .spectrum import (
    LengthSpectrum,
    SpectrumEntry,
    cone_orders_of,
    cone_points,
    decomposed_classes,
    length_spectrum,
    spectrum_from_classes,
)

__all__ = [
    "ConjugacyClassRecord",
    "ConjugacyClasses",
    "ElementIndex",
    "ElementSet",
    "GroupPresentation",
    "LengthSpectrum",
    "SpectrumEntry",
    "cone_orders_of",
    "cone_points",
    "conjugacy_classes",
    "decomposed_classes",
    "enumerate_elements",
    "length_spectrum",
    "primitive_decomposition",
    "spectrum_from_classes",
    "systole_search",
]
