"""
Length spectrum and cone points of a Fuchsian group.
"""

from __future__ import annotations

import math
from collections.abc import Iterator
from dataclasses import dataclass, field
from typing import Any

import structlog

from orbispec.config import setting
from orbispec.errors import InvalidInput

from .conjugacy import ConjugacyClasses, conjugacy_classes, primitive_decomposition
from .enumeration import enumerate_elements
from .presentation import GroupPresentation

logger = structlog.get_logger(__name__)


@dataclass(frozen=True)
class SpectrumEntry:
    length: float
    multiplicity: int
    word: str = ""

    def to_dict(self) -> dict[str, Any]:
        return {
            "length": self.length,
            "multiplicity": self.multiplicity,
            "word": self.word,
            "primitive": True,
        }


@dataclass(frozen=True)
class LengthSpectrum:
    """Oriented primitive closed geodesics with multiplicities.

    ``completeness_bound`` is the length below which the entries were
    certified stable against a deeper enumeration; None when no
    certification was run.
    """

    entries: tuple[SpectrumEntry, ...] = ()
    completeness_bound: float | None = None
    max_length: float | None = None
    depth: int | None = None
    classes: ConjugacyClasses | None = field(default=None, repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[SpectrumEntry]:
        return iter(self.entries)

    @property
    def lengths(self) -> list[float]:
        return [e.length for e in self.entries]

    @property
    def systole(self) -> float | None:
        return self.entries[0].length if self.entries else None

    @property
    def total_multiplicity(self) -> int:
        return sum(e.multiplicity for e in self.entries)

    def below(self, length: float) -> LengthSpectrum:
        return LengthSpectrum(
            tuple(e for e in self.entries if e.length <= length),
            completeness_bound=self.completeness_bound,
            max_length=length,
            depth=self.depth,
        )

    def iterates(self, max_length: float) -> Iterator[tuple[int, float, SpectrumEntry]]:
        """(k, k·ℓ, entry) for every iterate with k·ℓ <= max_length."""
        for entry in self.entries:
            k = 1
            while k * entry.length <= max_length:
                yield k, k * entry.length, entry
                k += 1

    def to_dict(self) -> dict[str, Any]:
        return {
            "entries": [e.to_dict() for e in self.entries],
            "completeness_bound": self.completeness_bound,
            "max_length": self.max_length,
        }

    @classmethod
    def from_pairs(
        cls,
        pairs: list[tuple[float, int]],
        *,
        completeness_bound: float | None = None,
        eps_len: float | None = None,
    ) -> LengthSpectrum:
        """Build a spectrum from (length, multiplicity) pairs, merging close lengths."""
        eps_len = setting("EPS_LEN", eps_len)
        for length, multiplicity in pairs:
            if not length > 0 or multiplicity < 1:
                raise InvalidInput(
                    "Spectrum entries need positive length and multiplicity",
                    length=length,
                    multiplicity=multiplicity,
                )
        merged = _merge([(float(length), int(m), "") for length, m in pairs], eps_len)
        return cls(tuple(merged), completeness_bound=completeness_bound)


def _merge(items: list[tuple[float, int, str]], eps_len: float) -> list[SpectrumEntry]:
    entries: list[SpectrumEntry] = []
    group: list[tuple[float, int, str]] = []
    for item in sorted(items, key=lambda x: (x[0], x[2])):
        if group and item[0] - group[0][0] > eps_len:
            entries.append(_combine(group))
            group = []
        group.append(item)
    if group:
        entries.append(_combine(group))
    return entries


def _combine(group: list[tuple[float, int, str]]) -> SpectrumEntry:
    multiplicity = sum(m for _, m, _ in group)
    length = math.fsum(value * m for value, m, _ in group) / multiplicity
    word = min((w for _, _, w in group), key=lambda w: (len(w), w))
    return SpectrumEntry(length, multiplicity, word)


def spectrum_from_classes(
    classes: ConjugacyClasses, max_length: float, *, eps_len: float | None = None
) -> LengthSpectrum:
    """Primitive hyperbolic classes of length at most ``max_length``."""
    eps_len = setting("EPS_LEN", eps_len)
    items = [
        (record.length, 1, record.representative_word)
        for record in classes.hyperbolic()
        if record.is_primitive
        and record.length is not None
        and record.length <= max_length + eps_len
    ]
    entries = _merge(items, eps_len)
    for entry in entries:
        if entry.multiplicity % 2:
            logger.info("odd_multiplicity", length=entry.length, multiplicity=entry.multiplicity)
    return LengthSpectrum(
        tuple(entries),
        max_length=max_length,
        depth=classes.elements.max_word_length,
        classes=classes,
    )


def decomposed_classes(
    pres: GroupPresentation,
    depth: int,
    *,
    max_length: float | None = None,
    conjugator_depth: int | None = None,
) -> ConjugacyClasses:
    """Enumerate, classify and decompose in one go.

    With ``max_length`` only hyperbolic elements short enough to matter take
    part in class formation.
    """
    elements = enumerate_elements(pres, depth)
    max_trace = None if max_length is None else 2 * math.cosh(max_length / 2)
    classes = conjugacy_classes(elements, conjugator_depth, max_trace=max_trace)
    return primitive_decomposition(classes)


def _stable_below(shallow: LengthSpectrum, deep: LengthSpectrum, max_length: float, eps_len: float) -> float:
    for a, b in zip(shallow.entries, deep.entries, strict=False):
        if abs(a.length - b.length) > eps_len or a.multiplicity != b.multiplicity:
            return min(a.length, b.length)
    if len(shallow) != len(deep):
        longer = shallow if len(shallow) > len(deep) else deep
        return longer.entries[min(len(shallow), len(deep))].length
    return max_length


def length_spectrum(
    pres: GroupPresentation,
    max_length: float,
    depth: int,
    *,
    certify: bool = True,
    conjugator_depth: int | None = None,
) -> LengthSpectrum:
    """Primitive length spectrum up to ``max_length`` from words of length <= depth.

    With ``certify`` the computation is repeated at depth + 2 and the
    completeness bound is the first length at which the two disagree. The
    deeper spectrum is returned.
    """
    if not max_length > 0:
        raise InvalidInput("max_length must be positive", max_length=max_length)
    eps_len = setting("EPS_LEN")
    classes = decomposed_classes(
        pres, depth, max_length=max_length, conjugator_depth=conjugator_depth
    )
    spectrum = spectrum_from_classes(classes, max_length)
    if not certify:
        return spectrum

    deep_classes = decomposed_classes(
        pres, depth + 2, max_length=max_length, conjugator_depth=conjugator_depth
    )
    deep = spectrum_from_classes(deep_classes, max_length)
    bound = _stable_below(spectrum, deep, max_length, eps_len)
    logger.info(
        "length_spectrum",
        depth=depth,
        entries=len(deep),
        completeness_bound=bound,
    )
    return LengthSpectrum(
        deep.entries,
        completeness_bound=bound,
        max_length=max_length,
        depth=depth + 2,
        classes=deep_classes,
    )


def cone_points(pres: GroupPresentation, depth: int = 1) -> list[int]:
    """Orders of the primitive elliptic classes, ascending."""
    classes = decomposed_classes(pres, depth, max_length=0.0)
    return cone_orders_of(classes)


def cone_orders_of(classes: ConjugacyClasses) -> list[int]:
    orders = [
        record.order
        for record in classes.elliptic()
        if record.is_primitive and record.order is not None
    ]
    return sorted(orders)
