"""
Generating sets for Fuchsian groups.
"""

from __future__ import annotations

import string
from dataclasses import dataclass

import numpy as np

from orbispec.config import setting
from orbispec.errors import InvalidInput
from orbispec.services.hyperbolic import MoebiusElement, classify, stack


@dataclass(frozen=True)
class GroupPresentation:
    """Generators closed under inverses, one symbol per generator.

    Lower-case letters name the supplied generators and upper-case letters
    their inverses. Involutions are their own inverse and get no upper-case
    symbol.
    """

    generators: tuple[MoebiusElement, ...]
    labels: tuple[str, ...]
    inverse_of: tuple[int, ...]
    cocompact: bool = True

    @classmethod
    def from_generators(
        cls,
        generators: list[MoebiusElement] | tuple[MoebiusElement, ...],
        *,
        cocompact: bool = True,
        tol: float | None = None,
    ) -> GroupPresentation:
        tol = setting("EPS_DEDUP", tol)
        if not generators:
            raise InvalidInput("A presentation needs at least one generator")
        if len(generators) > len(string.ascii_lowercase):
            raise InvalidInput("Too many generators", count=len(generators))

        elements: list[MoebiusElement] = []
        labels: list[str] = []
        inverse_of: list[int] = []
        for position, generator in enumerate(generators):
            if generator.is_identity(tol):
                raise InvalidInput("Identity is not a valid generator", index=position)
            # raises ParabolicInCocompact for parabolic generators
            classify(generator, cocompact=cocompact)
            letter = string.ascii_lowercase[position]
            inverse = generator.inverse()
            forward_index = len(elements)
            elements.append(generator)
            labels.append(letter)
            if inverse.is_close(generator, tol):
                inverse_of.append(forward_index)
                continue
            inverse_of.append(forward_index + 1)
            elements.append(inverse)
            labels.append(letter.upper())
            inverse_of.append(forward_index)

        return cls(tuple(elements), tuple(labels), tuple(inverse_of), cocompact)

    def __len__(self) -> int:
        return len(self.generators)

    def as_stack(self) -> np.ndarray:
        return stack(list(self.generators))

    def label_index(self) -> dict[str, int]:
        return {label: i for i, label in enumerate(self.labels)}

    def inverse_label(self, label: str) -> str:
        index = self.label_index()[label]
        return self.labels[self.inverse_of[index]]

    def evaluate(self, word: str) -> MoebiusElement:
        """Matrix of a word in the generator symbols."""
        lookup = self.label_index()
        result = MoebiusElement.identity()
        for symbol in word:
            if symbol not in lookup:
                raise InvalidInput(f"Unknown generator symbol {symbol!r}")
            result = result @ self.generators[lookup[symbol]]
        return result
