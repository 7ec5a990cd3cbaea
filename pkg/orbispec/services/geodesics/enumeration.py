"""
Breadth-first enumeration of group elements by word length.

Each layer multiplies the previous layer on the right by every generator,
sorts the candidate words lexicographically and keeps the first word seen
for each matrix. The result is the ball of the given radius in the Cayley
graph, each element labelled by its shortest (then lexicographically
smallest) word.
"""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass

import numpy as np
import structlog

from orbispec.config import setting
from orbispec.errors import BudgetExceeded, InvalidInput
from orbispec.services.hyperbolic import MoebiusElement, canonicalize_stack

from .presentation import GroupPresentation

logger = structlog.get_logger(__name__)

# Elements with |trace| below this are registered under both signs so the
# sign choice of traceless matrices never hides a duplicate.
_TRACELESS = 1e-6


class ElementIndex:
    """Tolerant matrix lookup.

    Matrices are bucketed on two grids of spacing ``quantum`` offset by half a
    cell. Two nearby matrices share a bucket in at least one grid unless they
    straddle a cell boundary of each grid in different coordinates; such a
    pair is not detected and both are kept.
    """

    def __init__(self, quantum: float):
        self.quantum = quantum
        self._grids: tuple[dict[tuple, int], dict[tuple, int]] = ({}, {})

    def _keys(self, matrices: np.ndarray) -> tuple[list[tuple], list[tuple]]:
        scaled = np.asarray(matrices, dtype=float).reshape(-1, 4) / self.quantum
        grid_a = np.floor(scaled).astype(np.int64)
        grid_b = np.floor(scaled + 0.5).astype(np.int64)
        return (
            [tuple(row) for row in grid_a.tolist()],
            [tuple(row) for row in grid_b.tolist()],
        )

    def _find(self, key_a: tuple, key_b: tuple) -> int:
        found = self._grids[0].get(key_a)
        if found is None:
            found = self._grids[1].get(key_b)
        return -1 if found is None else found

    def _insert(self, key_a: tuple, key_b: tuple, position: int) -> None:
        self._grids[0].setdefault(key_a, position)
        self._grids[1].setdefault(key_b, position)

    def add(self, matrices: np.ndarray, positions: list[int]) -> None:
        keys_a, keys_b = self._keys(matrices)
        for key_a, key_b, position in zip(keys_a, keys_b, positions, strict=True):
            self._insert(key_a, key_b, position)
        traces = np.abs(matrices[:, 0, 0] + matrices[:, 1, 1])
        flipped = np.flatnonzero(traces < _TRACELESS)
        if len(flipped):
            neg_a, neg_b = self._keys(-matrices[flipped])
            for key_a, key_b, row in zip(neg_a, neg_b, flipped, strict=True):
                self._insert(key_a, key_b, positions[row])

    def lookup(self, matrices: np.ndarray) -> np.ndarray:
        """Index of each matrix in the set, -1 when absent."""
        keys_a, keys_b = self._keys(matrices)
        return np.array(
            [self._find(a, b) for a, b in zip(keys_a, keys_b, strict=True)],
            dtype=np.int64,
        )

    def insert_new(self, matrices: np.ndarray, start: int) -> list[int]:
        """Insert matrices in order, skipping those already present.

        Returns the rows that were new; they receive consecutive positions
        starting at ``start``.
        """
        keys_a, keys_b = self._keys(matrices)
        traces = np.abs(matrices[:, 0, 0] + matrices[:, 1, 1])
        accepted: list[int] = []
        position = start
        for row, (key_a, key_b) in enumerate(zip(keys_a, keys_b, strict=True)):
            if self._find(key_a, key_b) >= 0:
                continue
            self._insert(key_a, key_b, position)
            if traces[row] < _TRACELESS:
                neg_a, neg_b = self._keys(-matrices[row : row + 1])
                self._insert(neg_a[0], neg_b[0], position)
            accepted.append(row)
            position += 1
        return accepted


@dataclass
class ElementSet:
    """Deduplicated group elements with their shortest words."""

    presentation: GroupPresentation
    words: list[str]
    matrices: np.ndarray
    word_lengths: np.ndarray
    max_word_length: int
    dedup_tol: float
    index: ElementIndex

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self) -> Iterator[tuple[str, MoebiusElement]]:
        for word, matrix in zip(self.words, self.matrices, strict=True):
            yield word, MoebiusElement.from_array(matrix)

    def element(self, position: int) -> MoebiusElement:
        return MoebiusElement.from_array(self.matrices[position])

    @property
    def traces(self) -> np.ndarray:
        return np.abs(self.matrices[:, 0, 0] + self.matrices[:, 1, 1])

    def up_to(self, length: int) -> np.ndarray:
        """Positions of elements whose word length is at most ``length``."""
        return np.flatnonzero(self.word_lengths <= length)

    def lookup(self, g: MoebiusElement) -> int | None:
        found = int(self.index.lookup(g.to_array()[None])[0])
        return None if found < 0 else found

    def lookup_stack(self, matrices: np.ndarray) -> np.ndarray:
        return self.index.lookup(canonicalize_stack(matrices))


def enumerate_elements(
    pres: GroupPresentation,
    max_word_length: int,
    *,
    dedup_tol: float | None = None,
    cap: int | None = None,
) -> ElementSet:
    """All elements of word length at most ``max_word_length``."""
    if max_word_length < 0:
        raise InvalidInput("max_word_length must be nonnegative", depth=max_word_length)
    dedup_tol = setting("EPS_DEDUP", dedup_tol)
    cap = setting("ELEMENT_CAP", cap)

    generators = pres.as_stack()
    labels = pres.labels
    inverse_labels = [labels[j] for j in pres.inverse_of]

    index = ElementIndex(dedup_tol)
    identity = np.eye(2)[None]
    index.add(identity, [0])
    words: list[str] = [""]
    blocks: list[np.ndarray] = [identity]
    lengths: list[int] = [0]
    frontier_words: list[str] = [""]
    frontier = identity
    total = 1

    for length in range(1, max_word_length + 1):
        products = np.einsum("nij,gjk->ngik", frontier, generators).reshape(-1, 2, 2)
        candidate_words = [w + s for w in frontier_words for s in labels]
        # reduced words only: no symbol directly followed by its inverse
        keep = [
            not (w and w[-1] == inverse_labels[s])
            for w in frontier_words
            for s in range(len(labels))
        ]
        rows = [i for i in np.flatnonzero(keep).tolist()]
        rows.sort(key=candidate_words.__getitem__)
        if not rows:
            break
        candidates = canonicalize_stack(products[rows])
        accepted = index.insert_new(candidates, total)
        if not accepted:
            break
        frontier = candidates[accepted]
        frontier_words = [candidate_words[rows[i]] for i in accepted]
        words.extend(frontier_words)
        blocks.append(frontier)
        lengths.extend([length] * len(accepted))
        total += len(accepted)
        logger.debug("enumeration_layer", length=length, new=len(accepted), total=total)
        if total > cap:
            raise BudgetExceeded(
                "Element count passed the enumeration cap",
                cap=cap,
                count=total,
                depth=length,
            )

    logger.info("enumeration_done", depth=max_word_length, elements=total)
    return ElementSet(
        presentation=pres,
        words=words,
        matrices=np.concatenate(blocks),
        word_lengths=np.array(lengths, dtype=np.int64),
        max_word_length=max_word_length,
        dedup_tol=dedup_tol,
        index=index,
    )


def systole_search(
    pres: GroupPresentation, max_word_length: int, *, eps_cls: float | None = None
) -> tuple[float, str]:
    """Minimal hyperbolic |trace| over the word tree, as (length, word).

    Walks every reduced word layer by layer, collapsing only repeated
    matrices within a layer, independently of :func:`enumerate_elements`.
    """
    eps_cls = setting("EPS_CLS", eps_cls)
    generators = pres.as_stack()
    labels = pres.labels
    inverse_labels = [labels[j] for j in pres.inverse_of]
    layer = np.eye(2)[None]
    layer_words = [""]
    best_trace = np.inf
    best_word = ""
    for _ in range(max_word_length):
        products = np.einsum("nij,gjk->ngik", layer, generators).reshape(-1, 2, 2)
        words = [w + s for w in layer_words for s in labels]
        keep = np.array(
            [
                not (w and w[-1] == inverse_labels[s])
                for w in layer_words
                for s in range(len(labels))
            ]
        )
        products = canonicalize_stack(products[keep])
        words = [w for w, k in zip(words, keep, strict=True) if k]
        rounded = np.round(products.reshape(-1, 4), 7)
        _, first = np.unique(rounded, axis=0, return_index=True)
        first.sort()
        layer = products[first]
        layer_words = [words[i] for i in first]
        traces = np.abs(layer[:, 0, 0] + layer[:, 1, 1])
        hyperbolic = np.flatnonzero(traces > 2 + eps_cls)
        if len(hyperbolic):
            pick = hyperbolic[np.argmin(traces[hyperbolic])]
            if traces[pick] < best_trace:
                best_trace = float(traces[pick])
                best_word = layer_words[pick]
    if not np.isfinite(best_trace):
        raise InvalidInput("No hyperbolic element within the searched word length")
    return 2 * float(np.arccosh(best_trace / 2)), best_word
