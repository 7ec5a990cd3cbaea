"""
Conjugacy classes of enumerated elements and their primitive roots.

Classes are formed in two passes. Every element is first linked to its
conjugates by single generators (which covers cyclic rotations of its word),
giving connected components of the enumerated ball. Components whose
|trace| agree are then merged whenever :func:`approx_conjugate` finds a
conjugator among the elements of word length at most ``conjugator_depth``.
"""

from __future__ import annotations

import math
from collections.abc import Iterator
from dataclasses import dataclass, field, replace
from typing import Any

import numpy as np
import structlog
from scipy.cluster.hierarchy import DisjointSet
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from orbispec.config import setting
from orbispec.errors import InvalidInput, MissingRoot
from orbispec.services.hyperbolic import (
    IsometryKind,
    KindTag,
    MoebiusElement,
    approx_conjugate,
    classify,
    kth_root,
    power,
    rotation_angle,
    stack_inverse,
)

from .enumeration import ElementSet

logger = structlog.get_logger(__name__)

# Tolerance on length ratios when deciding that a class is a k-th power.
POWER_RATIO_TOL = 1e-6

_KIND_RANK = {KindTag.ELLIPTIC: 0, KindTag.HYPERBOLIC: 1, KindTag.PARABOLIC: 2}


@dataclass
class ConjugacyClassRecord:
    """One conjugacy class of the enumerated ball."""

    index: int
    representative_word: str
    matrix: MoebiusElement
    kind: IsometryKind
    size: int
    primitive_root: int | None = None
    power: int = 1
    # elliptic only: order m of the primitive root and exponent l in [1, m-1]
    order: int | None = None
    exponent: int | None = None
    inverse_class: int | None = None

    @property
    def length(self) -> float | None:
        return self.kind.length

    @property
    def norm(self) -> float | None:
        return self.kind.norm

    @property
    def is_hyperbolic(self) -> bool:
        return self.kind.is_hyperbolic

    @property
    def is_elliptic(self) -> bool:
        return self.kind.is_elliptic

    @property
    def is_primitive(self) -> bool:
        return self.primitive_root == self.index

    @property
    def self_inverse(self) -> bool:
        return self.inverse_class == self.index

    def to_dict(self) -> dict[str, Any]:
        data = {
            "index": self.index,
            "word": self.representative_word,
            "matrix": self.matrix.to_dict(),
            "size": self.size,
            "primitive_root": self.primitive_root,
            "power": self.power,
            **self.kind.to_dict(),
        }
        if self.is_elliptic:
            data.update(order=self.order, exponent=self.exponent)
        return data


@dataclass
class ConjugacyClasses:
    records: list[ConjugacyClassRecord]
    elements: ElementSet
    class_of: np.ndarray
    conjugator_depth: int
    _conjugators: np.ndarray | None = field(default=None, repr=False)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self) -> Iterator[ConjugacyClassRecord]:
        return iter(self.records)

    def __getitem__(self, index: int) -> ConjugacyClassRecord:
        return self.records[index]

    @property
    def conjugators(self) -> np.ndarray:
        if self._conjugators is None:
            self._conjugators = self.elements.matrices[
                self.elements.up_to(self.conjugator_depth)
            ]
        return self._conjugators

    def hyperbolic(self) -> list[ConjugacyClassRecord]:
        return [r for r in self.records if r.is_hyperbolic]

    def elliptic(self) -> list[ConjugacyClassRecord]:
        return [r for r in self.records if r.is_elliptic]

    def class_of_element(self, g: MoebiusElement) -> ConjugacyClassRecord | None:
        position = self.elements.lookup(g)
        if position is None or self.class_of[position] < 0:
            return None
        return self.records[int(self.class_of[position])]

    def are_conjugate(self, g: MoebiusElement, h: MoebiusElement) -> bool:
        return approx_conjugate(g, h, self.conjugators)


def _generator_edges(
    elements: ElementSet, active: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Pairs (g, s·g·s^{-1}) over every generator symbol s, for active g."""
    matrices = elements.matrices[active]
    generators = elements.presentation.as_stack()
    inverses = stack_inverse(generators)
    rows: list[np.ndarray] = []
    cols: list[np.ndarray] = []
    for s, s_inv in zip(generators, inverses, strict=True):
        conjugated = s[None] @ matrices @ s_inv[None]
        found = elements.lookup_stack(conjugated)
        hit = np.flatnonzero(found >= 0)
        rows.append(active[hit])
        cols.append(found[hit])
    return np.concatenate(rows), np.concatenate(cols)


def _trace_runs(traces: np.ndarray, order: np.ndarray, tol: float) -> Iterator[np.ndarray]:
    """Runs of ``order`` whose consecutive |trace| differ by at most tol."""
    if len(order) == 0:
        return
    sorted_traces = traces[order]
    breaks = np.flatnonzero(np.diff(sorted_traces) > tol) + 1
    for run in np.split(order, breaks):
        if len(run) > 1:
            yield run


def conjugacy_classes(
    elements: ElementSet,
    conjugator_depth: int | None = None,
    *,
    max_trace: float | None = None,
    tol: float | None = None,
) -> ConjugacyClasses:
    """Partition the non-identity enumerated elements into conjugacy classes.

    With ``max_trace`` hyperbolic elements of larger |trace| are left
    unclassified (class -1).
    """
    tol = setting("EPS_CONJ", tol)
    if conjugator_depth is None:
        conjugator_depth = min(elements.max_word_length, 4)
    if not 0 <= conjugator_depth <= elements.max_word_length:
        raise InvalidInput(
            "conjugator_depth must lie between 0 and the enumeration depth",
            conjugator_depth=conjugator_depth,
            depth=elements.max_word_length,
        )

    count = len(elements)
    traces = elements.traces
    active_mask = np.ones(count, dtype=bool)
    active_mask[0] = False
    if max_trace is not None:
        active_mask &= (traces <= max_trace + tol) | (traces < 2)
    active = np.flatnonzero(active_mask)
    rows, cols = _generator_edges(elements, active)
    graph = coo_matrix((np.ones(len(rows)), (rows, cols)), shape=(count, count))
    n_components, labels = connected_components(graph, directed=False)

    # minimal position per component is its representative
    representatives = np.full(n_components, count, dtype=np.int64)
    np.minimum.at(representatives, labels, np.arange(count))
    identity_component = int(labels[0])

    conjugators = elements.matrices[elements.up_to(conjugator_depth)]
    merged = DisjointSet(range(n_components))
    candidates = np.unique(labels[active])
    candidates = candidates[candidates != identity_component]
    order = candidates[np.argsort(traces[representatives[candidates]], kind="stable")]
    for run in _trace_runs(traces[representatives], order, tol):
        run_elements = [elements.element(int(representatives[c])) for c in run]
        for i in range(len(run)):
            for j in range(i + 1, len(run)):
                if merged.connected(int(run[i]), int(run[j])):
                    continue
                if approx_conjugate(run_elements[i], run_elements[j], conjugators, tol):
                    merged.merge(int(run[i]), int(run[j]))

    active_components = set(candidates.tolist())
    groups = [
        sorted(subset)
        for subset in merged.subsets()
        if not subset.isdisjoint(active_components)
    ]
    group_members: list[np.ndarray] = []
    drafts: list[tuple[tuple, ConjugacyClassRecord]] = []
    component_sizes = np.bincount(labels, minlength=n_components)
    for subset in groups:
        rep = int(min(representatives[c] for c in subset))
        matrix = elements.element(rep)
        kind = classify(matrix, cocompact=elements.presentation.cocompact)
        record = ConjugacyClassRecord(
            index=-1,
            representative_word=elements.words[rep],
            matrix=matrix,
            kind=kind,
            size=int(sum(component_sizes[c] for c in subset)),
        )
        key = (_KIND_RANK.get(kind.tag, 3), round(float(traces[rep]), 9), rep)
        drafts.append((key, record))
        group_members.append(np.array(subset, dtype=np.int64))

    arrangement = sorted(range(len(drafts)), key=lambda i: drafts[i][0])
    component_to_class = np.full(n_components, -1, dtype=np.int64)
    records: list[ConjugacyClassRecord] = []
    for new_index, old_index in enumerate(arrangement):
        record = drafts[old_index][1]
        record.index = new_index
        record.primitive_root = None
        records.append(record)
        component_to_class[group_members[old_index]] = new_index
    class_of = component_to_class[labels]

    inverse_positions = elements.lookup_stack(
        stack_inverse(np.array([r.matrix.to_array() for r in records]).reshape(-1, 2, 2))
    )
    for record, position in zip(records, inverse_positions, strict=True):
        if position >= 0:
            record.inverse_class = int(class_of[position])
        if record.is_hyperbolic and record.self_inverse:
            logger.info(
                "self_inverse_class",
                word=record.representative_word,
                length=record.length,
            )

    logger.info(
        "conjugacy_classes",
        elements=count,
        classes=len(records),
        conjugator_depth=conjugator_depth,
    )
    return ConjugacyClasses(records, elements, class_of, conjugator_depth)


def _word_root(word: str) -> tuple[str, int]:
    """Shortest u with word == u^k, and k."""
    size = len(word)
    for period in range(1, size):
        if size % period == 0 and word[:period] * (size // period) == word:
            return word[:period], size // period
    return word, 1


def _rotation_index(record: ConjugacyClassRecord) -> int:
    """j with rotation angle 2πj/n, n the order of the element."""
    n = record.kind.order
    if n is None:
        raise InvalidInput(
            "Elliptic element of irrational rotation", word=record.representative_word
        )
    return round(rotation_angle(record.matrix) * n / (2 * math.pi)) % n


class _RootFinder:
    """Matches classes against powers of shorter classes."""

    def __init__(self, classes: ConjugacyClasses):
        self.classes = classes
        self.hyperbolic = sorted(classes.hyperbolic(), key=lambda r: (r.length, r.index))
        self.lengths = np.array([r.length for r in self.hyperbolic], dtype=float)
        rotations = [
            (r.kind.order, r) for r in classes.elliptic() if _rotation_index(r) == 1
        ]
        self.rotations = sorted(rotations, key=lambda item: (-item[0], item[1].index))

    def _is_power(
        self, candidate: ConjugacyClassRecord, k: int, record: ConjugacyClassRecord
    ) -> bool:
        image = power(candidate.matrix, k)
        position = self.classes.elements.lookup(image)
        if position is not None and int(self.classes.class_of[position]) == record.index:
            return True
        return self.classes.are_conjugate(image, record.matrix)

    def hyperbolic_root(self, record: ConjugacyClassRecord) -> tuple[int, int]:
        assert record.length is not None
        k_max = int(math.floor(record.length / self.lengths[0] + POWER_RATIO_TOL))
        for k in range(k_max, 1, -1):
            target = record.length / k
            position = self.classes.elements.lookup(kth_root(record.matrix, k))
            if position is not None:
                found = int(self.classes.class_of[position])
                if found < 0:
                    raise MissingRoot(
                        "Root element enumerated but its class is missing",
                        word=record.representative_word,
                        power=k,
                    )
                return found, k
            window = POWER_RATIO_TOL * k
            lo = np.searchsorted(self.lengths, target - window, side="left")
            hi = np.searchsorted(self.lengths, target + window, side="right")
            for candidate in self.hyperbolic[lo:hi]:
                if self._is_power(candidate, k, record):
                    return candidate.index, k

        stem, repeats = _word_root(record.representative_word)
        if repeats > 1:
            raise MissingRoot(
                "Representative is a proper power but no root class was found",
                word=record.representative_word,
                root_word=stem,
            )
        return record.index, 1

    def elliptic_root(self, record: ConjugacyClassRecord) -> tuple[int, int, int]:
        """(root index, root order m, exponent l) with record = root^l."""
        n = record.kind.order
        assert n is not None
        j = _rotation_index(record)
        for m, candidate in self.rotations:
            if m % n or candidate.index == record.index:
                continue
            exponent = j * m // n
            if 1 <= exponent <= m - 1 and self._is_power(candidate, exponent, record):
                return candidate.index, m, exponent
        if j == 1:
            return record.index, n, 1
        raise MissingRoot(
            "No primitive rotation found for elliptic class",
            word=record.representative_word,
            order=n,
            rotation=j,
        )


def primitive_decomposition(classes: ConjugacyClasses) -> ConjugacyClasses:
    """Fill primitive roots, powers and elliptic exponents of every class.

    Hyperbolic powers are found from the largest admissible k downwards, so
    the first root found is primitive. Elliptic classes are matched against
    the rotations by 2π/m, largest m first.
    """
    finder = _RootFinder(classes)
    updated: list[ConjugacyClassRecord] = []
    for record in classes.records:
        if record.is_hyperbolic:
            root, k = finder.hyperbolic_root(record)
            updated.append(replace(record, primitive_root=root, power=k))
        elif record.is_elliptic:
            root, m, exponent = finder.elliptic_root(record)
            updated.append(
                replace(record, primitive_root=root, power=exponent, order=m, exponent=exponent)
            )
        else:
            updated.append(replace(record, primitive_root=record.index))

    result = replace(classes, records=updated)
    for record in result.hyperbolic():
        if not record.is_primitive:
            assert record.primitive_root is not None
            logger.debug(
                "hyperbolic_power",
                word=record.representative_word,
                root=result.records[record.primitive_root].representative_word,
                power=record.power,
            )
    return result
