"""
Recover the cone orders behind a sampled sum Σ_x ψ_{m(x)}.

The fit is an integer least-squares problem over counts c_2..c_M. Starting
points come from the rounded nonnegative least-squares solution and from a
greedy peel of the tail (largest m decays slowest); each start is refined by
unit moves on single coordinates and unit transfers between coordinates.
The box of small counts around the result is then searched exhaustively,
split in two halves so that only the cross terms are formed per block.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np
import structlog
from scipy.optimize import nnls

from orbispec.config import setting
from orbispec.errors import AmbiguousFit, InvalidInput, NonIntegerFit

from .functions import psi_value
from .sampled import SampledFunction

logger = structlog.get_logger(__name__)

MIN_R_MAX = 15.0
MAX_R_STEP = 0.1
EXACT_FIT_REL = 1e-8
AMBIGUITY_FACTOR = 2.0
# Entries of the half-by-half residual block evaluated at once.
BOX_CHUNK = 1 << 20
BOX_KEEP = 8
MAX_LOCAL_ROUNDS = 200


@dataclass(frozen=True)
class ConeFit:
    """Integer counts per order with the residual they leave."""

    orders: tuple[int, ...]
    counts: tuple[int, ...]
    residual: float
    runner_up: float | None = None

    @property
    def multiset(self) -> list[int]:
        return [m for m, c in zip(self.orders, self.counts, strict=True) for _ in range(c)]


def psi_basis(orders: Iterable[int], grid: np.ndarray) -> np.ndarray:
    """Columns ψ_m(grid) for each order."""
    return np.column_stack([psi_value(m, grid) for m in orders])


def gram_matrix(max_order: int = 12, r_max: float = 20.0, step: float = 0.05) -> np.ndarray:
    """BᵀB for the basis ψ_2..ψ_max_order sampled on [0, r_max]."""
    grid = step * np.arange(int(round(r_max / step)) + 1)
    basis = psi_basis(range(2, max_order + 1), grid)
    return basis.T @ basis


def cone_sum_samples(
    orders: Iterable[int], r_max: float | None = None, step: float | None = None
) -> SampledFunction:
    """Σ ψ_m over a multiset of orders on the default decomposition grid."""
    r_max = setting("DECOMPOSE_R_MAX", r_max)
    step = setting("DECOMPOSE_R_STEP", step)
    orders = list(orders)

    def total(grid: np.ndarray) -> np.ndarray:
        values = np.zeros_like(grid)
        for m in orders:
            values = values + psi_value(m, grid)
        return values

    return SampledFunction.from_function(total, 0.0, r_max, step, "r", orders=sorted(orders))


def _check_samples(S: SampledFunction) -> None:
    if S.variable != "r":
        raise InvalidInput("Cone decomposition works on r-side samples", variable=S.variable)
    if S.stop < MIN_R_MAX or S.step > MAX_R_STEP:
        raise InvalidInput(
            "Samples must reach r >= 15 with step <= 0.1", r_max=S.stop, step=S.step
        )


class _Objective:
    """Squared residual ‖y - Bc‖² through the Gram matrix."""

    def __init__(self, basis: np.ndarray, values: np.ndarray):
        self.gram = basis.T @ basis
        self.projection = basis.T @ values
        self.energy = float(values @ values)
        self.basis = basis
        self.values = values
        self.seen: dict[tuple[int, ...], float] = {}

    def __call__(self, counts: tuple[int, ...]) -> float:
        if counts not in self.seen:
            c = np.array(counts, dtype=float)
            residual = self.values - self.basis @ c
            self.seen[counts] = float(np.linalg.norm(residual))
        return self.seen[counts]


def _greedy_tail_peel(S: SampledFunction, orders: list[int]) -> tuple[int, ...]:
    """Largest order first, each count read from the tail of the remainder."""
    remainder = S.values.copy()
    counts = dict.fromkeys(orders, 0)
    for m in sorted(orders, reverse=True):
        column = psi_value(m, S.grid)
        tail = S.grid >= S.stop / 3
        weight = float(column[tail] @ column[tail])
        if weight == 0:
            continue
        estimate = float(remainder[tail] @ column[tail]) / weight
        counts[m] = max(0, round(estimate))
        remainder = remainder - counts[m] * column
    return tuple(counts[m] for m in orders)


def _neighbours(counts: tuple[int, ...]) -> list[tuple[int, ...]]:
    size = len(counts)
    moves: list[tuple[int, ...]] = []
    for i in range(size):
        for delta in (1, -1):
            if counts[i] + delta >= 0:
                moves.append(counts[:i] + (counts[i] + delta,) + counts[i + 1 :])
    for i in range(size):
        for j in range(size):
            if i != j and counts[j] > 0:
                moved = list(counts)
                moved[i] += 1
                moved[j] -= 1
                moves.append(tuple(moved))
    return moves


def _local_search(objective: _Objective, start: tuple[int, ...]) -> tuple[int, ...]:
    current = start
    for _ in range(MAX_LOCAL_ROUNDS):
        best = min(_neighbours(current), key=objective, default=current)
        if objective(best) >= objective(current):
            return current
        current = best
    return current


def _count_grid(size: int, base: int) -> np.ndarray:
    index = np.arange(base**size)
    return (index[:, None] // base ** np.arange(size)[None, :]) % base


def _box_search(
    objective: _Objective, size: int, max_count: int, keep: int = BOX_KEEP
) -> list[tuple[int, ...]]:
    """Best count vectors in {0..max_count}^size, exactly re-ranked.

    ‖y - Bc‖² splits into a part for each half of c plus a bilinear cross
    term, so every block of the full table is two broadcasts and one matmul.
    The block values lose precision to cancellation; only the ``keep``
    smallest per block are kept and scored again on the samples.
    """
    base = max_count + 1
    split = (size + 1) // 2
    left = _count_grid(split, base).astype(float)
    right = _count_grid(size - split, base).astype(float)
    gram, projection = objective.gram, objective.projection

    def half(counts: np.ndarray, lo: int, hi: int) -> np.ndarray:
        return -2 * counts @ projection[lo:hi] + np.einsum(
            "ki,ij,kj->k", counts, gram[lo:hi, lo:hi], counts
        )

    left_terms = half(left, 0, split)
    right_terms = half(right, split, size)
    coupling = 2 * left @ gram[:split, split:]
    rows = max(1, BOX_CHUNK // len(right))
    candidates: list[tuple[int, ...]] = []
    for lo in range(0, len(left), rows):
        block = (
            left_terms[lo : lo + rows, None]
            + right_terms[None, :]
            + coupling[lo : lo + rows] @ right.T
        ).ravel()
        k = min(keep, block.size)
        for flat in np.argpartition(block, k - 1)[:k]:
            i, j = divmod(int(flat), len(right))
            counts = np.concatenate([left[lo + i], right[j]])
            candidates.append(tuple(int(x) for x in counts))
    return sorted(candidates, key=lambda c: (objective(c), c))


def decompose_cone_sum(
    S: SampledFunction,
    max_order: int | None = None,
    mode: str = "exact",
    *,
    fit_rel: float | None = None,
    max_count: int | None = None,
) -> ConeFit:
    """Integer counts c_m with S ≈ Σ c_m ψ_m on the sample grid.

    Every count vector with entries up to ``max_count``, or up to the largest
    count the local search settled on, is scored when that box has at most
    EXHAUSTIVE_LIMIT points.
    """
    max_order = setting("DECOMPOSE_MAX_ORDER", max_order)
    max_count = setting("DECOMPOSE_MAX_COUNT", max_count)
    if max_order < 2:
        raise InvalidInput("max_order must be at least 2", max_order=max_order)
    if max_count < 0:
        raise InvalidInput("max_count must be nonnegative", max_count=max_count)
    if mode not in ("exact", "noisy"):
        raise InvalidInput("mode must be exact or noisy", mode=mode)
    if fit_rel is None:
        fit_rel = EXACT_FIT_REL if mode == "exact" else setting("NONINTEGER_FIT_REL")
    _check_samples(S)

    orders = list(range(2, max_order + 1))
    scale = S.norm()
    zero = tuple(0 for _ in orders)
    if scale == 0:
        return ConeFit(tuple(orders), zero, 0.0)

    basis = psi_basis(orders, S.grid)
    objective = _Objective(basis, S.values)
    real, _ = nnls(basis, S.values)
    starts = {
        tuple(int(round(x)) for x in real),
        _greedy_tail_peel(S, orders),
        zero,
    }
    for start in starts:
        _local_search(objective, start)
    box = max(max_count, *min(objective.seen, key=objective.seen.__getitem__))
    if (box + 1) ** len(orders) <= setting("EXHAUSTIVE_LIMIT"):
        _box_search(objective, len(orders), box)
    else:
        logger.warning("box_search_skipped", box=box, orders=len(orders))

    ranked = sorted(objective.seen.items(), key=lambda item: (item[1], item[0]))
    best_counts, best = ranked[0]
    runner_up = ranked[1][1] if len(ranked) > 1 else None
    # a single cone point is the smallest nonzero signal
    threshold = fit_rel * max(scale, float(np.linalg.norm(basis, axis=0).min()))
    logger.debug(
        "cone_fit",
        counts=best_counts,
        residual=best,
        runner_up=runner_up,
        scale=scale,
    )
    if best > threshold:
        raise NonIntegerFit(
            "No integer combination of ψ_m fits the samples",
            residual=best,
            threshold=threshold,
            real_solution=[float(x) for x in real],
        )
    if runner_up is not None and runner_up <= AMBIGUITY_FACTOR * best:
        raise AmbiguousFit(
            "Two cone multisets fit the samples equally well",
            best=_as_multiset(orders, best_counts),
            runner_up=_as_multiset(orders, ranked[1][0]),
            residuals=[best, runner_up],
        )
    return ConeFit(tuple(orders), best_counts, best, runner_up)


def _as_multiset(orders: list[int], counts: tuple[int, ...]) -> list[int]:
    return [m for m, c in zip(orders, counts, strict=True) for _ in range(c)]


def brute_force_cone_sum(
    S: SampledFunction, max_order: int | None = None, max_count: int | None = None
) -> ConeFit:
    """Exhaustive search over every count vector with entries <= max_count."""
    max_order = setting("DECOMPOSE_MAX_ORDER", max_order)
    max_count = setting("DECOMPOSE_MAX_COUNT", max_count)
    if max_count < 0:
        raise InvalidInput("max_count must be nonnegative", max_count=max_count)
    orders = list(range(2, max_order + 1))
    objective = _Objective(psi_basis(orders, S.grid), S.values)
    ranked = _box_search(objective, len(orders), max_count)
    counts = ranked[0]
    return ConeFit(
        tuple(orders),
        counts,
        objective(counts),
        objective(ranked[1]) if len(ranked) > 1 else None,
    )
