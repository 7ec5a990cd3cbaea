"""
Isometries of the upper half-plane as unit-determinant 2x2 real matrices.

Elements are stored modulo sign: every constructor renormalises to det 1 and
picks the representative of ±M with nonnegative trace (first nonzero entry
positive when the trace vanishes).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any

import numpy as np

from orbispec.config import setting
from orbispec.errors import InvalidInput

# Entries smaller than this (relative to the largest entry) count as zero when
# choosing the sign of a traceless element.
_SIGN_TOL = 1e-12


def _canonical_sign(a: float, b: float, c: float, d: float) -> float:
    scale = max(abs(a), abs(b), abs(c), abs(d), 1.0)
    trace = a + d
    if abs(trace) > _SIGN_TOL * scale:
        return 1.0 if trace > 0 else -1.0
    for entry in (a, b, c, d):
        if abs(entry) > _SIGN_TOL * scale:
            return 1.0 if entry > 0 else -1.0
    return 1.0


@dataclass(frozen=True, slots=True)
class MoebiusElement:
    """An element of PSL(2, R) acting by z -> (az + b)/(cz + d)."""

    a: float
    b: float
    c: float
    d: float

    @classmethod
    def of(cls, a: float, b: float, c: float, d: float) -> MoebiusElement:
        """Build an element from raw entries, renormalising det and sign."""
        det = a * d - b * c
        if not det > 0:
            raise InvalidInput(
                "Matrix must have positive determinant", det=det, entries=[a, b, c, d]
            )
        root = math.sqrt(det)
        a, b, c, d = a / root, b / root, c / root, d / root
        sign = _canonical_sign(a, b, c, d)
        return cls(sign * a, sign * b, sign * c, sign * d)

    @classmethod
    def identity(cls) -> MoebiusElement:
        return cls(1.0, 0.0, 0.0, 1.0)

    @classmethod
    def from_array(cls, matrix: Any) -> MoebiusElement:
        m = np.asarray(matrix, dtype=float).reshape(2, 2)
        return cls.of(m[0, 0], m[0, 1], m[1, 0], m[1, 1])

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> MoebiusElement:
        """Parse the JSON matrix literal ``{"a": .., "b": .., "c": .., "d": ..}``."""
        try:
            return cls.of(
                float(data["a"]), float(data["b"]), float(data["c"]), float(data["d"])
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInput(f"Malformed matrix literal: {data!r}") from exc

    def to_dict(self) -> dict[str, float]:
        return {"a": self.a, "b": self.b, "c": self.c, "d": self.d}

    def to_array(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]])

    @property
    def trace(self) -> float:
        return self.a + self.d

    @property
    def det(self) -> float:
        return self.a * self.d - self.b * self.c

    def inverse(self) -> MoebiusElement:
        return MoebiusElement.of(self.d, -self.b, -self.c, self.a)

    def __matmul__(self, other: MoebiusElement) -> MoebiusElement:
        return compose(self, other)

    def distance(self, other: MoebiusElement) -> float:
        """Entrywise max distance between the two elements of PSL(2, R)."""
        plus = max(
            abs(self.a - other.a),
            abs(self.b - other.b),
            abs(self.c - other.c),
            abs(self.d - other.d),
        )
        minus = max(
            abs(self.a + other.a),
            abs(self.b + other.b),
            abs(self.c + other.c),
            abs(self.d + other.d),
        )
        return min(plus, minus)

    def is_close(self, other: MoebiusElement, tol: float | None = None) -> bool:
        return self.distance(other) <= setting("EPS_DEDUP", tol)

    def is_identity(self, tol: float | None = None) -> bool:
        return self.is_close(MoebiusElement.identity(), tol)

    def check(self, eps_det: float | None = None) -> None:
        """Verify the determinant invariant."""
        eps_det = setting("EPS_DET", eps_det)
        if abs(self.det - 1.0) > eps_det:
            raise InvalidInput("Determinant drifted from 1", det=self.det)


def compose(g: MoebiusElement, h: MoebiusElement) -> MoebiusElement:
    """Matrix product g·h (apply h first), renormalised."""
    return MoebiusElement.of(
        g.a * h.a + g.b * h.c,
        g.a * h.b + g.b * h.d,
        g.c * h.a + g.d * h.c,
        g.c * h.b + g.d * h.d,
    )


def act(g: MoebiusElement, z: complex) -> complex:
    """Image of a point of the upper half-plane under g."""
    z = complex(z)
    if z.imag <= 0:
        raise InvalidInput("Point must lie in the upper half-plane", z=str(z))
    return (g.a * z + g.b) / (g.c * z + g.d)


def power(g: MoebiusElement, k: int) -> MoebiusElement:
    """k-fold composition by repeated squaring."""
    if k < 1:
        raise InvalidInput("Power must be a positive integer", k=k)
    result: MoebiusElement | None = None
    base = g
    while k:
        if k & 1:
            result = base if result is None else compose(result, base)
        k >>= 1
        if k:
            base = compose(base, base)
    assert result is not None
    return result


def translation(t: float) -> MoebiusElement:
    """The one-parameter group a_t = diag(e^{t/2}, e^{-t/2})."""
    return MoebiusElement.of(math.exp(t / 2), 0.0, 0.0, math.exp(-t / 2))


def rotation_about_i(angle: float) -> MoebiusElement:
    """Counterclockwise rotation by ``angle`` about i."""
    half = angle / 2
    return MoebiusElement.of(math.cos(half), math.sin(half), -math.sin(half), math.cos(half))


def moving_i_to(z: complex) -> MoebiusElement:
    """The affine map z -> y·z + x sending i to x + iy."""
    z = complex(z)
    if z.imag <= 0:
        raise InvalidInput("Point must lie in the upper half-plane", z=str(z))
    root = math.sqrt(z.imag)
    return MoebiusElement.of(root, z.real / root, 0.0, 1.0 / root)


def rotation_about(z: complex, angle: float) -> MoebiusElement:
    """Counterclockwise rotation by ``angle`` about an arbitrary point."""
    move = moving_i_to(z)
    return compose(compose(move, rotation_about_i(angle)), move.inverse())


def hyperbolic_distance(z: complex, w: complex) -> float:
    z, w = complex(z), complex(w)
    return math.acosh(1 + abs(z - w) ** 2 / (2 * z.imag * w.imag))


def displacement(g: MoebiusElement, z: complex) -> float:
    """Hyperbolic distance between z and its image."""
    return hyperbolic_distance(z, act(g, z))


# ---------------------------------------------------------------------------
# Batched helpers on (N, 2, 2) arrays
# ---------------------------------------------------------------------------


def stack(elements: list[MoebiusElement]) -> np.ndarray:
    """Stack elements into an (N, 2, 2) array."""
    if not elements:
        return np.zeros((0, 2, 2))
    return np.array([[[g.a, g.b], [g.c, g.d]] for g in elements], dtype=float)


def canonicalize_stack(matrices: np.ndarray) -> np.ndarray:
    """Renormalise det and sign of every matrix in an (N, 2, 2) array."""
    m = np.asarray(matrices, dtype=float)
    det = m[:, 0, 0] * m[:, 1, 1] - m[:, 0, 1] * m[:, 1, 0]
    m = m / np.sqrt(det)[:, None, None]
    flat = m.reshape(-1, 4)
    scale = np.maximum(np.abs(flat).max(axis=1), 1.0)
    trace = flat[:, 0] + flat[:, 3]
    significant = np.abs(flat) > (_SIGN_TOL * scale)[:, None]
    first = np.argmax(significant, axis=1)
    first_sign = np.sign(flat[np.arange(len(flat)), first])
    sign = np.where(np.abs(trace) > _SIGN_TOL * scale, np.sign(trace), first_sign)
    sign[sign == 0] = 1.0
    return m * sign[:, None, None]


def stack_inverse(matrices: np.ndarray) -> np.ndarray:
    """Inverses of unit-determinant matrices (adjugate)."""
    inv = np.empty_like(matrices)
    inv[:, 0, 0] = matrices[:, 1, 1]
    inv[:, 0, 1] = -matrices[:, 0, 1]
    inv[:, 1, 0] = -matrices[:, 1, 0]
    inv[:, 1, 1] = matrices[:, 0, 0]
    return inv


def stack_distance(matrices: np.ndarray, target: np.ndarray) -> np.ndarray:
    """Entrywise max distance of each matrix to ``target`` modulo sign."""
    flat = matrices.reshape(-1, 4)
    goal = np.asarray(target, dtype=float).reshape(4)
    plus = np.abs(flat - goal).max(axis=1)
    minus = np.abs(flat + goal).max(axis=1)
    return np.minimum(plus, minus)
