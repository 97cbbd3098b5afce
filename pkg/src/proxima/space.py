"""Finite-dimensional p-normed spaces.

Points are immutable coordinate vectors tagged with their :class:`Space`.
Every distance in the library goes through :func:`pnorm` so that scalar and
batched evaluations agree bit for bit.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from .errors import PreconditionError, UsageError

__all__ = [
    "Space",
    "Point",
    "pnorm",
    "distance",
    "geodesic_point",
    "hilbert_modulus",
    "uniform_convexity_check",
]


def pnorm(diff: np.ndarray, p: float) -> np.ndarray | float:
    """p-norm along the last axis."""
    diff = np.asarray(diff, dtype=float)
    if p == 2:
        return np.sqrt(np.sum(diff * diff, axis=-1))
    return np.sum(np.abs(diff) ** p, axis=-1) ** (1.0 / p)


@dataclass(frozen=True)
class Space:
    """The space R^dim equipped with the p-norm, 2 <= p < inf."""

    dim: int
    p: float = 2.0

    def __post_init__(self):
        if not isinstance(self.dim, (int, np.integer)) or self.dim < 1:
            raise UsageError(f"dim must be a positive integer, got {self.dim!r}")
        if not (math.isfinite(self.p) and self.p >= 2):
            raise UsageError(f"p must be finite and >= 2, got {self.p!r}")

    def point(self, *coords) -> Point:
        """Build a point; accepts ``point(x, y)`` or ``point([x, y])``."""
        if len(coords) == 1 and np.ndim(coords[0]) == 1:
            coords = coords[0]
        return Point(coords, self)

    def norm(self, diff) -> float:
        return float(pnorm(diff, self.p))


@dataclass(frozen=True, eq=False)
class Point:
    coords: np.ndarray
    space: Space = field(repr=False)

    def __post_init__(self):
        arr = np.array(self.coords, dtype=float).reshape(-1)
        if arr.shape[0] != self.space.dim:
            raise UsageError(
                f"point has {arr.shape[0]} coordinates, space has dim {self.space.dim}"
            )
        if not np.all(np.isfinite(arr)):
            raise UsageError(f"point coordinates must be finite, got {arr}")
        arr.setflags(write=False)
        object.__setattr__(self, "coords", arr)

    def __eq__(self, other):
        if not isinstance(other, Point):
            return NotImplemented
        return self.space == other.space and np.array_equal(self.coords, other.coords)

    def __hash__(self):
        return hash((self.space, self.coords.tobytes()))

    def __iter__(self):
        return iter(self.coords.tolist())

    def __len__(self):
        return self.space.dim

    def __getitem__(self, i):
        return float(self.coords[i])

    def __array__(self, dtype=None, copy=None):
        return self.coords if dtype is None else self.coords.astype(dtype)

    def __repr__(self):
        return "Point(" + ", ".join(f"{c:.10g}" for c in self.coords) + ")"

    def tolist(self) -> list[float]:
        return self.coords.tolist()


def _same_space(a: Point, b: Point) -> None:
    if a.space != b.space:
        raise UsageError(f"points live in different spaces: {a.space} vs {b.space}")


def distance(a: Point, b: Point) -> float:
    """p-norm distance ``||a - b||_p``."""
    _same_space(a, b)
    return float(pnorm(a.coords - b.coords, a.space.p))


def geodesic_point(a: Point, b: Point, lam: float) -> Point:
    """The point ``(1 - lam) a + lam b`` on the segment from ``a`` to ``b``."""
    _same_space(a, b)
    if not 0.0 <= lam <= 1.0:
        raise UsageError(f"lambda must lie in [0, 1], got {lam}")
    if lam == 0.0:
        return a
    if lam == 1.0:
        return b
    return Point((1.0 - lam) * a.coords + lam * b.coords, a.space)


def hilbert_modulus(eps: float) -> float:
    """Modulus of convexity of a Hilbert space, ``1 - sqrt(1 - (eps/2)^2)``.

    Zero at ``eps = 0`` by convention; defined up to ``eps = 2``.
    """
    if eps <= 0.0:
        return 0.0
    return 1.0 - math.sqrt(max(0.0, 1.0 - (min(eps, 2.0) / 2.0) ** 2))


def uniform_convexity_check(
    s1: Point,
    s2: Point,
    s3: Point,
    M: float,
    m: float,
    modulus: Callable[[float], float] = hilbert_modulus,
    tol: float = 1e-12,
) -> bool:
    """Check the uniform-convexity midpoint inequality for one triple.

    Tests ``||(s1 + s2)/2 - s3|| <= (1 - modulus(m/M)) M`` given that
    ``||s1 - s3|| <= M``, ``||s2 - s3|| <= M`` and ``||s1 - s2|| >= m``.
    ``tol`` is relative to ``M`` and applies to both the hypotheses and the
    conclusion.

    Raises
    ------
    PreconditionError
        If the triple or ``(M, m)`` are not admissible. A ``False`` return
        means the inequality itself failed.
    """
    _same_space(s1, s2)
    _same_space(s1, s3)
    if not M > 0:
        raise PreconditionError(f"M must be positive, got {M}")
    if not 0.0 <= m <= 2.0 * M:
        raise PreconditionError(f"m must lie in [0, 2M], got m={m}, M={M}")
    slack = tol * M
    if distance(s1, s3) > M + slack or distance(s2, s3) > M + slack:
        raise PreconditionError("s1 and s2 must lie within M of s3")
    if distance(s1, s2) < m - slack:
        raise PreconditionError("s1 and s2 must be at least m apart")
    mid = Point(0.5 * (s1.coords + s2.coords), s1.space)
    lhs = distance(mid, s3)
    rhs = (1.0 - (modulus(m / M) if m > 0 else 0.0)) * M
    return lhs <= rhs + slack


def as_points(space: Space, rows: Iterable) -> list[Point]:
    return [p if isinstance(p, Point) else Point(p, space) for p in rows]
