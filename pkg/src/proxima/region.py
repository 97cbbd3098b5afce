"""Subsets of a p-normed space: membership, sampling, and set distance.

Three variants are supported. :class:`Segment` and :class:`Box` are convex
by construction; a :class:`FinitePointSet` is convex only if the caller says
so (a singleton, typically).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import UsageError
from .space import Point, Space, as_points, distance, pnorm

__all__ = [
    "Region",
    "Segment",
    "Box",
    "FinitePointSet",
    "ProximalPair",
    "set_distance",
    "proximal_sets",
]

DEFAULT_MEMBERSHIP_TOL = 1e-9
REFINE_ROUNDS = 20
REFINE_XATOL = 1e-12


class Region:
    """Base class. Subclasses provide a parametrisation and a membership test."""

    space: Space
    membership_tol: float
    convex: bool

    def contains(self, x: Point) -> bool:
        raise NotImplementedError

    def sample(self, density: int, seed: int = 0) -> list[Point]:
        """Deterministic grid of points in the region.

        ``seed`` is accepted for interface uniformity; all current variants
        sample on fixed grids.
        """
        return as_points(self.space, self.sample_array(density))

    def sample_array(self, density: int) -> np.ndarray:
        return self.at_params(self.sample_params(density))

    def sample_params(self, density: int) -> np.ndarray:
        raise NotImplementedError

    def at_params(self, params: np.ndarray) -> np.ndarray:
        """Map parameter rows to coordinate rows."""
        raise NotImplementedError

    def param_bounds(self) -> list[tuple[float, float]]:
        """Bounds of the continuous parameters; empty for discrete regions."""
        return []

    def random_point(self, rng: np.random.Generator) -> Point:
        raise NotImplementedError

    def key(self) -> tuple:
        """Canonical ordering key; used to make set distance order-independent."""
        raise NotImplementedError

    def _check_point(self, x: Point) -> None:
        if x.space != self.space:
            raise UsageError(f"point in {x.space} tested against region in {self.space}")

    @staticmethod
    def _check_density(density: int) -> None:
        if int(density) != density or density < 2:
            raise UsageError(f"density must be an integer >= 2, got {density}")


@dataclass(frozen=True, eq=False)
class Segment(Region):
    """Closed segment between two distinct endpoints."""

    endpoint_a: Point
    endpoint_b: Point
    membership_tol: float = DEFAULT_MEMBERSHIP_TOL

    def __post_init__(self):
        if self.endpoint_a.space != self.endpoint_b.space:
            raise UsageError("segment endpoints live in different spaces")
        if self.endpoint_a == self.endpoint_b:
            raise UsageError("segment endpoints must be distinct")

    @property
    def space(self) -> Space:
        return self.endpoint_a.space

    @property
    def convex(self) -> bool:
        return True

    def at_params(self, params):
        t = np.asarray(params, dtype=float).reshape(-1, 1)
        a, b = self.endpoint_a.coords, self.endpoint_b.coords
        return (1.0 - t) * a + t * b

    def sample_params(self, density):
        self._check_density(density)
        return np.linspace(0.0, 1.0, int(density)).reshape(-1, 1)

    def param_bounds(self):
        return [(0.0, 1.0)]

    def random_point(self, rng):
        return Point(self.at_params([rng.uniform()])[0], self.space)

    def distance_to(self, x: Point) -> float:
        """Distance from ``x`` to the segment."""
        a, b, p = self.endpoint_a.coords, self.endpoint_b.coords, self.space.p
        u = b - a
        if p == 2:
            t = float(np.clip(np.dot(x.coords - a, u) / np.dot(u, u), 0.0, 1.0))
            return float(pnorm(a + t * u - x.coords, p))
        res = minimize_scalar(
            lambda t: float(pnorm(a + t * u - x.coords, p)),
            bounds=(0.0, 1.0), method="bounded", options={"xatol": REFINE_XATOL},
        )
        return min(res.fun, distance(x, self.endpoint_a), distance(x, self.endpoint_b))

    def contains(self, x):
        self._check_point(x)
        return self.distance_to(x) <= self.membership_tol

    def key(self):
        return ("segment", self.endpoint_a.coords.tobytes(), self.endpoint_b.coords.tobytes())


@dataclass(frozen=True, eq=False)
class Box(Region):
    """Axis-aligned box ``lower <= x <= upper``; degenerate axes allowed."""

    lower_corner: Point
    upper_corner: Point
    membership_tol: float = DEFAULT_MEMBERSHIP_TOL

    def __post_init__(self):
        if self.lower_corner.space != self.upper_corner.space:
            raise UsageError("box corners live in different spaces")
        if np.any(self.lower_corner.coords > self.upper_corner.coords):
            raise UsageError("box lower corner must be <= upper corner componentwise")

    @property
    def space(self):
        return self.lower_corner.space

    @property
    def convex(self):
        return True

    def at_params(self, params):
        return np.asarray(params, dtype=float).reshape(-1, self.space.dim)

    def sample_params(self, density):
        self._check_density(density)
        axes = [
            np.linspace(lo, hi, int(density))
            for lo, hi in zip(self.lower_corner.coords, self.upper_corner.coords)
        ]
        mesh = np.meshgrid(*axes, indexing="ij")
        return np.stack([g.reshape(-1) for g in mesh], axis=-1)

    def param_bounds(self):
        return list(zip(self.lower_corner.coords.tolist(), self.upper_corner.coords.tolist()))

    def random_point(self, rng):
        return Point(rng.uniform(self.lower_corner.coords, self.upper_corner.coords), self.space)

    def contains(self, x):
        self._check_point(x)
        tol = self.membership_tol
        return bool(
            np.all(x.coords >= self.lower_corner.coords - tol)
            and np.all(x.coords <= self.upper_corner.coords + tol)
        )

    def key(self):
        return ("box", self.lower_corner.coords.tobytes(), self.upper_corner.coords.tobytes())


@dataclass(frozen=True, eq=False)
class FinitePointSet(Region):
    """A finite, nonempty set of points, kept in insertion order.

    ``convex`` is a declaration by the caller and is never inferred.
    """

    points: tuple[Point, ...]
    convex: bool = False
    membership_tol: float = DEFAULT_MEMBERSHIP_TOL

    def __post_init__(self):
        pts = tuple(self.points)
        if not pts:
            raise UsageError("a finite point set must be nonempty")
        if any(p.space != pts[0].space for p in pts):
            raise UsageError("finite point set mixes spaces")
        object.__setattr__(self, "points", pts)

    @property
    def space(self):
        return self.points[0].space

    @property
    def coords(self) -> np.ndarray:
        return np.stack([p.coords for p in self.points])

    def sample(self, density=2, seed=0):
        return list(self.points)

    def sample_array(self, density=2):
        return self.coords

    def sample_params(self, density=2):
        return np.arange(len(self.points), dtype=float).reshape(-1, 1)

    def at_params(self, params):
        idx = np.asarray(params).reshape(-1).astype(int)
        return self.coords[idx]

    def random_point(self, rng):
        return self.points[int(rng.integers(len(self.points)))]

    def contains(self, x):
        self._check_point(x)
        return bool(np.min(pnorm(self.coords - x.coords, self.space.p)) <= self.membership_tol)

    def key(self):
        return ("points", self.coords.tobytes())


@dataclass(frozen=True)
class ProximalPair:
    a: Point
    b: Point
    separation: float


def _check_pair(omega: Region, delta: Region) -> None:
    if omega.space != delta.space:
        raise UsageError(f"regions live in different spaces: {omega.space} vs {delta.space}")


def _refine(r1: Region, r2: Region, q1: np.ndarray, q2: np.ndarray, best: float):
    """Coordinate descent with bounded scalar minimisation from a grid witness.

    Only ever accepts improvements, so the result never exceeds ``best``.
    """
    p = r1.space.p
    b1, b2 = r1.param_bounds(), r2.param_bounds()
    if not b1 and not b2:
        return q1, q2, best
    q = np.concatenate([q1, q2]) if b1 and b2 else (q1.copy() if b1 else q2.copy())
    bounds = (b1 + b2) if b1 and b2 else (b1 or b2)
    n1 = len(b1)

    def split(v):
        if b1 and b2:
            return v[:n1], v[n1:]
        return (v, q2) if b1 else (q1, v)

    def f(v):
        u1, u2 = split(v)
        return float(pnorm(r1.at_params(u1)[0] - r2.at_params(u2)[0], p))

    q = q.astype(float)
    for _ in range(REFINE_ROUNDS):
        start = best
        for k, (lo, hi) in enumerate(bounds):
            if hi - lo <= REFINE_XATOL:
                continue

            def fk(t, k=k):
                v = q.copy()
                v[k] = t
                return f(v)

            res = minimize_scalar(fk, bounds=(lo, hi), method="bounded",
                                  options={"xatol": REFINE_XATOL})
            if res.fun < best:
                best = float(res.fun)
                q[k] = float(res.x)
        if start - best <= REFINE_XATOL:
            break
    u1, u2 = split(q)
    return np.asarray(u1), np.asarray(u2), best


def _ordered_distance(r1: Region, r2: Region, density: int):
    x1, x2 = r1.sample_array(density), r2.sample_array(density)
    d = pnorm(x1[:, None, :] - x2[None, :, :], r1.space.p)
    i, j = np.unravel_index(int(np.argmin(d)), d.shape)
    best = float(d[i, j])
    q1, q2 = r1.sample_params(density)[i], r2.sample_params(density)[j]
    q1, q2, best = _refine(r1, r2, q1, q2, best)
    return best, Point(r1.at_params(q1)[0], r1.space), Point(r2.at_params(q2)[0], r2.space)


def set_distance(omega: Region, delta: Region, density: int = 101) -> tuple[float, ProximalPair]:
    """Estimate ``dist(omega, delta)`` by grid brute force plus local refinement.

    Returns the estimate and a witness pair ``(a in omega, b in delta)``. The
    computation is performed in a canonical region order, so swapping the
    arguments gives exactly the same value.
    """
    _check_pair(omega, delta)
    if omega.key() <= delta.key():
        best, a, b = _ordered_distance(omega, delta, density)
    else:
        best, b, a = _ordered_distance(delta, omega, density)
    return best, ProximalPair(a, b, best)


def proximal_sets(
    omega: Region, delta: Region, density: int = 101, tol: float = 1e-6,
    dist: float | None = None,
) -> tuple[list[Point], list[Point]]:
    """Sampled points of each region that come within ``dist + tol`` of the other."""
    _check_pair(omega, delta)
    if dist is None:
        dist, _ = set_distance(omega, delta, density)
    x1, x2 = omega.sample_array(density), delta.sample_array(density)
    d = pnorm(x1[:, None, :] - x2[None, :, :], omega.space.p)
    near = d <= dist + tol
    om = [Point(x, omega.space) for x, k in zip(x1, near.any(axis=1)) if k]
    de = [Point(x, delta.space) for x, k in zip(x2, near.any(axis=0)) if k]
    return om, de
