"""Cyclic maps between two regions and their orbits.

A cyclic map sends the first region (``omega``) into the second (``delta``)
and back. Two representations are provided: :class:`AffineCyclicMap`, with
one affine rule per side, and :class:`TableMap`, an explicit lookup table
for finite point sets.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import AmbiguityError, CyclicityViolation, DomainError, UsageError
from .region import Region
from .space import Point, Space, pnorm

__all__ = [
    "OMEGA",
    "DELTA",
    "AffineRule",
    "CyclicMap",
    "AffineCyclicMap",
    "TableMap",
    "OrbitTable",
    "CheckVerdict",
    "apply",
    "orbit",
    "cyclicity_check",
    "boundedness_check",
]

OMEGA = "omega"
DELTA = "delta"


def other_side(side: str) -> str:
    return DELTA if side == OMEGA else OMEGA


@dataclass(frozen=True, eq=False)
class AffineRule:
    """``x -> A @ x + b``."""

    A: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        A = np.array(self.A, dtype=float)
        b = np.array(self.b, dtype=float).reshape(-1)
        if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] != b.shape[0]:
            raise UsageError(f"affine rule needs a square matrix and matching offset, "
                             f"got A{A.shape}, b{b.shape}")
        A.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)

    def __call__(self, x: np.ndarray) -> np.ndarray:
        return self.A @ x + self.b


class CyclicMap:
    """Common machinery; subclasses implement :meth:`image`."""

    omega: Region
    delta: Region

    @property
    def space(self) -> Space:
        return self.omega.space

    def region(self, side: str) -> Region:
        return self.omega if side == OMEGA else self.delta

    def side_of(self, x: Point) -> str:
        """Which side ``x`` belongs to; errors if neither or both."""
        in_o, in_d = self.omega.contains(x), self.delta.contains(x)
        if in_o and in_d:
            raise AmbiguityError(f"{x} lies in both regions")
        if not (in_o or in_d):
            raise DomainError(f"{x} lies in neither region")
        return OMEGA if in_o else DELTA

    def image(self, x: Point, side: str) -> Point:
        """Apply the rule for ``side`` without re-deriving the side of ``x``."""
        raise NotImplementedError

    def __call__(self, x: Point) -> Point:
        return self.image(x, self.side_of(x))


@dataclass(frozen=True, eq=False)
class AffineCyclicMap(CyclicMap):
    omega: Region
    delta: Region
    omega_rule: AffineRule
    delta_rule: AffineRule

    def __post_init__(self):
        if self.omega.space != self.delta.space:
            raise UsageError("map regions live in different spaces")
        for rule in (self.omega_rule, self.delta_rule):
            if rule.b.shape[0] != self.omega.space.dim:
                raise UsageError("affine rule dimension does not match the space")

    def image(self, x, side):
        rule = self.omega_rule if side == OMEGA else self.delta_rule
        return Point(rule(x.coords), x.space)


@dataclass(frozen=True, eq=False)
class TableMap(CyclicMap):
    """Finite map given as ``(input, output)`` pairs; lookups match within tolerance."""

    omega: Region
    delta: Region
    table: tuple[tuple[Point, Point], ...]
    tol: float = 1e-9

    def __post_init__(self):
        object.__setattr__(self, "table", tuple((a, b) for a, b in self.table))
        if not self.table:
            raise UsageError("table map needs at least one entry")

    def image(self, x, side):
        for src, dst in self.table:
            if float(pnorm(src.coords - x.coords, x.space.p)) <= self.tol:
                return dst
        raise DomainError(f"{x} has no entry in the map table")


def apply(m: CyclicMap, x: Point) -> Point:
    """Image of ``x`` under the rule of the side it belongs to.

    Raises
    ------
    DomainError
        ``x`` is in neither region, or missing from a table map.
    AmbiguityError
        ``x`` is in both regions.
    """
    return m(x)


@dataclass(frozen=True, eq=False)
class OrbitTable:
    """Iterates ``seed, T seed, ..., T^depth seed`` with their sides."""

    seed: Point
    coords: np.ndarray
    side_parity: tuple[str, ...]

    @property
    def depth(self) -> int:
        return len(self.side_parity) - 1

    @property
    def entries(self) -> list[Point]:
        return [Point(c, self.seed.space) for c in self.coords]

    def __len__(self):
        return len(self.side_parity)

    def __getitem__(self, k) -> Point:
        return Point(self.coords[k], self.seed.space)

    def diameter(self) -> float:
        c = self.coords
        return float(np.max(pnorm(c[:, None, :] - c[None, :, :], self.seed.space.p)))


def orbit(m: CyclicMap, seed: Point, depth: int, side: str | None = None) -> OrbitTable:
    """Truncated orbit of ``seed``.

    ``side`` names the region of the seed when the caller already knows it
    (needed only if the regions overlap); otherwise it is inferred.

    Raises
    ------
    CyclicityViolation
        Some iterate does not land in the region opposite its predecessor.
    """
    if depth < 0:
        raise UsageError(f"depth must be nonnegative, got {depth}")
    if side is None:
        side = m.side_of(seed)
    elif not m.region(side).contains(seed):
        raise DomainError(f"seed {seed} is not in {side}")
    x = seed
    rows = [seed.coords]
    sides = [side]
    for k in range(1, depth + 1):
        x = m.image(x, side)
        side = other_side(side)
        if not m.region(side).contains(x):
            raise CyclicityViolation(k, x)
        rows.append(x.coords)
        sides.append(side)
    coords = np.stack(rows)
    coords.setflags(write=False)
    return OrbitTable(seed, coords, tuple(sides))


@dataclass(frozen=True)
class CheckVerdict:
    """Outcome of a structural check; ``witness`` is the first counterexample."""

    passed: bool
    detail: str
    witness: Point | None = None
    data: dict = field(default_factory=dict)

    def __bool__(self):
        return self.passed


def cyclicity_check(m: CyclicMap, density: int = 21) -> CheckVerdict:
    """Check that sampled points of each side are mapped into the other side."""
    for side in (OMEGA, DELTA):
        target = m.region(other_side(side))
        for x in m.region(side).sample(density):
            try:
                y = m.image(x, side)
            except DomainError as exc:
                return CheckVerdict(False, f"{side} point {x} has no image: {exc}", x)
            if not target.contains(y):
                return CheckVerdict(
                    False, f"{side} point {x} maps to {y}, outside {other_side(side)}", x
                )
    return CheckVerdict(True, f"images of sampled points land on the opposite side "
                              f"(density {density})")


def boundedness_check(
    m: CyclicMap,
    seeds: Sequence[Point],
    depth: int = 64,
    bound_factor: float = 2.0,
    density: int = 11,
) -> CheckVerdict:
    """Finite-depth proxy for bounded orbits.

    Passes iff the orbit of every seed, truncated at ``depth``, has diameter at
    most ``bound_factor`` times the diameter of the sampled union of the two
    regions. Only the supplied seeds are examined. A seed lying in both
    regions is iterated as an omega point.
    """
    hull = np.concatenate([m.omega.sample_array(density), m.delta.sample_array(density)])
    hull_diam = float(np.max(pnorm(hull[:, None, :] - hull[None, :, :], m.space.p)))
    limit = bound_factor * hull_diam
    diams = []
    for s in seeds:
        side = OMEGA if m.omega.contains(s) else DELTA
        if not m.region(side).contains(s):
            raise DomainError(f"seed {s} lies in neither region")
        rows = [s.coords]
        x = s
        running = 0.0
        for k in range(1, depth + 1):
            # diameter first, so a runaway orbit fails here rather than as an escape
            x = m.image(x, side)
            side = other_side(side)
            running = max(running, float(np.max(pnorm(np.stack(rows) - x.coords, m.space.p))))
            if running > limit:
                return CheckVerdict(
                    False,
                    f"orbit of {s} reaches diameter {running:.6g} > {limit:.6g} at step {k}",
                    s, {"step": k, "limit": limit, "seeds_checked": len(diams) + 1},
                )
            if not m.region(side).contains(x):
                raise CyclicityViolation(k, x)
            rows.append(x.coords)
        diams.append(running)
    return CheckVerdict(
        True, f"bounded up to depth {depth} for {len(diams)} seed(s)",
        None, {"limit": limit, "max_diameter": max(diams, default=0.0),
               "seeds_checked": len(diams), "depth": depth},
    )
