"""Picard iteration for best proximity points of cyclic maps.

The iteration ``x_{n+1} = T x_n`` alternates between the two regions. The
omega-side subsequence converges to a best proximity point ``x*`` (a fixed
point of ``T^2`` with ``d(x*, T x*) = dist``), and the gaps ``d(x_n, x_{n+1})``
decrease to ``dist``.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from .contraction import orbital_sup
from .cyclic_map import OMEGA, CyclicMap, other_side
from .errors import CyclicityViolation, UsageError
from .region import set_distance
from .space import Point, distance

__all__ = [
    "SolveOptions",
    "SolveReport",
    "BoundCheck",
    "StartVerdict",
    "iterate",
    "gap_bound_check",
    "gap_envelope_check",
    "multi_start_check",
    "write_trace_csv",
]

DIST_DENSITY = 101


@dataclass(frozen=True)
class SolveOptions:
    max_iter: int = 10_000
    gap_tol: float = 1e-9
    pair_tol: float = 1e-9
    eta_for_bound: float | None = None
    bound_depth: int = 64
    record_trace: bool = False
    # keep iterating past convergence until at least this many steps
    min_iter: int = 0

    def __post_init__(self):
        if self.max_iter < 4:
            raise UsageError(f"max_iter must be >= 4, got {self.max_iter}")
        if not (self.gap_tol > 0 and self.pair_tol > 0):
            raise UsageError("tolerances must be positive")
        if self.eta_for_bound is not None and not 0 < self.eta_for_bound < 1:
            raise UsageError(f"eta_for_bound must lie in (0, 1), got {self.eta_for_bound}")

    def to_dict(self) -> dict:
        return {
            "max_iter": self.max_iter,
            "gap_tol": self.gap_tol,
            "pair_tol": self.pair_tol,
            "eta_for_bound": self.eta_for_bound,
            "bound_depth": self.bound_depth,
            "record_trace": self.record_trace,
            "min_iter": self.min_iter,
        }


@dataclass(frozen=True)
class SolveReport:
    """Outcome of one Picard run.

    ``bpp_omega`` always lies in omega and ``bpp_delta`` is its image, so a
    run seeded in delta is reported in the same orientation as one seeded in
    omega. ``gap_bound_ok`` is ``None`` when no ``eta`` was supplied.
    """

    seed: Point
    seed_side: str
    bpp_omega: Point
    bpp_delta: Point
    dist_used: float
    gap_sequence: tuple[float, ...]
    residual_bpp: float
    residual_fp2: float
    iterations: int
    converged: bool
    gap_bound_ok: bool | None = None
    trace: tuple[Point, ...] | None = None
    options: SolveOptions = field(default_factory=SolveOptions)

    def to_dict(self) -> dict:
        return {
            "seed": self.seed.tolist(),
            "seed_side": self.seed_side,
            "bpp_omega": self.bpp_omega.tolist(),
            "bpp_delta": self.bpp_delta.tolist(),
            "dist_used": self.dist_used,
            "residual_bpp": self.residual_bpp,
            "residual_fp2": self.residual_fp2,
            "iterations": self.iterations,
            "converged": self.converged,
            "gap_bound_ok": "not checked" if self.gap_bound_ok is None
            else self.gap_bound_ok,
            "gap_sequence": list(self.gap_sequence),
            "options": self.options.to_dict(),
        }


def _resolve_dist(m: CyclicMap, dist: float | None) -> float:
    if dist is None:
        dist, _ = set_distance(m.omega, m.delta, DIST_DENSITY)
    return float(dist)


def iterate(
    m: CyclicMap,
    seed: Point,
    opts: SolveOptions | None = None,
    dist: float | None = None,
    side: str | None = None,
) -> SolveReport:
    """Run the Picard iteration from ``seed``.

    Convergence is declared at an omega-side index ``k`` once, for both ``k``
    and ``k - 2``, the step ``d(x_k, x_{k+2})`` is below ``pair_tol`` and both
    gaps ``d(x_k, x_{k+1})`` and ``d(x_{k+1}, x_{k+2})`` are within
    ``gap_tol`` of ``dist``. Then ``x* = x_k``.

    Hitting ``max_iter`` is reported through ``converged=False``. An iterate
    leaving its region raises :class:`CyclicityViolation`.
    """
    opts = opts or SolveOptions()
    dist = _resolve_dist(m, dist)
    if side is None:
        side = m.side_of(seed)
    xs = [seed]
    sides = [side]
    gaps: list[float] = []

    def step():
        n = len(xs) - 1
        y = m.image(xs[n], sides[n])
        s = other_side(sides[n])
        if not m.region(s).contains(y):
            raise CyclicityViolation(n + 1, y)
        gaps.append(distance(xs[n], y))
        xs.append(y)
        sides.append(s)

    def ok(k):
        return (
            distance(xs[k], xs[k + 2]) < opts.pair_tol
            and abs(gaps[k] - dist) < opts.gap_tol
            and abs(gaps[k + 1] - dist) < opts.gap_tol
        )

    first = 0 if side == OMEGA else 1  # first omega-side index
    step()
    step()
    if first == 1:
        step()
    k = first
    converged_at = None
    while len(xs) - 1 < opts.max_iter:
        step()
        step()
        k += 2
        if converged_at is None and ok(k - 2) and ok(k):
            converged_at = k
        if converged_at is not None and len(xs) - 1 >= opts.min_iter:
            break

    if converged_at is None:
        # report the last omega-side iterate that has two successors
        k_star = k
    else:
        k_star = converged_at
    star = xs[k_star]
    image = xs[k_star + 1]
    residual_bpp = abs(gaps[k_star] - dist)
    residual_fp2 = distance(star, xs[k_star + 2])
    report = SolveReport(
        seed=seed,
        seed_side=side,
        bpp_omega=star,
        bpp_delta=image,
        dist_used=dist,
        gap_sequence=tuple(gaps),
        residual_bpp=residual_bpp,
        residual_fp2=residual_fp2,
        iterations=(k_star + 2) if converged_at is not None else len(xs) - 1,
        converged=converged_at is not None,
        trace=tuple(xs) if opts.record_trace else None,
        options=opts,
    )
    if opts.eta_for_bound is not None:
        check = gap_bound_check(report, m, opts.eta_for_bound, opts.bound_depth)
        report = replace(report, gap_bound_ok=check.ok)
    return report


@dataclass(frozen=True)
class BoundCheck:
    """Result of comparing the gap sequence with the geometric envelope."""

    ok: bool
    s0: float
    dist: float
    first_violation: int | None
    worst_slack: float

    def __bool__(self):
        return self.ok


def gap_envelope_check(
    gaps: Sequence[float], s0: float, dist: float, eta: float, tol: float
) -> BoundCheck:
    """Check ``gap_n - dist <= eta^n (s0 - dist) + tol`` for every recorded ``n``."""
    g = np.asarray(gaps, dtype=float)
    n = np.arange(g.size)
    slack = eta ** n * (s0 - dist) + tol - (g - dist)
    bad = np.flatnonzero(slack < 0)
    return BoundCheck(
        ok=bad.size == 0,
        s0=s0,
        dist=dist,
        first_violation=int(bad[0]) if bad.size else None,
        worst_slack=float(slack.min()) if slack.size else float("inf"),
    )


def gap_bound_check(
    report: SolveReport, m: CyclicMap, eta: float, depth: int = 64
) -> BoundCheck:
    """Compare a run's gaps with the envelope implied by an orbital ``eta``.

    ``s0`` is the orbital supremum of the first two iterates. The envelope
    is only guaranteed when ``eta`` is certified by :func:`verify_orbital`;
    with a smaller ``eta`` the check may fail and ``first_violation`` names
    the offending step.
    """
    if not report.gap_sequence:
        raise UsageError("report carries no gap sequence")
    if not 0 < eta < 1:
        raise UsageError(f"eta must lie in (0, 1), got {eta}")
    x0 = report.seed
    x1 = m.image(x0, report.seed_side)
    if report.seed_side == OMEGA:
        sup = orbital_sup(m, x0, x1, depth)
    else:
        sup = orbital_sup(m, x1, x0, depth)
    return gap_envelope_check(
        report.gap_sequence, sup.value, report.dist_used, eta, report.options.gap_tol
    )


@dataclass(frozen=True)
class StartVerdict:
    """Agreement of limits across several seeds.

    ``status`` is ``"pass"``, ``"fail"`` (two limits disagree) or
    ``"indeterminate"`` (some run did not converge).
    """

    status: str
    limit: Point | None
    disagreeing: tuple[Point, Point] | None
    reports: tuple[SolveReport, ...]

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def __bool__(self):
        return self.passed


def multi_start_check(
    m: CyclicMap,
    seeds: Sequence[Point],
    opts: SolveOptions | None = None,
    dist: float | None = None,
) -> StartVerdict:
    """Solve from each omega seed and check that all limits agree within ``10 * pair_tol``."""
    opts = opts or SolveOptions()
    if len(seeds) < 2:
        raise UsageError("multi-start check needs at least two seeds")
    for s in seeds:
        if not m.omega.contains(s):
            raise UsageError(f"seed {s} is not in omega")
    dist = _resolve_dist(m, dist)
    reports = tuple(iterate(m, s, opts, dist=dist, side=OMEGA) for s in seeds)
    if not all(r.converged for r in reports):
        return StartVerdict("indeterminate", None, None, reports)
    limits = [r.bpp_omega for r in reports]
    for i in range(len(limits)):
        for j in range(i + 1, len(limits)):
            if distance(limits[i], limits[j]) > 10 * opts.pair_tol:
                return StartVerdict("fail", None, (limits[i], limits[j]), reports)
    return StartVerdict("pass", limits[0], None, reports)


def write_trace_csv(report: SolveReport, path) -> None:
    """Write the iterate trace as CSV: ``n,side,x_1..x_dim,gap``.

    Values use 17 significant digits; the final iterate has an empty gap.
    """
    if report.trace is None:
        raise UsageError("report has no trace; solve with record_trace=True")
    dim = report.seed.space.dim
    side = report.seed_side
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["n", "side"] + [f"x_{i + 1}" for i in range(dim)] + ["gap"])
        for n, x in enumerate(report.trace):
            gap = report.gap_sequence[n] if n < len(report.gap_sequence) else None
            w.writerow(
                [n, side]
                + [_fmt(c) for c in x.coords]
                + ["" if gap is None else _fmt(gap)]
            )
            side = other_side(side)


def _fmt(v: float) -> str:
    return "%.17g" % v
