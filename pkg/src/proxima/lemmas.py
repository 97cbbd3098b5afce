"""Finite-horizon checks of the two sequence lemmas behind the convergence proofs.

Both lemmas concern sequences ``x_r, rho_r`` in a convex region omega and
``y_r`` in delta:

* closeness: if ``d(x_r, y_r) -> dist`` and ``d(rho_r, y_r) -> dist`` then
  ``d(x_r, rho_r) -> 0``;
* Cauchy form: if eventually ``d(x_s, y_r) <= dist + eps`` for ``s > r`` and
  ``d(rho_r, y_r) -> dist``, then eventually ``d(x_s, rho_r) <= eps`` for
  ``s > r``.

Limits cannot be observed on finite sequences, so every verdict is stated
"within horizon". A hypothesis "``a_r -> dist``" is accepted when the tail
envelope of ``|a_r - dist|`` fits a geometric decay with R^2 >= 0.9 and the
last term is within ``10 * tol`` of ``dist``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import UsageError
from .region import ProximalPair, Region
from .space import Point, distance, geodesic_point, pnorm

__all__ = [
    "PASS",
    "PRECONDITION",
    "NOT_WITHIN_HORIZON",
    "SequenceTriple",
    "LemmaVerdict",
    "EnvelopeFit",
    "fit_envelope",
    "generate_converging_triple",
    "check_lemma_close",
    "check_lemma_cauchy",
]

PASS = "pass"
PRECONDITION = "precondition"
NOT_WITHIN_HORIZON = "not within horizon"

MIN_R2 = 0.9


@dataclass(frozen=True)
class SequenceTriple:
    """Two omega sequences and one delta sequence of equal length (>= 10)."""

    xs: tuple[Point, ...]
    rhos: tuple[Point, ...]
    thetas: tuple[Point, ...]

    def __post_init__(self):
        n = len(self.xs)
        if not (len(self.rhos) == n == len(self.thetas)):
            raise UsageError("sequences must have equal lengths")
        if n < 10:
            raise UsageError(f"sequences must have length >= 10, got {n}")

    @property
    def length(self) -> int:
        return len(self.xs)

    def check_membership(self, omega: Region, delta: Region) -> bool:
        return (all(omega.contains(x) for x in self.xs)
                and all(omega.contains(x) for x in self.rhos)
                and all(delta.contains(y) for y in self.thetas))


@dataclass(frozen=True)
class EnvelopeFit:
    holds: bool
    rate: float | None
    r2: float | None
    final_error: float


@dataclass(frozen=True)
class LemmaVerdict:
    status: str
    detail: str
    indices: dict = field(default_factory=dict)
    hypotheses: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def __bool__(self):
        return self.passed


def _coords(seq: Sequence[Point]) -> tuple[np.ndarray, float]:
    if not seq:
        raise UsageError("empty sequence")
    return np.stack([x.coords for x in seq]), seq[0].space.p


def fit_envelope(values: Sequence[float], target: float, tol: float = 1e-9) -> EnvelopeFit:
    """Test empirically whether ``values -> target``.

    Regresses ``log`` of the tail envelope ``max_{s >= r} |values_s - target|``
    on ``r``, over the terms still above ``10 * tol``.
    """
    e = np.abs(np.asarray(values, dtype=float) - target)
    final = float(e[-1])
    final_ok = final <= 10 * tol
    env = np.maximum.accumulate(e[::-1])[::-1]
    live = np.flatnonzero(env > 10 * tol)
    if live.size < 3:
        return EnvelopeFit(final_ok, None, None, final)
    r = live.astype(float)
    y = np.log(env[live])
    slope, intercept = np.polyfit(r, y, 1)
    resid = y - (slope * r + intercept)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - float(np.sum(resid ** 2)) / ss_tot if ss_tot > 0 else 0.0
    holds = bool(final_ok and slope < 0 and r2 >= MIN_R2)
    return EnvelopeFit(holds, float(np.exp(slope)), r2, final)


def generate_converging_triple(
    omega: Region,
    delta: Region,
    proximal: ProximalPair,
    length: int = 50,
    decay: float = 0.8,
    seed: int = 0,
    amplitude: float = 1.0,
) -> SequenceTriple:
    """Sequences converging to a proximal pair at rate ``decay**r``.

    Term ``r`` moves from the proximal point towards a random point ``q`` of
    the region by ``amplitude * decay**r * reach * u``, with ``u`` uniform on
    [0, 1] and ``reach`` the largest distance from the proximal point to a
    vertex of the region. The step is clamped at ``q``, so convexity keeps
    every term inside its region. ``amplitude=0`` gives constant sequences.
    """
    for name, reg in (("omega", omega), ("delta", delta)):
        if not reg.convex:
            raise UsageError(f"{name} must be convex to generate lemma sequences")
    if not 0.0 < decay < 1.0:
        raise UsageError(f"decay must lie in (0, 1), got {decay}")
    if not 0.0 <= amplitude <= 1.0:
        raise UsageError(f"amplitude must lie in [0, 1], got {amplitude}")
    if not (omega.contains(proximal.a) and delta.contains(proximal.b)):
        raise UsageError("proximal pair is not in (omega, delta)")
    rng = np.random.default_rng(seed)

    def reach(reg, base):
        verts = reg.sample_array(2)
        return float(np.max(pnorm(verts - base.coords, reg.space.p)))

    def term(reg, base, size):
        q = reg.random_point(rng)
        step = size * rng.uniform()
        d = distance(base, q)
        return base if d == 0.0 else geodesic_point(base, q, min(1.0, step / d))

    r_omega, r_delta = reach(omega, proximal.a), reach(delta, proximal.b)
    xs, rhos, thetas = [], [], []
    for r in range(length):
        scale = amplitude * decay ** r
        xs.append(term(omega, proximal.a, scale * r_omega))
        rhos.append(term(omega, proximal.a, scale * r_omega))
        thetas.append(term(delta, proximal.b, scale * r_delta))
    return SequenceTriple(tuple(xs), tuple(rhos), tuple(thetas))


def _settle_index(bad: np.ndarray) -> int:
    """Least R such that no index >= R is flagged."""
    idx = np.flatnonzero(bad)
    return int(idx[-1]) + 1 if idx.size else 0


def check_lemma_close(
    t: SequenceTriple, dist: float, eps_schedule: Sequence[float], tol: float = 1e-9
) -> LemmaVerdict:
    """Closeness lemma on a finite horizon.

    For each ``eps`` finds the least ``R`` with ``d(x_r, rho_r) <= eps`` for
    every ``r >= R`` up to the end of the sequences. The sweep over a finite
    ``eps`` schedule stands in for "for every eps".
    """
    x, p = _coords(t.xs)
    rho, _ = _coords(t.rhos)
    th, _ = _coords(t.thetas)
    h1 = fit_envelope(pnorm(x - th, p), dist, tol)
    h2 = fit_envelope(pnorm(rho - th, p), dist, tol)
    hyp = {"x_theta_to_dist": h1, "rho_theta_to_dist": h2}
    if not (h1.holds and h2.holds):
        return LemmaVerdict(PRECONDITION, "hypotheses not met on this horizon", {}, hyp)
    gap = pnorm(x - rho, p)
    idx = {}
    for eps in eps_schedule:
        if eps <= 0:
            raise UsageError(f"eps must be positive, got {eps}")
        R = _settle_index(gap > eps)
        idx[eps] = R if R < t.length else None
    if any(R is None for R in idx.values()):
        return LemmaVerdict(NOT_WITHIN_HORIZON, "d(x_r, rho_r) not below eps by the end",
                            idx, hyp)
    return LemmaVerdict(PASS, "d(x_r, rho_r) settles below each eps within horizon", idx, hyp)


def _pair_settle(a: np.ndarray, b: np.ndarray, p: float, limit: float) -> int:
    """Least M with ``d(a_s, b_r) <= limit`` for all ``s > r >= M``."""
    d = pnorm(a[:, None, :] - b[None, :, :], p)  # d[s, r]
    s, r = np.indices(d.shape)
    bad = (s > r) & (d > limit)
    rows = np.flatnonzero(bad.any(axis=0))
    return int(rows[-1]) + 1 if rows.size else 0


def check_lemma_cauchy(
    xs: Sequence[Point],
    rhos: Sequence[Point],
    thetas: Sequence[Point],
    dist: float,
    eps: float,
    tol: float = 1e-9,
) -> LemmaVerdict:
    """Cauchy-form lemma on a finite horizon for one ``eps``.

    Returns the least ``M1`` with ``d(x_s, rho_r) <= eps`` for all
    ``s > r >= M1``, or a "not within horizon" verdict if no ``M1`` leaves at
    least one pair to check.
    """
    if eps <= 0:
        raise UsageError(f"eps must be positive, got {eps}")
    x, p = _coords(xs)
    rho, _ = _coords(rhos)
    th, _ = _coords(thetas)
    n = x.shape[0]
    if not (rho.shape[0] == n == th.shape[0]):
        raise UsageError("sequences must have equal lengths")
    m0 = _pair_settle(x, th, p, dist + eps)
    h2 = fit_envelope(pnorm(rho - th, p), dist, tol)
    hyp = {"M0": m0 if m0 <= n - 2 else None, "rho_theta_to_dist": h2}
    if m0 > n - 2 or not h2.holds:
        return LemmaVerdict(PRECONDITION, "hypotheses not met on this horizon", {}, hyp)
    m1 = _pair_settle(x, rho, p, eps)
    if m1 > n - 2:
        return LemmaVerdict(NOT_WITHIN_HORIZON, f"no M1 for eps={eps} within horizon",
                            {"M1": None}, hyp)
    return LemmaVerdict(PASS, f"M1={m1} for eps={eps} within horizon", {"M1": m1}, hyp)
