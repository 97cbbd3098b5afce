"""Contraction inequalities for cyclic maps, checked on sample grids.

Three classes are compared. For ``x`` in omega and ``y`` in delta each class
requires::

    d(Tx, Ty) <= eta * B(x, y) + (1 - eta) * dist

with bound term ``B`` equal to

* ``cyclic``:  ``d(x, y)``
* ``suzuki``:  ``max(d(x, y), d(x, Tx), d(y, Ty))``
* ``orbital``: the supremum of ``d(T^i x, T^j x)`` and ``d(T^k y, T^l y)``
  over odd index differences together with ``d(T^p x, T^q y)`` over even
  index differences (indices start at 0).

Each bound term dominates the previous one, so a map passing a class also
passes every later class at the same ``eta``.

All verdicts hold *on the checked grid*; nothing here is a proof.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .cyclic_map import DELTA, OMEGA, CyclicMap, orbit
from .errors import UsageError
from .region import set_distance
from .space import Point, pnorm

__all__ = [
    "CLASSES",
    "OrbitalSup",
    "ContractionVerdict",
    "orbital_sup",
    "verify_cyclic",
    "verify_suzuki",
    "verify_orbital",
    "verify",
    "estimate_min_eta",
]

CLASSES = ("cyclic", "suzuki", "orbital")
SUP_CLASSES = ("odd-omega", "odd-delta", "even-cross")

DEFAULT_DENSITY = 11
DEFAULT_DEPTH = 32
DEFAULT_TOL = 1e-9
DEFAULT_SUP_TOL = 1e-12
DIST_DENSITY = 101


@dataclass(frozen=True)
class OrbitalSup:
    """Truncated orbital supremum.

    ``attained_at`` is ``((i, j), cls)``; for the odd classes ``i > j`` index
    the same orbit, for ``even-cross`` ``i`` indexes the omega orbit and ``j``
    the delta orbit. ``converged`` is true when the last doubling of the
    depth changed the value by less than ``sup_tol``.
    """

    value: float
    attained_at: tuple[tuple[int, int], str]
    depth_used: int
    converged: bool


def _odd_max(c: np.ndarray, p: float, n: int):
    """Max of d(c[i], c[j]) over i > j, i - j odd, indices < n."""
    c = c[:n]
    d = pnorm(c[:, None, :] - c[None, :, :], p)
    i, j = np.indices(d.shape)
    d = np.where((i > j) & ((i - j) % 2 == 1), d, -np.inf)
    k = int(np.argmax(d))
    return float(d.flat[k]), divmod(k, n)


def _cross_max(a: np.ndarray, b: np.ndarray, p: float, n: int):
    a, b = a[:n], b[:n]
    d = pnorm(a[:, None, :] - b[None, :, :], p)
    i, j = np.indices(d.shape)
    d = np.where((i - j) % 2 == 0, d, -np.inf)
    k = int(np.argmax(d))
    return float(d.flat[k]), divmod(k, n)


def _sup_at(a: np.ndarray, b: np.ndarray, p: float, depth: int):
    n = depth + 1
    best = None
    for cls, (v, idx) in zip(
        SUP_CLASSES, (_odd_max(a, p, n), _odd_max(b, p, n), _cross_max(a, b, p, n))
    ):
        if best is None or v > best[0]:
            best = (v, (tuple(int(t) for t in idx), cls))
    return best


def _sup_doubling(orbit_of, depth: int, sup_tol: float, p: float) -> OrbitalSup:
    """Evaluate at ``depth`` and double (at most twice) until stable.

    ``orbit_of(n)`` returns the omega and delta orbit coordinates to depth ``n``.
    """
    a, b = orbit_of(2 * depth)
    prev, _ = _sup_at(a, b, p, depth)
    value, where = _sup_at(a, b, p, 2 * depth)
    used = 2 * depth
    if value - prev >= sup_tol:
        a, b = orbit_of(4 * depth)
        prev = value
        value, where = _sup_at(a, b, p, 4 * depth)
        used = 4 * depth
    return OrbitalSup(value, where, used, value - prev < sup_tol)


def orbital_sup(
    m: CyclicMap,
    x: Point,
    y: Point,
    depth: int = DEFAULT_DEPTH,
    sup_tol: float = DEFAULT_SUP_TOL,
) -> OrbitalSup:
    """Parity-restricted supremum over the double orbit of ``(x, y)``.

    ``x`` must lie in omega and ``y`` in delta. The supremum is taken over
    index pairs up to ``depth``, then ``2*depth`` and, if the value still
    moved by ``sup_tol`` or more, ``4*depth``.
    """
    if depth < 2:
        raise UsageError(f"depth must be >= 2, got {depth}")

    def orbit_of(n):
        return orbit(m, x, n, side=OMEGA).coords, orbit(m, y, n, side=DELTA).coords

    return _sup_doubling(orbit_of, depth, sup_tol, m.space.p)


@dataclass(frozen=True)
class ContractionVerdict:
    """Result of checking one contraction class at one ``eta`` on a grid.

    ``worst_pair`` minimises the margin ``RHS - LHS``. ``witness`` is the
    pair demanding the largest ``eta``: pairs whose bound term equals
    ``dist`` but whose images are farther apart than ``dist`` rule out every
    ``eta`` and rank first, ties broken by the larger excess
    ``LHS - dist`` and then by grid order.
    """

    cls: str
    eta: float
    holds: bool
    worst_pair: tuple[Point, Point]
    worst_margin: float
    witness: tuple[Point, Point]
    witness_lhs: float
    witness_rhs: float
    min_eta_estimate: float | None
    dist: float
    density: int
    pairs_checked: int
    depth: int | None = None
    sup_converged: bool | None = None
    notes: tuple[str, ...] = field(default_factory=tuple)

    def __bool__(self):
        return self.holds

    def to_dict(self) -> dict:
        return {
            "class": self.cls,
            "eta": self.eta,
            "holds": self.holds,
            "scope": f"holds on the checked {self.density}x{self.density} grid"
            if self.holds else "violated on the checked grid",
            "worst_pair": [self.worst_pair[0].tolist(), self.worst_pair[1].tolist()],
            "worst_margin": self.worst_margin,
            "witness": [self.witness[0].tolist(), self.witness[1].tolist()],
            "witness_lhs": self.witness_lhs,
            "witness_rhs": self.witness_rhs,
            "min_eta_estimate": self.min_eta_estimate,
            "dist": self.dist,
            "density": self.density,
            "depth": self.depth,
            "pairs_checked": self.pairs_checked,
            "sup_converged": self.sup_converged,
            "notes": list(self.notes),
        }


@dataclass
class _PairTerms:
    xs: list[Point]
    ys: list[Point]
    lhs: np.ndarray
    bound: np.ndarray
    dist: float
    depth: int | None = None
    sup_converged: bool | None = None


def _resolve_dist(m: CyclicMap, dist: float | None) -> float:
    if dist is None:
        dist, _ = set_distance(m.omega, m.delta, DIST_DENSITY)
    return float(dist)


def _pair_terms(m, cls, density, depth, dist, sup_tol) -> _PairTerms:
    if cls not in CLASSES:
        raise UsageError(f"unknown contraction class {cls!r}; expected one of {CLASSES}")
    p = m.space.p
    xs, ys = m.omega.sample(density), m.delta.sample(density)
    xa = np.stack([x.coords for x in xs])
    ya = np.stack([y.coords for y in ys])
    tx = np.stack([m.image(x, OMEGA).coords for x in xs])
    ty = np.stack([m.image(y, DELTA).coords for y in ys])
    lhs = pnorm(tx[:, None, :] - ty[None, :, :], p)
    dxy = pnorm(xa[:, None, :] - ya[None, :, :], p)
    terms = _PairTerms(xs, ys, lhs, dxy, dist)
    if cls == "suzuki":
        dx = pnorm(xa - tx, p)
        dy = pnorm(ya - ty, p)
        terms.bound = np.maximum(np.maximum(dxy, dx[:, None]), dy[None, :])
    elif cls == "orbital":
        if depth < 2:
            raise UsageError(f"depth must be >= 2, got {depth}")
        cache: dict = {}

        def coords(side, k, pt, n):
            key = (side, k)
            if key not in cache or cache[key].shape[0] < n + 1:
                cache[key] = orbit(m, pt, n, side=side).coords
            return cache[key]

        bound = np.empty_like(lhs)
        converged = True
        for i, x in enumerate(xs):
            for j, y in enumerate(ys):
                sup = _sup_doubling(
                    lambda n: (coords(OMEGA, i, x, n), coords(DELTA, j, y, n)),
                    depth, sup_tol, p,
                )
                bound[i, j] = sup.value
                converged &= sup.converged
        terms.bound = bound
        terms.depth = depth
        terms.sup_converged = converged
    return terms


def _required_eta(lhs, bound, dist, tol):
    """Smallest eta each pair tolerates: -inf if unconstrained, inf if none works."""
    slack = bound - dist
    excess = lhs - dist
    with np.errstate(divide="ignore", invalid="ignore"):
        req = np.where(slack > tol, excess / slack, np.where(excess > tol, np.inf, -np.inf))
    return req, excess


def _min_eta(req: np.ndarray, tol: float) -> float | None:
    if np.any(np.isposinf(req)):
        return None
    finite = req[np.isfinite(req)]
    top = float(finite.max()) if finite.size else 0.0
    if top >= 1.0:
        return None
    return max(top, tol)


def verify(
    m: CyclicMap,
    cls: str,
    eta: float,
    density: int = DEFAULT_DENSITY,
    depth: int = DEFAULT_DEPTH,
    dist: float | None = None,
    tol: float = DEFAULT_TOL,
    sup_tol: float = DEFAULT_SUP_TOL,
) -> ContractionVerdict:
    """Check contraction class ``cls`` at ``eta`` over every sampled pair.

    ``dist`` defaults to the set-distance estimate at density 101.
    """
    if not 0.0 < eta < 1.0:
        raise UsageError(f"eta must lie in (0, 1), got {eta}")
    dist = _resolve_dist(m, dist)
    t = _pair_terms(m, cls, density, depth, dist, sup_tol)
    rhs = eta * t.bound + (1.0 - eta) * dist
    margin = rhs - t.lhs
    n_y = len(t.ys)
    wi, wj = divmod(int(np.argmin(margin)), n_y)

    req, excess = _required_eta(t.lhs, t.bound, dist, tol)
    flat = np.arange(req.size)
    # lexsort: last key is primary; negate for descending, index ascending last
    order = np.lexsort((flat, -excess.ravel(), -req.ravel()))
    bi, bj = divmod(int(order[0]), n_y)

    notes = ("indices in the orbital supremum start at 0",) if cls == "orbital" else ()
    return ContractionVerdict(
        cls=cls,
        eta=eta,
        holds=bool(margin.min() >= -tol),
        worst_pair=(t.xs[wi], t.ys[wj]),
        worst_margin=float(margin[wi, wj]),
        witness=(t.xs[bi], t.ys[bj]),
        witness_lhs=float(t.lhs[bi, bj]),
        witness_rhs=float(rhs[bi, bj]),
        min_eta_estimate=_min_eta(req, tol),
        dist=dist,
        density=density,
        pairs_checked=int(margin.size),
        depth=t.depth,
        sup_converged=t.sup_converged,
        notes=notes,
    )


def verify_cyclic(m, eta, density=DEFAULT_DENSITY, dist=None, tol=DEFAULT_TOL):
    """``d(Tx, Ty) <= eta d(x, y) + (1 - eta) dist`` on sampled pairs."""
    return verify(m, "cyclic", eta, density=density, dist=dist, tol=tol)


def verify_suzuki(m, eta, density=DEFAULT_DENSITY, dist=None, tol=DEFAULT_TOL):
    """Bound term ``max(d(x, y), d(x, Tx), d(y, Ty))``."""
    return verify(m, "suzuki", eta, density=density, dist=dist, tol=tol)


def verify_orbital(m, eta, density=DEFAULT_DENSITY, depth=DEFAULT_DEPTH, dist=None,
                   tol=DEFAULT_TOL, sup_tol=DEFAULT_SUP_TOL):
    """Bound term is :func:`orbital_sup` of the pair."""
    return verify(m, "orbital", eta, density=density, depth=depth, dist=dist, tol=tol,
                  sup_tol=sup_tol)


def estimate_min_eta(
    m: CyclicMap,
    cls: str,
    density: int = DEFAULT_DENSITY,
    depth: int = DEFAULT_DEPTH,
    dist: float | None = None,
    tol: float = DEFAULT_TOL,
) -> float | None:
    """Smallest ``eta`` for which the class inequality holds on the grid.

    Each pair with ``B > dist + tol`` needs ``eta >= (LHS - dist)/(B - dist)``.
    Pairs with ``B <= dist + tol`` impose nothing if ``LHS <= dist + tol`` and
    rule out every ``eta`` otherwise. Returns ``None`` when no ``eta < 1``
    works, and never less than ``tol``.
    """
    dist = _resolve_dist(m, dist)
    t = _pair_terms(m, cls, density, depth, dist, DEFAULT_SUP_TOL)
    req, _ = _required_eta(t.lhs, t.bound, dist, tol)
    return _min_eta(req, tol)

