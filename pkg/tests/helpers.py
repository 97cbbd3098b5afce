"""Problem builders shared by the test modules."""
import numpy as np

from proxima import AffineCyclicMap, AffineRule, FinitePointSet, Segment, Space, TableMap

R2 = Space(2)


def two_segment_map(omega_offset=(2.0, 0.0)):
    omega = Segment(R2.point(-1, -0.5), R2.point(-1, 0.5))
    delta = Segment(R2.point(1, -0.5), R2.point(1, 0.5))
    return AffineCyclicMap(
        omega, delta,
        AffineRule([[1, 0], [0, -0.5]], omega_offset),
        AffineRule([[1, 0], [0, -1 / 3]], [-2, 0]),
    )


def projection_map():
    """Each side collapses onto its proximal point."""
    m = two_segment_map()
    return AffineCyclicMap(
        m.omega, m.delta,
        AffineRule([[0, 0], [0, 0]], [1, 0]),
        AffineRule([[0, 0], [0, 0]], [-1, 0]),
    )


def fixed_point_map():
    p = R2.point(0.3, -0.2)
    s = FinitePointSet((p,), convex=True)
    return TableMap(s, s, ((p, p),))


def two_cycle(a=(0.0, 0.0), b=(3.0, 4.0)):
    a, b = R2.point(*a), R2.point(*b)
    return TableMap(FinitePointSet((a,)), FinitePointSet((b,)), ((a, b), (b, a))), a, b


def random_parallel_map(rng, max_norm=0.9):
    """Affine cyclic map between two random parallel segments in the plane.

    Each rule is ``A = k u u^T + w n^T`` plus an offset; ``n^T x`` is constant
    on a segment, so the image of either segment lies on the other one when
    ``|k| h_src + |shift| <= h_dst``. The spectral norm of ``A`` is kept
    below ``max_norm``.
    """
    ang = rng.uniform(0, np.pi)
    u = np.array([np.cos(ang), np.sin(ang)])
    n = np.array([-u[1], u[0]])
    sep = rng.uniform(0.5, 3.0)
    c_o = rng.uniform(-2, 2, size=2)
    c_d = c_o + sep * n + rng.uniform(-1, 1) * u
    h_o, h_d = rng.uniform(0.3, 1.5, size=2)
    omega = Segment(R2.point(c_o - h_o * u), R2.point(c_o + h_o * u))
    delta = Segment(R2.point(c_d - h_d * u), R2.point(c_d + h_d * u))

    def rule(c_src, h_src, c_dst, h_dst):
        while True:
            k = rng.uniform(-1, 1) * min(0.85, h_dst / h_src)
            w = rng.normal(size=2) * 0.3
            A = k * np.outer(u, u) + np.outer(w, n)
            if np.linalg.norm(A, 2) < max_norm:
                break
        room = h_dst - abs(k) * h_src
        shift = rng.uniform(-room, room)
        b = c_dst + shift * u - A @ c_src
        return AffineRule(A, b)

    return AffineCyclicMap(omega, delta, rule(c_o, h_o, c_d, h_d), rule(c_d, h_d, c_o, h_o))
