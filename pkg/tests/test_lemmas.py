import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import R2
from proxima import (
    FinitePointSet,
    ProximalPair,
    Segment,
    SequenceTriple,
    UsageError,
    check_lemma_cauchy,
    check_lemma_close,
    generate_converging_triple,
)
from proxima.lemmas import NOT_WITHIN_HORIZON, PASS, PRECONDITION, fit_envelope

EPS = [0.1, 0.01, 0.001]


@pytest.fixture(scope="module")
def regions():
    omega = Segment(R2.point(-1, -0.5), R2.point(-1, 0.5))
    delta = Segment(R2.point(1, -0.5), R2.point(1, 0.5))
    return omega, delta, ProximalPair(R2.point(-1, 0), R2.point(1, 0), 2.0)


def _dists(a, b):
    return np.array([np.linalg.norm(x.coords - y.coords) for x, y in zip(a, b)])


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_generator_envelope(regions, seed):
    omega, delta, pair = regions
    t = generate_converging_triple(omega, delta, pair, length=50, decay=0.8, seed=seed)
    assert t.length == 50 and t.check_membership(omega, delta)
    r = np.arange(50)
    # steps are at most 0.8^r times the half-length 0.5 of each segment
    assert np.all(_dists(t.xs, [pair.a] * 50) <= 0.5 * 0.8 ** r + 1e-15)
    assert np.all(_dists(t.thetas, [pair.b] * 50) <= 0.5 * 0.8 ** r + 1e-15)
    assert np.all(_dists(t.xs, t.thetas) - 2 <= 0.8 ** r + 1e-12)
    assert np.all(_dists(t.rhos, t.thetas) - 2 <= 0.8 ** r + 1e-12)


def test_generator_seed_changes_sequence(regions):
    omega, delta, pair = regions
    a = generate_converging_triple(omega, delta, pair, seed=1)
    b = generate_converging_triple(omega, delta, pair, seed=2)
    assert a.xs != b.xs
    assert a == generate_converging_triple(omega, delta, pair, seed=1)


def test_generator_zero_amplitude(regions):
    omega, delta, pair = regions
    t = generate_converging_triple(omega, delta, pair, length=10, amplitude=0.0)
    assert set(t.xs) == {pair.a} and set(t.thetas) == {pair.b}


def test_generator_rejects_nonconvex(regions):
    _, delta, pair = regions
    pts = FinitePointSet((R2.point(-1, 0), R2.point(-1, 0.5)))
    with pytest.raises(UsageError):
        generate_converging_triple(pts, delta, pair)


def test_triple_validation():
    x = R2.point(0, 0)
    with pytest.raises(UsageError):
        SequenceTriple((x,) * 9, (x,) * 9, (x,) * 9)
    with pytest.raises(UsageError):
        SequenceTriple((x,) * 10, (x,) * 11, (x,) * 10)


@pytest.mark.parametrize("seed", range(10))
def test_close_passes_on_generated(regions, seed):
    omega, delta, pair = regions
    t = generate_converging_triple(omega, delta, pair, seed=seed)
    v = check_lemma_close(t, 2.0, EPS)
    assert v.status == PASS
    # oracle: direct scan for the least settling index
    gap = _dists(t.xs, t.rhos)
    for eps in EPS:
        bad = np.flatnonzero(gap > eps)
        assert v.indices[eps] == (bad[-1] + 1 if bad.size else 0)
    Rs = [v.indices[e] for e in EPS]
    assert Rs == sorted(Rs)


@pytest.mark.parametrize("seed", range(10))
def test_cauchy_passes_on_generated(regions, seed):
    omega, delta, pair = regions
    t = generate_converging_triple(omega, delta, pair, seed=seed)
    v = check_lemma_cauchy(t.xs, t.rhos, t.thetas, 2.0, 0.05)
    assert v.status == PASS
    # oracle: exhaustive scan over s > r
    n = t.length
    m1 = next(M for M in range(n) if all(
        np.linalg.norm(t.xs[s].coords - t.rhos[r].coords) <= 0.05
        for r in range(M, n) for s in range(r + 1, n)))
    assert v.indices["M1"] == m1


def test_close_identical_sequences(regions):
    omega, delta, pair = regions
    t = generate_converging_triple(omega, delta, pair, seed=3)
    same = SequenceTriple(t.xs, t.xs, t.thetas)
    v = check_lemma_close(same, 2.0, EPS)
    assert v.passed and all(R == 0 for R in v.indices.values())


def test_constant_sequences_cauchy_m1_zero(regions):
    omega, delta, pair = regions
    t = generate_converging_triple(omega, delta, pair, length=10, amplitude=0.0)
    v = check_lemma_cauchy(t.xs, t.rhos, t.thetas, 2.0, 0.01)
    assert v.passed and v.indices["M1"] == 0


def test_close_adversarial_is_precondition(regions):
    omega, delta, pair = regions
    t = generate_converging_triple(omega, delta, pair, seed=4)
    held = SequenceTriple(t.xs, (R2.point(-1, 0.5),) * t.length, t.thetas)
    v = check_lemma_close(held, 2.0, EPS)
    assert v.status == PRECONDITION
    assert not v.hypotheses["rho_theta_to_dist"].holds


def test_cauchy_adversarial_is_precondition(regions):
    omega, delta, pair = regions
    t = generate_converging_triple(omega, delta, pair, seed=4)
    v = check_lemma_cauchy(t.xs, (R2.point(-1, 0.5),) * t.length, t.thetas, 2.0, 0.05)
    assert v.status == PRECONDITION


def test_slow_sequence_not_within_horizon(regions):
    """Hypotheses hold but x and rho approach from opposite ends too slowly."""
    n = 12
    xs = tuple(R2.point(-1, 0.4 * 0.9 ** r) for r in range(n))
    rhos = tuple(R2.point(-1, -0.4 * 0.9 ** r) for r in range(n))
    thetas = (R2.point(1, 0),) * n
    v = check_lemma_close(SequenceTriple(xs, rhos, thetas), 2.0, [0.1], tol=0.01)
    assert v.status == NOT_WITHIN_HORIZON
    v = check_lemma_cauchy(xs, rhos, thetas, 2.0, 0.05, tol=0.01)
    assert v.status == NOT_WITHIN_HORIZON


def test_fit_envelope_geometric():
    vals = 2 + 0.5 ** np.arange(40)
    fit = fit_envelope(vals, 2.0, tol=1e-9)
    assert fit.holds and fit.rate == pytest.approx(0.5, rel=1e-9)
    assert fit.r2 == pytest.approx(1.0)


def test_fit_envelope_constant_offset_fails():
    assert not fit_envelope(np.full(20, 2.5), 2.0).holds


@settings(max_examples=50, deadline=None, derandomize=True)
@given(st.integers(0, 2**32 - 1), st.sampled_from([0.7, 0.75, 0.8]))
def test_generated_triples_never_fail_lemmas(seed, decay):
    omega = Segment(R2.point(-1, -0.5), R2.point(-1, 0.5))
    delta = Segment(R2.point(1, -0.5), R2.point(1, 0.5))
    pair = ProximalPair(R2.point(-1, 0), R2.point(1, 0), 2.0)
    t = generate_converging_triple(omega, delta, pair, length=50, decay=decay, seed=seed)
    assert check_lemma_close(t, 2.0, EPS).status == PASS
    assert check_lemma_cauchy(t.xs, t.rhos, t.thetas, 2.0, 0.05).status == PASS
