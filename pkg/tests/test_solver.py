import csv
import math

import numpy as np
import pytest

from helpers import R2, two_segment_map, two_cycle
from proxima import (
    CyclicityViolation,
    SolveOptions,
    UsageError,
    gap_bound_check,
    iterate,
    multi_start_check,
    write_trace_csv,
)
from proxima.cyclic_map import DELTA, OMEGA
from proxima.solver import gap_envelope_check


def closed_form_gaps(y0, n):
    """Gaps of the two-segment example orbit from (-1, y0), by hand."""
    ys = [y0]
    for k in range(n):
        ys.append(-ys[-1] / 2 if k % 2 == 0 else -ys[-1] / 3)
    return [math.hypot(2, ys[k + 1] - ys[k]) for k in range(n)]


def test_solve_from_omega(seg2):
    r = iterate(seg2, R2.point(-1, -0.5), dist=2.0)
    assert r.converged
    assert r.bpp_omega.coords == pytest.approx([-1, 0], abs=1e-9)
    assert r.bpp_delta.coords == pytest.approx([1, 0], abs=1e-9)
    assert r.residual_bpp < 1e-9 and r.residual_fp2 < 1e-9
    assert r.iterations <= 60
    assert r.seed_side == OMEGA


def test_solve_gaps_match_closed_form(seg2):
    r = iterate(seg2, R2.point(-1, -0.5), dist=2.0)
    np.testing.assert_allclose(r.gap_sequence, closed_form_gaps(-0.5, len(r.gap_sequence)),
                               rtol=0, atol=1e-15)


def test_solve_from_delta(seg2):
    r = iterate(seg2, R2.point(1, 0.5), dist=2.0)
    assert r.converged and r.seed_side == DELTA
    assert r.bpp_omega.coords == pytest.approx([-1, 0], abs=1e-9)
    assert r.bpp_delta.coords == pytest.approx([1, 0], abs=1e-9)
    assert seg2.omega.contains(r.bpp_omega) and seg2.delta.contains(r.bpp_delta)


def test_solve_stationary(seg2):
    r = iterate(seg2, R2.point(-1, 0), dist=2.0)
    assert r.converged and r.iterations <= 4
    assert set(r.gap_sequence) == {2.0}
    assert r.residual_bpp == 0.0 and r.residual_fp2 == 0.0


def test_solve_default_dist_uses_set_distance(seg2):
    r = iterate(seg2, R2.point(-1, 0.3))
    assert r.dist_used == 2.0


def test_solve_non_convergence_is_a_report():
    # two distinct points at distance 5 but with dist declared as 4
    m, a, _ = two_cycle()
    r = iterate(m, a, SolveOptions(max_iter=20), dist=4.0)
    assert not r.converged
    assert r.iterations == 20


def test_solve_cyclicity_violation():
    with pytest.raises(CyclicityViolation):
        iterate(two_segment_map(omega_offset=(3, 0)), R2.point(-1, 0), dist=2.0)


def test_solve_options_validation():
    with pytest.raises(UsageError):
        SolveOptions(max_iter=3)
    with pytest.raises(UsageError):
        SolveOptions(gap_tol=0)
    with pytest.raises(UsageError):
        SolveOptions(eta_for_bound=1.5)


def test_even_iterates_stay_in_omega(seg2):
    r = iterate(seg2, R2.point(-1, 0.45), SolveOptions(record_trace=True), dist=2.0)
    for k, x in enumerate(r.trace):
        assert (seg2.omega if k % 2 == 0 else seg2.delta).contains(x)


def test_min_iter_extends_run(seg2):
    r = iterate(seg2, R2.point(-1, -0.5), SolveOptions(min_iter=101), dist=2.0)
    assert len(r.gap_sequence) >= 101
    assert r.converged


def test_gap_bound_holds_at_certified_eta(seg2):
    r = iterate(seg2, R2.point(-1, -0.5), dist=2.0)
    b = gap_bound_check(r, seg2, 0.95)
    assert b.ok and b.first_violation is None
    assert b.s0 == pytest.approx(math.sqrt(4.5625), abs=1e-12)


def test_gap_bound_reports_violation(seg2):
    r = iterate(seg2, R2.point(-1, -0.5), dist=2.0)
    b = gap_bound_check(r, seg2, 0.005)
    # oracle at n = 1: gap_1 - 2 vs 0.005 * (S0 - 2)
    g1 = closed_form_gaps(-0.5, 2)[1]
    assert g1 - 2 > 0.005 * (math.sqrt(4.5625) - 2) + 1e-9
    assert not b.ok and b.first_violation == 1


def test_gap_bound_delta_seed(seg2):
    r = iterate(seg2, R2.point(1, 0.5), dist=2.0)
    assert gap_bound_check(r, seg2, 0.95)


def test_gap_bound_through_options(seg2):
    r = iterate(seg2, R2.point(-1, -0.5), SolveOptions(eta_for_bound=0.95), dist=2.0)
    assert r.gap_bound_ok is True
    assert iterate(seg2, R2.point(-1, -0.5), dist=2.0).to_dict()["gap_bound_ok"] == "not checked"


def test_envelope_n0_term_is_exact():
    assert gap_envelope_check([2.5], 2.5, 2.0, 0.1, 0.0).ok
    assert not gap_envelope_check([2.5 + 1e-6], 2.5, 2.0, 0.1, 0.0).ok


def test_multi_start_grid(seg2):
    seeds = seg2.omega.sample(11)
    v = multi_start_check(seg2, seeds, dist=2.0)
    assert v.status == "pass"
    assert v.limit.coords == pytest.approx([-1, 0], abs=1e-9)


def test_multi_start_delta_seeds_mapped(seg2):
    seeds = [seg2(R2.point(1, y)) for y in (-0.5, 0.1, 0.5)]
    v = multi_start_check(seg2, seeds, dist=2.0)
    assert v.passed
    assert v.limit.coords == pytest.approx([-1, 0], abs=1e-9)


def test_multi_start_duplicate_seed(seg2):
    x = R2.point(-1, 0.2)
    assert multi_start_check(seg2, [x, x], dist=2.0).passed


def test_multi_start_indeterminate():
    m, a, _ = two_cycle()
    v = multi_start_check(m, [a, a], SolveOptions(max_iter=10), dist=4.0)
    assert v.status == "indeterminate"


def test_multi_start_validation(seg2):
    with pytest.raises(UsageError):
        multi_start_check(seg2, [R2.point(-1, 0)])
    with pytest.raises(UsageError):
        multi_start_check(seg2, [R2.point(-1, 0), R2.point(1, 0)])


def test_deterministic_reports(seg2):
    a = iterate(seg2, R2.point(-1, 0.37), dist=2.0).to_dict()
    b = iterate(seg2, R2.point(-1, 0.37), dist=2.0).to_dict()
    assert a == b


def test_trace_csv(tmp_path, seg2):
    r = iterate(seg2, R2.point(-1, -0.5), SolveOptions(record_trace=True), dist=2.0)
    path = tmp_path / "trace.csv"
    write_trace_csv(r, path)
    rows = list(csv.reader(path.open()))
    assert rows[0] == ["n", "side", "x_1", "x_2", "gap"]
    assert rows[1] == ["0", "omega", "-1", "-0.5", "%.17g" % math.sqrt(4.5625)]
    assert rows[2][1] == "delta"
    assert rows[-1][-1] == ""
    assert len(rows) == len(r.trace) + 1
    # 17 significant digits round-trip exactly
    assert [float(v) for v in rows[5][2:4]] == r.trace[4].tolist()


def test_trace_csv_requires_trace(tmp_path, seg2):
    r = iterate(seg2, R2.point(-1, -0.5), dist=2.0)
    with pytest.raises(UsageError):
        write_trace_csv(r, tmp_path / "t.csv")
