import numpy as np
import pytest

from oracles import dense_bilevel_jumps
from tsthresh.entropy import total_entropy
from tsthresh.histogram import GrayDistribution, Histogram, normalize
from tsthresh.optimizer import ThresholdSet
from tsthresh.synthetic import gaussian_counts, mixture_counts, two_basin_distribution
from tsthresh.transition import (
    CurveRow,
    GradualDrift,
    SweepConfig,
    ThresholdCurve,
    Transition,
    curve_to_csv,
    detect_transitions,
    find_transitions,
    q_grid,
    refine_transition,
    report_to_csv,
    sweep,
)

UNIFORM = GrayDistribution(np.full(256, 1 / 256))


def drifting_distribution():
    """Smoothly drifting bi-level optimum: ~20 levels across (0,1), no jump."""
    counts = mixture_counts([(0.55, 60.0, 8.0, 28, 92), (0.45, 180.0, 40.0, 100, 250)], 65536)
    return normalize(Histogram(counts, 65536))


def make_curve(points):
    return ThresholdCurve(tuple(CurveRow(q, ThresholdSet(ts), 0.0) for q, ts in points))


class TestSweepConfig:
    def test_defaults_valid(self):
        cfg = SweepConfig()
        assert cfg.q_min == 0.01
        assert cfg.q_max == 0.99
        assert cfg.q_step == 0.005
        assert cfg.jump_threshold == 16
        assert cfg.refine_tol == 1e-3

    def test_rejects_inverted_grid(self):
        with pytest.raises(ValueError):
            SweepConfig(q_min=0.9, q_max=0.1)

    def test_rejects_zero_step(self):
        with pytest.raises(ValueError):
            SweepConfig(q_step=0.0)

    def test_rejects_step_wider_than_span(self):
        with pytest.raises(ValueError):
            SweepConfig(q_min=0.4, q_max=0.5, q_step=0.2)

    def test_rejects_endpoints_outside_unit_interval(self):
        with pytest.raises(ValueError):
            SweepConfig(q_min=0.0)
        with pytest.raises(ValueError):
            SweepConfig(q_max=1.0)

    def test_rejects_bad_jump_and_tol(self):
        with pytest.raises(ValueError):
            SweepConfig(jump_threshold=0)
        with pytest.raises(ValueError):
            SweepConfig(refine_tol=0.0)


class TestGrid:
    def test_five_point_grid(self):
        qs = q_grid(SweepConfig(q_min=0.1, q_max=0.9, q_step=0.2))
        assert len(qs) == 5
        for got, want in zip(qs, [0.1, 0.3, 0.5, 0.7, 0.9]):
            assert got == pytest.approx(want, abs=1e-12)

    def test_default_grid_covers_both_ends(self):
        qs = q_grid(SweepConfig())
        assert len(qs) == 197
        assert qs[0] == pytest.approx(0.01, abs=1e-12)
        assert qs[-1] == pytest.approx(0.99, abs=1e-12)


class TestSweep:
    def test_uniform_curve_constant(self):
        cfg = SweepConfig(q_min=0.1, q_max=0.9, q_step=0.1)
        curve = sweep(UNIFORM, cfg)
        assert len(curve.rows) == 9
        assert all(r.thresholds.levels == (127,) for r in curve.rows)

    def test_rows_carry_exact_total_entropy(self):
        cfg = SweepConfig(q_min=0.2, q_max=0.8, q_step=0.3)
        curve = sweep(two_basin_distribution(), cfg)
        for row in curve.rows:
            assert row.entropy == total_entropy(two_basin_distribution(), row.thresholds, row.q)

    def test_rows_strictly_increasing_in_q(self):
        curve = sweep(UNIFORM, SweepConfig(q_min=0.1, q_max=0.5, q_step=0.1))
        qs = [r.q for r in curve.rows]
        assert qs == sorted(qs)
        assert len(set(qs)) == len(qs)

    def test_evaluation_order_irrelevant(self):
        from tsthresh.optimizer import optimize

        cfg = SweepConfig(q_min=0.2, q_max=0.6, q_step=0.2, m=2)
        d = drifting_distribution()
        curve = sweep(d, cfg)
        for row in reversed(curve.rows):
            again = optimize(d, 2, row.q)
            assert again.thresholds == row.thresholds
            assert again.entropy == row.entropy


class TestDetect:
    def test_single_jump_bracket(self):
        curve = make_curve([(0.49, (34,)), (0.50, (34,)), (0.51, (180,)), (0.52, (181,))])
        assert detect_transitions(curve, 20) == [(0.50, 0.51)]

    def test_small_steps_ignored(self):
        curve = make_curve([(0.1 * k, (100 + 2 * k,)) for k in range(1, 8)])
        assert detect_transitions(curve, 16) == []

    def test_two_separated_jumps_in_order(self):
        curve = make_curve(
            [(0.1, (40,)), (0.2, (90,)), (0.3, (92,)), (0.4, (200,)), (0.5, (201,))]
        )
        assert detect_transitions(curve, 30) == [(0.1, 0.2), (0.3, 0.4)]

    def test_multi_threshold_any_jump_counts(self):
        curve = make_curve([(0.3, (50, 200)), (0.4, (51, 150))])
        assert detect_transitions(curve, 16) == [(0.3, 0.4)]

    def test_needs_two_rows(self):
        with pytest.raises(ValueError):
            detect_transitions(make_curve([(0.5, (10,))]), 16)


class TestRefine:
    def test_two_basin_bracket_refines_to_critical_q(self):
        d = two_basin_distribution()
        out = refine_transition(d, 2, (0.35, 0.36), 16, 1e-3)
        assert isinstance(out, Transition)
        assert out.q_high - out.q_low <= 1e-3
        assert out.max_jump >= 16
        assert out.below.levels == (135,)
        assert out.above.levels == (156,)
        assert out.q_low <= out.critical_q <= out.q_high

    def test_noop_when_tolerance_exceeds_bracket(self):
        d = two_basin_distribution()
        out = refine_transition(d, 2, (0.35, 0.36), 16, 0.05)
        assert isinstance(out, Transition)
        assert (out.q_low, out.q_high) == (0.35, 0.36)
        assert out.critical_q == pytest.approx(0.355, abs=1e-12)

    def test_agreeing_endpoints_rejected(self):
        with pytest.raises(ValueError, match="nothing to refine"):
            refine_transition(UNIFORM, 2, (0.2, 0.8), 16, 1e-3)

    def test_gradual_drift_detected(self):
        d = drifting_distribution()
        out = refine_transition(d, 2, (0.05, 0.95), 16, 1e-3)
        assert isinstance(out, GradualDrift)

    def test_bad_bracket_rejected(self):
        with pytest.raises(ValueError):
            refine_transition(UNIFORM, 2, (0.8, 0.2), 16, 1e-3)


class TestPipeline:
    def test_uniform_yields_empty_report(self):
        curve, report = find_transitions(UNIFORM, SweepConfig(q_step=0.02))
        assert report.transitions == ()
        assert report.gradual == ()

    def test_uniform_clean_even_at_minimal_jump_threshold(self):
        curve, report = find_transitions(UNIFORM, SweepConfig(q_step=0.02, jump_threshold=1))
        assert report.transitions == ()
        assert detect_transitions(curve, 1) == []

    def test_gaussian_yields_empty_report(self):
        d = normalize(Histogram(gaussian_counts(), 65536))
        curve, report = find_transitions(d, SweepConfig())
        assert report.transitions == ()

    def test_two_basin_matches_dense_oracle(self):
        d = two_basin_distribution()
        curve, report = find_transitions(d, SweepConfig())
        assert len(report.transitions) == 1
        tr = report.transitions[0]

        jumps = dense_bilevel_jumps(d.probs, 0.01, 0.99, 1e-4, 16)
        assert len(jumps) == 1
        q_lo, q_hi, t_lo, t_hi = jumps[0]
        oracle_critical = 0.5 * (q_lo + q_hi)
        assert abs(tr.critical_q - oracle_critical) <= 1e-3
        assert tr.below.levels == (t_lo,)
        assert tr.above.levels == (t_hi,)

    def test_critical_q_stable_under_finer_grid(self):
        d = two_basin_distribution()
        _, coarse = find_transitions(d, SweepConfig())
        _, fine = find_transitions(d, SweepConfig(q_step=0.0025))
        assert len(coarse.transitions) == len(fine.transitions) == 1
        assert abs(coarse.transitions[0].critical_q - fine.transitions[0].critical_q) <= 1e-3

    def test_flanking_sets_reproducible_at_critical_offsets(self):
        from tsthresh.optimizer import optimize

        d = two_basin_distribution()
        _, report = find_transitions(d, SweepConfig())
        tr = report.transitions[0]
        assert optimize(d, 2, tr.critical_q - 1e-3).thresholds == tr.below
        assert optimize(d, 2, tr.critical_q + 1e-3).thresholds == tr.above


class TestCsv:
    def test_curve_csv_shape_and_formats(self):
        cfg = SweepConfig(q_min=0.1, q_max=0.5, q_step=0.2)
        curve = sweep(UNIFORM, cfg)
        text = curve_to_csv(curve)
        lines = text.strip().split("\n")
        assert lines[0] == "q,t1,entropy"
        assert len(lines) == 1 + 3
        q_cell, t_cell, e_cell = lines[1].split(",")
        assert q_cell == "0.100000"
        assert t_cell == "127"
        assert e_cell == f"{curve.rows[0].entropy:.12g}"

    def test_curve_csv_trilevel_header(self):
        cfg = SweepConfig(q_min=0.3, q_max=0.7, q_step=0.2, m=3)
        curve = sweep(UNIFORM, cfg)
        assert curve_to_csv(curve).startswith("q,t1,t2,entropy\n")
        assert ",84,169," in curve_to_csv(curve)

    def test_report_csv_layout(self):
        from tsthresh.transition import TransitionReport

        tr = Transition(0.354, 0.3545, 0.35425, (21,), ThresholdSet([135]), ThresholdSet([156]))
        text = report_to_csv(TransitionReport((tr,)))
        lines = text.strip().split("\n")
        assert lines[0] == "q_low,q_high,critical_q,max_jump,thresholds_below,thresholds_above"
        assert lines[1] == "0.354000,0.354500,0.354250,21,135,156"

    def test_report_csv_trilevel_threshold_lists(self):
        from tsthresh.transition import TransitionReport

        tr = Transition(
            0.1, 0.1009, 0.10045, (4, 30), ThresholdSet([60, 150]), ThresholdSet([64, 180])
        )
        text = report_to_csv(TransitionReport((tr,)))
        assert "60;150,64;180" in text
