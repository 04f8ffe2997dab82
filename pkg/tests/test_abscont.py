"""Absolute continuity: adversarial search, reconstruction round trip, and
the equivalence of the two characterizations."""

import math

import pytest

from tscalc.abscont import (
    check_ac_equivalence,
    check_delta_ac,
    ftc_reconstruct,
    lebesgue_point_average,
    verify_ftc,
)
from tscalc.calculus import hilger_derivative
from tscalc.corpus import builtin, make_scale_function
from tscalc.errors import InvalidIntervalError, NotInScaleError
from tscalc.functions import RealLineFunction, ScaleFunction, extend
from tscalc.scale import canonicalize


class TestCheckDeltaAC:
    def test_polynomial_is_consistent(self, mixed_scale):
        f = ScaleFunction(mixed_scale, lambda t: t * t, name="square")
        report = check_delta_ac(f, 0.0, 2.0, trials=10_000, rng_seed=3)
        assert report.verdict == "consistent"
        assert report.witness is None

    def test_sqrt_is_consistent(self, unit_interval):
        f = ScaleFunction(unit_interval, math.sqrt, name="sqrt")
        report = check_delta_ac(f, 0.0, 1.0, trials=2_000, rng_seed=3)
        assert report.verdict == "consistent"

    def test_step_is_violated_with_witness(self, unit_interval):
        f = make_scale_function("step", unit_interval)
        report = check_delta_ac(f, 0.0, 1.0, trials=2_000, rng_seed=3)
        assert report.verdict == "violated"
        w = report.witness
        assert w is not None
        # the witness is re-checkable: tiny total length, variation at least 1
        assert w.total_length < 1e-5
        assert w.variation >= 1.0
        recomputed = sum(abs(f.func(v) - f.func(u)) for u, v in w.intervals)
        assert recomputed == w.variation
        assert any(u < 0.5 <= v for u, v in w.intervals)

    def test_step_across_gap_is_consistent(self):
        # the jump sits over a gap, families cannot shrink across it
        ts = canonicalize([float(k) for k in range(6)])
        f = make_scale_function("step", ts)
        report = check_delta_ac(f, 0.0, 5.0, trials=1_000, rng_seed=3)
        assert report.verdict == "consistent"

    def test_window_validation(self, mixed_scale):
        f = ScaleFunction(mixed_scale, lambda t: t)
        with pytest.raises(NotInScaleError):
            check_delta_ac(f, 0.0, 1.7, trials=10)
        with pytest.raises(InvalidIntervalError):
            check_delta_ac(f, 1.0, 1.0, trials=10)

    def test_report_serializes(self, unit_interval):
        f = make_scale_function("step", unit_interval)
        doc = check_delta_ac(f, 0.0, 1.0, trials=200, rng_seed=1).to_json_dict()
        assert doc["verdict"] == "violated"
        assert doc["witness"]["variation"] >= 1.0
        assert all("epsilon" in row for row in doc["trials"])


class TestFtcReconstruct:
    def test_unit_rate_on_lattice(self):
        ts = canonicalize([float(k) for k in range(6)])
        rate = ScaleFunction(ts, lambda t: 1.0)
        f = ftc_reconstruct(rate, 0.0, 0.0)
        for k in range(6):
            assert f(float(k)) == float(k)

    def test_unit_rate_on_mixed(self, mixed_scale):
        # frozen from the integral decomposition: block then gap mass
        rate = ScaleFunction(mixed_scale, lambda t: 1.0)
        f = ftc_reconstruct(rate, 0.0, 0.0)
        assert f(1.0) == pytest.approx(1.0, abs=1e-12)
        assert f(2.0) == pytest.approx(2.0, abs=1e-12)

    def test_classical_antiderivative(self, unit_interval):
        rate = ScaleFunction(unit_interval, lambda t: 2.0 * t)
        f = ftc_reconstruct(rate, 0.0, 0.0)
        for x in (0.25, 0.5, 1.0):
            assert f(x) == pytest.approx(x * x, abs=1e-10)

    def test_inverts_differentiation(self, full_mixed_scale):
        g = ScaleFunction(full_mixed_scale, lambda t: t + 1.0)
        f = ftc_reconstruct(g, 0.0, 3.0)
        for t in (0.25, 1.0, 2.0, 3.0, 4.2):
            res = hilger_derivative(f, t)
            assert res.converged
            assert res.value == pytest.approx(g.func(t), abs=1e-6)


class TestVerifyFtc:
    def test_exact_on_integer_lattice(self):
        ts = canonicalize([float(k) for k in range(11)])
        f = ScaleFunction(ts, lambda t: t * t)
        assert verify_ftc(f, 0.0, 10.0, 11) == 0.0

    def test_mixed_square(self, mixed_scale):
        f = ScaleFunction(mixed_scale, lambda t: t * t)
        assert verify_ftc(f, 0.0, 2.0, 64) < 1e-8

    def test_kink_at_dense_point_is_skipped(self, unit_interval):
        f = make_scale_function("abs_shift", unit_interval)
        residual, report = verify_ftc(f, 0.0, 1.0, 32, details=True)
        assert residual < 1e-8
        assert len(report.skipped) <= 1

    def test_window_validation(self, mixed_scale):
        f = ScaleFunction(mixed_scale, lambda t: t)
        with pytest.raises(NotInScaleError):
            verify_ftc(f, 0.3, 1.7)

    def test_sub_window(self, full_mixed_scale):
        f = ScaleFunction(full_mixed_scale, lambda t: t * t)
        assert verify_ftc(f, 1.0, 5.0, 24) < 1e-8
        assert verify_ftc(f, 2.0, 4.0, 8) < 1e-10


class TestSubWindowAdversary:
    def test_interior_window_of_one_block(self):
        ts = canonicalize([(0.0, 1.0)])
        f = make_scale_function("step", ts)
        rep = check_delta_ac(f, 0.25, 0.75, trials=1_000, rng_seed=5)
        assert rep.verdict == "violated"
        clean = check_delta_ac(
            ScaleFunction(ts, lambda t: t * t), 0.25, 0.75, trials=1_000, rng_seed=5
        )
        assert clean.verdict == "consistent"

    def test_window_missing_the_jump_is_clean(self):
        ts = canonicalize([(0.0, 1.0)])
        f = make_scale_function("step", ts)
        rep = check_delta_ac(f, 0.6, 1.0, trials=1_000, rng_seed=5)
        assert rep.verdict == "consistent"


class TestLebesguePointAverage:
    def test_linear_closed_form(self):
        # the average of |t| over a symmetric window of half-width w is w/2,
        # doubled by the window length normalization: exactly w
        out = lebesgue_point_average(lambda t: t, 0.0, [0.1, 0.01])
        assert out[0] == pytest.approx(0.1, abs=1e-12)
        assert out[1] == pytest.approx(0.01, abs=1e-12)

    def test_locally_constant_far_from_jump(self):
        g = RealLineFunction(lambda t: 1.0 if t >= 0 else 0.0, jumps=(0.0,))
        out = lebesgue_point_average(g, 0.5, [0.1, 0.01])
        assert out == [0.0, 0.0]

    def test_jump_point_averages_stay_at_one(self):
        g = RealLineFunction(lambda t: 1.0 if t >= 0 else 0.0, jumps=(0.0,))
        out = lebesgue_point_average(g, 0.0, [0.1, 0.01])
        for v in out:
            assert v == pytest.approx(1.0, abs=1e-9)

    def test_decay_at_continuity_points(self):
        ladder = [0.2, 0.05, 0.0125, 0.003125]
        for fn in (lambda t: t * t, lambda t: abs(t - 0.3), math.cos):
            out = lebesgue_point_average(fn, 0.7, ladder)
            assert all(a >= b - 1e-12 for a, b in zip(out, out[1:]))
            assert out[-1] < 0.01


class TestEquivalence:
    def test_square_on_mixed_consistent(self, mixed_scale):
        f = ScaleFunction(mixed_scale, lambda t: t * t, name="square")
        rep = check_ac_equivalence(f, 0.0, 2.0, trials=500, rng_seed=7)
        assert rep.delta_ac_verdict == "consistent"
        assert rep.measure_ac_verdict == "consistent"
        assert rep.agree
        assert rep.identity_residual < 1e-7
        assert rep.derivative_residual < 1e-6

    def test_lattice_is_exact(self):
        ts = canonicalize([float(k) for k in range(6)])
        f = ScaleFunction(ts, lambda t: t * t)
        rep = check_ac_equivalence(f, 0.0, 5.0, trials=200, rng_seed=7)
        assert rep.agree
        assert rep.identity_residual == 0.0

    def test_step_violates_both_sides(self, unit_interval):
        f = make_scale_function("step", unit_interval)
        rep = check_ac_equivalence(f, 0.0, 1.0, trials=500, rng_seed=7)
        assert rep.delta_ac_verdict == "violated"
        assert rep.measure_ac_verdict == "violated"
        assert rep.agree
        assert rep.witness is not None
        assert rep.left_discontinuity == pytest.approx(0.5, abs=1e-9)

    def test_allowed_jump_across_cantor_gap(self):
        ts = builtin("cantor_approx", {"n": 3}).materialize()
        f = make_scale_function("step", ts)
        rep = check_ac_equivalence(f, 0.0, 1.0, trials=500, rng_seed=7)
        assert rep.delta_ac_verdict == "consistent"
        assert rep.measure_ac_verdict == "consistent"

    def test_left_dense_jump_on_cantor_violates(self):
        ts = builtin("cantor_approx", {"n": 3}).materialize()
        third = 1.0 / 3.0
        f = ScaleFunction(ts, lambda t: 1.0 if t >= third else 0.0, breakpoints=(third,))
        rep = check_ac_equivalence(f, 0.0, 1.0, trials=500, rng_seed=7)
        assert rep.delta_ac_verdict == "violated"
        assert rep.measure_ac_verdict == "violated"


class TestDiscontinuityLocalization:
    def test_extension_jumps_only_across_gaps(self, full_mixed_scale):
        f = ScaleFunction(full_mixed_scale, lambda t: t * t, name="square")
        nu = extend(f)
        # at every right-scattered point the extension is right-discontinuous
        for t, q in full_mixed_scale.gaps():
            inside = 0.5 * (t + q)
            assert nu(inside) == f.func(q)
            assert nu(t) == f.func(t)
        # at dense probe points the raw extension moves continuously
        for x in [0.1 + 0.08 * k for k in range(10)]:
            if not full_mixed_scale.contains(x):
                continue
            assert abs(nu(x + 1e-9) - nu(x)) < 1e-6
            assert abs(nu(x) - nu(x - 1e-9)) < 1e-6
