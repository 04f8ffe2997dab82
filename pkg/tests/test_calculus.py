"""Delta integration (two routes) and the two derivative notions."""

import random

import pytest

from tscalc.calculus import (
    counterexample_quotient,
    delta_integral,
    delta_integral_via_rho,
    derivative_agreement,
    hilger_derivative,
    rn_derivative,
)
from tscalc.corpus import builtin, make_scale_function, paired_function
from tscalc.errors import (
    InvalidParameterError,
    NotInKappaError,
    NotInScaleError,
    ZeroDenominatorError,
)
from tscalc.functions import ScaleFunction, extend, one_sided_limit
from tscalc.measure import DeltaMeasure
from tscalc.scale import canonicalize


class TestExtend:
    def test_gap_points_take_the_upper_end_value(self, mixed_scale):
        f = ScaleFunction(mixed_scale, lambda t: t)
        nu = extend(f)
        assert nu(1.5) == 2.0

    def test_scale_points_unchanged(self, mixed_scale):
        f = ScaleFunction(mixed_scale, lambda t: t)
        assert extend(f)(0.5) == 0.5

    def test_one_sided_limits_at_block_edge(self, mixed_scale):
        f = ScaleFunction(mixed_scale, lambda t: t)
        nu = extend(f)
        assert one_sided_limit(nu, 1.0, "right") == 2.0
        assert one_sided_limit(nu, 1.0, "left") == 1.0

    def test_constant_beyond_the_scale(self, mixed_scale):
        f = ScaleFunction(mixed_scale, lambda t: t * t)
        nu = extend(f)
        assert nu(10.0) == 4.0
        assert nu(-10.0) == 0.0

    def test_eval_outside_scale_raises(self, mixed_scale):
        f = ScaleFunction(mixed_scale, lambda t: t)
        with pytest.raises(NotInScaleError):
            f(1.5)


class TestDeltaIntegral:
    def test_integer_lattice_sum(self):
        ts = canonicalize([float(k) for k in range(5)])
        f = ScaleFunction(ts, lambda t: t)
        assert delta_integral(f, 0.0, 4.0) == 0.0 + 1.0 + 2.0 + 3.0

    def test_mixed_constant(self, mixed_scale):
        # frozen from the measure of [0, 2): dense block 1 plus gap mass 1
        m = DeltaMeasure(mixed_scale)
        assert m.interval(0.0, 2.0, True, False) == 2.0
        f = ScaleFunction(mixed_scale, lambda t: 1.0)
        assert delta_integral(f, 0.0, 2.0) == pytest.approx(2.0, abs=1e-12)
        assert delta_integral_via_rho(f, 0.0, 2.0) == pytest.approx(2.0, abs=1e-12)

    def test_plain_lebesgue_on_block(self, unit_interval):
        f = ScaleFunction(unit_interval, lambda t: t)
        assert delta_integral(f, 0.0, 1.0) == pytest.approx(0.5, abs=1e-12)
        assert delta_integral_via_rho(f, 0.0, 1.0) == pytest.approx(0.5, abs=1e-12)

    def test_endpoints_must_be_scale_points(self, mixed_scale):
        f = ScaleFunction(mixed_scale, lambda t: 1.0)
        with pytest.raises(NotInScaleError):
            delta_integral(f, 0.0, 1.5)

    def test_empty_window(self, mixed_scale):
        f = ScaleFunction(mixed_scale, lambda t: 1.0)
        assert delta_integral(f, 1.0, 1.0) == 0.0

    def test_discrete_route_equality_is_exact(self):
        # gap pieces reduce to the same products in both routes
        ts = canonicalize([0.0, 1.0, 2.0])
        f = ScaleFunction(ts, lambda t: t * t)
        a = delta_integral(f, 0.0, 2.0)
        b = delta_integral_via_rho(f, 0.0, 2.0)
        assert a == 1.0  # f(0)*1 + f(1)*1, by hand
        assert a == b

    def test_linearity(self, full_mixed_scale):
        f = ScaleFunction(full_mixed_scale, lambda t: t * t)
        g = ScaleFunction(full_mixed_scale, lambda t: t + 2.0)
        combo = ScaleFunction(full_mixed_scale, lambda t: 3.0 * t * t - 0.5 * (t + 2.0))
        lhs = delta_integral(combo, 0.0, 5.0)
        rhs = 3.0 * delta_integral(f, 0.0, 5.0) - 0.5 * delta_integral(g, 0.0, 5.0)
        assert lhs == pytest.approx(rhs, abs=1e-10)

    def test_additivity_in_upper_endpoint(self, full_mixed_scale):
        f = ScaleFunction(full_mixed_scale, lambda t: t * t * t)
        whole = delta_integral(f, 0.0, 5.0)
        split = (
            delta_integral(f, 0.0, 1.0)
            + delta_integral(f, 1.0, 3.0)
            + delta_integral(f, 3.0, 5.0)
        )
        assert split == pytest.approx(whole, abs=1e-10)

    def test_random_route_agreement(self):
        rng = random.Random(5)
        families = [builtin(n, {}) for n in ("mixed", "cantor_approx", "q_scale")]
        for trial in range(60):
            ts = families[trial % 3].materialize()
            f = make_scale_function(("identity", "square", "cube")[trial % 3], ts)
            pts = sorted(
                {ts.floor_point(rng.uniform(ts.min, ts.max)) for _ in range(2)}
            )
            if len(pts) < 2:
                continue
            a, b = pts
            va = delta_integral(f, a, b)
            vb = delta_integral_via_rho(f, a, b)
            assert abs(va - vb) < 1e-9


class TestHilgerDerivative:
    def test_forward_difference_on_lattice(self):
        ts = canonicalize([float(k) for k in range(6)])
        f = ScaleFunction(ts, lambda t: t * t)
        res = hilger_derivative(f, 3.0)
        assert res.value == 7.0
        assert res.converged and res.iterations == 0

    def test_classical_at_dense_point(self, unit_interval):
        f = ScaleFunction(unit_interval, lambda t: t * t)
        res = hilger_derivative(f, 0.5)
        assert res.converged
        assert res.value == pytest.approx(1.0, abs=1e-9)

    def test_constant_rule(self, full_mixed_scale):
        f = ScaleFunction(full_mixed_scale, lambda t: 7.25)
        assert hilger_derivative(f, 1.0).value == 0.0
        res = hilger_derivative(f, 0.5)
        assert res.converged
        assert abs(res.value) < 1e-12

    def test_finite_reciprocal_factorial_origin_is_scattered(self):
        # at finite depth the origin has a positive gap to 1/N!, so the
        # derivative is the exact forward quotient 1/(N+1), not yet 0; the
        # limit behavior is exercised through the explicit quotient sequence
        f = paired_function(builtin("factorial", {"N": 12}))
        res = hilger_derivative(f, 0.0)
        assert res.converged and res.iterations == 0
        assert res.value == pytest.approx(1.0 / 13.0, rel=1e-15)

    def test_domain_excludes_detached_maximum(self, mixed_scale):
        f = ScaleFunction(mixed_scale, lambda t: t)
        with pytest.raises(NotInKappaError):
            hilger_derivative(f, 2.0)

    def test_kink_reports_non_convergence(self, unit_interval):
        f = make_scale_function("abs_shift", unit_interval)
        res = hilger_derivative(f, 0.5)
        assert not res.converged

    def test_one_sided_at_block_left_edge(self, full_mixed_scale):
        # 4.0 is left-scattered right-dense: only the right limit exists
        f = ScaleFunction(full_mixed_scale, lambda t: t * t)
        res = hilger_derivative(f, 4.0)
        assert res.converged
        assert res.value == pytest.approx(8.0, abs=1e-8)


class TestRnDerivative:
    def test_exact_across_gap_matches_forward_quotient(self, mixed_scale):
        f = ScaleFunction(mixed_scale, lambda t: t)
        res = rn_derivative(extend(f), DeltaMeasure(mixed_scale), 1.0)
        assert res.converged and res.iterations == 0
        assert res.value == 1.0
        assert res.value == hilger_derivative(f, 1.0).value

    def test_classical_at_dense_point(self, unit_interval):
        f = ScaleFunction(unit_interval, lambda t: t * t)
        res = rn_derivative(extend(f), DeltaMeasure(unit_interval), 0.5)
        assert res.converged
        assert res.value == pytest.approx(1.0, abs=1e-9)

    def test_linear_on_lattice(self):
        ts = canonicalize([float(k) for k in range(6)])
        f = ScaleFunction(ts, lambda t: 2.0 * t)
        m = DeltaMeasure(ts)
        for k in (1.0, 2.0, 3.0):
            assert rn_derivative(extend(f), m, k).value == 2.0

    def test_membership_required(self, mixed_scale):
        f = ScaleFunction(mixed_scale, lambda t: t)
        with pytest.raises(NotInScaleError):
            rn_derivative(extend(f), DeltaMeasure(mixed_scale), 1.5)

    def test_no_mass_at_detached_maximum(self, mixed_scale):
        # the window denominator vanishes for every small width at the
        # detached maximum, which sits outside the measure's support
        f = ScaleFunction(mixed_scale, lambda t: t)
        with pytest.raises(ZeroDenominatorError):
            rn_derivative(extend(f), DeltaMeasure(mixed_scale), 2.0)


class TestDerivativeAgreement:
    def test_mixed_square_sampled(self, mixed_scale):
        f = ScaleFunction(mixed_scale, lambda t: t * t)
        pts = [0.02 + 0.96 * k / 49 for k in range(50)] + [1.0]
        report = derivative_agreement(f, pts)
        assert report.all_converged
        assert report.max_deviation < 1e-8

    def test_lattice_cubes_exact(self):
        ts = canonicalize([float(k) for k in range(11)])
        f = ScaleFunction(ts, lambda t: t * t * t)
        report = derivative_agreement(f, [float(k) for k in range(10)])
        assert report.max_deviation == 0.0

    def test_reciprocal_factorial_origin(self):
        f = paired_function(builtin("factorial", {"N": 12}))
        report = derivative_agreement(f, [0.0])
        assert report.max_deviation == 0.0
        assert report.all_converged


class TestCounterexampleQuotient:
    def test_reference_values(self):
        assert counterexample_quotient(6, 2.0) == 0.5
        assert counterexample_quotient(10, 5.0) == 0.2

    def test_ray_constant_must_exceed_one(self):
        with pytest.raises(InvalidParameterError):
            counterexample_quotient(6, 1.0)

    def test_depth_bounds(self):
        with pytest.raises(InvalidParameterError):
            counterexample_quotient(1, 2.0)
        with pytest.raises(InvalidParameterError):
            counterexample_quotient(40, 2.0)

    def test_reciprocal_for_integer_rays(self):
        # one float division of chain values: within an ulp of 1/c in
        # general, and bitwise equal for the pinned reference cases below
        for n_levels in (6, 10, 12, 15):
            for c in range(2, n_levels):
                q = counterexample_quotient(n_levels, float(c))
                assert q == pytest.approx(1.0 / c, rel=3e-16)
        for c in (2, 3, 10):
            assert counterexample_quotient(12, float(c)) == 1.0 / c

    def test_separation_from_scale_derivative(self):
        # the extension's ray quotients stay at 1/c while the scale
        # derivative at the origin is the small forward quotient
        f = paired_function(builtin("factorial", {"N": 12}))
        scale_quotient = hilger_derivative(f, 0.0).value
        for c in (2.0, 3.0, 10.0):
            assert counterexample_quotient(12, c) == 1.0 / c
            assert abs(counterexample_quotient(12, c) - scale_quotient) > 0.01


def test_fractional_ray_constant():
    # between scale points the extension is constant, so any 1 < c < N works
    q = counterexample_quotient(12, 2.5)
    assert q == pytest.approx(1.0 / 2.5, rel=1e-15)


@pytest.mark.parametrize(
    "family,params",
    [
        ("q_scale", {"q": 0.3, "N": 10}),
        ("q_scale", {"q": 0.8, "N": 12}),
        ("q_scale", {"q": 2.0, "N": 6}),
        ("h_integers", {"h": 0.25, "lo": -1.0, "hi": 2.0}),
        ("cantor_approx", {"n": 1}),
        ("cantor_approx", {"n": 4}),
        ("factorial", {"N": 5}),
        ("factorial", {"N": 15}),
        ("reals", {"lo": -2.0, "hi": 3.0}),
    ],
)
def test_agreement_across_parameter_variations(family, params):
    # the two derivative notions agree on corpus members away from defaults:
    # exactly at every right-scattered point, tightly at dense samples
    ts = builtin(family, params).materialize()
    domain = ts.kappa()
    f = make_scale_function("cube", ts)
    nu = extend(f)
    m = DeltaMeasure(ts)
    checked = 0
    for t in ts.right_scattered_points():
        if not domain.contains(t):
            continue
        hd = hilger_derivative(f, t)
        rd = rn_derivative(nu, m, t)
        assert hd.value == rd.value
        checked += 1
    for lo, hi in ts.dense_blocks():
        for frac in (0.15, 0.5, 0.85):
            t = lo + frac * (hi - lo)
            if not domain.contains(t):
                continue
            hd = hilger_derivative(f, t)
            rd = rn_derivative(nu, m, t)
            assert hd.converged and rd.converged
            assert abs(hd.value - rd.value) < 1e-6
            checked += 1
    assert checked > 0
