"""Theorem-verification suites over the builtin corpus.

Every suite returns a plain dict that serializes to JSON, with a fixed key
order and all randomness drawn from per-case seeded generators, so identical
configurations produce byte-identical reports.  Wall-clock data is kept out
of the reports on purpose.
"""

from __future__ import annotations

import random

from .abscont import check_ac_equivalence, verify_ftc
from .calculus import (
    counterexample_quotient,
    delta_integral,
    delta_integral_via_rho,
    hilger_derivative,
    rn_derivative,
)
from .corpus import (
    FAMILY_NAMES,
    NamedScale,
    builtin,
    make_scale_function,
    paired_function,
)
from .errors import UnknownSuiteError
from .functions import TOL_LIMIT, extend
from .measure import BorelSet, DeltaMeasure
from .quadrature import TOL_QUAD
from .scale import TimeScale

SUITE_NAMES = (
    "derivative-agreement",
    "integral-oracle",
    "image-measure",
    "ftc",
    "ac-equivalence",
    "counterexample",
)

AGREEMENT_TOL = 1e-6
ORACLE_TOL = 1e-9
IMAGE_TOL = 1e-12
FTC_TOL = 1e-7


def _case_rng(seed: int, index: int) -> random.Random:
    return random.Random(seed * 1_000_003 + index)


def _scale_selection(scale: NamedScale | None) -> list[tuple[str, TimeScale, NamedScale]]:
    families = [scale] if scale is not None else [builtin(n, {}) for n in FAMILY_NAMES]
    return [(fam.name, fam.materialize(), fam) for fam in families]


def _dense_sample(scale: TimeScale, rng: random.Random, margin: float = 0.05) -> float | None:
    blocks = list(scale.dense_blocks())
    total = sum(hi - lo for lo, hi in blocks)
    if not blocks:
        return None
    r = rng.random() * total
    for lo, hi in blocks:
        width = hi - lo
        if r <= width:
            return lo + width * (margin + (1.0 - 2.0 * margin) * (r / width))
        r -= width
    return None


def _random_scale_point(scale: TimeScale, rng: random.Random) -> float:
    boundary = []
    for lo, hi in scale.components:
        boundary.append(lo)
        if hi > lo:
            boundary.append(hi)
    dense = _dense_sample(scale, rng)
    if dense is not None and rng.random() < 0.6:
        return dense
    return boundary[rng.randrange(len(boundary))]


def _report(suite: str, seed: int, config: dict, cases: list[dict], max_residual: float) -> dict:
    passed = sum(1 for c in cases if c["pass"])
    return {
        "schema": 1,
        "suite": suite,
        "seed": seed,
        "config": config,
        "cases": cases,
        "summary": {
            "total": len(cases),
            "passed": passed,
            "failed": len(cases) - passed,
            "max_residual": max_residual,
            "pass": passed == len(cases),
        },
    }


def suite_derivative_agreement(
    scale: NamedScale | None = None,
    params: dict | None = None,
    seed: int = 42,
    tol_limit: float = TOL_LIMIT,
    tol_quad: float = TOL_QUAD,
) -> dict:
    params = params or {}
    dense_count = int(params.get("dense_points", 50))
    fn_ids = ("identity", "square", "cube")
    cases = []
    worst = 0.0
    for idx, (name, ts, _fam) in enumerate(_scale_selection(scale)):
        domain = ts.kappa()
        points = []
        for t in ts.right_scattered_points():
            if domain.contains(t):
                points.append((t, True))
        for lo, hi in ts.dense_blocks():
            for p in (lo, hi):
                if domain.contains(p) and ts.graininess(p) == 0.0:
                    points.append((p, False))
        rng = _case_rng(seed, idx)
        for _ in range(dense_count):
            t = _dense_sample(ts, rng)
            if t is not None and domain.contains(t):
                points.append((t, False))
        seen = set()
        for fn_id in fn_ids:
            f = make_scale_function(fn_id, ts)
            nu = extend(f)
            m = DeltaMeasure(ts)
            for t, scattered in points:
                if (fn_id, t) in seen:
                    continue
                seen.add((fn_id, t))
                hd = hilger_derivative(f, t, tol_limit)
                rd = rn_derivative(nu, m, t, tol_limit)
                residual = abs(hd.value - rd.value)
                ok = hd.converged and rd.converged and residual < AGREEMENT_TOL
                if scattered:
                    ok = ok and residual == 0.0
                worst = max(worst, residual)
                cases.append(
                    {
                        "scale": name,
                        "fn": fn_id,
                        "where": f"t={t!r}",
                        "value_a": hd.value,
                        "value_b": rd.value,
                        "residual": residual,
                        "pass": ok,
                        "right_scattered": scattered,
                    }
                )
    return _report(
        "derivative-agreement",
        seed,
        {"dense_points": dense_count, "tol": AGREEMENT_TOL},
        cases,
        worst,
    )


_SMOOTH_POOL = ("identity", "square", "cube", "const")


def suite_integral_oracle(
    scale: NamedScale | None = None,
    params: dict | None = None,
    seed: int = 42,
    tol_limit: float = TOL_LIMIT,
    tol_quad: float = TOL_QUAD,
) -> dict:
    params = params or {}
    count = int(params.get("cases", 200))
    selection = _scale_selection(scale)
    cases = []
    worst = 0.0
    for i in range(count):
        rng = _case_rng(seed, i)
        name, ts, _fam = selection[i % len(selection)]
        fn_id = _SMOOTH_POOL[rng.randrange(len(_SMOOTH_POOL))]
        f = make_scale_function(fn_id, ts)
        u, v = _random_scale_point(ts, rng), _random_scale_point(ts, rng)
        a, b = (u, v) if u <= v else (v, u)
        va = delta_integral(f, a, b, tol_quad)
        vb = delta_integral_via_rho(f, a, b, tol_quad)
        residual = abs(va - vb)
        discrete = not list(ts.dense_blocks())
        ok = residual < ORACLE_TOL and (residual == 0.0 if discrete else True)
        worst = max(worst, residual)
        cases.append(
            {
                "scale": name,
                "fn": fn_id,
                "where": f"[{a!r}, {b!r})",
                "value_a": va,
                "value_b": vb,
                "residual": residual,
                "pass": ok,
                "discrete_exact": discrete,
            }
        )
    return _report(
        "integral-oracle", seed, {"cases": count, "tol": ORACLE_TOL}, cases, worst
    )


def suite_image_measure(
    scale: NamedScale | None = None,
    params: dict | None = None,
    seed: int = 42,
    tol_limit: float = TOL_LIMIT,
    tol_quad: float = TOL_QUAD,
) -> dict:
    params = params or {}
    per_scale = int(params.get("intervals", 200))
    variants = ((True, False), (True, True), (False, False), (False, True))
    cases = []
    worst = 0.0
    for s_idx, (name, ts, _fam) in enumerate(_scale_selection(scale)):
        m = DeltaMeasure(ts)
        lo = ts.min - 0.5 if ts.bounded_below else -10.0
        hi = ts.max + 0.5 if ts.bounded_above else 10.0
        for i in range(per_scale):
            rng = _case_rng(seed, s_idx * 100_000 + i)
            u, v = rng.uniform(lo, hi), rng.uniform(lo, hi)
            a, b = (u, v) if u <= v else (v, u)
            lc, rc = variants[i % 4]
            if i % 37 == 0:
                t = ts.floor_point(rng.uniform(lo, hi))
                if t is not None:
                    a = b = t
                    lc = rc = True
            va = m.interval(a, b, lc, rc)
            vb = m.preimage_measure(BorelSet.of((a, b, lc, rc)))
            residual = abs(va - vb)
            ok = residual < IMAGE_TOL
            worst = max(worst, residual)
            cases.append(
                {
                    "scale": name,
                    "fn": None,
                    "where": f"{'[' if lc else '('}{a!r}, {b!r}{']' if rc else ')'}",
                    "value_a": va,
                    "value_b": vb,
                    "residual": residual,
                    "pass": ok,
                }
            )
    return _report(
        "image-measure", seed, {"intervals": per_scale, "tol": IMAGE_TOL}, cases, worst
    )


_FTC_FIXTURES = {
    "reals": ("square", "cube", "abs_shift"),
    "h_integers": ("square", "cube"),
    "q_scale": ("square", "cube"),
    "mixed": ("square", "abs_shift"),
    "cantor_approx": ("square",),
    "factorial": ("square",),
}


def suite_ftc(
    scale: NamedScale | None = None,
    params: dict | None = None,
    seed: int = 42,
    tol_limit: float = TOL_LIMIT,
    tol_quad: float = TOL_QUAD,
) -> dict:
    params = params or {}
    samples = int(params.get("samples", 24))
    cases = []
    worst = 0.0
    for name, ts, _fam in _scale_selection(scale):
        for fn_id in _FTC_FIXTURES.get(name, ("square",)):
            f = make_scale_function(fn_id, ts)
            residual = verify_ftc(f, ts.min, ts.max, samples, tol_limit)
            ok = residual < FTC_TOL
            if name == "h_integers":
                ok = ok and residual == 0.0
            worst = max(worst, residual)
            cases.append(
                {
                    "scale": name,
                    "fn": fn_id,
                    "where": f"[{ts.min!r}, {ts.max!r}]",
                    "value_a": residual,
                    "value_b": 0.0,
                    "residual": residual,
                    "pass": ok,
                }
            )
    return _report("ftc", seed, {"samples": samples, "tol": FTC_TOL}, cases, worst)


def _third_step(ts: TimeScale):
    from .functions import ScaleFunction

    third = 1.0 / 3.0
    return ScaleFunction(
        scale=ts,
        func=lambda t: 1.0 if t >= third else 0.0,
        name="step_third",
        breakpoints=(third,),
    )


def _step_violates(ts: TimeScale, jump: float) -> bool:
    """A unit step read along the scale breaks absolute continuity exactly
    when the first scale point at or after the jump is approached from below
    by other scale points; across a gap the defining families cannot shrink."""
    p = ts.ceil_point(jump)
    if p is None or p > ts.max:
        return False
    return ts.backward_jump(p) == p and p > ts.min


def suite_ac_equivalence(
    scale: NamedScale | None = None,
    params: dict | None = None,
    seed: int = 42,
    tol_limit: float = TOL_LIMIT,
    tol_quad: float = TOL_QUAD,
) -> dict:
    params = params or {}
    trials = int(params.get("trials", 300))
    matrix_scales = ("reals", "mixed", "h_integers", "cantor_approx")
    if scale is not None:
        selection = _scale_selection(scale)
    else:
        selection = [(n, builtin(n, {}).materialize(), builtin(n, {})) for n in matrix_scales]
    ac_fns = ("square", "cube", "abs_shift")
    cases = []
    worst = 0.0
    idx = 0
    for name, ts, _fam in selection:
        fixtures = [(fn_id, make_scale_function(fn_id, ts), False) for fn_id in ac_fns]
        fixtures.append(("step", make_scale_function("step", ts), _step_violates(ts, 0.5)))
        fixtures.append(("step_third", _third_step(ts), _step_violates(ts, 1.0 / 3.0)))
        for fn_id, f, expect_violation in fixtures:
            rng_seed = seed * 1_000_003 + idx
            idx += 1
            rep = check_ac_equivalence(
                f, ts.min, ts.max, trials=trials, rng_seed=rng_seed, tol=tol_limit
            )
            residual = rep.identity_residual if rep.identity_residual is not None else 0.0
            ok = rep.agree
            if expect_violation:
                ok = ok and rep.delta_ac_verdict == "violated" and rep.witness is not None
            else:
                ok = ok and rep.delta_ac_verdict == "consistent"
            worst = max(worst, residual)
            cases.append(
                {
                    "scale": name,
                    "fn": fn_id,
                    "where": f"[{ts.min!r}, {ts.max!r}]",
                    "value_a": rep.delta_ac_verdict,
                    "value_b": rep.measure_ac_verdict,
                    "residual": residual,
                    "pass": ok,
                    "witness": rep.witness.to_json_dict() if rep.witness else None,
                    "left_discontinuity": rep.left_discontinuity,
                    "ac_search": rep.ac_search.to_json_dict() if rep.ac_search else None,
                }
            )
    return _report(
        "ac-equivalence", seed, {"trials": trials}, cases, worst
    )


def suite_counterexample(
    scale: NamedScale | None = None,
    params: dict | None = None,
    seed: int = 42,
    tol_limit: float = TOL_LIMIT,
    tol_quad: float = TOL_QUAD,
) -> dict:
    params = params or {}
    n_levels = int(params.get("N", 12))
    ray_constants = params.get("c", (2.0, 3.0, 10.0))
    if isinstance(ray_constants, (int, float)):
        ray_constants = (float(ray_constants),)
    family = builtin("factorial", {"N": n_levels})
    f = paired_function(family)
    cases = []
    worst = 0.0
    for c in ray_constants:
        q = counterexample_quotient(n_levels, float(c))
        residual = abs(q - 1.0 / float(c))
        ok = q == 1.0 / float(c)
        worst = max(worst, residual)
        cases.append(
            {
                "scale": "factorial",
                "fn": "example_factorial",
                "where": f"ray c={c}",
                "value_a": q,
                "value_b": 1.0 / float(c),
                "residual": residual,
                "pass": ok,
            }
        )
    # forward-difference quotients shrink to zero: the scale derivative at 0 is 0
    quotients = []
    seq_ok = True
    prev = None
    for n in range(1, n_levels):
        t_n = 1.0
        for k in range(2, n + 1):
            t_n /= k
        qn = (f.func(t_n) - f.func(0.0)) / t_n
        qn_neg = (f.func(-t_n) - f.func(0.0)) / (-t_n)
        if qn != qn_neg:
            seq_ok = False
        if prev is not None and not qn < prev:
            seq_ok = False
        prev = qn
        quotients.append(qn)
    seq_ok = seq_ok and quotients[-1] < quotients[0]
    cases.append(
        {
            "scale": "factorial",
            "fn": "example_factorial",
            "where": "difference quotients along the scale",
            "value_a": quotients[-1],
            "value_b": 0.0,
            "residual": quotients[-1],
            "pass": seq_ok,
            "quotients": quotients,
        }
    )
    return _report(
        "counterexample",
        seed,
        {"N": n_levels, "c": [float(c) for c in ray_constants]},
        cases,
        worst,
    )


_SUITES = {
    "derivative-agreement": suite_derivative_agreement,
    "integral-oracle": suite_integral_oracle,
    "image-measure": suite_image_measure,
    "ftc": suite_ftc,
    "ac-equivalence": suite_ac_equivalence,
    "counterexample": suite_counterexample,
}


def run_suite(
    name: str,
    scale: NamedScale | None = None,
    params: dict | None = None,
    seed: int = 42,
    tol_limit: float = TOL_LIMIT,
    tol_quad: float = TOL_QUAD,
) -> dict:
    try:
        fn = _SUITES[name]
    except KeyError:
        raise UnknownSuiteError(
            f"unknown suite {name!r}; choose from {', '.join(SUITE_NAMES)}"
        ) from None
    return fn(scale=scale, params=params, seed=seed, tol_limit=tol_limit, tol_quad=tol_quad)
