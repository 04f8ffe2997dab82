"""Delta integration and the two derivative notions, kept on separate routes.

The delta integral is computed once by decomposing the scale (point masses at
right-scattered points plus plain integrals over dense blocks) and once by
integrating the composition with the backward jump over the real interval.
The forward-difference (Hilger) derivative works on the scale function
itself; the measure-density derivative works on a real-line function and the
scale's measure.  Their agreement is checked, never assumed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import quadrature
from .errors import (
    EmptyScaleError,
    InvalidIntervalError,
    InvalidParameterError,
    NotInKappaError,
    NotInScaleError,
    ZeroDenominatorError,
)
from .functions import (
    EPS0,
    TOL_LIMIT,
    LimitResult,
    RealLineFunction,
    ScaleFunction,
    extend,
    one_sided_limit,
    refine_to_limit,
)
from .measure import DeltaMeasure


def _check_endpoints(f: ScaleFunction, a: float, b: float) -> None:
    if not f.scale.contains(a):
        raise NotInScaleError(f"lower endpoint {a!r} is not in the scale")
    if not f.scale.contains(b):
        raise NotInScaleError(f"upper endpoint {b!r} is not in the scale")
    if a > b:
        raise InvalidIntervalError(f"endpoints out of order: ({a}, {b})")


def delta_integral(f: ScaleFunction, a: float, b: float, tol: float = quadrature.TOL_QUAD) -> float:
    """Integral of f over [a, b) against the scale's canonical measure.

    Right-scattered points contribute value times graininess; dense blocks
    contribute an ordinary integral.  Additive in the upper endpoint.
    """
    _check_endpoints(f, a, b)
    if a == b:
        return 0.0
    scale = f.scale
    comps = scale.components
    total = 0.0
    for i, (lo, hi) in enumerate(comps):
        if lo < hi:
            u, v = max(lo, a), min(hi, b)
            if u < v:
                total += quadrature.integrate(f.func, u, v, tol, f.breakpoints)
        if i + 1 < len(comps):
            t = hi
            if a <= t < b:
                total += f.func(t) * (comps[i + 1][0] - t)
    return total


def delta_integral_via_rho(
    f: ScaleFunction, a: float, b: float, tol: float = quadrature.TOL_QUAD
) -> float:
    """The same integral as the plain Lebesgue integral of f composed with
    the backward jump over [a, b].

    Walks the real interval: on each gap the composition is constant (the
    whole gap maps to its lower end), elsewhere it is integrated by
    quadrature, evaluating the backward jump at every node.
    """
    _check_endpoints(f, a, b)
    if a == b:
        return 0.0
    scale = f.scale
    comps = scale.components

    def through_rho(s: float) -> float:
        return f.func(scale.backward_jump(s))

    total = 0.0
    for i, (lo, hi) in enumerate(comps):
        if lo < hi:
            u, v = max(lo, a), min(hi, b)
            if u < v:
                total += quadrature.integrate(through_rho, u, v, tol, f.breakpoints)
        if i + 1 < len(comps):
            gap_lo, gap_hi = hi, comps[i + 1][0]
            if a <= gap_lo and gap_hi <= b:
                # constant on the whole gap: one evaluation suffices
                total += through_rho(0.5 * (gap_lo + gap_hi)) * (gap_hi - gap_lo)
    return total


def hilger_derivative(f: ScaleFunction, t: float, tol: float = TOL_LIMIT) -> LimitResult:
    """Forward-difference derivative on the scale.

    Exact quotient across a positive gap; at right-dense points, the limit of
    difference quotients along actual scale points approaching t from every
    side the scale provides.  Non-convergence is reported in the result, not
    raised.
    """
    scale = f.scale
    try:
        domain = scale.kappa()
    except EmptyScaleError as exc:
        raise NotInKappaError("single-point scale has no derivative domain") from exc
    if not domain.contains(t):
        raise NotInKappaError(f"{t!r} is not in the derivative domain")
    gap = scale.graininess(t)
    ft = f.func(t)
    if gap > 0.0:
        value = (f.func(scale.forward_jump(t)) - ft) / gap
        return LimitResult(value, True, 0, 0.0)

    def quotient_sample(side: int):
        def sample(eps: float):
            if side > 0:
                s = scale.floor_point(t + eps)
                if s is None or s <= t:
                    return None
            else:
                s = scale.ceil_point(t - eps)
                if s is None or s >= t:
                    return None
            return abs(s - t), (f.func(s) - ft) / (s - t)

        return sample

    sides: list[LimitResult] = []
    if scale.forward_jump(t) == t and t < scale.max:
        sides.append(refine_to_limit(quotient_sample(+1), tol=tol))
    if scale.backward_jump(t) == t and t > scale.min:
        sides.append(refine_to_limit(quotient_sample(-1), tol=tol))
    if not sides:
        # t is the scale maximum approached only from the left, or isolated
        # in a way the kappa check should have excluded
        raise NotInKappaError(f"no scale points approach {t!r}")
    value = sum(s.value for s in sides) / len(sides)
    disagreement = abs(sides[0].value - sides[-1].value)
    converged = all(s.converged for s in sides) and disagreement <= tol
    return LimitResult(
        value=value,
        converged=converged,
        iterations=max(s.iterations for s in sides),
        last_delta=max(max(s.last_delta for s in sides), disagreement if len(sides) > 1 else 0.0),
    )


def rn_derivative(
    nu: RealLineFunction, m: DeltaMeasure, t: float, tol: float = TOL_LIMIT
) -> LimitResult:
    """Density of the function's measure against the scale measure at t.

    Evaluates the ratio of symmetric-window increments of nu over increments
    of the distribution function.  Across a positive gap the ratio is
    eventually constant, so it is short-circuited to its exact value computed
    from the scale structure; at dense points the shrinking-window ladder is
    extrapolated.
    """
    scale = m.scale
    if not scale.contains(t):
        raise NotInScaleError(f"{t!r} is not in the scale")
    try:
        supp = scale.kappa()
    except EmptyScaleError as exc:
        raise ZeroDenominatorError("single-point scale carries no mass") from exc
    if not supp.contains(t):
        raise ZeroDenominatorError(
            f"no mass near {t!r}: the window denominator vanishes for all small widths"
        )
    gap = scale.graininess(t)
    if gap > 0.0:
        probe = t + 0.5 * gap
        if not (t < probe < scale.forward_jump(t)):
            probe = 0.5 * (t + scale.forward_jump(t))
        value = (one_sided_limit(nu, probe, "left", tol) - one_sided_limit(nu, t, "left", tol)) / gap
        return LimitResult(value, True, 0, 0.0)

    def sample(eps: float):
        den = scale.forward_limit_from_left(t + eps) - scale.forward_limit_from_right(t - eps)
        if den <= 0.0:
            return None
        num = one_sided_limit(nu, t + eps, "left", tol) - one_sided_limit(nu, t - eps, "right", tol)
        return eps, num / den

    # keep the whole window inside one structural neighborhood of t, so the
    # quotient is sampled on the branch that actually has the limit
    eps0 = EPS0
    idx = scale._floor_index(t)
    lo, hi = scale.components[idx]
    if hi > t:
        eps0 = min(eps0, (hi - t) / 4.0)
    if t > lo:
        eps0 = min(eps0, (t - lo) / 4.0)
    elif idx > 0:
        eps0 = min(eps0, (t - scale.components[idx - 1][1]) / 4.0)
    return refine_to_limit(sample, tol=tol, eps0=eps0)


@dataclass(frozen=True)
class AgreementRow:
    point: float
    forward_difference: float
    measure_density: float
    deviation: float
    converged: bool

    def to_json_dict(self) -> dict:
        return {
            "point": self.point,
            "hilger": self.forward_difference,
            "radon_nikodym": self.measure_density,
            "deviation": self.deviation,
            "converged": self.converged,
        }


@dataclass(frozen=True)
class AgreementReport:
    rows: tuple[AgreementRow, ...]
    max_deviation: float
    non_converged: tuple[float, ...] = field(default=())

    @property
    def all_converged(self) -> bool:
        return not self.non_converged

    def to_json_dict(self) -> dict:
        return {
            "rows": [r.to_json_dict() for r in self.rows],
            "max_deviation": self.max_deviation,
            "non_converged": list(self.non_converged),
        }


def derivative_agreement(
    f: ScaleFunction, sample_points, tol: float = TOL_LIMIT
) -> AgreementReport:
    """Compute both derivatives at every sample point and report deviations."""
    nu = extend(f)
    m = DeltaMeasure(f.scale)
    rows = []
    bad = []
    worst = 0.0
    for t in sample_points:
        hd = hilger_derivative(f, t, tol)
        rd = rn_derivative(nu, m, t, tol)
        dev = abs(hd.value - rd.value)
        ok = hd.converged and rd.converged
        rows.append(AgreementRow(t, hd.value, rd.value, dev, ok))
        if not ok:
            bad.append(t)
        elif dev > worst:
            worst = dev
    return AgreementReport(tuple(rows), worst, tuple(bad))


def counterexample_quotient(n_points: int, c: float) -> float:
    """Difference quotient of the extension along the off-scale ray c * t_N.

    On the reciprocal-factorial scale with N levels, the paired function's
    forward quotients at the origin shrink like 1/(N+1), yet the extension's
    quotient along c * t_N stays at exactly 1/c for every 1 < c < N: the two
    kinds of difference quotient separate, so the extension has no classical
    right derivative at 0 even in the deep-level limit.
    """
    if not c > 1.0:
        raise InvalidParameterError(f"the ray constant must exceed 1, got {c!r}")
    if n_points < 2:
        raise InvalidParameterError(f"need at least 2 levels, got {n_points!r}")
    if n_points > 18:
        raise InvalidParameterError("levels beyond 18 leave double precision")
    from .corpus import builtin, paired_function

    family = builtin("factorial", {"N": n_points})
    f = paired_function(family)
    scale = f.scale
    t_n = scale.forward_jump(0.0)
    s = c * t_n
    extension_value = f.func(s) if scale.contains(s) else f.func(scale.forward_jump(s))
    return (extension_value - f.func(0.0)) / s
