"""Absolute continuity on scales: the small-length small-variation condition,
the reconstruction theorem round trip, and the equivalence with
measure-theoretic absolute continuity of the extension.

The epsilon-delta condition quantifies over all finite disjoint interval
families, which is not decidable for an opaque rule, so it is attacked by a
randomized adversary plus increment-refinement; a "consistent" verdict means
no violation was found, and a "violated" verdict always carries a concrete,
re-checkable witness family.
"""

from __future__ import annotations

import dataclasses
import math
import random
from dataclasses import dataclass, field
from typing import Callable

from .calculus import delta_integral, hilger_derivative, rn_derivative
from .errors import (
    InvalidIntervalError,
    NonConvergedDerivativeError,
    NotInKappaError,
    NotInScaleError,
    ZeroDenominatorError,
)
from .functions import (
    TOL_LIMIT,
    RealLineFunction,
    ScaleFunction,
    extend,
    one_sided_limit,
)
from .measure import DeltaMeasure
from . import quadrature
from .scale import TimeScale

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
_JUMP_TOL = 1e-6
_IDENTITY_TOL = 1e-6


@dataclass(frozen=True)
class IntervalFamily:
    """A finite disjoint family of scale subintervals with its variation sum."""

    intervals: tuple[tuple[float, float], ...]
    total_length: float
    variation: float

    def to_json_dict(self) -> dict:
        return {
            "intervals": [[u, v] for u, v in self.intervals],
            "total_length": self.total_length,
            "variation": self.variation,
        }


@dataclass(frozen=True)
class ACReport:
    """Outcome of the adversarial search for the epsilon-delta condition."""

    trials: tuple[tuple[float, float, float], ...]  # (epsilon, delta, worst variation)
    verdict: str  # "consistent" | "violated"
    witness: IntervalFamily | None = None
    ftc_max_residual: float | None = None
    note: str = "a consistent verdict means no violation was found; it is evidence, not proof"

    @property
    def violated(self) -> bool:
        return self.verdict == "violated"

    def to_json_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "witness": self.witness.to_json_dict() if self.witness else None,
            "ftc_max_residual": self.ftc_max_residual,
            "trials": [
                {"epsilon": e, "delta": d, "worst_variation": w} for e, d, w in self.trials
            ],
            "note": self.note,
        }


def _window_points(scale: TimeScale, a: float, b: float) -> list[float]:
    """Component boundary points inside [a, b], ascending."""
    pts = []
    for lo, hi in scale.components:
        for p in (lo, hi) if lo < hi else (lo,):
            if a <= p <= b:
                pts.append(p)
    return sorted(set(pts))


def _scan_points(scale: TimeScale, a: float, b: float, per_block: int = 96) -> list[float]:
    """Boundary points plus a deterministic fill of dense-block interiors."""
    pts = set(_window_points(scale, a, b))
    for lo, hi in scale.dense_blocks(a, b):
        for j in range(1, per_block):
            pts.add(lo + (hi - lo) * j / per_block)
    return sorted(pts)


def _random_scale_point(
    scale: TimeScale, rng: random.Random, a: float, b: float, boundary: list[float]
) -> float:
    blocks = list(scale.dense_blocks(a, b))
    total = sum(hi - lo for lo, hi in blocks)
    if blocks and (not boundary or rng.random() < 0.7):
        r = rng.random() * total
        for lo, hi in blocks:
            if r <= hi - lo:
                return lo + r
            r -= hi - lo
        return blocks[-1][1]
    return boundary[rng.randrange(len(boundary))]


def _shrink_bracket(
    f: ScaleFunction, u: float, v: float, target: float
) -> tuple[float, float] | None:
    """Shrink [u, v] (scale endpoints) below target real length, keeping the
    half with the larger increment.  Returns None when a gap blocks further
    shrinking, which is exactly the case the condition tolerates."""
    fu, fv = f.func(u), f.func(v)
    for _ in range(200):
        if v - u < target:
            return (u, v)
        mid = 0.5 * (u + v)
        m = f.scale.floor_point(mid)
        if m is None or m <= u:
            m = f.scale.ceil_point(mid)
        if m is None or m <= u or m >= v:
            return None
        fm = f.func(m)
        if abs(fm - fu) >= abs(fv - fm):
            v, fv = m, fm
        else:
            u, fu = m, fm
    return None


def check_delta_ac(
    f: ScaleFunction,
    a: float,
    b: float,
    trials: int = 800,
    rng_seed: int = 0,
    eps_ladder: tuple[float, ...] = (1.0, 0.1, 0.01),
) -> ACReport:
    """Adversarial search for a violation of the small-variation condition.

    For each epsilon on the ladder, delta shrinks geometrically; at each level
    the worst variation over random disjoint families and refined
    jump-chasing families is recorded.  "violated" requires a witness family
    at every level down to the floor.
    """
    scale = f.scale
    if not (scale.contains(a) and scale.contains(b)):
        raise NotInScaleError(f"window endpoints must be scale points: ({a}, {b})")
    if not a < b:
        raise InvalidIntervalError(f"window must be nondegenerate: ({a}, {b})")
    rng = random.Random(rng_seed)
    span = b - a
    boundary = _window_points(scale, a, b)
    grid = _scan_points(scale, a, b)
    increments = [
        inc
        for inc in sorted(
            ((abs(f.func(v) - f.func(u)), u, v) for u, v in zip(grid, grid[1:])),
            reverse=True,
        )[:8]
        if inc[0] > 1e-12
    ]

    def search(delta: float) -> tuple[float, IntervalFamily | None]:
        best_sum = 0.0
        best: IntervalFamily | None = None

        def consider(pairs: list[tuple[float, float]]):
            nonlocal best_sum, best
            pairs = sorted(p for p in pairs if p[0] < p[1])
            for (u1, v1), (u2, _v2) in zip(pairs, pairs[1:]):
                if u2 < v1:
                    return
            length = sum(v - u for u, v in pairs)
            if not pairs or length >= delta:
                return
            variation = sum(abs(f.func(v) - f.func(u)) for u, v in pairs)
            if variation > best_sum:
                best_sum = variation
                best = IntervalFamily(tuple(pairs), length, variation)

        # jump chasing: shrink the biggest observed increments below delta
        chased = []
        for _jump, u, v in increments:
            got = _shrink_bracket(f, u, v, delta / max(1, len(increments)))
            if got is not None:
                chased.append(got)
                consider([got])
        if len(chased) > 1:
            consider(chased)
        # randomized families
        for _ in range(trials):
            k = rng.randint(1, 3)
            pairs = []
            budget = delta * rng.uniform(0.2, 0.95)
            for _i in range(k):
                u = _random_scale_point(scale, rng, a, b, boundary)
                vmax = f.scale.floor_point(u + budget / k)
                if vmax is None or vmax <= u:
                    continue
                v = min(vmax, b)
                if u >= a and v <= b and u < v:
                    pairs.append((u, v))
            if pairs:
                consider(pairs)
        return best_sum, best

    trail: list[tuple[float, float, float]] = []
    verdict = "consistent"
    witness: IntervalFamily | None = None
    floor = span * 1e-7
    for eps in eps_ladder:
        delta = span / 4.0
        level_witness: IntervalFamily | None = None
        violated_at_all_levels = True
        while delta > floor:
            worst, fam = search(delta)
            trail.append((eps, delta, worst))
            if worst >= eps and fam is not None:
                level_witness = fam
            else:
                violated_at_all_levels = False
                break
            delta /= 8.0
        if violated_at_all_levels and level_witness is not None:
            verdict = "violated"
            witness = level_witness
            break
    return ACReport(tuple(trail), verdict, witness)


def ftc_reconstruct(fdelta: ScaleFunction, a: float, f_a: float) -> ScaleFunction:
    """Antiderivative: x -> f_a + integral of fdelta over [a, x)."""
    if not fdelta.scale.contains(a):
        raise NotInScaleError(f"{a!r} is not in the scale")

    def reconstructed(x: float) -> float:
        return f_a + delta_integral(fdelta, a, x)

    return ScaleFunction(
        scale=fdelta.scale,
        func=reconstructed,
        name=f"antiderivative({fdelta.name})" if fdelta.name else "antiderivative",
        breakpoints=fdelta.breakpoints,
    )


def _sample_points(
    scale: TimeScale, a: float, b: float, count: int, skip_case_iii: bool = False
) -> list[float]:
    """Scattered points plus a deterministic golden-ratio fill of dense blocks.

    With ``skip_case_iii`` the left-scattered right-dense points (a null set
    for the scale measure) are excluded.
    """
    pts = set(scale.right_scattered_points(a, b))
    blocks = list(scale.dense_blocks(a, b))
    if blocks:
        need = max(count - len(pts), len(blocks))
        total = sum(hi - lo for lo, hi in blocks)
        for j in range(need):
            r = (0.12 + j * _GOLDEN) % 1.0 * total
            for lo, hi in blocks:
                if r <= hi - lo:
                    pts.add(lo + r)
                    break
                r -= hi - lo
    if skip_case_iii:
        pts = {
            t
            for t in pts
            if not (scale.backward_jump(t) < t and scale.forward_jump(t) == t)
        }
    return sorted(pts)


@dataclass(frozen=True)
class FtcReport:
    max_residual: float
    residuals: tuple[tuple[float, float], ...]  # (sample x, residual)
    skipped: tuple[float, ...]  # non-converged derivative points (null set)

    def to_json_dict(self) -> dict:
        return {
            "max_residual": self.max_residual,
            "residuals": [[x, r] for x, r in self.residuals],
            "skipped": list(self.skipped),
        }


def verify_ftc(
    f: ScaleFunction,
    a: float,
    b: float,
    sample_count: int = 32,
    tol: float = TOL_LIMIT,
    details: bool = False,
):
    """Round-trip residual of the reconstruction theorem.

    Differentiates f pointwise, re-integrates from a, and returns the largest
    deviation from f over the sampled upper endpoints.  Points where the
    derivative limit does not converge are skipped if they carry no mass
    (isolated failures at dense points), and raise otherwise.
    """
    scale = f.scale
    if not (scale.contains(a) and scale.contains(b)):
        raise NotInScaleError(f"window endpoints must be scale points: ({a}, {b})")
    if a > b:
        raise InvalidIntervalError(f"endpoints out of order: ({a}, {b})")

    non_converged: list[float] = []

    def derivative(t: float) -> float:
        res = hilger_derivative(f, t, tol)
        if not res.converged:
            if scale.graininess(t) > 0.0:
                raise NonConvergedDerivativeError([t])
            if t not in non_converged:
                non_converged.append(t)
        return res.value

    fdelta = ScaleFunction(
        scale=scale, func=derivative, name="pointwise-derivative", breakpoints=f.breakpoints
    )
    xs = [x for x in _sample_points(scale, a, b, sample_count) if a < x <= b]
    if b not in xs:
        xs.append(b)
        xs.sort()
    f_a = f.func(a)
    acc = 0.0
    prev = a
    rows = []
    worst = 0.0
    for x in xs:
        acc += delta_integral(fdelta, prev, x)
        prev = x
        residual = abs(f.func(x) - f_a - acc)
        rows.append((x, residual))
        worst = max(worst, residual)
    report = FtcReport(worst, tuple(rows), tuple(non_converged))
    return (worst, report) if details else worst


def lebesgue_point_average(
    g, x: float, eps_ladder, tol: float = quadrature.TOL_QUAD
) -> list[float]:
    """Window averages of |g - g(x)| around x, one value per window width.

    The averages decay to zero at continuity points of an integrable g.
    """
    if isinstance(g, RealLineFunction):
        fn: Callable[[float], float] = g.func
        breaks = g.jumps
    else:
        fn = g
        breaks = ()
    gx = fn(x)

    def deviation(t: float) -> float:
        return abs(fn(t) - gx)

    out = []
    for eps in eps_ladder:
        total = quadrature.integrate(deviation, x - eps, x, tol, breaks)
        total += quadrature.integrate(deviation, x, x + eps, tol, breaks)
        out.append(total / eps)
    return out


@dataclass(frozen=True)
class EquivalenceReport:
    """Both sides of the absolute-continuity equivalence on one window."""

    delta_ac_verdict: str
    measure_ac_verdict: str
    identity_residual: float | None
    derivative_residual: float | None
    left_discontinuity: float | None  # location, when one was found
    witness: IntervalFamily | None
    skipped_points: tuple[float, ...] = field(default=())
    ac_search: ACReport | None = None

    @property
    def agree(self) -> bool:
        return self.delta_ac_verdict == self.measure_ac_verdict

    def to_json_dict(self) -> dict:
        return {
            "delta_ac_verdict": self.delta_ac_verdict,
            "measure_ac_verdict": self.measure_ac_verdict,
            "agree": self.agree,
            "identity_residual": self.identity_residual,
            "derivative_residual": self.derivative_residual,
            "left_discontinuity": self.left_discontinuity,
            "witness": self.witness.to_json_dict() if self.witness else None,
            "skipped_points": list(self.skipped_points),
            "ac_search": self.ac_search.to_json_dict() if self.ac_search else None,
        }


def _find_dense_discontinuity(
    nu: RealLineFunction, scale: TimeScale, a: float, b: float
) -> float | None:
    """Chase the largest extension increments down to adjacent floats.

    Refinement runs on raw evaluations over the real line, so it does not
    trust the structural limit rule (which assumes continuity).  A jump that
    survives refinement is located between two neighboring floats; it is the
    allowed kind exactly when it sits across a positive gap, i.e. when the
    lower float is a right-scattered scale point.  Anything else is a jump
    the scale cannot absorb, and its location is returned.
    """
    raw = nu.func
    grid = sorted(
        set(
            [a + (b - a) * j / 256 for j in range(257)]
            + [p for p in _window_points(scale, a, b)]
        )
    )
    increments = sorted(
        ((abs(raw(v) - raw(u)), u, v) for u, v in zip(grid, grid[1:])),
        reverse=True,
    )[:6]
    for jump, u, v in increments:
        if jump <= _JUMP_TOL:
            continue
        fu, fv = raw(u), raw(v)
        for _ in range(120):
            if v <= math.nextafter(u, math.inf):
                break
            mid = 0.5 * (u + v)
            fm = raw(mid)
            if abs(fm - fu) >= abs(fv - fm):
                v, fv = mid, fm
            else:
                u, fu = mid, fm
        if abs(fv - fu) <= _JUMP_TOL:
            continue
        across_gap = scale.contains(u) and scale.forward_jump(u) > u
        if not across_gap:
            return v
    return None


def check_ac_equivalence(
    f: ScaleFunction,
    a: float,
    b: float,
    trials: int = 400,
    rng_seed: int = 0,
    sample_count: int = 24,
    tol: float = TOL_LIMIT,
) -> EquivalenceReport:
    """Evaluate both characterizations of absolute continuity on [a, b].

    Left side: the adversarial epsilon-delta search.  Right side: left
    continuity of the extension, the increment identity (increments of the
    extension equal the integral of its density against the scale measure),
    and a spot check that the two derivative notions match at sampled points.
    Left-scattered right-dense points carry no mass and are excluded from the
    derivative sampling.
    """
    scale = f.scale
    ac = check_delta_ac(f, a, b, trials=trials, rng_seed=rng_seed)
    if not ac.violated:
        # corroborate the search with the reconstruction round trip
        ac = dataclasses.replace(
            ac, ftc_max_residual=verify_ftc(f, a, b, min(16, sample_count), tol)
        )
    nu = extend(f)
    m = DeltaMeasure(scale)

    disc = _find_dense_discontinuity(nu, scale, a, b)
    if disc is not None:
        return EquivalenceReport(
            delta_ac_verdict=ac.verdict,
            measure_ac_verdict="violated",
            identity_residual=None,
            derivative_residual=None,
            left_discontinuity=disc,
            witness=ac.witness,
            ac_search=ac,
        )

    skipped: list[float] = []

    def density(t: float) -> float:
        res = rn_derivative(nu, m, t, tol)
        if not res.converged and t not in skipped:
            skipped.append(t)
        return res.value

    density_fn = ScaleFunction(
        scale=scale, func=density, name="measure-density", breakpoints=f.breakpoints
    )
    xs = [x for x in _sample_points(scale, a, b, sample_count) if a < x <= b]
    if b not in xs:
        xs.append(b)
        xs.sort()
    nu_a = one_sided_limit(nu, a, "left")
    acc = 0.0
    prev = a
    identity_residual = 0.0
    for x in xs:
        acc += delta_integral(density_fn, prev, x)
        prev = x
        identity_residual = max(
            identity_residual, abs(one_sided_limit(nu, x, "left") - nu_a - acc)
        )

    derivative_residual = 0.0
    for t in _sample_points(scale, a, b, sample_count, skip_case_iii=True):
        try:
            hd = hilger_derivative(f, t, tol)
            rd = rn_derivative(nu, m, t, tol)
        except (NotInKappaError, ZeroDenominatorError):
            continue
        if hd.converged and rd.converged:
            derivative_residual = max(derivative_residual, abs(hd.value - rd.value))
        elif t not in skipped:
            skipped.append(t)

    measure_verdict = "violated" if identity_residual > _IDENTITY_TOL else "consistent"
    return EquivalenceReport(
        delta_ac_verdict=ac.verdict,
        measure_ac_verdict=measure_verdict,
        identity_residual=identity_residual,
        derivative_residual=derivative_residual,
        left_discontinuity=None,
        witness=ac.witness,
        skipped_points=tuple(skipped),
        ac_search=ac,
    )
