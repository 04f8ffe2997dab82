"""Function wrappers and one-sided limit machinery.

``ScaleFunction`` evaluates only on its scale; ``RealLineFunction`` evaluates
everywhere and knows how to take one-sided limits, either through a
structural rule (exact, supplied by constructors that understand the scale)
or by geometric refinement with polynomial extrapolation to zero step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .errors import NoConvergenceError, NotInScaleError
from .scale import TimeScale

TOL_LIMIT = 1e-9
EPS0 = 1e-2
MAX_REFINE = 40
_EPS_DESCRIPTION = "1e-2 * 2^-k, k <= 40"


@dataclass(frozen=True)
class LimitResult:
    """Value of an extrapolated limit plus its convergence diagnostics."""

    value: float
    converged: bool
    iterations: int
    last_delta: float
    epsilon_sequence: str = _EPS_DESCRIPTION

    def to_json_dict(self) -> dict:
        return {
            "value": self.value,
            "converged": self.converged,
            "iterations": self.iterations,
            "last_delta": self.last_delta,
        }


def _neville_at_zero(points: list[tuple[float, float]]) -> float:
    """Polynomial extrapolation of (step, value) samples to step -> 0."""
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    n = len(points)
    for j in range(1, n):
        for i in range(n - j):
            ys[i] = (xs[i + j] * ys[i] - xs[i] * ys[i + 1]) / (xs[i + j] - xs[i])
    return ys[0]


def refine_to_limit(
    sample: Callable[[float], tuple[float, float] | None],
    tol: float = TOL_LIMIT,
    eps0: float = EPS0,
    max_iter: int = MAX_REFINE,
    window: int = 4,
) -> LimitResult:
    """Drive a limit by sampling at geometrically shrinking offsets.

    ``sample(eps)`` returns an (effective_step, value) pair, or None when no
    admissible sample exists at that offset (e.g. no scale point there).
    Successive extrapolants must pass a Cauchy test at ``tol``.  Steps that
    do not shrink by at least a factor 4/3 are skipped so the extrapolation
    stays well conditioned on snapped lattices.
    """
    pts: list[tuple[float, float]] = []
    prev = None
    last_delta = math.inf
    for k in range(max_iter + 1):
        got = sample(eps0 * 2.0 ** -k)
        if got is None:
            continue
        h, v = got
        if h <= 0.0 or (pts and h > 0.75 * pts[-1][0]):
            continue
        pts.append((h, v))
        if len(pts) < 2:
            prev = v
            continue
        est = _neville_at_zero(pts[-window:])
        last_delta = abs(est - prev)
        if last_delta < tol:
            return LimitResult(est, True, k, last_delta)
        prev = est
    value = prev if prev is not None else math.nan
    return LimitResult(value, False, max_iter, last_delta)


@dataclass(frozen=True)
class ScaleFunction:
    """A function defined on the points of a time scale.

    ``breakpoints`` declares real positions where the rule is not smooth;
    quadrature splits dense blocks there.  Evaluation outside the scale
    raises, keeping every caller honest about the domain.
    """

    scale: TimeScale
    func: Callable[[float], float]
    name: str = ""
    breakpoints: tuple[float, ...] = ()

    def __call__(self, t: float) -> float:
        if not self.scale.contains(t):
            raise NotInScaleError(f"{t!r} is not in the scale of {self.name or 'f'}")
        return self.func(t)

    def eval_unchecked(self, t: float) -> float:
        return self.func(t)


@dataclass(frozen=True)
class RealLineFunction:
    """A real-line function of locally bounded variation.

    ``one_sided`` is an optional structural rule returning the exact left or
    right limit; without it, limits are computed numerically.  ``jumps``
    optionally declares known discontinuities (used to split quadrature).
    """

    func: Callable[[float], float]
    one_sided: Callable[[float, str], float] | None = None
    jumps: tuple[float, ...] = ()
    name: str = ""

    def __call__(self, x: float) -> float:
        return self.func(x)


def one_sided_limit(
    g: RealLineFunction,
    t: float,
    side: str,
    tol: float = TOL_LIMIT,
) -> float:
    """Limit of g at t from the left or right.

    Uses the structural rule when the function carries one; otherwise
    evaluates at t +/- eps over a geometric ladder and extrapolates.
    Raises NoConvergenceError when the ladder is exhausted.
    """
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    if g.one_sided is not None:
        return g.one_sided(t, side)
    sign = 1.0 if side == "right" else -1.0

    def sample(eps: float):
        return eps, g.func(t + sign * eps)

    res = refine_to_limit(sample, tol=tol)
    if not res.converged:
        raise NoConvergenceError(
            f"one-sided limit at {t} from the {side} did not converge "
            f"(last delta {res.last_delta:.3e})"
        )
    return res.value


def numeric_left_limit(g: RealLineFunction, t: float, tol: float = TOL_LIMIT) -> LimitResult:
    """Left limit by raw evaluation, ignoring any structural rule.

    Used by continuity checks that must not trust a rule which itself assumes
    continuity.
    """

    def sample(eps: float):
        return eps, g.func(t - eps)

    return refine_to_limit(sample, tol=tol)


def extend(f: ScaleFunction) -> RealLineFunction:
    """Extend f off the scale by composing with the forward jump.

    The extension agrees with f on the scale and is constant on every gap,
    taking there the value of f at the gap's upper end.  Its one-sided limits
    are computed structurally through the jump function's own limits; at
    points where the scale is dense on the approaching side this rule assumes
    f is continuous there (which the caller asserts when treating the
    extension as a function of bounded variation).
    """
    scale = f.scale
    fn = f.func

    def evaluate(x: float) -> float:
        if scale.contains(x):
            return fn(x)
        return fn(scale.forward_jump(x))

    def sided(x: float, side: str) -> float:
        if side == "right":
            return fn(scale.forward_limit_from_right(x))
        return fn(scale.forward_limit_from_left(x))

    return RealLineFunction(
        func=evaluate,
        one_sided=sided,
        jumps=f.breakpoints,
        name=f"extend({f.name})" if f.name else "",
    )
