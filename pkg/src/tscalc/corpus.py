"""Named scale families and builtin test functions used across the suites.

Families are lazy: a ``NamedScale`` holds its parameters and materializes to
a canonical ``TimeScale`` on demand, over a window for lattice families.
Materializing a larger window extends the smaller one as a set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

from .errors import (
    InvalidParameterError,
    NoPairedFunctionError,
    UnknownFunctionError,
    UnknownScaleError,
)
from .functions import ScaleFunction
from .scale import TimeScale, canonicalize

FAMILY_NAMES = ("reals", "h_integers", "q_scale", "mixed", "cantor_approx", "factorial")


@dataclass(frozen=True)
class NamedScale:
    """A parameterized scale family plus any paired data it carries."""

    name: str
    params: dict
    _materialize: Callable[[tuple[float, float] | None], TimeScale]
    paired_values: dict[float, float] | None = field(default=None, repr=False)

    def materialize(self, window: tuple[float, float] | None = None) -> TimeScale:
        return self._materialize(window)


def _reals(params) -> NamedScale:
    lo = float(params.get("lo", 0.0))
    hi = float(params.get("hi", 1.0))
    if not lo < hi:
        raise InvalidParameterError("reals needs lo < hi")

    def mat(window):
        return canonicalize([(lo, hi)])

    return NamedScale("reals", {"lo": lo, "hi": hi}, mat)


def _h_integers(params) -> NamedScale:
    h = float(params.get("h", 1.0))
    if h <= 0.0:
        raise InvalidParameterError(f"spacing must be positive, got {h!r}")
    lo = float(params.get("lo", 0.0))
    hi = float(params.get("hi", 5.0))

    def mat(window):
        wlo, whi = window if window is not None else (lo, hi)
        k0 = math.ceil(wlo / h)
        k1 = math.floor(whi / h)
        if k1 < k0:
            raise InvalidParameterError(f"window [{wlo}, {whi}] holds no lattice point")
        return canonicalize([k * h for k in range(k0, k1 + 1)])

    return NamedScale("h_integers", {"h": h, "lo": lo, "hi": hi}, mat)


def _q_scale(params) -> NamedScale:
    """Geometric lattice q^0..q^N, optionally with the accumulation point 0.

    With 0 included, 0 is right-dense only in the infinite-depth limit; at
    any finite N it is right-scattered with gap q^N.
    """
    q = float(params.get("q", 0.5))
    n = int(params.get("N", 8))
    include_zero = bool(params.get("include_zero", True))
    if q <= 0.0 or q == 1.0:
        raise InvalidParameterError(f"ratio must be positive and != 1, got {q!r}")
    if n < 2:
        raise InvalidParameterError(f"need at least 2 levels, got {n!r}")

    def mat(window):
        pts = [q ** k for k in range(n + 1)]
        if include_zero:
            pts.append(0.0)
        return canonicalize(pts)

    return NamedScale(
        "q_scale", {"q": q, "N": n, "include_zero": include_zero}, mat
    )


def _mixed(params) -> NamedScale:
    def mat(window):
        return canonicalize([(0.0, 1.0), 2.0, 3.0, (4.0, 5.0)])

    return NamedScale("mixed", {}, mat)


def _cantor_approx(params) -> NamedScale:
    n = int(params.get("n", 3))
    if n < 0:
        raise InvalidParameterError(f"stage must be nonnegative, got {n!r}")
    if n > 20:
        raise InvalidParameterError("stage beyond 20 is pointlessly fine")

    def mat(window):
        pieces = [(0.0, 1.0)]
        for _ in range(n):
            nxt = []
            for lo, hi in pieces:
                third = (hi - lo) / 3.0
                nxt.append((lo, lo + third))
                nxt.append((hi - third, hi))
            pieces = nxt
        return canonicalize(pieces)

    return NamedScale("cantor_approx", {"n": n}, mat)


def factorial_reciprocal_chain(n_max: int) -> list[float]:
    """[1/1!, 1/2!, ..., 1/n_max!] accumulated by repeated division.

    Repeated division keeps the family self-consistent bit for bit: the
    paired test function's value at one point is the literal float stored for
    the next point in.
    """
    out = [1.0]
    for n in range(2, n_max + 1):
        out.append(out[-1] / n)
    return out


def _factorial(params) -> NamedScale:
    n = int(params.get("N", 12))
    if n < 2:
        raise InvalidParameterError(f"need at least 2 levels, got {n!r}")
    if n > 18:
        raise InvalidParameterError("levels beyond 18 leave double precision")
    chain = factorial_reciprocal_chain(n + 1)  # chain[k] = 1/(k+1)!
    levels = chain[:n]  # 1/1! .. 1/n!
    values: dict[float, float] = {0.0: 0.0}
    for idx, t in enumerate(levels):
        values[t] = chain[idx + 1]
        values[-t] = -chain[idx + 1]

    def mat(window):
        pts = [0.0]
        for t in levels:
            pts.append(t)
            pts.append(-t)
        return canonicalize(pts)

    return NamedScale("factorial", {"N": n}, mat, paired_values=values)


_FAMILIES = {
    "reals": _reals,
    "h_integers": _h_integers,
    "q_scale": _q_scale,
    "mixed": _mixed,
    "cantor_approx": _cantor_approx,
    "factorial": _factorial,
}

PARAMETER_SCHEMA = {
    "reals": {"lo": "left endpoint (default 0)", "hi": "right endpoint (default 1)"},
    "h_integers": {
        "h": "lattice spacing > 0 (default 1)",
        "lo": "window start (default 0)",
        "hi": "window end (default 5)",
    },
    "q_scale": {
        "q": "ratio > 0, != 1 (default 0.5)",
        "N": "number of levels >= 2 (default 8)",
        "include_zero": "include the accumulation point 0, right-scattered "
        "at finite depth (default true)",
    },
    "mixed": {},
    "cantor_approx": {"n": "construction stage 0..20 (default 3)"},
    "factorial": {"N": "levels 2..18 (default 12)"},
}


def builtin(name: str, params: dict | None = None) -> NamedScale:
    """Look up a scale family by name and bind its parameters."""
    try:
        factory = _FAMILIES[name]
    except KeyError:
        raise UnknownScaleError(
            f"unknown scale {name!r}; choose from {', '.join(FAMILY_NAMES)}"
        ) from None
    return factory(params or {})


def paired_function(family: NamedScale) -> ScaleFunction:
    """The canonical test function a family carries, where it has one.

    Only the reciprocal-factorial family does: zero at the origin and one
    level further in at every other point.  Its forward-difference derivative
    at the origin vanishes while its extension has no classical right
    derivative there.
    """
    if family.paired_values is None:
        raise NoPairedFunctionError(f"{family.name!r} has no paired function")
    values = family.paired_values
    scale = family.materialize()

    def f(t: float) -> float:
        return values[t]

    return ScaleFunction(scale=scale, func=f, name="example_factorial")


_PLAIN_FUNCTIONS: dict[str, tuple[Callable[[float], float], tuple[float, ...]]] = {
    "const": (lambda t: 1.0, ()),
    "identity": (lambda t: t, ()),
    "square": (lambda t: t * t, ()),
    "cube": (lambda t: t * t * t, ()),
    "sqrt": (math.sqrt, ()),
    "abs_shift": (lambda t: abs(t - 0.5) + t, (0.5,)),
    "step": (lambda t: 1.0 if t >= 0.5 else 0.0, (0.5,)),
}

FUNCTION_NAMES = (*_PLAIN_FUNCTIONS, "example_factorial")


def make_scale_function(
    fn_id: str, scale: TimeScale, family: NamedScale | None = None
) -> ScaleFunction:
    """Bind a builtin function id to a scale.

    ``example_factorial`` is only available when the scale came from the
    factorial family, since its values are tied to that family's points.
    """
    if fn_id == "example_factorial":
        if family is None or family.paired_values is None:
            raise UnknownFunctionError(
                "example_factorial requires the factorial scale family"
            )
        return paired_function(family)
    try:
        func, breaks = _PLAIN_FUNCTIONS[fn_id]
    except KeyError:
        raise UnknownFunctionError(
            f"unknown function {fn_id!r}; choose from {', '.join(FUNCTION_NAMES)}"
        ) from None
    return ScaleFunction(scale=scale, func=func, name=fn_id, breakpoints=breaks)


def default_corpus() -> list[NamedScale]:
    """The six families with their default parameters."""
    return [builtin(name, {}) for name in FAMILY_NAMES]
