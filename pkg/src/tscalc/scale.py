"""Canonical finite representation of time scales (closed subsets of the reals).

A scale is stored as an ordered tuple of disjoint closed components; a
component with ``lo == hi`` is an isolated point.  All jump operators are
computed exactly from this component list with binary search, never with
floating tolerances.  Half-infinite intervals are allowed only as the
outermost components.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass

from .errors import (
    EmptyScaleError,
    InvalidComponentError,
    NotInScaleError,
)

INF = math.inf


def _as_component(raw) -> tuple[float, float]:
    """Normalize one raw component to a (lo, hi) pair.

    Accepts a bare number (isolated point), a (lo, hi) pair, or a dict in the
    JSON wire shape {"interval": [lo, hi]} / {"point": t}.
    """
    if isinstance(raw, dict):
        if "interval" in raw:
            lo, hi = raw["interval"]
            return _as_component((float(lo), float(hi)))
        if "point" in raw:
            return _as_component(float(raw["point"]))
        raise InvalidComponentError(f"component needs 'interval' or 'point': {raw!r}")
    if isinstance(raw, (int, float)):
        t = float(raw)
        if math.isnan(t) or math.isinf(t):
            raise InvalidComponentError(f"isolated point must be finite: {raw!r}")
        return (t, t)
    lo, hi = float(raw[0]), float(raw[1])
    if math.isnan(lo) or math.isnan(hi):
        raise InvalidComponentError(f"NaN endpoint in {raw!r}")
    if lo >= hi:
        raise InvalidComponentError(f"interval needs lo < hi: {raw!r}")
    return (lo, hi)


@dataclass(frozen=True)
class PointClass:
    """Sidedness of a scale point: scattered means the jump operator moves."""

    right: str  # "scattered" | "dense"
    left: str

    @property
    def is_isolated(self) -> bool:
        return self.right == "scattered" and self.left == "scattered"

    @property
    def is_dense(self) -> bool:
        return self.right == "dense" and self.left == "dense"

    @property
    def label(self) -> str:
        if self.is_isolated:
            return "isolated"
        if self.is_dense:
            return "dense"
        return f"right-{self.right}, left-{self.left}"


@dataclass(frozen=True)
class TimeScale:
    """Nonempty closed subset of the reals as sorted disjoint components.

    Instances are immutable; build them through :func:`canonicalize` (or the
    JSON helpers), which enforces the invariants: components sorted, pairwise
    disjoint, and non-adjacent.
    """

    components: tuple[tuple[float, float], ...]

    # -- basic set queries ------------------------------------------------

    @property
    def min(self) -> float:
        return self.components[0][0]

    @property
    def max(self) -> float:
        return self.components[-1][1]

    @property
    def bounded_below(self) -> bool:
        return self.min > -INF

    @property
    def bounded_above(self) -> bool:
        return self.max < INF

    def contains(self, t: float) -> bool:
        if math.isnan(t):
            return False
        idx = bisect_right(self.components, (t, INF)) - 1
        return idx >= 0 and t <= self.components[idx][1]

    def __contains__(self, t: float) -> bool:
        return self.contains(t)

    def _floor_index(self, t: float) -> int:
        """Index of the last component with lo <= t, or -1."""
        return bisect_right(self.components, (t, INF)) - 1

    def floor_point(self, t: float) -> float | None:
        """Largest scale point <= t, or None."""
        idx = self._floor_index(t)
        if idx < 0:
            return None
        lo, hi = self.components[idx]
        return t if t <= hi else hi

    def ceil_point(self, t: float) -> float | None:
        """Smallest scale point >= t, or None."""
        idx = self._floor_index(t)
        if idx >= 0 and t <= self.components[idx][1]:
            return t
        if idx + 1 < len(self.components):
            return self.components[idx + 1][0]
        return None

    # -- jump operators ----------------------------------------------------

    def forward_jump(self, t: float) -> float:
        """Infimum of scale points strictly after t; the supremum once t passes it.

        Total on the reals.  Nondecreasing and right continuous.
        """
        sup = self.max
        if t >= sup:
            return sup
        idx = self._floor_index(t)
        if idx >= 0 and t < self.components[idx][1]:
            # points of the same interval accumulate immediately to the right
            return t
        return self.components[idx + 1][0]

    def backward_jump(self, t: float) -> float:
        """Supremum of scale points strictly before t; the infimum below it.

        Mirror image of :meth:`forward_jump`; nondecreasing and left continuous.
        """
        inf_ = self.min
        if t <= inf_:
            return inf_
        idx = self._floor_index(t)
        lo, hi = self.components[idx]
        if lo < t <= hi:
            return t
        if t > hi:
            return hi
        # t == lo of component idx and idx > 0 (t > inf handled above)
        return self.components[idx - 1][1]

    def forward_limit_from_left(self, x: float) -> float:
        """Left-hand limit of the forward jump function at x.

        Equals x wherever scale points accumulate from below, otherwise the
        smallest scale point >= x (the value the jump function held on the
        gap), clamped to the supremum beyond the scale.
        """
        inf_ = self.min
        if x <= inf_:
            return inf_
        if self.backward_jump(x) == x:
            return x
        nxt = self.ceil_point(x)
        return nxt if nxt is not None else self.max

    def forward_limit_from_right(self, x: float) -> float:
        """Right-hand limit of the forward jump function; equals the function itself."""
        return self.forward_jump(x)

    def graininess(self, t: float) -> float:
        """Gap to the next scale point; zero at right-dense points and at the maximum."""
        if not self.contains(t):
            raise NotInScaleError(f"{t!r} is not in the scale")
        return self.forward_jump(t) - t

    def classify(self, t: float) -> PointClass:
        if not self.contains(t):
            raise NotInScaleError(f"{t!r} is not in the scale")
        right = "scattered" if self.forward_jump(t) > t else "dense"
        left = "scattered" if self.backward_jump(t) < t else "dense"
        return PointClass(right=right, left=left)

    def kappa(self) -> "TimeScale":
        """The scale with a detached (left-scattered) maximum removed.

        This is the domain of the delta derivative and the support of the
        canonical measure.
        """
        lo, hi = self.components[-1]
        if lo == hi and self.bounded_above:
            rest = self.components[:-1]
            if not rest:
                raise EmptyScaleError("removing the maximum leaves an empty scale")
            return TimeScale(rest)
        return self

    # -- structure iteration (shared query surface for measure/calculus) ---

    def gaps(self):
        """Yield (t, q) for consecutive components: t right-scattered, q its successor."""
        for i in range(len(self.components) - 1):
            yield self.components[i][1], self.components[i + 1][0]

    def right_scattered_points(self, a: float = -INF, b: float = INF):
        """Right-scattered points t with a <= t < b, ascending."""
        for t, _q in self.gaps():
            if a <= t < b:
                yield t

    def dense_blocks(self, a: float = -INF, b: float = INF):
        """Clipped (lo, hi) pieces of interval components overlapping [a, b]."""
        for lo, hi in self.components:
            if lo == hi:
                continue
            u, v = max(lo, a), min(hi, b)
            if u < v:
                yield u, v

    # -- serialization ------------------------------------------------------

    def to_json_dict(self) -> dict:
        out = []
        for lo, hi in self.components:
            if lo == hi:
                out.append({"point": lo})
            else:
                out.append({"interval": [_json_num(lo), _json_num(hi)]})
        return {"components": out}

    @classmethod
    def from_json_dict(cls, doc: dict) -> "TimeScale":
        if not isinstance(doc, dict) or "components" not in doc:
            raise InvalidComponentError("scale document needs a 'components' list")
        raw = []
        for item in doc["components"]:
            if isinstance(item, dict) and "interval" in item:
                lo, hi = (_parse_num(v) for v in item["interval"])
                raw.append((lo, hi))
            elif isinstance(item, dict) and "point" in item:
                raw.append(_parse_num(item["point"]))
            else:
                raise InvalidComponentError(f"bad component: {item!r}")
        return canonicalize(raw)

    def __repr__(self) -> str:
        parts = [
            f"{{{lo}}}" if lo == hi else f"[{lo}, {hi}]" for lo, hi in self.components
        ]
        return f"TimeScale({' | '.join(parts)})"


def _json_num(x: float):
    if x == INF:
        return "inf"
    if x == -INF:
        return "-inf"
    return x


def _parse_num(v) -> float:
    if isinstance(v, str):
        if v in ("inf", "+inf", "Infinity"):
            return INF
        if v in ("-inf", "-Infinity"):
            return -INF
        raise InvalidComponentError(f"bad numeric literal: {v!r}")
    return float(v)


def canonicalize(raw_components) -> TimeScale:
    """Merge, sort, and validate raw components into a canonical scale.

    The result represents exactly the union of the inputs.  Overlapping and
    adjacent pieces are merged here and nowhere else, so the component list
    is the single source of truth for the set topology.
    """
    items = [_as_component(c) for c in raw_components]
    if not items:
        raise EmptyScaleError("a time scale must be nonempty")
    items.sort()
    merged: list[list[float]] = [list(items[0])]
    for lo, hi in items[1:]:
        if lo <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], hi)
        else:
            merged.append([lo, hi])
    comps = tuple((lo, hi) for lo, hi in merged)
    for i, (lo, hi) in enumerate(comps):
        if lo == -INF and i != 0:
            raise InvalidComponentError("-inf endpoint only in the first component")
        if hi == INF and i != len(comps) - 1:
            raise InvalidComponentError("+inf endpoint only in the last component")
        if lo == INF or hi == -INF:
            raise InvalidComponentError("infinite endpoint with the wrong sign")
    return TimeScale(comps)
