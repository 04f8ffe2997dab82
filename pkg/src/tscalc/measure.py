"""The Borel measure canonically attached to a time scale.

Two fully independent computations are provided.  The primary one reads
interval masses off the one-sided limits of the forward jump function, used
as a distribution function.  The second pushes Lebesgue measure through the
backward jump: every gap collapses onto its lower end, every dense block is
measured as plain length.  Keeping the two paths separate turns their
agreement into a real test rather than a tautology.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass

from .errors import InvalidIntervalError, NotInScaleError
from .functions import RealLineFunction
from .scale import TimeScale


@dataclass(frozen=True)
class BorelSet:
    """Finite union of intervals (with endpoint-inclusion flags) and points.

    Stored normalized: pieces sorted, disjoint, and not mergeable.  A piece is
    (a, b, left_closed, right_closed); a == b means a singleton (both flags
    set).  Endpoints must be finite.
    """

    pieces: tuple[tuple[float, float, bool, bool], ...]

    @classmethod
    def of(cls, *pieces) -> "BorelSet":
        """Build from (a, b) pairs, (a, b, lc, rc) tuples, or bare points."""
        raw = []
        for p in pieces:
            if isinstance(p, (int, float)):
                raw.append((float(p), float(p), True, True))
            elif len(p) == 2:
                raw.append((float(p[0]), float(p[1]), True, True))
            else:
                a, b, lc, rc = p
                raw.append((float(a), float(b), bool(lc), bool(rc)))
        return cls(_normalize(raw))

    @classmethod
    def from_json_dict(cls, doc: dict) -> "BorelSet":
        if not isinstance(doc, dict) or "pieces" not in doc:
            raise InvalidIntervalError("borel set document needs a 'pieces' list")
        raw = []
        for item in doc["pieces"]:
            if "interval" in item:
                a, b = (float(v) for v in item["interval"])
                lc, rc = item.get("closed", [True, True])
                raw.append((a, b, bool(lc), bool(rc)))
            elif "point" in item:
                t = float(item["point"])
                raw.append((t, t, True, True))
            else:
                raise InvalidIntervalError(f"bad piece: {item!r}")
        return cls(_normalize(raw))

    def to_json_dict(self) -> dict:
        out = []
        for a, b, lc, rc in self.pieces:
            if a == b:
                out.append({"point": a})
            else:
                out.append({"interval": [a, b], "closed": [lc, rc]})
        return {"pieces": out}

    def contains(self, t: float) -> bool:
        idx = bisect_right(self.pieces, (t, math.inf, True, True)) - 1
        if idx < 0:
            return False
        a, b, lc, rc = self.pieces[idx]
        if t == a:
            return lc
        if t == b:
            return rc
        return a < t < b

    def __contains__(self, t: float) -> bool:
        return self.contains(t)


def _normalize(raw) -> tuple[tuple[float, float, bool, bool], ...]:
    cleaned = []
    for a, b, lc, rc in raw:
        if math.isnan(a) or math.isnan(b) or math.isinf(a) or math.isinf(b):
            raise InvalidIntervalError("borel set endpoints must be finite")
        if a > b:
            raise InvalidIntervalError(f"endpoints out of order: ({a}, {b})")
        if a == b and not (lc and rc):
            continue  # empty piece
        cleaned.append((a, b, lc, rc))
    if not cleaned:
        return ()
    cleaned.sort(key=lambda p: (p[0], not p[2]))
    out = [list(cleaned[0])]
    for a, b, lc, rc in cleaned[1:]:
        pa, pb, plc, prc = out[-1]
        touches = a < pb or (a == pb and (prc or lc))
        if touches:
            if b > pb:
                out[-1][1], out[-1][3] = b, rc
            elif b == pb:
                out[-1][3] = prc or rc
            if a == pa:
                out[-1][2] = plc or lc
        else:
            out.append([a, b, lc, rc])
    return tuple((a, b, lc, rc) for a, b, lc, rc in out)


@dataclass(frozen=True)
class DeltaMeasure:
    """The measure whose distribution function is the forward jump of a scale.

    Nonnegative and finitely additive on disjoint interval unions; every
    singleton carries mass equal to the graininess of the point.
    """

    scale: TimeScale

    # -- distribution-function path ----------------------------------------

    def interval(self, a: float, b: float, left_closed: bool, right_closed: bool) -> float:
        """Mass of one interval from the four-case distribution formula."""
        if math.isnan(a) or math.isnan(b) or a > b:
            raise InvalidIntervalError(f"bad interval endpoints: ({a}, {b})")
        if a == b:
            if left_closed and right_closed:
                return self._dist_plus(a) - self._dist_minus(a)
            return 0.0
        hi = self._dist_plus(b) if right_closed else self._dist_minus(b)
        lo = self._dist_minus(a) if left_closed else self._dist_plus(a)
        return hi - lo

    def point_mass(self, t: float) -> float:
        """Mass of the singleton {t}; equals the graininess."""
        if not self.scale.contains(t):
            raise NotInScaleError(f"{t!r} is not in the scale")
        return self.scale.graininess(t)

    def of_borel(self, sets: BorelSet) -> float:
        """Mass of a finite interval/point union, summed piece by piece."""
        total = 0.0
        for a, b, lc, rc in sets.pieces:
            total += self.interval(a, b, lc, rc)
        return total

    def _dist_plus(self, x: float) -> float:
        return self.scale.forward_limit_from_right(x)

    def _dist_minus(self, x: float) -> float:
        return self.scale.forward_limit_from_left(x)

    # -- image-measure path (independent) -----------------------------------

    def preimage_measure(self, sets: BorelSet) -> float:
        """Lebesgue length of the backward-jump preimage of the set.

        Each gap maps entirely onto its lower endpoint and so contributes its
        full length exactly when that endpoint belongs to the set; interior
        points of dense blocks map to themselves and contribute their plain
        overlap.  The half-lines beyond the scale's extremes, which the
        backward jump collapses onto the extremes, are excluded: they carry
        no scale structure and the bounded model assigns them no mass.
        """
        total = 0.0
        comps = self.scale.components
        for i, (lo, hi) in enumerate(comps):
            if lo < hi:
                for a, b, _lc, _rc in sets.pieces:
                    u, v = max(a, lo), min(b, hi)
                    if u < v:
                        total += v - u
            if i + 1 < len(comps):
                gap_lo, gap_hi = hi, comps[i + 1][0]
                if sets.contains(gap_lo):
                    total += gap_hi - gap_lo
        return total

    # -- support -------------------------------------------------------------

    def support(self) -> TimeScale:
        """Topological support: the scale with a detached maximum removed."""
        return self.scale.kappa()

    def distribution(self) -> RealLineFunction:
        """The forward jump as a real-line function with exact one-sided limits."""
        scale = self.scale

        def sided(x: float, side: str) -> float:
            if side == "right":
                return scale.forward_limit_from_right(x)
            return scale.forward_limit_from_left(x)

        return RealLineFunction(
            func=scale.forward_jump,
            one_sided=sided,
            jumps=tuple(t for t, _ in scale.gaps()),
            name="forward-jump",
        )


def measure_interval(
    m: DeltaMeasure, a: float, b: float, left_closed: bool = True, right_closed: bool = False
) -> float:
    return m.interval(a, b, left_closed, right_closed)


def point_mass(m: DeltaMeasure, t: float) -> float:
    return m.point_mass(t)


def preimage_measure(m: DeltaMeasure, sets: BorelSet) -> float:
    return m.preimage_measure(sets)


def support_check(m: DeltaMeasure) -> TimeScale:
    return m.support()
