"""Closed subsets of the circle and their gap structure.

A CircleSet stores either a finite list of points (countable sets keep
their accumulation points, so the stored set is closed) or a finite union
of closed arcs (Cantor-type truncations).  Two distances coexist by
design: distance queries default to the chordal metric used in analytic
formulas, while the per-gap closed forms (layer cake, Carleson integral)
are exact for the arclength metric.  Inside a gap shorter than pi the two
differ by a factor in [2/pi, 1], which does not affect any finiteness or
divergence conclusion.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np
from scipy.integrate import quad

__all__ = [
    "CircleSet",
    "build_E_beta",
    "build_cantor",
    "dist_to_set",
    "counting_function",
    "layer_cake",
    "carleson_integral",
    "CarlesonResult",
]

TWO_PI = 2.0 * np.pi


def _wrap(theta):
    return np.mod(theta, TWO_PI)


def _gaps_from_sorted_angles(angles: np.ndarray) -> np.ndarray:
    """Complementary arcs (start, length) of a finite point set."""
    if angles.size == 0:
        raise ValueError("set must be nonempty")
    nxt = np.roll(angles, -1).copy()
    nxt[-1] += TWO_PI
    lengths = nxt - angles
    keep = lengths > 0
    return np.column_stack([angles[keep], lengths[keep]])


@dataclass(frozen=True, eq=False)
class CircleSet:
    """A closed subset of the circle with its complementary arcs."""

    kind: str  # "points" | "intervals"
    angles: np.ndarray  # points, or flattened interval endpoints
    intervals: np.ndarray | None
    gaps: np.ndarray  # rows (start angle, length), lengths > 0
    measure_zero: bool
    truncation: dict = field(default_factory=dict)

    @classmethod
    def from_points(cls, angles, truncation: dict | None = None) -> "CircleSet":
        a = np.unique(_wrap(np.asarray(angles, dtype=float)))
        if a.size == 0:
            raise ValueError("set must be nonempty")
        gaps = _gaps_from_sorted_angles(a)
        return cls(
            kind="points",
            angles=_freeze(a),
            intervals=None,
            gaps=_freeze(gaps),
            measure_zero=True,
            truncation=dict(truncation or {}),
        )

    @classmethod
    def from_intervals(cls, intervals, truncation: dict | None = None) -> "CircleSet":
        iv = np.asarray(intervals, dtype=float).reshape(-1, 2)
        if iv.shape[0] == 0:
            raise ValueError("set must be nonempty")
        if np.any(iv[:, 1] <= iv[:, 0]):
            raise ValueError("intervals must have positive length")
        if np.any(iv < 0) or np.any(iv > TWO_PI):
            raise ValueError("interval endpoints must lie in [0, 2 pi]")
        iv = iv[np.argsort(iv[:, 0])]
        if np.any(iv[1:, 0] < iv[:-1, 1]):
            raise ValueError("intervals must be disjoint")
        starts = np.concatenate([iv[1:, 0], [iv[0, 0] + TWO_PI]])
        glen = starts - iv[:, 1]
        keep = glen > 1e-15
        gaps = np.column_stack([iv[:, 1][keep], glen[keep]])
        return cls(
            kind="intervals",
            angles=_freeze(iv.ravel()),
            intervals=_freeze(iv),
            gaps=_freeze(gaps),
            measure_zero=False,
            truncation=dict(truncation or {}),
        )

    @property
    def points(self) -> np.ndarray:
        if self.kind != "points":
            raise ValueError("not a point set")
        return self.angles

    def gap_lengths(self) -> np.ndarray:
        return self.gaps[:, 1]

    def total_gap_length(self) -> float:
        return float(np.sum(self.gaps[:, 1]))

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "angles": self.angles.tolist(),
            "gaps": [[float(s), float(l)] for s, l in self.gaps],
            "truncation": dict(self.truncation),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CircleSet":
        kind = d.get("kind")
        if kind == "points":
            return cls.from_points(d["angles"], truncation=d.get("truncation"))
        if kind == "intervals":
            iv = np.asarray(d["angles"], dtype=float).reshape(-1, 2)
            return cls.from_intervals(iv, truncation=d.get("truncation"))
        raise ValueError(f"unknown set kind {kind!r}")


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


def build_E_beta(beta: float, n_max: int) -> CircleSet:
    """Countable test set {angle 1/(log n)^beta : 2 <= n <= n_max} plus its
    accumulation point 0.

    The truncation level is recorded so divergence heuristics can compare
    two levels.
    """
    if not 0.0 < beta <= 1.0:
        raise ValueError("beta must lie in (0, 1]")
    if n_max < 3:
        raise ValueError("n_max must be at least 3")
    n = np.arange(2, n_max + 1, dtype=float)
    angles = np.concatenate([[0.0], 1.0 / np.log(n) ** beta])
    return CircleSet.from_points(
        angles, truncation={"builder": "e_beta", "beta": beta, "n_max": int(n_max)}
    )


def build_cantor(
    ratios,
    depth: int,
    arc_start: float = 0.0,
    arc_length: float = np.pi,
) -> CircleSet:
    """Middle-gap Cantor truncation on an arc.

    Generation k removes the middle fraction ratios[k] from each surviving
    interval; ratios are recycled if fewer than `depth` are given.  The
    result keeps 2^depth closed intervals.
    """
    ratios = [float(r) for r in np.atleast_1d(ratios)]
    if any(not 0.0 < r < 1.0 for r in ratios):
        raise ValueError("each ratio must lie in (0, 1)")
    if depth < 1:
        raise ValueError("depth must be at least 1")
    if not 0.0 < arc_length < TWO_PI:
        raise ValueError("arc_length must lie in (0, 2 pi)")
    if arc_start < 0.0 or arc_start + arc_length > TWO_PI:
        raise ValueError("base arc must fit in [0, 2 pi] without wrapping")
    ivs = [(arc_start, arc_start + arc_length)]
    for k in range(depth):
        r = ratios[k % len(ratios)]
        nxt = []
        for a, b in ivs:
            L = b - a
            keep = L * (1.0 - r) / 2.0
            nxt.append((a, a + keep))
            nxt.append((b - keep, b))
        ivs = nxt
    return CircleSet.from_intervals(
        np.asarray(ivs),
        truncation={
            "builder": "cantor",
            "ratios": ratios,
            "depth": int(depth),
            "arc_start": float(arc_start),
            "arc_length": float(arc_length),
        },
    )


def _nearest_angular_distance(theta: np.ndarray, pts: np.ndarray) -> np.ndarray:
    """Angular distance from each theta to the nearest of the sorted pts."""
    ext = np.concatenate([pts[-1:] - TWO_PI, pts, pts[:1] + TWO_PI])
    idx = np.searchsorted(ext, theta)
    left = ext[np.clip(idx - 1, 0, ext.size - 1)]
    right = ext[np.clip(idx, 0, ext.size - 1)]
    return np.minimum(np.abs(theta - left), np.abs(right - theta))


def dist_to_set(theta, E: CircleSet, metric: str = "chord"):
    """Distance from angle(s) theta to E; exactly 0 on the stored set.

    metric 'chord' gives |e^{i theta} - z| minimized over E, 'arc' the
    angular distance.
    """
    if metric not in ("chord", "arc"):
        raise ValueError("metric must be 'chord' or 'arc'")
    th = _wrap(np.asarray(theta, dtype=float))
    scalar = th.ndim == 0
    th = np.atleast_1d(th)
    if E.kind == "points":
        dang = _nearest_angular_distance(th, E.points)
    else:
        iv = E.intervals
        ends = iv.ravel()
        dang = _nearest_angular_distance(th, np.unique(ends))
        starts = iv[:, 0]
        k = np.searchsorted(starts, th, side="right") - 1
        inside = (k >= 0) & (th <= iv[np.clip(k, 0, iv.shape[0] - 1), 1])
        dang = np.where(inside, 0.0, dang)
    if metric == "chord":
        out = 2.0 * np.sin(np.minimum(dang, np.pi) / 2.0)
    else:
        out = dang
    return float(out[0]) if scalar else out


def counting_function(E: CircleSet, t: float) -> int:
    """N_E(t) = 2 * #{complementary arcs longer than 2t}."""
    if t <= 0.0:
        raise ValueError("t must be positive")
    if t >= np.pi:
        return 0
    return int(2 * np.count_nonzero(E.gap_lengths() > 2.0 * t))


def layer_cake(E: CircleSet, omega: Callable[[np.ndarray], np.ndarray]) -> float:
    """Integral of omega(arc-distance to E) over the circle, by per-gap
    closed form: each gap of length L contributes 2 * int_0^{L/2} omega.

    Exact counterpart of int_0^pi omega(t) N_E(t) dt.  Points inside E
    itself contribute nothing, which matches the full-circle integral
    whenever omega(0) = 0 or E has measure zero.
    """
    total = 0.0
    for L in E.gap_lengths():
        val, _ = quad(omega, 0.0, L / 2.0, limit=200)
        total += 2.0 * val
    return total


class CarlesonResult(NamedTuple):
    value: float
    diverging: bool


def _coarser_truncation(E: CircleSet) -> CircleSet | None:
    tr = E.truncation
    if tr.get("builder") == "e_beta" and tr["n_max"] >= 30:
        return build_E_beta(tr["beta"], tr["n_max"] // 10)
    if tr.get("builder") == "cantor" and tr["depth"] >= 3:
        return build_cantor(tr["ratios"], tr["depth"] - 2, tr["arc_start"], tr["arc_length"])
    return None


def carleson_integral(E: CircleSet) -> CarlesonResult:
    """Integral of log(1/d(., E)) over the circle, arclength metric.

    Per-gap closed form: a gap of length L contributes
    2 * int_0^{L/2} log(1/t) dt = L (1 + log(2/L)).  For truncated
    families the diverging flag marks failure of a two-level Cauchy test;
    quadrature can suggest divergence, never prove it.
    """
    L = E.gap_lengths()
    value = float(np.sum(L * (1.0 + np.log(2.0 / L))))
    diverging = False
    coarse = _coarser_truncation(E)
    if coarse is not None:
        Lc = coarse.gap_lengths()
        vc = float(np.sum(Lc * (1.0 + np.log(2.0 / Lc))))
        diverging = (value - vc) > 0.01 * max(abs(value), 1.0)
    return CarlesonResult(value, diverging)
