"""Two-dimensional rate-region geometry.

Regions are exchanged as Pareto frontiers: monotone polylines of
``(r1, r2)`` points with ``r1`` strictly increasing and ``r2``
non-increasing.  Rate constraints at a fixed auxiliary-parameter value form
a :class:`Pentagon` (``R1 <= A``, ``R2 <= B``, ``R1 + R2 <= C``); parametric
families of pentagons are collapsed to their upper envelope by
:func:`union_frontier`.  All rates are in bits.
"""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

__all__ = [
    "Pentagon",
    "Frontier",
    "VerificationReport",
    "pentagon_corners",
    "union_frontier",
    "union_frontier_arrays",
    "corner_cloud",
    "hull_frontier",
    "concavify",
    "intersect_frontiers",
    "contains",
    "sweep_grid",
]

# Default resolution of the uniform r1 grid used when a frontier is built
# from a pentagon family.
DEFAULT_R1_POINTS = 2001

# Admissibility slack (bits) when testing a pentagon against a grid point.
# Abscissas injected from one closed form can land one ulp above the same
# quantity computed through an algebraically equal but differently rounded
# expression; without the slack such a corner would be skipped at its own
# abscissa and the envelope would dip to the next corner.
FEASIBILITY_SLACK = 1e-12

_CHUNK = 2048


@dataclass(frozen=True)
class Pentagon:
    """Rate constraints ``R1 <= r1_max``, ``R2 <= r2_max``, ``R1+R2 <= sum_max``.

    Fields may be ``math.inf`` for an absent constraint.  On construction the
    sum constraint is tightened to ``min(sum_max, r1_max + r2_max)`` so a
    normalized pentagon never carries a vacuous sum bound.
    """

    r1_max: float
    r2_max: float
    sum_max: float = math.inf

    def __post_init__(self) -> None:
        r1 = float(self.r1_max)
        r2 = float(self.r2_max)
        s = float(self.sum_max)
        if math.isnan(r1) or math.isnan(r2) or math.isnan(s):
            raise ValueError("pentagon constraints must not be NaN")
        if r1 < 0 or r2 < 0 or s < 0:
            raise ValueError(
                f"pentagon constraints must be nonnegative, got ({r1}, {r2}, {s})"
            )
        object.__setattr__(self, "r1_max", r1)
        object.__setattr__(self, "r2_max", r2)
        object.__setattr__(self, "sum_max", min(s, r1 + r2))

    @property
    def r1_extent(self) -> float:
        """Largest achievable r1 (at r2 = 0)."""
        return min(self.r1_max, self.sum_max)

    @property
    def r2_extent(self) -> float:
        """Largest achievable r2 (at r1 = 0)."""
        return min(self.r2_max, self.sum_max)


def pentagon_corners(p: Pentagon) -> list:
    """Pareto vertices of a normalized pentagon.

    Returns the dominant corners, clamped at zero for degenerate shapes,
    deduplicated, Pareto-filtered and sorted by increasing r1.  A rectangle
    yields a single corner; a generic pentagon yields two.
    """
    a, b, c = p.r1_max, p.r2_max, p.sum_max
    if math.isinf(c):
        # Both r1_max and r2_max infinite would make the region unbounded in
        # every direction; normalization only leaves c infinite in that case.
        candidates = [(0.0, b), (a, b), (a, 0.0)]
    else:
        candidates = [
            (0.0, min(b, c)),
            (max(0.0, min(a, c - b)), min(b, c)),
            (min(a, c), max(0.0, min(b, c - a))),
            (min(a, c), 0.0),
        ]
    unique = sorted(set(candidates))
    pareto = [
        q
        for q in unique
        if not any(
            (r[0] >= q[0] and r[1] >= q[1] and r != q) for r in unique
        )
    ]
    return pareto


@dataclass(frozen=True)
class Frontier:
    """Pareto boundary of a 2-D rate region as a monotone polyline.

    ``r1`` is strictly increasing starting at 0; ``r2`` is non-increasing
    and nonnegative.  Between vertices the boundary is interpolated linearly.
    """

    r1: np.ndarray
    r2: np.ndarray

    def __post_init__(self) -> None:
        x = np.asarray(self.r1, dtype=float)
        y = np.asarray(self.r2, dtype=float)
        if x.ndim != 1 or x.shape != y.shape or x.size == 0:
            raise ValueError("frontier needs matching non-empty 1-D r1/r2 arrays")
        if not np.all(np.isfinite(x)) or not np.all(np.isfinite(y)):
            raise ValueError("frontier vertices must be finite")
        if x[0] != 0.0:
            raise ValueError("frontier must start at r1 = 0")
        if np.any(np.diff(x) <= 0):
            raise ValueError("frontier r1 values must be strictly increasing")
        if np.any(y < 0):
            raise ValueError("frontier r2 values must be nonnegative")
        # Tolerate float-level wiggles from envelope evaluation, nothing more.
        if np.any(np.diff(y) > 1e-9):
            raise ValueError("frontier r2 values must be non-increasing")
        y = np.minimum.accumulate(y)
        x.setflags(write=False)
        y.setflags(write=False)
        object.__setattr__(self, "r1", x)
        object.__setattr__(self, "r2", y)

    @property
    def max_r1(self) -> float:
        return float(self.r1[-1])

    def interp(self, at: Union[float, np.ndarray]) -> np.ndarray:
        """Linearly interpolated r2 at the given r1 values (clamped to range)."""
        return np.interp(at, self.r1, self.r2)

    def to_csv(self) -> str:
        lines = ["r1_bits,r2_bits"]
        lines += [f"{x:.12g},{y:.12g}" for x, y in zip(self.r1, self.r2)]
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {"points": [[float(x), float(y)] for x, y in zip(self.r1, self.r2)]}


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one verification: ``passed`` iff ``max_discrepancy <= tolerance``."""

    name: str
    passed: bool
    max_discrepancy: float
    tolerance: float
    n: int
    seed: Optional[int] = None
    worst_case: Optional[dict] = field(default=None)

    def to_json_line(self) -> str:
        return json.dumps(
            {
                "name": self.name,
                "passed": bool(self.passed),
                "max_discrepancy": float(self.max_discrepancy),
                "tolerance": float(self.tolerance),
                "n": int(self.n),
                "seed": self.seed,
                "worst_case": self.worst_case,
            }
        )


def _thread_count() -> int:
    raw = os.environ.get("COGREGIONS_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _envelope(
    r1_ext: np.ndarray,
    r2cap: np.ndarray,
    sum_cap: np.ndarray,
    grid: np.ndarray,
) -> np.ndarray:
    """Upper envelope of ``min(r2cap, sum_cap - r1)`` over admissible pentagons.

    Admissibility of pentagon j at grid point r1 is ``r1_ext[j] >= r1 - slack``.
    Returns ``-inf`` where no pentagon is admissible.  The reduction is a
    plain maximum, so chunk order (and hence threading) cannot change the
    result.
    """

    def one_chunk(lo: int) -> np.ndarray:
        ext = r1_ext[lo : lo + _CHUNK][None, :]
        cap = r2cap[lo : lo + _CHUNK][None, :]
        sc = sum_cap[lo : lo + _CHUNK][None, :]
        g = grid[:, None]
        vals = np.where(
            ext >= g - FEASIBILITY_SLACK,
            np.minimum(cap, sc - g),
            -np.inf,
        )
        return vals.max(axis=1)

    starts = range(0, len(r1_ext), _CHUNK)
    workers = _thread_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(one_chunk, starts))
    else:
        parts = [one_chunk(lo) for lo in starts]
    return np.maximum.reduce(parts)


def union_frontier(
    pentagons: Sequence[Pentagon],
    grid: Union[int, np.ndarray] = DEFAULT_R1_POINTS,
    inject_corners: bool = False,
) -> Frontier:
    """Upper envelope of a pentagon family as a :class:`Frontier`.

    ``grid`` is either the number of uniform r1 points spanning
    ``[0, max r1]`` or an explicit array of r1 values.  With
    ``inject_corners`` the r1 extents of all pentagons are added to the
    grid, which makes the envelope exact at the corners of closed-form
    one-parameter families (recommended whenever the family is small).
    No convexification is applied.
    """
    pentagons = list(pentagons)
    if not pentagons:
        raise ValueError("no pentagons")
    return union_frontier_arrays(
        np.array([p.r1_max for p in pentagons]),
        np.array([p.r2_max for p in pentagons]),
        np.array([p.sum_max for p in pentagons]),
        grid=grid,
        inject_corners=inject_corners,
    )


def union_frontier_arrays(
    r1_max: np.ndarray,
    r2_max: np.ndarray,
    sum_max: np.ndarray,
    grid: Union[int, np.ndarray] = DEFAULT_R1_POINTS,
    inject_corners: bool = False,
) -> Frontier:
    """Array form of :func:`union_frontier` for large pentagon families.

    Takes parallel constraint arrays instead of :class:`Pentagon` objects so
    callers sweeping thousands of auxiliary parameters never materialize the
    family.  Semantics match :func:`union_frontier` exactly, including sum
    normalization.
    """
    a = np.asarray(r1_max, dtype=float)
    b = np.asarray(r2_max, dtype=float)
    s = np.asarray(sum_max, dtype=float)
    if a.size == 0:
        raise ValueError("no pentagons")
    sum_cap = np.minimum(s, a + b)
    r1_ext = np.minimum(a, sum_cap)
    r2cap = np.minimum(b, sum_cap)

    top = float(r1_ext.max())
    if isinstance(grid, (int, np.integer)):
        if not math.isfinite(top):
            raise ValueError("region unbounded in r1; pass an explicit grid")
        if grid < 2:
            raise ValueError("grid resolution must be at least 2")
        base = np.linspace(0.0, top, int(grid))
    else:
        base = np.asarray(grid, dtype=float)
    pieces = [base]
    if inject_corners:
        # Both Pareto-corner abscissas per pentagon: the r1 extent and the
        # knee where the sum constraint meets the r2 cap.
        knees = np.maximum(sum_cap - r2cap, 0.0)
        for candidate in (r1_ext, knees):
            pieces.append(candidate[np.isfinite(candidate)])
    r1 = np.unique(np.concatenate(pieces))
    r1 = r1[(r1 >= 0.0) & (r1 <= top + FEASIBILITY_SLACK)]

    values = _envelope(r1_ext, r2cap, sum_cap, r1)
    keep = values > -np.inf
    return Frontier(r1[keep], np.maximum(values[keep], 0.0))


def corner_cloud(r1_max, r2_max, sum_max):
    """Pareto corner candidates of many pentagons as one point cloud.

    Returns ``(x, y)`` arrays with two entries per pentagon: the corner
    hugging the r2 cap and the corner hugging the r1 cap (they coincide for
    rectangles).  Degenerate shapes clamp at the axes exactly as
    :func:`pentagon_corners` does.
    """
    a = np.asarray(r1_max, dtype=float).ravel()
    b = np.asarray(r2_max, dtype=float).ravel()
    s = np.asarray(sum_max, dtype=float).ravel()
    if a.size == 0:
        raise ValueError("no pentagons")
    sum_cap = np.minimum(s, a + b)
    y1 = np.minimum(b, sum_cap)
    x1 = np.maximum(sum_cap - b, 0.0)
    x2 = np.minimum(a, sum_cap)
    y2 = np.maximum(sum_cap - x2, 0.0)
    return np.concatenate([x1, x2]), np.concatenate([y1, y2])


def hull_frontier(x, y) -> Frontier:
    """Upper concave envelope of a down-closed point cloud as a :class:`Frontier`.

    The Pareto staircase of the cloud is extracted vectorized (dominated
    points never reach the hull scan), then a monotone-chain pass keeps the
    concave extreme points.  The result is exact for the given points — no
    sampling grid is involved — and extends flat to r1 = 0, matching the
    down-closed region the points describe.
    """
    x = np.asarray(x, dtype=float).ravel()
    y = np.asarray(y, dtype=float).ravel()
    if x.size == 0:
        raise ValueError("no pentagons")
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
        raise ValueError("corner coordinates must be finite")

    order = np.lexsort((-y, x))
    x, y = x[order], y[order]
    first = np.ones(x.size, dtype=bool)
    first[1:] = x[1:] > x[:-1]
    x, y = x[first], y[first]
    suffix = np.maximum.accumulate(y[::-1])[::-1]
    keep = np.empty(y.size, dtype=bool)
    keep[:-1] = y[:-1] > suffix[1:]
    keep[-1] = True
    x, y = x[keep], y[keep]

    if x[0] > 0.0:
        x = np.concatenate([[0.0], x])
        y = np.concatenate([[y[0]], y])
    hull_x = [x[0]]
    hull_y = [y[0]]
    for xi, yi in zip(x[1:].tolist(), y[1:].tolist()):
        while len(hull_x) >= 2:
            cross = (hull_x[-1] - hull_x[-2]) * (yi - hull_y[-2]) - (
                xi - hull_x[-2]
            ) * (hull_y[-1] - hull_y[-2])
            if cross >= 0.0:
                hull_x.pop()
                hull_y.pop()
            else:
                break
        hull_x.append(xi)
        hull_y.append(yi)
    return Frontier(np.array(hull_x), np.array(hull_y))


def sweep_grid(n: int, tail_stop: float = 1e-2) -> np.ndarray:
    """Uniform grid on [0, 1] densified geometrically near both endpoints.

    Several bound families have square-root boundary layers at the ends of
    their auxiliary-parameter range, where a uniform grid underestimates the
    envelope noticeably.  Appending short geometric tails (1e-9 up to
    ``tail_stop``, mirrored at 1) resolves those layers at negligible cost.
    """
    if n < 2:
        raise ValueError("grid resolution must be at least 2")
    base = np.linspace(0.0, 1.0, int(n))
    tail = np.geomspace(1e-9, tail_stop, 29)
    return np.unique(np.concatenate([base, tail, 1.0 - tail]))


def concavify(f: Frontier) -> Frontier:
    """Upper concave envelope (time-sharing hull) of a frontier.

    The output dominates the input pointwise and is idempotent: applying it
    to an already concave frontier returns a pointwise-equal polyline.
    """
    return hull_frontier(f.r1, f.r2)


def intersect_frontiers(f: Frontier, g: Frontier) -> Frontier:
    """Pointwise minimum of two frontiers on the intersection of their ranges.

    Every frontier starts at r1 = 0, so the common range is ``[0, min of the
    two right endpoints]`` and is never empty.
    """
    top = min(f.max_r1, g.max_r1)
    xs = np.unique(
        np.concatenate(
            [f.r1[f.r1 <= top], g.r1[g.r1 <= top], np.array([0.0, top])]
        )
    )
    ys = np.minimum(f.interp(xs), g.interp(xs))
    return Frontier(xs, ys)


def contains(outer: Frontier, inner: Frontier, tol: float) -> VerificationReport:
    """Check ``inner ⊆ outer`` within ``tol`` bits.

    Passes iff at every inner vertex the linearly interpolated outer r2 is at
    least the inner r2 minus ``tol``.  Inner vertices beyond the outer
    frontier's r1 range (past a tiny abscissa slack) are compared against an
    absent region, i.e. r2 = 0 there.
    """
    beyond = inner.r1 > outer.max_r1 + 1e-9
    outer_vals = np.where(beyond, 0.0, outer.interp(inner.r1))
    viol = inner.r2 - outer_vals
    i = int(np.argmax(viol))
    worst = {
        "r1": float(inner.r1[i]),
        "inner_r2": float(inner.r2[i]),
        "outer_r2": float(outer_vals[i]),
    }
    return VerificationReport(
        name="contains",
        passed=bool(viol[i] <= tol),
        max_discrepancy=float(viol[i]),
        tolerance=float(tol),
        n=int(inner.r1.size),
        worst_case=worst,
    )
