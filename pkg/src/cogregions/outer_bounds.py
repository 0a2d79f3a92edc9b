"""Outer bounds on the cognitive-channel rate region.

Each bound family is exposed at two granularities: a closed-form
:class:`~cogregions.region_geometry.Pentagon` at a single value of the
family's auxiliary parameter, and a
:class:`~cogregions.region_geometry.Frontier` collapsing the whole family
to its upper envelope.  Frontier builders accept either integer grid
resolutions or explicit parameter arrays, so two families can be evaluated
on matched grids and compared corner by corner.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Tuple, Union

import numpy as np

from .channel import ChannelParams, gaussian_rate
from .region_geometry import (
    DEFAULT_R1_POINTS,
    Frontier,
    Pentagon,
    corner_cloud,
    hull_frontier,
    intersect_frontiers,
    union_frontier_arrays,
)

__all__ = [
    "DEFAULT_ALPHA_POINTS",
    "DEFAULT_SPLIT_POINTS",
    "CovarianceSplit",
    "unifying_bound",
    "unifying_region",
    "bergmans_region",
    "bergmans_frontier",
    "cor2_bound",
    "cor2_region",
    "bc_dms_pentagon",
    "bc_dms_region",
    "th1_bound",
    "bc_pr_bound",
]

# Default resolution of one-parameter (power-split) families.
DEFAULT_ALPHA_POINTS = 1001

# Default points per axis of the four-parameter covariance-split grid.
DEFAULT_SPLIT_POINTS = 21

GridAxis = Union[int, np.ndarray, Sequence[float]]


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    return alpha


def _alpha_axis(alpha_grid: GridAxis) -> np.ndarray:
    """Normalize an integer resolution or explicit array to a sorted axis.

    An integer gives that many uniform points on [0, 1].  Families swept
    over [0, 1] have square-root boundary layers at the endpoints; pass an
    explicit array (for instance
    :func:`~cogregions.region_geometry.sweep_grid`) to resolve them.
    """
    if isinstance(alpha_grid, (int, np.integer)):
        n = int(alpha_grid)
        if n < 2:
            raise ValueError("grid resolution must be at least 2")
        return np.linspace(0.0, 1.0, n)
    axis = np.unique(np.asarray(alpha_grid, dtype=float))
    if axis.size == 0:
        raise ValueError("empty grid")
    if not np.all(np.isfinite(axis)) or axis[0] < 0.0 or axis[-1] > 1.0:
        raise ValueError("alpha grid values must lie in [0, 1]")
    return axis


def unifying_bound(params: ChannelParams, alpha: float) -> Pentagon:
    """One-parameter outer bound valid in every interference regime.

    ``alpha`` is the fraction of cognitive power assigned to the cognitive
    message.  The sum cap equals the r2 cap plus the portion of the r1 cap
    that receiver 2 cannot resolve by itself, ``[log2(1+alpha*p1) -
    log2(1+b^2*alpha*p1)]^+``; the excess vanishes for ``|b| >= 1``, which
    merges the weak- and strong-interference forms into one expression.
    This convention is pinned by two closed-form requirements: at ``p2 = 0``,
    ``|b| > 1`` the union over ``alpha`` must collapse exactly to the
    pentagon ``r1 <= log2(1+p1)``, ``r1+r2 <= log2(1+b^2*p1)``, and for
    ``|b| >= 1`` the sum cap must coincide with the one of
    :func:`cor2_bound` at every ``alpha``.
    """
    alpha = _check_alpha(alpha)
    p1, p2 = params.p1, params.p2
    b2 = params.b * params.b
    abar = 1.0 - alpha
    r1_cap = gaussian_rate(alpha * p1)
    r2_cap = gaussian_rate(b2 * p1 + p2 + 2.0 * math.sqrt(abar * b2 * p1 * p2))
    excess = r1_cap - gaussian_rate(b2 * alpha * p1)
    return Pentagon(float(r1_cap), float(r2_cap), float(r2_cap + max(0.0, excess)))


def unifying_region(
    params: ChannelParams,
    alpha_grid: GridAxis = DEFAULT_ALPHA_POINTS,
    r1_grid: Union[int, np.ndarray] = DEFAULT_R1_POINTS,
) -> Frontier:
    """Upper envelope of :func:`unifying_bound` over a power-split grid.

    Corner abscissas of every pentagon are injected into the r1 grid, so
    the envelope is exact at the corners of the family instead of sampled
    to within one grid step.
    """
    alpha = _alpha_axis(alpha_grid)
    p1, p2 = params.p1, params.p2
    b2 = params.b * params.b
    abar = 1.0 - alpha
    r1_cap = gaussian_rate(alpha * p1)
    r2_cap = gaussian_rate(b2 * p1 + p2 + 2.0 * np.sqrt(abar * b2 * p1 * p2))
    excess = np.maximum(r1_cap - gaussian_rate(b2 * alpha * p1), 0.0)
    return union_frontier_arrays(
        r1_cap, r2_cap, r2_cap + excess, grid=r1_grid, inject_corners=True
    )


def bergmans_region(p1: float, b: float, alpha: float) -> Pentagon:
    """Reference rectangle obtained by splitting only the cognitive power.

    A degraded-broadcast allocation of ``p1``: fraction ``alpha`` carries
    the r1 message with the remainder treated as noise, and the remainder
    reaches receiver 2 through the cross gain.  No sum constraint.  This is
    a containment reference — its union is strictly inside the
    :func:`unifying_bound` union — not an outer bound in its own right.
    """
    alpha = _check_alpha(alpha)
    if p1 < 0.0:
        raise ValueError("power p1 must be nonnegative")
    abar = 1.0 - alpha
    r1_cap = gaussian_rate(alpha * p1 / (abar * p1 + 1.0))
    r2_cap = gaussian_rate(b * b * abar * p1)
    return Pentagon(float(r1_cap), float(r2_cap))


def bergmans_frontier(
    p1: float,
    b: float,
    alpha_grid: GridAxis = DEFAULT_ALPHA_POINTS,
    r1_grid: Union[int, np.ndarray] = DEFAULT_R1_POINTS,
) -> Frontier:
    """Upper envelope of :func:`bergmans_region` over a power-split grid."""
    if p1 < 0.0:
        raise ValueError("power p1 must be nonnegative")
    alpha = _alpha_axis(alpha_grid)
    abar = 1.0 - alpha
    r1_cap = gaussian_rate(alpha * p1 / (abar * p1 + 1.0))
    r2_cap = gaussian_rate(b * b * abar * p1)
    return union_frontier_arrays(
        r1_cap,
        r2_cap,
        np.full(alpha.shape, math.inf),
        grid=r1_grid,
        inject_corners=True,
    )


def cor2_bound(params: ChannelParams, alpha: float) -> Pentagon:
    """Closed-form outer bound for the strong-interference Z configuration.

    Valid only when receiver 1 sees no interference (``a = 0``) and
    receiver 2 sees strong interference (``|b| >= 1``).  The r1 cap and the
    sum cap coincide with those of :func:`unifying_bound`; the r2 cap is
    tighter for every ``alpha > 0`` and equals the sum cap identically at
    ``alpha = 0``.
    """
    if params.a != 0.0 or params.b < 1.0:
        raise ValueError("Cor.2 requires Z strong interference")
    alpha = _check_alpha(alpha)
    p1, p2 = params.p1, params.p2
    b2 = params.b * params.b
    abar = 1.0 - alpha
    r1_cap = gaussian_rate(alpha * p1)
    amplitude = math.sqrt(p2) + math.sqrt(b2 * p1 * abar / (1.0 + alpha * p1))
    r2_cap = gaussian_rate(amplitude * amplitude)
    sum_cap = gaussian_rate(p2 + b2 * p1 + 2.0 * math.sqrt(abar * b2 * p1 * p2))
    return Pentagon(float(r1_cap), float(r2_cap), float(sum_cap))


def cor2_region(
    params: ChannelParams,
    alpha_grid: GridAxis = DEFAULT_ALPHA_POINTS,
    r1_grid: Union[int, np.ndarray] = DEFAULT_R1_POINTS,
) -> Frontier:
    """Upper envelope of :func:`cor2_bound` over a power-split grid."""
    if params.a != 0.0 or params.b < 1.0:
        raise ValueError("Cor.2 requires Z strong interference")
    alpha = _alpha_axis(alpha_grid)
    p1, p2 = params.p1, params.p2
    b2 = params.b * params.b
    abar = 1.0 - alpha
    r1_cap = gaussian_rate(alpha * p1)
    amplitude = np.sqrt(p2) + np.sqrt(b2 * p1 * abar / (1.0 + alpha * p1))
    r2_cap = gaussian_rate(amplitude * amplitude)
    sum_cap = gaussian_rate(p2 + b2 * p1 + 2.0 * np.sqrt(abar * b2 * p1 * p2))
    return union_frontier_arrays(
        r1_cap, r2_cap, sum_cap, grid=r1_grid, inject_corners=True
    )


@dataclass(frozen=True)
class CovarianceSplit:
    """Two-layer power-and-correlation split of the joint input covariance.

    Layer 1 takes fractions ``alpha1`` / ``alpha2`` of the two transmit
    powers with internal cross-correlation ``rho1``; layer 2 takes the
    remainders with correlation ``rho2``.  Each layer covariance is positive
    semidefinite whenever the fields are in range, the layer diagonals add
    back to the per-user powers by construction, and the correlation of the
    summed layers is the derived :attr:`rho`.
    """

    alpha1: float
    alpha2: float
    rho1: float
    rho2: float

    def __post_init__(self) -> None:
        for name in ("alpha1", "alpha2"):
            value = float(getattr(self, name))
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {value}")
            object.__setattr__(self, name, value)
        for name in ("rho1", "rho2"):
            value = float(getattr(self, name))
            if not -1.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [-1, 1], got {value}")
            object.__setattr__(self, name, value)
        # In-range fields imply |rho| <= 1 (Cauchy-Schwarz); the check only
        # guards against nonsense slipping through float conversion.
        if abs(self.rho) > 1.0 + 1e-12:
            raise ValueError("implied total correlation lies outside [-1, 1]")

    @property
    def rho(self) -> float:
        """Correlation coefficient of the summed layers at unit powers."""
        a1, a2 = self.alpha1, self.alpha2
        return self.rho1 * math.sqrt(a1 * a2) + self.rho2 * math.sqrt(
            (1.0 - a1) * (1.0 - a2)
        )

    def layer_covariances(self, p1: float, p2: float) -> Tuple[np.ndarray, np.ndarray]:
        """The two 2x2 layer covariance matrices at transmit powers (p1, p2)."""
        v11, v12 = self.alpha1 * p1, self.alpha2 * p2
        v21, v22 = (1.0 - self.alpha1) * p1, (1.0 - self.alpha2) * p2
        c1 = self.rho1 * math.sqrt(v11 * v12)
        c2 = self.rho2 * math.sqrt(v21 * v22)
        return (
            np.array([[v11, c1], [c1, v12]]),
            np.array([[v21, c2], [c2, v22]]),
        )


def _split_forms(params: ChannelParams, alpha1, alpha2, rho1, rho2):
    """Quadratic forms of the receive vectors against the layer covariances.

    Broadcasts over array inputs.  Returns ``(q1_layer1, q1_layer2,
    q2_layer1, q2_layer2)``: the power of each layer seen at each receiver.
    The total input power at receiver 2 is ``q2_layer1 + q2_layer2`` since
    the form is linear in the covariance.
    """
    p1, p2 = params.p1, params.p2
    a, b = params.a, params.b
    a1 = np.asarray(alpha1, dtype=float)
    a2 = np.asarray(alpha2, dtype=float)
    r1 = np.asarray(rho1, dtype=float)
    r2 = np.asarray(rho2, dtype=float)
    v11, v12 = a1 * p1, a2 * p2
    v21, v22 = (1.0 - a1) * p1, (1.0 - a2) * p2
    c1 = r1 * np.sqrt(v11 * v12)
    c2 = r2 * np.sqrt(v21 * v22)

    def form(h1, h2, m11, m22, m12):
        return h1 * h1 * m11 + 2.0 * h1 * h2 * m12 + h2 * h2 * m22

    return (
        form(1.0, a, v11, v12, c1),
        form(1.0, a, v21, v22, c2),
        form(b, 1.0, v11, v12, c1),
        form(b, 1.0, v21, v22, c2),
    )


def bc_dms_pentagon(params: ChannelParams, split: CovarianceSplit) -> Pentagon:
    """Broadcast pentagon at one covariance split.

    Models an enhanced channel where a single encoder serves both
    receivers: layer 2 is encoded last, so receiver 2 gets it with layer 1
    pre-canceled; receiver 1 decodes layer 1 against layer 2 as noise; the
    sum cap is receiver 2's rate for decoding everything.  The sum cap
    always dominates the r2 cap because layer powers are nonnegative, so
    the pentagon never degenerates.
    """
    q1l1, q1l2, q2l1, q2l2 = _split_forms(
        params, split.alpha1, split.alpha2, split.rho1, split.rho2
    )
    return Pentagon(
        float(gaussian_rate(q1l1 / (1.0 + q1l2))),
        float(gaussian_rate(q2l2)),
        float(gaussian_rate(q2l1 + q2l2)),
    )


def _split_axes(split_grid) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Normalize a split-grid spec to four 1-D axes.

    An integer gives that many uniform points per axis; a length-4 sequence
    gives per-axis resolutions or explicit arrays in the order ``(alpha1,
    alpha2, rho1, rho2)``.  Power-fraction axes span [0, 1], correlation
    axes span [-1, 1].  Explicit single-point arrays are allowed (they pin
    a parameter to a slice).
    """
    if isinstance(split_grid, (int, np.integer)):
        spec: Tuple = (split_grid,) * 4
    else:
        spec = tuple(split_grid)
        if len(spec) != 4:
            raise ValueError(
                "split grid must be an int or four axes (alpha1, alpha2, rho1, rho2)"
            )
    axes = []
    for i, (entry, lo) in enumerate(zip(spec, (0.0, 0.0, -1.0, -1.0))):
        if isinstance(entry, (int, np.integer)):
            if entry < 2:
                raise ValueError("grid resolution must be at least 2")
            axes.append(np.linspace(lo, 1.0, int(entry)))
        else:
            axis = np.unique(np.asarray(entry, dtype=float))
            if axis.size == 0:
                raise ValueError("empty grid")
            if not np.all(np.isfinite(axis)) or axis[0] < lo or axis[-1] > 1.0:
                raise ValueError(
                    f"split grid axis {i} values must lie in [{lo:g}, 1]"
                )
            axes.append(axis)
    return tuple(axes)


def _split_mesh(params: ChannelParams, split_grid):
    a1, a2, r1ax, r2ax = _split_axes(split_grid)
    mesh = np.meshgrid(a1, a2, r1ax, r2ax, indexing="ij")
    flat = (m.reshape(-1) for m in mesh)
    return _split_forms(params, *flat)


def bc_dms_region(
    params: ChannelParams,
    split_grid=DEFAULT_SPLIT_POINTS,
    r1_grid: Union[int, np.ndarray] = DEFAULT_R1_POINTS,
) -> Frontier:
    """Upper concave envelope of :func:`bc_dms_pentagon` over a split grid.

    The underlying region is convex (time sharing between splits is
    admissible in the enhanced channel), so the sampled union is
    concavified.  The hull is assembled exactly from the pentagon corner
    cloud — no r1 sampling is involved, which keeps the steep edges of the
    envelope sharp at any grid size; ``r1_grid`` is accepted for interface
    symmetry with the other region builders and only validated.  The result
    outer-bounds the cognitive region only for ``|b| >= 1``; the function
    computes the enhanced-channel region for any parameters and leaves
    regime policing to callers.
    """
    if isinstance(r1_grid, (int, np.integer)) and r1_grid < 2:
        raise ValueError("grid resolution must be at least 2")
    q1l1, q1l2, q2l1, q2l2 = _split_mesh(params, split_grid)
    return hull_frontier(
        *corner_cloud(
            gaussian_rate(q1l1 / (1.0 + q1l2)),
            gaussian_rate(q2l2),
            gaussian_rate(q2l1 + q2l2),
        )
    )


def th1_bound(
    params: ChannelParams,
    split_grid=DEFAULT_SPLIT_POINTS,
    alpha_grid: GridAxis = DEFAULT_ALPHA_POINTS,
    r1_grid: Union[int, np.ndarray] = DEFAULT_R1_POINTS,
) -> Frontier:
    """Strong-interference outer bound: broadcast region cut by the unifying family.

    Pointwise below both constituents by construction.
    """
    if params.b <= 1.0:
        raise ValueError("Theorem 1 requires |b| > 1")
    return intersect_frontiers(
        bc_dms_region(params, split_grid=split_grid, r1_grid=r1_grid),
        unifying_region(params, alpha_grid=alpha_grid, r1_grid=r1_grid),
    )


def bc_pr_bound(
    params: ChannelParams,
    split_grid=DEFAULT_SPLIT_POINTS,
    alpha_grid: GridAxis = DEFAULT_ALPHA_POINTS,
    r1_grid: Union[int, np.ndarray] = DEFAULT_R1_POINTS,
) -> Frontier:
    """Outer bound from private-rate broadcast rectangles, both encoding orders.

    Unlike :func:`th1_bound` this holds for every ``b``: the enhanced
    broadcast encoder may pre-cancel either layer, and each split/order pair
    yields a rectangle with no sum constraint.  The rectangle union is
    concavified exactly from its corner cloud (the underlying region is
    convex) and then cut by the unifying-family envelope.
    """
    q1l1, q1l2, q2l1, q2l2 = _split_mesh(params, split_grid)
    # First coordinates: layer 2 encoded last, then layer 1 encoded last.
    rect_r1 = np.concatenate(
        [gaussian_rate(q1l1 / (1.0 + q1l2)), gaussian_rate(q1l1)]
    )
    rect_r2 = np.concatenate(
        [gaussian_rate(q2l2), gaussian_rate(q2l2 / (1.0 + q2l1))]
    )
    return intersect_frontiers(
        hull_frontier(rect_r1, rect_r2),
        unifying_region(params, alpha_grid=alpha_grid, r1_grid=r1_grid),
    )
