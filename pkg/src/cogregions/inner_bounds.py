"""Achievable regions and exact capacity results.

The workhorse is a superposition scheme: the cognitive transmitter spends a
fraction ``beta`` of its power on a private codeword and the remainder on a
scaled copy of the primary codeword, so receiver 2 collects its own signal
coherently reinforced while receiver 1 decodes the private layer.  Where a
matching outer bound is known to coincide, :func:`capacity_region` returns
the exact frontier; elsewhere it returns the best inner/outer pair.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .channel import ChannelParams, classify, gaussian_rate
from .outer_bounds import (
    DEFAULT_ALPHA_POINTS,
    DEFAULT_SPLIT_POINTS,
    GridAxis,
    bc_pr_bound,
    cor2_region,
    th1_bound,
    unifying_region,
)
from .region_geometry import (
    DEFAULT_R1_POINTS,
    Frontier,
    Pentagon,
    concavify,
    union_frontier_arrays,
)

__all__ = [
    "DEFAULT_BETA_POINTS",
    "CapacityResult",
    "scheme_e_pentagon",
    "scheme_e_general_pentagon",
    "scheme_e_region",
    "beta_of_alpha",
    "capacity_region",
]

# Default resolution of the private-power-fraction grid.
DEFAULT_BETA_POINTS = 1001


def _check_beta(beta: float) -> float:
    beta = float(beta)
    if not 0.0 <= beta <= 1.0:
        raise ValueError(f"beta must lie in [0, 1], got {beta}")
    return beta


def _beta_axis(beta_grid: GridAxis) -> np.ndarray:
    if isinstance(beta_grid, (int, np.integer)):
        n = int(beta_grid)
        if n < 2:
            raise ValueError("grid resolution must be at least 2")
        return np.linspace(0.0, 1.0, n)
    axis = np.unique(np.asarray(beta_grid, dtype=float))
    if axis.size == 0:
        raise ValueError("empty grid")
    if not np.all(np.isfinite(axis)) or axis[0] < 0.0 or axis[-1] > 1.0:
        raise ValueError("beta grid values must lie in [0, 1]")
    return axis


def scheme_e_pentagon(params: ChannelParams, beta: float) -> Pentagon:
    """Superposition pentagon for the interference-free-receiver-1 channel.

    ``beta`` is the fraction of cognitive power on the private layer; the
    rest rides on a copy of the primary codeword scaled to the primary's
    power.  Receiver 1 decodes its layer against the copy as noise, so the
    r1 cap is ``log2(1 + beta*p1 / (1 + (1-beta)*p1))``; receiver 2 sees
    the copy coherently, giving the amplitude-sum r2 cap.  Requires
    ``a = 0`` — receiver 1 must not see the primary signal.  The copy
    scaling divides by ``p2``, so ``p2 = 0`` admits only ``beta = 1``.
    """
    if params.a != 0.0:
        raise ValueError("scheme E requires a = 0")
    beta = _check_beta(beta)
    p1, p2 = params.p1, params.p2
    if p2 == 0.0 and beta < 1.0:
        raise ValueError("degenerate superposition: set beta=1")
    b2 = params.b * params.b
    bbar = 1.0 - beta
    r1_cap = gaussian_rate(beta * p1 / (1.0 + bbar * p1))
    amplitude = math.sqrt(p2) + math.sqrt(bbar * b2 * p1)
    r2_cap = gaussian_rate(amplitude * amplitude)
    sum_cap = gaussian_rate(p2 + b2 * p1 + 2.0 * math.sqrt(bbar * b2 * p1 * p2))
    return Pentagon(float(r1_cap), float(r2_cap), float(sum_cap))


def scheme_e_general_pentagon(params: ChannelParams, beta: float) -> Pentagon:
    """Superposition pentagon with receiver-1 cross-talk treated as noise.

    Same encoder as :func:`scheme_e_pentagon`.  Receiver 1 additionally
    hears the primary signal through the cross gain ``a``, which simply
    adds to the copy coefficient; receiver-2 statistics are unchanged.
    With ``a = 0`` this delegates to :func:`scheme_e_pentagon`, so the two
    agree exactly, field for field.
    """
    if params.a == 0.0:
        return scheme_e_pentagon(params, beta)
    beta = _check_beta(beta)
    p1, p2 = params.p1, params.p2
    if p2 == 0.0 and beta < 1.0:
        raise ValueError("degenerate superposition: set beta=1")
    b2 = params.b * params.b
    bbar = 1.0 - beta
    if beta == 1.0:
        copy_gain = params.a
    else:
        copy_gain = math.sqrt(bbar * p1 / p2) + params.a
    r1_cap = gaussian_rate(beta * p1 / (1.0 + copy_gain * copy_gain * p2))
    amplitude = math.sqrt(p2) + math.sqrt(bbar * b2 * p1)
    r2_cap = gaussian_rate(amplitude * amplitude)
    sum_cap = gaussian_rate(p2 + b2 * p1 + 2.0 * math.sqrt(bbar * b2 * p1 * p2))
    return Pentagon(float(r1_cap), float(r2_cap), float(sum_cap))


def scheme_e_region(
    params: ChannelParams,
    beta_grid: GridAxis = DEFAULT_BETA_POINTS,
    r1_grid: Union[int, np.ndarray] = DEFAULT_R1_POINTS,
) -> Frontier:
    """Upper envelope of the superposition family over a ``beta`` grid.

    Evaluates :func:`scheme_e_general_pentagon` vectorized (identical
    arithmetic to the scalar functions, so matched-grid identities hold to
    float precision).  The raw union is achievable as-is; apply
    :func:`~cogregions.region_geometry.concavify` for the time-sharing
    inner bound.
    """
    beta = _beta_axis(beta_grid)
    p1, p2 = params.p1, params.p2
    if p2 == 0.0 and bool(np.any(beta < 1.0)):
        raise ValueError("degenerate superposition: set beta=1")
    b2 = params.b * params.b
    bbar = 1.0 - beta
    if params.a == 0.0:
        r1_cap = gaussian_rate(beta * p1 / (1.0 + bbar * p1))
    else:
        safe_p2 = p2 if p2 > 0.0 else 1.0
        copy_gain = np.where(
            bbar == 0.0, params.a, np.sqrt(bbar * p1 / safe_p2) + params.a
        )
        r1_cap = gaussian_rate(beta * p1 / (1.0 + copy_gain * copy_gain * p2))
    amplitude = np.sqrt(p2) + np.sqrt(bbar * b2 * p1)
    r2_cap = gaussian_rate(amplitude * amplitude)
    sum_cap = gaussian_rate(p2 + b2 * p1 + 2.0 * np.sqrt(bbar * b2 * p1 * p2))
    return union_frontier_arrays(
        r1_cap, r2_cap, sum_cap, grid=r1_grid, inject_corners=True
    )


def beta_of_alpha(alpha, p1: float):
    """Power-split change of variable linking the superposition scheme to the
    Z-channel outer bound.

    Solves ``beta / (1 + (1-beta)*p1) = alpha`` for ``beta``, giving
    ``beta = alpha*(1+p1)/(1+alpha*p1)`` — strictly increasing with fixed
    endpoints, hence a bijection of [0, 1] onto itself.  Under this map the
    scheme's r1 and r2 caps coincide with the Z outer bound's.  Accepts
    scalars or arrays.

    Evaluated as ``1 - (1-alpha)/(1+alpha*p1)`` so that the complement
    ``1-beta`` (what the rate expressions actually consume) round-trips
    without cancellation as ``alpha`` approaches 1.
    """
    alpha = np.asarray(alpha, dtype=float)
    if not np.all(np.isfinite(alpha)) or np.any(alpha < 0.0) or np.any(alpha > 1.0):
        raise ValueError("alpha must lie in [0, 1]")
    beta = 1.0 - (1.0 - alpha) / (1.0 + alpha * p1)
    if beta.ndim == 0:
        return float(beta)
    return beta


@dataclass(frozen=True)
class CapacityResult:
    """Outcome of a capacity computation.

    ``status`` is ``"exact"`` when ``frontier`` is the boundary of the
    capacity region, or ``"open"`` when capacity is unknown for the given
    parameters; then ``frontier`` is the best computed inner (achievable)
    frontier and ``outer`` the tightest computed outer frontier.
    """

    status: str
    frontier: Frontier
    outer: Optional[Frontier] = None


def capacity_region(
    params: ChannelParams,
    alpha_grid: GridAxis = DEFAULT_ALPHA_POINTS,
    beta_grid: GridAxis = DEFAULT_BETA_POINTS,
    split_grid=DEFAULT_SPLIT_POINTS,
    r1_grid: Union[int, np.ndarray] = DEFAULT_R1_POINTS,
) -> CapacityResult:
    """Exact capacity frontier when known, else the best inner/outer pair.

    Exact cases: ``b = 0`` (receiver 2 interference-free, capacity is a
    rectangle); ``a = 0`` with ``b`` at or below the primary-decoding
    threshold (the unifying envelope is achievable); ``a = 0`` with ``b``
    at or above the superposition threshold (the Z outer bound is
    achievable).  Every other instance is open: the result carries the
    concavified superposition inner bound and the tightest valid outer
    bound — the strong-interference intersection when ``|b| > 1``, else the
    private-rates bound, which needs no interference assumption.  Exact
    frontiers are concavified; capacity regions are convex, so the hull
    only removes grid-sampling dips.
    """
    report = classify(params)
    if params.b == 0.0:
        top = float(gaussian_rate(params.p1))
        r2 = float(gaussian_rate(params.p2))
        if top == 0.0:
            frontier = Frontier(np.array([0.0]), np.array([r2]))
        else:
            frontier = Frontier(np.array([0.0, top]), np.array([r2, r2]))
        return CapacityResult("exact", frontier)
    if params.a == 0.0 and report.pdc_capacity_known:
        exact = unifying_region(params, alpha_grid=alpha_grid, r1_grid=r1_grid)
        return CapacityResult("exact", concavify(exact))
    if params.a == 0.0 and report.th3_capacity:
        exact = cor2_region(params, alpha_grid=alpha_grid, r1_grid=r1_grid)
        return CapacityResult("exact", concavify(exact))

    # Open regime: with p2 = 0 the scheme admits only the beta = 1 point.
    inner_axis = np.array([1.0]) if params.p2 == 0.0 else beta_grid
    inner = concavify(scheme_e_region(params, beta_grid=inner_axis, r1_grid=r1_grid))
    if params.b > 1.0:
        outer = th1_bound(
            params, split_grid=split_grid, alpha_grid=alpha_grid, r1_grid=r1_grid
        )
    else:
        outer = bc_pr_bound(
            params, split_grid=split_grid, alpha_grid=alpha_grid, r1_grid=r1_grid
        )
    return CapacityResult("open", inner, outer)
