"""Independent verification oracles.

Monte Carlo checks re-derive the closed-form variance arguments of the rate
formulas from sampled Gaussian inputs; the degradedness check reconstructs
receiver 1's observation from receiver 2's and compares joint covariances;
the condition sweeps brute-force the redundancy of sum constraints against
their claimed thresholds.  Every report is deterministic for a fixed seed.

Discrepancies are reported in units that make ``passed iff max_discrepancy
<= tolerance`` hold exactly: standard-error multiples for sampled checks,
mismatch counts for biconditional sweeps, and worst constraint-to-tolerance
ratios for the multi-tolerance capacity identity.
"""

from __future__ import annotations

import math
from typing import Optional, Sequence, Union

import numpy as np

from .channel import ChannelParams, gaussian_rate, th3_threshold
from .inner_bounds import beta_of_alpha, scheme_e_pentagon, scheme_e_region
from .outer_bounds import cor2_bound, cor2_region
from .region_geometry import VerificationReport, concavify, sweep_grid

__all__ = [
    "VerificationReport",
    "mc_rate_check",
    "degradedness_check",
    "verify_condition5",
    "verify_condition6",
    "verify_th3_capacity",
]

MIN_MC_SAMPLES = 10_000

GridAxis = Union[int, np.ndarray, Sequence[float]]


def _sweep_axis(grid: GridAxis, what: str) -> np.ndarray:
    if isinstance(grid, (int, np.integer)):
        return sweep_grid(int(grid))
    axis = np.unique(np.asarray(grid, dtype=float))
    if axis.size == 0:
        raise ValueError("empty grid")
    if not np.all(np.isfinite(axis)) or axis[0] < 0.0 or axis[-1] > 1.0:
        raise ValueError(f"{what} grid values must lie in [0, 1]")
    return axis


def _psd_factor(cov: np.ndarray) -> np.ndarray:
    """Square root of a PSD matrix via its eigendecomposition."""
    eigvals, eigvecs = np.linalg.eigh(cov)
    scale = max(1.0, float(eigvals[-1]))
    if eigvals[0] < -1e-9 * scale:
        raise ValueError("covariance must be positive semidefinite")
    return eigvecs * np.sqrt(np.clip(eigvals, 0.0, None))


def mc_rate_check(
    gains: Sequence[float],
    cov,
    n_samples: int = 1_000_000,
    seed: int = 0,
    name: str = "mc_rate_check",
) -> VerificationReport:
    """Monte Carlo check of a closed-form received-signal variance.

    Draws jointly Gaussian inputs with covariance ``cov``, forms
    ``Y = gains . X + Z`` with unit noise, and compares the sample variance
    of ``Y`` against the closed form ``1 + h S h^T`` that every rate
    expression in this package feeds to ``log2``.  Passes iff the estimate
    is within 5 standard errors of the sample-variance estimator.
    """
    n = int(n_samples)
    if n < MIN_MC_SAMPLES:
        raise ValueError(f"n_samples must be at least {MIN_MC_SAMPLES}")
    h = np.asarray(gains, dtype=float)
    cov = np.asarray(cov, dtype=float)
    if cov.shape != (h.size, h.size):
        raise ValueError("covariance shape must match the gain vector")
    factor = _psd_factor(cov)

    rng = np.random.default_rng(seed)
    inputs = rng.standard_normal((n, h.size)) @ factor.T
    received = inputs @ h + rng.standard_normal(n)
    estimate = float(np.var(received, ddof=1))
    target = float(1.0 + h @ cov @ h)
    # Sample variance of Gaussian data has variance 2 sigma^4 / (n - 1).
    stderr = target * math.sqrt(2.0 / (n - 1))
    discrepancy = abs(estimate - target) / stderr
    return VerificationReport(
        name=name,
        passed=bool(discrepancy <= 5.0),
        max_discrepancy=float(discrepancy),
        tolerance=5.0,
        n=n,
        seed=int(seed),
        worst_case={"closed_form": target, "estimate": estimate},
    )


def degradedness_check(
    params: ChannelParams,
    n_samples: int = 1_000_000,
    seed: int = 0,
    input_rho: float = 0.0,
) -> VerificationReport:
    """Check that receiver 1's signal can be rebuilt from receiver 2's.

    For ``|b| >= 1``, the reconstruction ``(Y2 - X2)/b + a X2 +
    sqrt(1 - 1/b^2) Z0`` has the same joint distribution with the inputs as
    ``Y1`` itself — both are ``X1 + a X2`` plus independent unit noise.  The
    check samples inputs with correlation ``input_rho``, builds both
    observations, and compares the two 3x3 joint covariance matrices
    ``Cov(X1, X2, .)`` entrywise in standard-error units.  Entries with a
    vanishing standard error (degenerate inputs) must agree exactly.
    """
    if params.b < 1.0:
        raise ValueError("construction requires |b| ≥ 1")
    n = int(n_samples)
    if n < MIN_MC_SAMPLES:
        raise ValueError(f"n_samples must be at least {MIN_MC_SAMPLES}")
    rho = float(input_rho)
    if not -1.0 <= rho <= 1.0:
        raise ValueError(f"input_rho must lie in [-1, 1], got {rho}")

    a, b = params.a, params.b
    p1, p2 = params.p1, params.p2
    rng = np.random.default_rng(seed)
    g1, g2, z1, z2, z0 = rng.standard_normal((5, n))
    x2 = math.sqrt(p2) * g2
    x1 = math.sqrt(p1) * (rho * g2 + math.sqrt(1.0 - rho * rho) * g1)

    y1 = x1 + a * x2 + z1
    y2 = b * x1 + x2 + z2
    y1_rebuilt = (y2 - x2) / b + a * x2 + math.sqrt(1.0 - 1.0 / (b * b)) * z0

    direct = np.cov(np.stack([x1, x2, y1]))
    rebuilt = np.cov(np.stack([x1, x2, y1_rebuilt]))
    diff = np.abs(direct - rebuilt)
    # Var of a sample covariance entry ~ (Var_i Var_j + Cov_ij^2) / n.
    var_entry = (
        np.outer(np.diag(direct), np.diag(direct)) + direct**2
    ) / n
    stderr = np.sqrt(var_entry)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(stderr > 0.0, diff / stderr, np.where(diff == 0.0, 0.0, np.inf))
    worst = int(np.argmax(ratio))
    i, j = divmod(worst, 3)
    var_y1_closed_form = (
        1.0 + p1 + a * a * p2 + 2.0 * a * rho * math.sqrt(p1 * p2)
    )
    return VerificationReport(
        name="degradedness_check",
        passed=bool(ratio[i, j] <= 5.0),
        max_discrepancy=float(ratio[i, j]),
        tolerance=5.0,
        n=n,
        seed=int(seed),
        worst_case={
            "entry": [i, j],
            "direct": float(direct[i, j]),
            "rebuilt": float(rebuilt[i, j]),
            "input_rho": rho,
            "var_y1_closed_form": var_y1_closed_form,
        },
    )


def _z_bound_caps(p1: float, p2: float, b: float, alpha: np.ndarray):
    """Closed-form (r1, r2, sum) caps of the Z outer bound, vectorized.

    Written out independently of :func:`~cogregions.outer_bounds.cor2_bound`
    so the condition sweeps do not inherit a bug from the module they help
    validate.
    """
    b2 = b * b
    abar = 1.0 - alpha
    r1_cap = gaussian_rate(alpha * p1)
    amplitude = np.sqrt(p2) + np.sqrt(b2 * p1 * abar / (1.0 + alpha * p1))
    r2_cap = gaussian_rate(amplitude * amplitude)
    sum_cap = gaussian_rate(p2 + b2 * p1 + 2.0 * np.sqrt(abar * b2 * p1 * p2))
    return r1_cap, r2_cap, sum_cap


def verify_condition5(
    p1: float,
    p2: float,
    b: float,
    alpha_grid: GridAxis = 1001,
) -> VerificationReport:
    """Brute-force one instance of the Z-bound sum-redundancy claim.

    The claim: the Z outer bound's sum constraint is redundant — for every
    power split the r1 and r2 caps already add up below it — exactly when
    ``b >= sqrt(p2 + 1)``.  The sweep evaluates the caps on the grid and
    compares against the threshold; ``max_discrepancy`` is the number of
    sides of the biconditional that disagree (0 or 1).  Integer grids get
    geometric end tails, since violations can hide in the boundary layers.
    """
    alpha = _sweep_axis(alpha_grid, "alpha")
    r1_cap, r2_cap, sum_cap = _z_bound_caps(float(p1), float(p2), float(b), alpha)
    excess = r1_cap + r2_cap - sum_cap
    worst = int(np.argmax(excess))
    sweep_holds = bool(excess[worst] <= 1e-12)
    threshold_holds = bool(b >= math.sqrt(p2 + 1.0))
    agree = sweep_holds == threshold_holds
    return VerificationReport(
        name="condition5_biconditional",
        passed=agree,
        max_discrepancy=0.0 if agree else 1.0,
        tolerance=0.0,
        n=int(alpha.size),
        worst_case={
            "sweep_holds": sweep_holds,
            "threshold_holds": threshold_holds,
            "threshold": math.sqrt(p2 + 1.0),
            "worst_alpha": float(alpha[worst]),
            "max_corner_excess_bits": float(excess[worst]),
        },
    )


def verify_condition6(
    p1: float,
    p2: float,
    b: float,
    beta_grid: GridAxis = 1001,
) -> VerificationReport:
    """Brute-force one instance of the superposition sum-redundancy claim.

    Two claims are checked at once: the scheme's sum constraint is inactive
    for every private-power fraction exactly when ``b >= sqrt(1 + p2*(1 +
    p1)) + sqrt(p1*p2)``, and that threshold is equivalent to the quadratic
    form ``b^2 >= 1 + p2 + 2*sqrt(b^2*p1*p2)``.  ``max_discrepancy`` counts
    disagreeing comparisons (0, 1, or 2).
    """
    beta = _sweep_axis(beta_grid, "beta")
    p1, p2, b = float(p1), float(p2), float(b)
    b2 = b * b
    bbar = 1.0 - beta
    r1_cap = gaussian_rate(beta * p1 / (1.0 + bbar * p1))
    amplitude = np.sqrt(p2) + np.sqrt(bbar * b2 * p1)
    r2_cap = gaussian_rate(amplitude * amplitude)
    sum_cap = gaussian_rate(p2 + b2 * p1 + 2.0 * np.sqrt(bbar * b2 * p1 * p2))
    excess = r1_cap + r2_cap - sum_cap
    worst = int(np.argmax(excess))
    sweep_holds = bool(excess[worst] <= 1e-12)
    threshold = th3_threshold(p1, p2)
    threshold_holds = bool(b >= threshold)
    quadratic_holds = bool(b2 >= 1.0 + p2 + 2.0 * math.sqrt(b2 * p1 * p2))
    mismatches = int(sweep_holds != threshold_holds) + int(
        quadratic_holds != threshold_holds
    )
    return VerificationReport(
        name="condition6_biconditional",
        passed=mismatches == 0,
        max_discrepancy=float(mismatches),
        tolerance=0.0,
        n=int(beta.size),
        worst_case={
            "sweep_holds": sweep_holds,
            "threshold_holds": threshold_holds,
            "quadratic_form_holds": quadratic_holds,
            "threshold": threshold,
            "worst_beta": float(beta[worst]),
            "max_corner_excess_bits": float(excess[worst]),
        },
    )


def verify_th3_capacity(
    p1: float,
    p2: float,
    b: float,
    alpha_grid: GridAxis = 1001,
) -> VerificationReport:
    """Verify that the superposition scheme meets the Z outer bound.

    Valid only above the superposition threshold.  Checks, per power split
    under the alpha-to-beta change of variable: the r1 and r2 caps of
    scheme and bound agree to 1e-12; the scheme's sum constraint is
    inactive to 1e-12; and the assembled frontiers agree within 1e-9 bits
    at every pentagon-corner abscissa.  ``max_discrepancy`` is the worst
    constraint-to-tolerance ratio, so the report passes at tolerance 1.

    An integer ``alpha_grid`` means a uniform grid here: the 1e-12 identity
    is checked through the scalar power split ``beta``, whose floating-point
    representation near 1 cannot resolve complements below ~5e-17, so the
    1e-9-deep boundary layers of the sweep grid would report pure roundoff.
    """
    p1, p2, b = float(p1), float(p2), float(b)
    if b < th3_threshold(p1, p2):
        raise ValueError("not in Theorem-3 regime")
    params = ChannelParams(a=0.0, b=b, p1=p1, p2=p2)
    if isinstance(alpha_grid, (int, np.integer)):
        if alpha_grid < 2:
            raise ValueError("grid resolution must be at least 2")
        alpha = np.linspace(0.0, 1.0, int(alpha_grid))
    else:
        alpha = _sweep_axis(alpha_grid, "alpha")
    beta = beta_of_alpha(alpha, p1)

    cap_identity = 0.0
    sum_excess = 0.0
    for al, be in zip(alpha.tolist(), np.atleast_1d(beta).tolist()):
        outer_pent = cor2_bound(params, al)
        inner_pent = scheme_e_pentagon(params, be)
        cap_identity = max(
            cap_identity,
            abs(inner_pent.r1_max - outer_pent.r1_max),
            abs(inner_pent.r2_max - outer_pent.r2_max),
        )
        sum_excess = max(
            sum_excess,
            inner_pent.r1_max + inner_pent.r2_max - inner_pent.sum_max,
        )

    outer = cor2_region(params, alpha_grid=alpha)
    inner = concavify(scheme_e_region(params, beta_grid=beta))
    corners = gaussian_rate(alpha * p1)
    gap = float(np.max(np.abs(outer.interp(corners) - inner.interp(corners))))

    ratio = max(cap_identity / 1e-12, max(sum_excess, 0.0) / 1e-12, gap / 1e-9)
    return VerificationReport(
        name="th3_capacity_identity",
        passed=bool(ratio <= 1.0),
        max_discrepancy=float(ratio),
        tolerance=1.0,
        n=int(alpha.size),
        worst_case={
            "rate_cap_identity_bits": cap_identity,
            "sum_constraint_excess_bits": sum_excess,
            "frontier_gap_bits": gap,
        },
    )
