"""Channel model and interference-regime classification.

The channel is the two-user Gaussian cognitive interference channel in
canonical form: receiver 1 observes ``Y1 = X1 + a*X2 + Z1`` and receiver 2
observes ``Y2 = |b|*X1 + X2 + Z2`` with unit-variance noises and per-user
power constraints ``P1``, ``P2``.  All rates produced by this package are in
bits (base-2 logarithms).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = ["ChannelParams", "RegimeReport", "classify", "gaussian_rate"]

_LN2 = math.log(2.0)


def gaussian_rate(snr):
    """Rate in bits of a unit-noise Gaussian channel at the given SNR.

    ``log2(1 + snr)`` evaluated through ``log1p`` so small SNRs keep full
    relative precision.  Accepts scalars or arrays.
    """
    return np.log1p(snr) / _LN2


@dataclass(frozen=True)
class ChannelParams:
    """A channel instance ``(a, b, p1, p2)``.

    ``a`` is the cross gain at receiver 1 and ``b`` the cross gain at
    receiver 2 (stored as a magnitude; only ``|b|`` enters any rate
    expression).  ``p1`` and ``p2`` are linear transmit powers.  Noise
    variances are fixed at 1 by the canonical form and are not fields.
    """

    a: float
    b: float
    p1: float
    p2: float

    def __post_init__(self) -> None:
        for name in ("a", "b", "p1", "p2"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)
        object.__setattr__(self, "b", abs(self.b))
        if self.a < 0:
            raise ValueError("cross gain a must be nonnegative (real-valued model)")
        if self.p1 < 0 or self.p2 < 0:
            raise ValueError("powers p1, p2 must be nonnegative")


@dataclass(frozen=True)
class RegimeReport:
    """Classification flags for one channel instance.

    ``interference_class`` is ``"weak"`` for ``b <= 1`` and ``"strong"``
    otherwise.  ``z_channel`` marks degenerate instances with a vanished
    cross gain.  The three capacity flags record which known-capacity /
    bound-dominance thresholds the instance satisfies, and ``thresholds``
    carries the numeric threshold values used for the comparisons so they
    can be displayed alongside the booleans.
    """

    interference_class: str
    z_channel: str
    pdc_capacity_known: bool
    cor2_dominates: bool
    th3_capacity: bool
    open_regime: bool
    thresholds: dict

    def as_dict(self) -> dict:
        out = {
            "interference_class": self.interference_class,
            "z_channel": self.z_channel,
            "pdc_capacity_known": self.pdc_capacity_known,
            "cor2_dominates": self.cor2_dominates,
            "th3_capacity": self.th3_capacity,
            "open_regime": self.open_regime,
            "thresholds": dict(self.thresholds),
        }
        return out


def pdc_threshold(p1: float, p2: float) -> float:
    """Largest ``b`` for which capacity is known via the weak/primary-decoding regime."""
    return math.sqrt(1.0 + p2 / (p1 + 1.0))


def cor2_threshold(p2: float) -> float:
    """Threshold ``sqrt(P2 + 1)`` above which the closed-form Z outer bound
    is claimed to dominate the unifying bound for every power split."""
    return math.sqrt(p2 + 1.0)


def th3_threshold(p1: float, p2: float) -> float:
    """Threshold ``sqrt(1 + P2*(1 + P1)) + sqrt(P1*P2)`` above which the
    superposition inner bound meets the Z outer bound (capacity known)."""
    return math.sqrt(1.0 + p2 * (1.0 + p1)) + math.sqrt(p1 * p2)


def classify(params: ChannelParams) -> RegimeReport:
    """Classify the interference regime of ``params``.

    Pure threshold arithmetic; all boundary comparisons are closed (``>=``
    or ``<=``) and identical to the comparisons used by the bound modules
    that branch on the same thresholds.
    """
    thr_pdc = pdc_threshold(params.p1, params.p2)
    thr_cor2 = cor2_threshold(params.p2)
    thr_th3 = th3_threshold(params.p1, params.p2)

    if params.b == 0.0:
        z_channel = "b_zero"
    elif params.a == 0.0:
        z_channel = "a_zero"
    else:
        z_channel = "none"

    return RegimeReport(
        interference_class="weak" if params.b <= 1.0 else "strong",
        z_channel=z_channel,
        pdc_capacity_known=params.b <= thr_pdc,
        cor2_dominates=params.b >= thr_cor2,
        th3_capacity=params.b >= thr_th3,
        open_regime=(params.a == 0.0 and thr_pdc < params.b < thr_th3),
        thresholds={
            "pdc_capacity": thr_pdc,
            "cor2_dominates": thr_cor2,
            "th3_capacity": thr_th3,
        },
    )
