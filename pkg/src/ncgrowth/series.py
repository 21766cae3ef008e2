"""Exact series expansion, the distinct-parts product, dominant roots and growth statistics."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .automaton import RationalSeries
from .counts import CountTable

POLYNOMIAL = "polynomial"
EXPONENTIAL = "exponential"
UNDETERMINED = "undetermined/intermediate-candidate"

# classification cut-offs, all on the top third of the available degrees
EXP_RATE_MIN = 0.01       # smallest tail slope of ln a(n) that can count as exponential
EXP_DRIFT_MAX = 0.03      # allowed relative change of that slope between tail halves
GK_DRIFT_MAX = 0.05       # allowed relative change of the corrected log-log slope
MIN_DEGREES = 20


def expand_rational(rs: RationalSeries, N: int) -> CountTable:
    """Exact power-series coefficients ``c[0..N]`` of ``rs``.

    Negative coefficients are allowed by the recurrence but not by a count
    table, so those raise.
    """
    coeffs = rs.expand(N)
    return CountTable(tuple(coeffs), N)


def phi_series(N: int) -> list[int]:
    """Coefficients of the product of ``(1 + 2 t^n)`` over ``n >= 1``, up to ``t^N``."""
    c = [0] * (N + 1)
    c[0] = 1
    for n in range(1, N + 1):
        for k in range(N, n - 1, -1):
            c[k] += 2 * c[k - n]
    return c


def _horner(poly: Sequence[float], t: float) -> float:
    v = 0.0
    for c in reversed(poly):
        v = v * t + c
    return v


def dominant_root(den_poly: Sequence[int], tol: float = 1e-12) -> float | None:
    """Smallest root of ``den_poly`` (ascending coefficients) with a sign change in (0, 1)."""
    coeffs = [float(c) for c in den_poly]
    if len([c for c in coeffs if c]) == 0 or all(c == 0 for c in coeffs[1:]):
        return None
    grid = 4096
    prev_t, prev_v = 0.0, _horner(coeffs, 0.0)
    for i in range(1, grid + 1):
        t = i / grid
        v = _horner(coeffs, t)
        if prev_v == 0.0 and 0.0 < prev_t < 1.0:
            return prev_t
        if (prev_v < 0 < v) or (prev_v > 0 > v):
            lo, hi, flo = prev_t, t, prev_v
            while hi - lo > tol:
                mid = 0.5 * (lo + hi)
                fm = _horner(coeffs, mid)
                if fm == 0.0:
                    return mid
                if (fm < 0) == (flo < 0):
                    lo, flo = mid, fm
                else:
                    hi = mid
            return 0.5 * (lo + hi)
        prev_t, prev_v = t, v
    return None


@dataclass(frozen=True)
class GrowthReport:
    gk_estimate: float
    exp_rate: float
    kappa_estimate: float
    classification: str
    dominant_root: float | None = None
    gk_drift: float = 0.0
    exp_drift: float = 0.0
    window: tuple[int, int] = (0, 0)

    def as_dict(self) -> dict:
        return {
            "classification": self.classification,
            "dominant_root": self.dominant_root,
            "exp_drift": round(self.exp_drift, 6),
            "exp_rate": round(self.exp_rate, 6),
            "gk_drift": round(self.gk_drift, 6),
            "gk_estimate": round(self.gk_estimate, 6),
            "kappa_estimate": round(self.kappa_estimate, 6),
            "window": list(self.window),
        }


def _gk_fit(ns: np.ndarray, lnp: np.ndarray) -> float:
    # ln p(n) ~ d ln n + e + f/n ; the 1/n column absorbs the leading finite-size term
    X = np.column_stack([np.log(ns), np.ones_like(ns), 1.0 / ns])
    coef, *_ = np.linalg.lstsq(X, lnp, rcond=None)
    return float(coef[0])


def _slope(xs: np.ndarray, ys: np.ndarray) -> float:
    return float(np.polyfit(xs, ys, 1)[0])


def growth_estimates(table: CountTable, dominant: float | None = None) -> GrowthReport:
    """Fit growth statistics on the top third of the trustworthy degrees.

    * ``gk_estimate``: slope of ``ln p(n)`` against ``ln n`` with a ``1/n`` correction;
    * ``exp_rate``: slope of ``ln a(n)`` against ``n``;
    * ``kappa_estimate``: ``ln ln p(N) / ln N`` at ``N = valid_to``.

    Polynomial growth is declared when the corrected log-log slope is stable across
    the two halves of the window; exponential growth when ``exp_rate`` is clearly
    positive and the semi-log slope is stable. Anything else is left undetermined.
    """
    N = table.valid_to
    if N < MIN_DEGREES:
        raise ValueError(f"need counts up to degree {MIN_DEGREES}, have {N}")
    a = table.a[: N + 1]
    p = table.p[: N + 1]
    lo = N - N // 3
    ns = np.arange(lo, N + 1, dtype=float)
    tail_a = a[lo:]
    if any(v <= 0 for v in tail_a) or p[N] <= 1:
        raise ValueError("counts vanish in the fitting window; logarithms undefined")
    lna = np.array([math.log(v) for v in tail_a])
    lnp = np.array([math.log(v) for v in p[lo:]])

    gk = _gk_fit(ns, lnp)
    rate = _slope(ns, lna)
    half = len(ns) // 2
    gk_lo = _gk_fit(ns[: half + 1], lnp[: half + 1])
    gk_hi = _gk_fit(ns[half:], lnp[half:])
    r_lo = _slope(ns[: half + 1], lna[: half + 1])
    r_hi = _slope(ns[half:], lna[half:])
    gk_drift = abs(gk_hi - gk_lo) / max(1.0, abs(gk))
    exp_drift = abs(r_hi - r_lo) / abs(rate) if rate else math.inf
    kappa = math.log(math.log(p[N])) / math.log(N)

    if gk_drift <= GK_DRIFT_MAX and gk > 0:
        cls = POLYNOMIAL
    elif rate > EXP_RATE_MIN and exp_drift <= EXP_DRIFT_MAX:
        cls = EXPONENTIAL
    else:
        cls = UNDETERMINED
    return GrowthReport(
        gk_estimate=gk,
        exp_rate=max(rate, 0.0),
        kappa_estimate=min(max(kappa, 0.0), 1.0),
        classification=cls,
        dominant_root=dominant,
        gk_drift=gk_drift,
        exp_drift=exp_drift,
        window=(lo, N),
    )

