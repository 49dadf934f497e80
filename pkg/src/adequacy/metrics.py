"""Weighted empirical distributions and risk-averse summary metrics.

CVaR uses the Rockafellar-Uryasev form CVaR_a = u' + E[(U - u')+] / (1 - a)
with u' the lower a-quantile. For atomless distributions this coincides with
the conditional tail mean E[U | U > u']; unlike the literal conditional mean
it stays defined on distributions with large atoms (the energy-unserved
distribution has a big atom at zero), and at a = 0 it reduces exactly to the
plain mean.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EmptyDistributionError, ValidationError

__all__ = [
    "EmpiricalDistribution",
    "var_alpha",
    "cvar_alpha",
    "cvar_curve",
    "summary",
    "histogram",
]

SUMMARY_QUANTILES = (0.5, 0.9, 0.95, 0.99)


@dataclass(frozen=True)
class EmpiricalDistribution:
    """Weighted sample set; weights are normalized to sum to 1 on construction.

    Values are kept sorted with cumulative weights cached, so quantile lookups
    are a binary search.
    """

    values: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float).ravel()
        w = np.asarray(self.weights, dtype=float).ravel()
        if v.size == 0:
            raise EmptyDistributionError("empirical distribution needs at least one sample")
        if v.size != w.size:
            raise ValidationError("values and weights must have equal length")
        if not np.all(np.isfinite(v)):
            raise ValidationError("sample values must be finite")
        if not np.all(np.isfinite(w)) or np.any(w <= 0):
            raise ValidationError("weights must be finite and > 0")
        order = np.argsort(v, kind="stable")
        v = v[order]
        w = w[order] / w.sum()
        for arr in (v, w):
            arr.flags.writeable = False
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "weights", w)
        cumw = np.cumsum(w)
        cumw.flags.writeable = False
        object.__setattr__(self, "_cumw", cumw)

    @classmethod
    def from_samples(cls, samples) -> "EmpiricalDistribution":
        """Build from an iterable of (value, weight) pairs."""
        pairs = list(samples)
        if not pairs:
            raise EmptyDistributionError("empirical distribution needs at least one sample")
        values, weights = zip(*pairs)
        return cls(values=np.array(values, dtype=float), weights=np.array(weights, dtype=float))

    @classmethod
    def from_values(cls, values) -> "EmpiricalDistribution":
        """Equally weighted distribution over raw samples."""
        v = np.asarray(values, dtype=float).ravel()
        if v.size == 0:
            raise EmptyDistributionError("empirical distribution needs at least one sample")
        return cls(values=v, weights=np.ones(v.size))

    @property
    def n_samples(self) -> int:
        return int(self.values.size)

    def mean(self) -> float:
        return float(np.dot(self.values, self.weights))

    def stddev(self) -> float:
        m = self.mean()
        return float(np.sqrt(np.dot((self.values - m) ** 2, self.weights)))

    def min(self) -> float:
        return float(self.values[0])

    def max(self) -> float:
        return float(self.values[-1])


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not 0.0 <= alpha < 1.0:
        raise ValidationError(f"alpha must be in [0, 1), got {alpha}")
    return alpha


def var_alpha(dist: EmpiricalDistribution, alpha: float) -> float:
    """Lower alpha-quantile: inf{u : P(U <= u) >= alpha}."""
    alpha = _check_alpha(alpha)
    idx = int(np.searchsorted(dist._cumw, alpha, side="left"))
    idx = min(idx, dist.values.size - 1)  # guard cumulative-rounding shortfall at the top
    return float(dist.values[idx])


def cvar_alpha(dist: EmpiricalDistribution, alpha: float) -> float:
    """Rockafellar-Uryasev CVaR at level alpha; exactly the mean at alpha = 0."""
    alpha = _check_alpha(alpha)
    if alpha == 0.0:
        return dist.mean()
    u = var_alpha(dist, alpha)
    excess = float(np.dot(np.maximum(dist.values - u, 0.0), dist.weights))
    return u + excess / (1.0 - alpha)


def cvar_curve(dist: EmpiricalDistribution, alphas) -> list[tuple[float, float]]:
    """CVaR at each requested level, returned sorted by alpha."""
    pts = [(a, cvar_alpha(dist, a)) for a in map(_check_alpha, alphas)]
    return sorted(pts, key=lambda p: p[0])


def summary(dist: EmpiricalDistribution) -> dict:
    """Weighted moments plus the standard quantile set."""
    return {
        "mean": dist.mean(),
        "stddev": dist.stddev(),
        "min": dist.min(),
        "max": dist.max(),
        "quantiles": {q: var_alpha(dist, q) for q in SUMMARY_QUANTILES},
    }


def histogram(dist: EmpiricalDistribution, n_bins: int = 40) -> tuple[np.ndarray, np.ndarray]:
    """(bin_edges, counts) where counts are sample counts, not normalized mass.

    Integer-valued samples with a small range get unit-width bins centered on
    the integers, so count-type metrics (shortfall hours/days) bin exactly.
    """
    v = dist.values
    counts_per_sample = dist.weights * dist.n_samples
    if np.allclose(v, np.round(v)) and v[-1] - v[0] <= n_bins:
        lo, hi = int(round(v[0])), int(round(v[-1]))
        edges = np.arange(lo, hi + 2, dtype=float) - 0.5
    elif v[0] == v[-1]:
        edges = np.array([v[0] - 0.5, v[0] + 0.5])
    else:
        edges = np.linspace(v[0], v[-1], n_bins + 1)
    counts, edges = np.histogram(v, bins=edges, weights=counts_per_sample)
    return edges, counts
