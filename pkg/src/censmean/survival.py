"""Kaplan-Meier product-limit estimation.

The plug-in weight of the i-th order statistic (1-based, i = 1..n) is

    W[i] = delta[i]/(n-i+1) * prod_{j<i} ((n-j)/(n-j+1))**delta[j]

and the product-limit survival just above the m-th order statistic is

    S[m] = prod_{j<=m} ((n-j)/(n-j+1))**delta[j]

Censored points carry zero weight; with no censoring the weights reduce to
the empirical cdf and S[m] = (n-m)/n, and both are computed exactly in that
case.  The weighted sum of the order statistics is the Kaplan-Meier
integral of x dF_n(x), the classical mean estimate for censored data.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .censoring import CensoredSample
from .errors import DomainError

__all__ = ["KMCurve", "km_weights", "km_survival_product", "km_mean", "km_curve"]

# switch the running product to log space for very long samples
_LOG_SPACE_N = 10_000


def _survival_products(delta: np.ndarray, n: int) -> np.ndarray:
    """Running product S[i] for i = 1..n (returned 0-indexed)."""
    j = np.arange(1, n + 1)
    if n > _LOG_SPACE_N:
        with np.errstate(divide="ignore"):
            steps = np.where(delta, np.log(n - j) - np.log(n - j + 1.0), 0.0)
        return np.exp(np.cumsum(steps))
    ratios = (n - j) / (n - j + 1.0)
    return np.cumprod(np.where(delta, ratios, 1.0))


def km_weights(sample: CensoredSample) -> np.ndarray:
    """Kaplan-Meier jump weights for each order statistic."""
    n = sample.n
    if sample.delta.all():
        # no censoring: empirical cdf, exact
        return np.full(n, 1.0 / n)
    prods = _survival_products(sample.delta, n)
    prev = np.concatenate(([1.0], prods[:-1]))
    at_risk = n - np.arange(1, n + 1) + 1.0
    return np.where(sample.delta, prev / at_risk, 0.0)


def km_survival_product(sample: CensoredSample, m: int) -> float:
    """Product-limit survival F_n-bar evaluated just after the m-th order
    statistic, 1 <= m <= n-1."""
    n = sample.n
    if not 1 <= m <= n - 1:
        raise DomainError(f"m must satisfy 1 <= m <= n-1, got m={m}, n={n}")
    delta = sample.delta[:m]
    if delta.all():
        return (n - m) / n
    j = np.arange(1, m + 1)
    if n > _LOG_SPACE_N:
        steps = np.where(delta, np.log(n - j) - np.log(n - j + 1.0), 0.0)
        return float(np.exp(np.sum(steps)))
    ratios = (n - j) / (n - j + 1.0)
    return float(np.cumprod(np.where(delta, ratios, 1.0))[-1])


def km_mean(sample: CensoredSample) -> float:
    """Kaplan-Meier integral sum_i W[i] * z[i], the classical mean estimate
    for right-censored data."""
    if sample.delta.all():
        return float(np.mean(sample.z))
    if not sample.delta.any():
        warnings.warn(
            "every observation is censored; the Kaplan-Meier mean degenerates to 0",
            RuntimeWarning,
            stacklevel=2,
        )
        return 0.0
    return float(np.sum(km_weights(sample) * sample.z))


@dataclass(frozen=True)
class KMCurve:
    """The fitted product-limit step function: jump locations, jump masses,
    and the survival value just after each jump."""

    jump_points: np.ndarray
    weights: np.ndarray
    survival_at_jump: np.ndarray

    def cdf_at(self, x: float) -> float:
        """F_n(x): the accumulated weight at or below x, forced to 1 at and
        beyond the largest observation."""
        if x >= self.jump_points[-1]:
            return 1.0
        upto = np.searchsorted(self.jump_points, x, side="right")
        return float(np.sum(self.weights[:upto]))

    def survival_at(self, x: float) -> float:
        return 1.0 - self.cdf_at(x)


def km_curve(sample: CensoredSample) -> KMCurve:
    """Fit the product-limit estimator and return the full step function."""
    weights = km_weights(sample)
    prods = _survival_products(sample.delta, sample.n)
    return KMCurve(sample.z, weights, prods)
