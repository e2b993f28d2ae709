"""Tail-index estimation under random right censoring.

The Hill estimator of the observed sample's tail index is divided by the
fraction of uncensored observations among the top k to get the
censoring-adapted estimate of the tail index of the variable of interest.
The number k of upper order statistics is chosen by a stability criterion:
for each candidate k, measure how far the adapted estimates at i <= k
scatter around their median, and keep the k where that scatter (weighted
toward larger i) is smallest.
"""

from bisect import insort
from dataclasses import dataclass

import numpy as np

from .censoring import CensoredSample
from .errors import AllCensoredTailError, DomainError, SelectionError

__all__ = [
    "TailEstimate",
    "hill",
    "p_hat",
    "gamma1_hat",
    "tail_estimate",
    "k_star_trace",
    "select_k_star",
    "DEFAULT_THETA",
]

DEFAULT_THETA = 0.3


@dataclass(frozen=True)
class TailEstimate:
    """Tail quantities at a chosen threshold: the Hill estimate of the
    observed tail index, the uncensored fraction among the top k, and their
    ratio, which estimates the tail index of the censored variable."""

    k: int
    gamma_hill: float
    p_hat: float
    gamma1_hat: float


def _check_k(n: int, k: int) -> None:
    if not 2 <= k <= n - 1:
        raise DomainError(f"k must satisfy 2 <= k <= n-1, got k={k}, n={n}")


def hill(sample: CensoredSample, k: int) -> float:
    """Hill estimator: mean log-excess of the top k observations over the
    (k+1)-th largest."""
    _check_k(sample.n, k)
    z = sample.z
    return float(np.mean(np.log(z[-k:] / z[-(k + 1)])))


def p_hat(sample: CensoredSample, k: int) -> float:
    """Fraction of uncensored observations among the top k."""
    _check_k(sample.n, k)
    return float(np.mean(sample.delta[-k:]))


def gamma1_hat(sample: CensoredSample, k: int) -> float:
    """Censoring-adapted Hill estimator: hill / p_hat."""
    ph = p_hat(sample, k)
    if ph == 0.0:
        raise AllCensoredTailError(f"all top {k} observations are censored")
    return hill(sample, k) / ph


def tail_estimate(sample: CensoredSample, k: int) -> TailEstimate:
    """Bundle hill, p_hat and their ratio at the given k."""
    h = hill(sample, k)
    ph = p_hat(sample, k)
    if ph == 0.0:
        raise AllCensoredTailError(f"all top {k} observations are censored")
    return TailEstimate(k=k, gamma_hill=h, p_hat=ph, gamma1_hat=h / ph)


def _tail_sequences(sample: CensoredSample, k_max: int):
    """hill(i), p_hat(i), gamma1_hat(i) for i = 1..k_max, vectorized.

    gamma1 entries are NaN where p_hat(i) = 0.
    """
    z = sample.z
    n = sample.n
    top_logs = np.log(z[::-1][:k_max])
    ks = np.arange(1, k_max + 1)
    hills = np.cumsum(top_logs) / ks - np.log(z[n - 1 - ks])
    phats = np.cumsum(sample.delta[::-1][:k_max]) / ks
    with np.errstate(invalid="ignore", divide="ignore"):
        g1 = np.where(phats > 0.0, hills / phats, np.nan)
    return hills, phats, g1


def k_star_trace(
    sample: CensoredSample,
    theta: float = DEFAULT_THETA,
    k_min: int = 2,
    k_max: int | None = None,
):
    """Per-k diagnostics of the threshold-selection sweep.

    Returns (k, gamma_hill, p_hat, gamma1_hat, criterion) arrays covering
    k = k_min..k_max.  The criterion at k is the 1/k-scaled sum over
    i = 2..k of i**theta * |gamma1_hat(i) - median|, where the median is the
    lower median of the adapted estimates up to k.  Indices with an
    all-censored top (p_hat = 0) are skipped, and the criterion is NaN until
    at least two usable indices exist: a lone estimate has zero deviation
    from its own median, which says nothing about stability.
    """
    n = sample.n
    if k_max is None:
        k_max = max(3, n // 4)
    if not (2 <= k_min < k_max <= n - 1):
        raise DomainError(
            f"need 2 <= k_min < k_max <= n-1, got k_min={k_min}, k_max={k_max}, n={n}"
        )
    if not 0.0 <= theta <= 0.5:
        raise DomainError(f"theta must lie in [0, 0.5], got {theta}")

    hills, phats, g1 = _tail_sequences(sample, k_max)
    weights = np.arange(1, k_max + 1, dtype=float) ** theta

    criterion = np.full(k_max - k_min + 1, np.nan)
    valid_g = np.empty(k_max, dtype=float)
    valid_w = np.empty(k_max, dtype=float)
    ordered: list[float] = []
    m = 0
    for k in range(2, k_max + 1):
        gk = g1[k - 1]
        if not np.isnan(gk):
            valid_g[m] = gk
            valid_w[m] = weights[k - 1]
            insort(ordered, gk)
            m += 1
        if k < k_min or np.isnan(gk) or m < 2:
            continue
        median = ordered[(m - 1) // 2]
        dev = np.dot(valid_w[:m], np.abs(valid_g[:m] - median))
        criterion[k - k_min] = dev / k

    ks = np.arange(k_min, k_max + 1)
    return ks, hills[k_min - 1 :], phats[k_min - 1 :], g1[k_min - 1 :], criterion


def select_k_star(
    sample: CensoredSample,
    theta: float = DEFAULT_THETA,
    k_min: int = 2,
    k_max: int | None = None,
) -> int:
    """Pick the number of top order statistics by the stability criterion.

    Ties and NaNs resolve toward the smallest usable k.  Raises
    SelectionError when no candidate k has a computable criterion.
    """
    ks, _, _, _, criterion = k_star_trace(sample, theta, k_min, k_max)
    finite = np.isfinite(criterion)
    if not finite.any():
        raise SelectionError(
            "no usable k: the upper tail is censored everywhere in the sweep range"
        )
    best = np.flatnonzero(finite & (criterion == criterion[finite].min()))[0]
    return int(ks[best])
