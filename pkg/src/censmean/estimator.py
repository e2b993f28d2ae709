"""Tail-corrected mean estimation for censored heavy-tailed data.

The mean is split at the (n-k)-th order statistic.  The body part is the
Kaplan-Meier integral truncated there plus the threshold times the
product-limit survival; the tail part applies the Karamata approximation
of the tail integral, gamma1/(1-gamma1) * threshold * survival, with the
censoring-adapted Hill estimate standing in for gamma1.  The sum of the
two parts is the corrected estimate; the plain Kaplan-Meier mean is kept
alongside as the classical baseline.
"""

from dataclasses import dataclass

import numpy as np

from .censoring import CensoredSample
from .errors import DomainError, EstimateDivergedError
from .survival import km_mean, km_survival_product, km_weights
from .tail import DEFAULT_THETA, TailEstimate, select_k_star, tail_estimate

__all__ = [
    "MeanEstimate",
    "AsymptoticParams",
    "mu1_hat",
    "mu2_hat",
    "mu_hat",
    "asymptotic_mean_shift",
]


@dataclass(frozen=True)
class MeanEstimate:
    """The corrected mean estimate and its ingredients."""

    mu1_hat: float
    mu2_hat: float
    mu_hat: float
    tail: TailEstimate
    km_baseline: float


def _check_k(n: int, k: int) -> None:
    if not 2 <= k <= n - 2:
        raise DomainError(f"k must satisfy 2 <= k <= n-2, got k={k}, n={n}")


def mu1_hat(sample: CensoredSample, k: int) -> float:
    """Body part: truncated Kaplan-Meier integral plus the mass of the
    survival function up to the threshold order statistic."""
    _check_k(sample.n, k)
    m = sample.n - k
    prod = km_survival_product(sample, m)
    w = km_weights(sample)
    return float(prod * sample.z[m - 1] + np.sum(w[:m] * sample.z[:m]))


def mu2_hat(sample: CensoredSample, k: int) -> float:
    """Tail part: Karamata plug-in gamma1/(1-gamma1) * threshold * survival.

    Raises EstimateDivergedError when the adapted tail-index estimate is
    >= 1 (the implied tail integral is infinite).
    """
    _check_k(sample.n, k)
    tail = tail_estimate(sample, k)
    return _mu2_from_tail(sample, k, tail)


def _mu2_from_tail(sample: CensoredSample, k: int, tail: TailEstimate) -> float:
    g1 = tail.gamma1_hat
    if g1 >= 1.0:
        raise EstimateDivergedError(
            f"adapted tail-index estimate {g1:.4f} >= 1 at k={k}; tail mean undefined"
        )
    m = sample.n - k
    prod = km_survival_product(sample, m)
    return float(g1 / (1.0 - g1) * sample.z[m - 1] * prod)


def mu_hat(
    sample: CensoredSample,
    k: int | str = "auto",
    *,
    theta: float = DEFAULT_THETA,
    k_min: int = 2,
    k_max: int | None = None,
) -> MeanEstimate:
    """Tail-corrected mean estimate at k top order statistics.

    With k="auto" the threshold count is selected by the stability
    criterion (capped at n-2 so the body part stays well defined).
    """
    n = sample.n
    if isinstance(k, str):
        if k != "auto":
            raise DomainError(f"k must be an integer or 'auto', got {k!r}")
        cap = max(3, n // 4) if k_max is None else k_max
        k = select_k_star(sample, theta=theta, k_min=k_min, k_max=min(cap, n - 2))
    _check_k(n, k)
    tail = tail_estimate(sample, k)
    m1 = mu1_hat(sample, k)
    m2 = _mu2_from_tail(sample, k, tail)
    return MeanEstimate(
        mu1_hat=m1,
        mu2_hat=m2,
        mu_hat=m1 + m2,
        tail=tail,
        km_baseline=km_mean(sample),
    )


@dataclass(frozen=True)
class AsymptoticParams:
    """Second-order quantities entering the asymptotic bias of the
    corrected estimator: the limit lambda1 of sqrt(k) times the
    second-order rate function at the threshold, the (negative)
    second-order index tau1, and the design quantities p and gamma1."""

    lambda1: float
    tau1: float
    p: float
    gamma1: float

    def __post_init__(self):
        if not self.tau1 < 0.0:
            raise DomainError(f"tau1 must be negative, got {self.tau1}")
        if not 0.0 < self.p < 1.0:
            raise DomainError(f"p must lie in (0, 1), got {self.p}")
        if not 0.0 < self.gamma1 < 1.0:
            raise DomainError(f"gamma1 must lie in (0, 1), got {self.gamma1}")


def asymptotic_mean_shift(params: AsymptoticParams) -> float:
    """Centering constant of the limiting normal law of the standardized
    estimation error:

        lambda1/((1 - p*tau1)*(1 - gamma1)**2)
        + lambda1/((gamma1 + tau1 - 1)*(1 - gamma1))
    """
    d1 = (1.0 - params.p * params.tau1) * (1.0 - params.gamma1) ** 2
    d2 = (params.gamma1 + params.tau1 - 1.0) * (1.0 - params.gamma1)
    if d1 == 0.0 or d2 == 0.0:
        raise DomainError("singular denominator in the asymptotic mean shift")
    return params.lambda1 / d1 + params.lambda1 / d2
