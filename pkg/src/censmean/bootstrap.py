"""Bootstrap inference for the tail-corrected mean.

Observation pairs (z, delta) are resampled with replacement; the estimator
is recomputed on every resample and the spread of the resample estimates
yields a standard error and a normal-theory confidence interval centered
at the original estimate.  Resamples on which the estimator is undefined
(adapted tail index >= 1, or an all-censored top) are dropped and counted
rather than redrawn, so the resampling distribution is left untouched.
"""

from dataclasses import dataclass

import numpy as np
from scipy import stats

from .censoring import CensoredSample
from .errors import DomainError, EstimationError, UnreliableBootstrapError
from .estimator import mu_hat
from .tail import DEFAULT_THETA

__all__ = ["BootstrapResult", "bootstrap_mu"]


@dataclass(frozen=True)
class BootstrapResult:
    """Outcome of a bootstrap run: the retained resample estimates, the
    failure count, their mean/sd, and the confidence interval."""

    b: int
    estimates: np.ndarray
    failures: int
    boot_mean: float
    boot_sd: float
    ci_lower: float
    ci_upper: float
    level: float


def _mu_hat_rows(z_rows: np.ndarray, d_rows: np.ndarray, k: int):
    """Corrected mean estimate over rows of pre-sorted censored samples.

    Returns (mu, failed) where failed marks rows with p_hat = 0 or an
    adapted tail-index estimate >= 1.
    """
    nrows, n = z_rows.shape
    m = n - k
    j = np.arange(1, n + 1)
    ratios = (n - j) / (n - j + 1.0)
    factors = np.where(d_rows, ratios, 1.0)
    prods = np.cumprod(factors, axis=1)
    prev = np.concatenate((np.ones((nrows, 1)), prods[:, :-1]), axis=1)
    weights = np.where(d_rows, prev / (n - j + 1.0), 0.0)

    prod_m = prods[:, m - 1]
    z_m = z_rows[:, m - 1]
    mu1 = prod_m * z_m + np.sum(weights[:, :m] * z_rows[:, :m], axis=1)

    hills = np.mean(np.log(z_rows[:, m:] / z_m[:, None]), axis=1)
    phats = np.mean(d_rows[:, m:], axis=1)
    with np.errstate(divide="ignore", invalid="ignore"):
        g1 = np.where(phats > 0.0, hills / phats, np.inf)
        mu2 = g1 / (1.0 - g1) * z_m * prod_m
    failed = (phats == 0.0) | (g1 >= 1.0)
    return mu1 + mu2, failed


def bootstrap_mu(
    sample: CensoredSample,
    b: int = 500,
    *,
    k: int | str = "auto",
    policy: str = "fixed",
    level: float = 0.95,
    rng: np.random.Generator,
    theta: float = DEFAULT_THETA,
    k_min: int = 2,
    k_max: int | None = None,
    percentile: bool = False,
) -> BootstrapResult:
    """Bootstrap the corrected mean estimate of the sample.

    ``k`` is the threshold count for the original estimate (an int, or
    "auto" for stability selection).  Under the default "fixed" policy all
    resamples reuse that k; under "reauto" the selection reruns on every
    resample, which costs roughly a selection sweep per resample.

    The interval is mu_hat -/+ z * boot_sd, centered at the original
    estimate; with percentile=True the resample quantiles are used instead.
    Raises UnreliableBootstrapError when more than half of the resamples
    fail (or fewer than two survive).
    """
    if b < 2:
        raise DomainError(f"need at least 2 bootstrap replicates, got {b}")
    if not 0.0 < level < 1.0:
        raise DomainError(f"level must lie in (0, 1), got {level}")
    if policy not in ("fixed", "reauto"):
        raise DomainError(f"policy must be 'fixed' or 'reauto', got {policy!r}")

    original = mu_hat(sample, k, theta=theta, k_min=k_min, k_max=k_max)
    k0 = original.tail.k
    n = sample.n

    idx = rng.integers(0, n, size=(b, n))
    z_star = sample.z[idx]
    d_star = sample.delta[idx]
    order = np.argsort(z_star, axis=1, kind="stable")
    z_star = np.take_along_axis(z_star, order, axis=1)
    d_star = np.take_along_axis(d_star, order, axis=1)

    if policy == "fixed":
        mus, failed = _mu_hat_rows(z_star, d_star, k0)
        estimates = mus[~failed]
        failures = int(failed.sum())
    else:
        kept = []
        failures = 0
        for r in range(b):
            resample = CensoredSample(z_star[r], d_star[r])
            try:
                est = mu_hat(resample, "auto", theta=theta, k_min=k_min, k_max=k_max)
            except EstimationError:
                failures += 1
            else:
                kept.append(est.mu_hat)
        estimates = np.asarray(kept)

    if failures > b / 2 or len(estimates) < 2:
        raise UnreliableBootstrapError(
            f"{failures} of {b} bootstrap resamples failed", failures=failures
        )

    boot_mean = float(np.mean(estimates))
    boot_sd = float(np.std(estimates, ddof=1))
    if percentile:
        lo, hi = np.quantile(estimates, [(1.0 - level) / 2.0, (1.0 + level) / 2.0])
        ci_lower, ci_upper = float(lo), float(hi)
    else:
        half = float(stats.norm.ppf((1.0 + level) / 2.0)) * boot_sd
        ci_lower, ci_upper = original.mu_hat - half, original.mu_hat + half

    return BootstrapResult(
        b=b,
        estimates=estimates,
        failures=failures,
        boot_mean=boot_mean,
        boot_sd=boot_sd,
        ci_lower=ci_lower,
        ci_upper=ci_upper,
        level=level,
    )
