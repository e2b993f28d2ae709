"""Monte Carlo study harness.

Runs replicated censored-sampling experiments over a (gamma1, p, n) grid,
aggregating per-cell bias, mean squared error, confidence-interval coverage
and length, and writes the results as CSV or paper-style markdown tables.
Also provides the two distributional experiments used to check the theory:
the normality of the standardized estimation error, and the limiting
fluctuation of the product-limit survival at the threshold.

Replicate r of a cell draws from a stream keyed by (seed, cell, r), so a
grid run is reproducible and schedule-independent no matter how many
workers execute it.
"""

import csv
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields

import numpy as np
from scipy import stats

from .bootstrap import bootstrap_mu
from .censoring import censor
from .errors import ConfigError, DomainError, EstimationError
from .estimator import mu_hat
from .models import CensoringDesign, Family, ModelSpec, gamma2_for, sample, survival, true_mean
from .streams import scaled_key, substream
from .survival import km_survival_product
from .tail import DEFAULT_THETA

__all__ = [
    "GridConfig",
    "CellSummary",
    "CLTResult",
    "ThresholdRatioResult",
    "run_cell",
    "run_grid",
    "clt_experiment",
    "proposition1_experiment",
    "write_tables",
    "read_summaries_csv",
    "CSV_COLUMNS",
]

_FAMILY_CODE = {Family.PARETO: 0, Family.FRECHET: 1, Family.BURR: 2}

CSV_COLUMNS = [
    "family",
    "gamma1",
    "gamma2",
    "p",
    "n",
    "mu_true",
    "mu_hat",
    "abs_bias",
    "mse",
    "ci_lower",
    "ci_upper",
    "cov_prob",
    "length",
    "failures",
    "k_star_mean",
]


@dataclass(frozen=True)
class GridConfig:
    """Full description of a simulation study."""

    family: Family
    gamma1_list: tuple[float, ...]
    p_list: tuple[float, ...]
    n_list: tuple[int, ...]
    replicates: int = 1000
    seed: int = 0
    eta: float = 0.25
    theta: float = DEFAULT_THETA
    k_min_frac: float = 0.02
    k_max_frac: float = 0.25
    boot_b: int = 500
    level: float = 0.95

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        object.__setattr__(self, "gamma1_list", tuple(float(g) for g in self.gamma1_list))
        object.__setattr__(self, "p_list", tuple(float(p) for p in self.p_list))
        object.__setattr__(self, "n_list", tuple(int(n) for n in self.n_list))
        if not self.gamma1_list or not self.p_list or not self.n_list:
            raise ConfigError("gamma1_list, p_list and n_list must be nonempty")
        if any(not 0.0 < g < 1.0 for g in self.gamma1_list):
            raise ConfigError("every gamma1 must lie strictly inside (0, 1)")
        if any(not 0.0 < p < 1.0 for p in self.p_list):
            raise ConfigError("every p must lie strictly inside (0, 1)")
        if any(n < 20 for n in self.n_list):
            raise ConfigError("every n must be at least 20")
        if self.replicates < 1:
            raise ConfigError("replicates must be >= 1")
        if not self.eta > 0:
            raise ConfigError("eta must be positive")
        if not 0.0 <= self.theta <= 0.5:
            raise ConfigError("theta must lie in [0, 0.5]")
        if not 0.0 <= self.k_min_frac < self.k_max_frac <= 0.5:
            raise ConfigError("need 0 <= k_min_frac < k_max_frac <= 0.5")
        if self.boot_b < 2:
            raise ConfigError("boot_b must be >= 2")
        if not 0.0 < self.level < 1.0:
            raise ConfigError("level must lie in (0, 1)")


@dataclass(frozen=True)
class CellSummary:
    """Aggregated Monte Carlo metrics for one (family, gamma1, p, n) cell.

    All aggregates are over the successful replicates; a cell where every
    replicate failed carries NaN aggregates.
    """

    family: Family
    gamma1: float
    gamma2: float
    p: float
    n: int
    mu_true: float
    mu_hat_mean: float
    abs_bias: float
    mse: float
    ci_mean_lower: float
    ci_mean_upper: float
    cov_prob: float
    ci_length_mean: float
    failures: int
    k_star_mean: float

    @property
    def all_failed(self) -> bool:
        return math.isnan(self.mu_hat_mean)


def _k_range(n: int, k_min_frac: float, k_max_frac: float) -> tuple[int, int]:
    k_min = max(2, int(k_min_frac * n))
    k_max = min(n - 2, max(k_min + 1, int(k_max_frac * n)))
    return k_min, k_max


def run_cell(
    family,
    gamma1: float,
    p: float,
    n: int,
    replicates: int,
    seed: int,
    *,
    eta: float = 0.25,
    theta: float = DEFAULT_THETA,
    k_min_frac: float = 0.02,
    k_max_frac: float = 0.25,
    boot_b: int = 500,
    level: float = 0.95,
) -> CellSummary:
    """Run one grid cell: per replicate, draw a censored sample of size n,
    estimate the mean with stability-selected k, bootstrap the interval,
    and aggregate.  Replicates on which the estimator or its bootstrap is
    undefined are counted in ``failures`` and excluded from aggregates."""
    family = Family(family)
    gamma2 = gamma2_for(gamma1, p)
    x_model = ModelSpec(family, gamma1, eta)
    y_model = ModelSpec(family, gamma2, eta)
    mu = true_mean(x_model)
    k_min, k_max = _k_range(n, k_min_frac, k_max_frac)
    cell_key = (_FAMILY_CODE[family], scaled_key(gamma1), scaled_key(eta), scaled_key(p), n)

    mus, lowers, uppers, kstars = [], [], [], []
    failures = 0
    for r in range(replicates):
        draw_rng = substream(seed, *cell_key, r, 0)
        x = sample(x_model, n, draw_rng)
        y = sample(y_model, n, draw_rng)
        s = censor(x, y)
        try:
            est = mu_hat(s, "auto", theta=theta, k_min=k_min, k_max=k_max)
            boot = bootstrap_mu(
                s,
                boot_b,
                k=est.tail.k,
                level=level,
                rng=substream(seed, *cell_key, r, 1),
            )
        except EstimationError:
            failures += 1
            continue
        mus.append(est.mu_hat)
        lowers.append(boot.ci_lower)
        uppers.append(boot.ci_upper)
        kstars.append(est.tail.k)

    if mus:
        mus_a = np.asarray(mus)
        lo_a = np.asarray(lowers)
        hi_a = np.asarray(uppers)
        mu_mean = float(np.mean(mus_a))
        summary = dict(
            mu_hat_mean=mu_mean,
            abs_bias=abs(mu_mean - mu),
            mse=float(np.mean((mus_a - mu) ** 2)),
            ci_mean_lower=float(np.mean(lo_a)),
            ci_mean_upper=float(np.mean(hi_a)),
            cov_prob=float(np.mean((lo_a <= mu) & (mu <= hi_a))),
            ci_length_mean=float(np.mean(hi_a - lo_a)),
            k_star_mean=float(np.mean(kstars)),
        )
    else:
        summary = dict(
            mu_hat_mean=math.nan,
            abs_bias=math.nan,
            mse=math.nan,
            ci_mean_lower=math.nan,
            ci_mean_upper=math.nan,
            cov_prob=math.nan,
            ci_length_mean=math.nan,
            k_star_mean=math.nan,
        )
    return CellSummary(
        family=family,
        gamma1=gamma1,
        gamma2=gamma2,
        p=p,
        n=n,
        mu_true=mu,
        failures=failures,
        **summary,
    )


def _cell_args(config: GridConfig):
    for gamma1 in config.gamma1_list:
        for p in config.p_list:
            for n in config.n_list:
                yield dict(
                    family=config.family,
                    gamma1=gamma1,
                    p=p,
                    n=n,
                    replicates=config.replicates,
                    seed=config.seed,
                    eta=config.eta,
                    theta=config.theta,
                    k_min_frac=config.k_min_frac,
                    k_max_frac=config.k_max_frac,
                    boot_b=config.boot_b,
                    level=config.level,
                )


def _run_cell_kwargs(kwargs: dict) -> CellSummary:
    return run_cell(**kwargs)


def run_grid(config: GridConfig, threads: int = 1, progress=None) -> list[CellSummary]:
    """Run every cell of the grid (gamma1 x p x n, in that nesting order).

    Results are independent of ``threads``: every replicate stream is keyed
    by (seed, cell, replicate), so the schedule cannot change the numbers.
    ``progress``, if given, is called with a status line per finished cell.
    """
    cells = list(_cell_args(config))
    summaries: list[CellSummary] = []
    if threads <= 1:
        runs = map(_run_cell_kwargs, cells)
    else:
        pool = ProcessPoolExecutor(max_workers=threads)
        runs = pool.map(_run_cell_kwargs, cells, chunksize=1)
    for i, summary in enumerate(runs):
        summaries.append(summary)
        if progress is not None:
            tag = "FAILED" if summary.all_failed else f"mu_hat={summary.mu_hat_mean:.3f}"
            progress(
                f"[{i + 1}/{len(cells)}] {summary.family.value} gamma1={summary.gamma1} "
                f"p={summary.p} n={summary.n}: {tag} ({summary.failures} failed replicates)"
            )
    if threads > 1:
        pool.shutdown()
    return summaries


@dataclass(frozen=True)
class CLTResult:
    """Standardized estimation errors across replicates and their
    normality diagnostics."""

    scores: np.ndarray
    normality_stat: float
    critical_1pct: float
    skewness: float
    kurtosis: float
    failures: int

    @property
    def passes_1pct(self) -> bool:
        """Whether the fitted-normal Anderson-Darling test accepts at 1%."""
        return self.normality_stat < self.critical_1pct


def clt_experiment(
    family,
    gamma1: float,
    p: float,
    n: int,
    replicates: int,
    seed: int,
    *,
    k: int | None = None,
    eta: float = 0.25,
) -> CLTResult:
    """Collect sqrt(k) * (estimate - mean) / (threshold * survival-product)
    across replicates and test it for normality.

    ``k`` defaults to floor(n**0.55), a deterministic sequence that grows
    slower than n as the limit theory requires.
    """
    family = Family(family)
    gamma2 = gamma2_for(gamma1, p)
    x_model = ModelSpec(family, gamma1, eta)
    y_model = ModelSpec(family, gamma2, eta)
    mu = true_mean(x_model)
    if k is None:
        k = int(n**0.55)
    if not 2 <= k <= n - 2:
        raise DomainError(f"k must satisfy 2 <= k <= n-2, got k={k}, n={n}")
    cell_key = (_FAMILY_CODE[family], scaled_key(gamma1), scaled_key(eta), scaled_key(p), n)

    scores = []
    failures = 0
    for r in range(replicates):
        rng = substream(seed, *cell_key, r, 2)
        x = sample(x_model, n, rng)
        y = sample(y_model, n, rng)
        s = censor(x, y)
        try:
            est = mu_hat(s, k)
        except EstimationError:
            failures += 1
            continue
        m = n - k
        denom = s.z[m - 1] * km_survival_product(s, m)
        scores.append(math.sqrt(k) * (est.mu_hat - mu) / denom)

    scores_a = np.asarray(scores)
    ad = stats.anderson(scores_a, dist="norm")
    return CLTResult(
        scores=scores_a,
        normality_stat=float(ad.statistic),
        critical_1pct=float(ad.critical_values[-1]),
        skewness=float(stats.skew(scores_a)),
        kurtosis=float(stats.kurtosis(scores_a)),
        failures=failures,
    )


@dataclass(frozen=True)
class ThresholdRatioResult:
    """Empirical law of sqrt(k) * (F_n-bar/F-bar - 1) at the threshold."""

    variance: float
    mean: float
    statistics: np.ndarray


def proposition1_experiment(
    design: CensoringDesign,
    n: int,
    replicates: int,
    seed: int,
    *,
    k: int | None = None,
) -> ThresholdRatioResult:
    """Sample the normalized product-limit survival ratio at the threshold
    order statistic for an exact Pareto/Pareto pair, where the true
    survival is known in closed form.  Its limit law is centered normal
    with variance p."""
    if k is None:
        k = int(math.isqrt(n))
    if not 2 <= k <= n - 1:
        raise DomainError(f"k must satisfy 2 <= k <= n-1, got k={k}, n={n}")
    x_model = ModelSpec(Family.PARETO, design.gamma1)
    y_model = ModelSpec(Family.PARETO, design.gamma2)
    key = (scaled_key(design.gamma1), scaled_key(design.gamma2), n, k)

    statistics = np.empty(replicates)
    for r in range(replicates):
        rng = substream(seed, *key, r, 3)
        x = sample(x_model, n, rng)
        y = sample(y_model, n, rng)
        s = censor(x, y)
        m = n - k
        fn_bar = km_survival_product(s, m)
        f_bar = survival(x_model, s.z[m - 1])
        statistics[r] = math.sqrt(k) * (fn_bar / f_bar - 1.0)

    return ThresholdRatioResult(
        variance=float(np.var(statistics, ddof=1)),
        mean=float(np.mean(statistics)),
        statistics=statistics,
    )


def _csv_value(value) -> str:
    if isinstance(value, Family):
        return value.value
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_tables(summaries: list[CellSummary], format: str = "csv", path=None) -> None:
    """Write cell summaries to ``path``.

    CSV keeps full float precision so a written table parses back to the
    exact same summaries; markdown mirrors the per-(gamma1, p) block layout
    of a simulation report with 3-decimal formatting.
    """
    if not summaries:
        raise DomainError("no summaries to write")
    if format == "csv":
        _write_csv(summaries, path)
    elif format == "markdown":
        _write_markdown(summaries, path)
    else:
        raise DomainError(f"format must be 'csv' or 'markdown', got {format!r}")


def _row_values(s: CellSummary) -> list:
    return [
        s.family,
        s.gamma1,
        s.gamma2,
        s.p,
        s.n,
        s.mu_true,
        s.mu_hat_mean,
        s.abs_bias,
        s.mse,
        s.ci_mean_lower,
        s.ci_mean_upper,
        s.cov_prob,
        s.ci_length_mean,
        s.failures,
        s.k_star_mean,
    ]


def _write_csv(summaries: list[CellSummary], path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for s in summaries:
            writer.writerow([_csv_value(v) for v in _row_values(s)])


def read_summaries_csv(path) -> list[CellSummary]:
    """Parse a CSV written by write_tables back into summaries."""
    out = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != CSV_COLUMNS:
            raise ConfigError(f"{path}: unexpected columns {reader.fieldnames}")
        for rec in reader:
            out.append(
                CellSummary(
                    family=Family(rec["family"]),
                    gamma1=float(rec["gamma1"]),
                    gamma2=float(rec["gamma2"]),
                    p=float(rec["p"]),
                    n=int(rec["n"]),
                    mu_true=float(rec["mu_true"]),
                    mu_hat_mean=float(rec["mu_hat"]),
                    abs_bias=float(rec["abs_bias"]),
                    mse=float(rec["mse"]),
                    ci_mean_lower=float(rec["ci_lower"]),
                    ci_mean_upper=float(rec["ci_upper"]),
                    cov_prob=float(rec["cov_prob"]),
                    ci_length_mean=float(rec["length"]),
                    failures=int(rec["failures"]),
                    k_star_mean=float(rec["k_star_mean"]),
                )
            )
    return out


def _write_markdown(summaries: list[CellSummary], path) -> None:
    blocks: dict[tuple, list[CellSummary]] = {}
    for s in summaries:
        blocks.setdefault((s.family, s.gamma1, s.p), []).append(s)
    lines = []
    for (family, gamma1, p), cells in blocks.items():
        mu = cells[0].mu_true
        lines.append(f"### {family.value} gamma1={gamma1:g} (mu={mu:.3f}), p={p:.2f}")
        lines.append("")
        lines.append("| n | mu_hat | abs bias | mse | conf int | cov prob | length |")
        lines.append("|---|--------|----------|-----|----------|----------|--------|")
        for c in sorted(cells, key=lambda c: c.n):
            lines.append(
                f"| {c.n} | {c.mu_hat_mean:.3f} | {c.abs_bias:.3f} | {c.mse:.3f} "
                f"| {c.ci_mean_lower:.3f}-{c.ci_mean_upper:.3f} "
                f"| {c.cov_prob:.2f} | {c.ci_length_mean:.3f} |"
            )
        lines.append("")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines))


def config_from_mapping(mapping: dict) -> GridConfig:
    """Build a GridConfig from a flat key-value mapping, rejecting unknown
    keys (typo safety for config files)."""
    known = {f.name for f in fields(GridConfig)}
    unknown = set(mapping) - known
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    missing = {"family", "gamma1_list", "p_list", "n_list"} - set(mapping)
    if missing:
        raise ConfigError(f"missing required config keys: {sorted(missing)}")
    try:
        return GridConfig(**mapping)
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from None
