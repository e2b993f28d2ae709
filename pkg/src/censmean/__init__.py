"""censmean: mean estimation for heavy-tailed, randomly right-censored data.

The classical Kaplan-Meier mean loses its central limit theorem when both
the censored and the censoring distributions are heavy-tailed enough.  This
package implements the extreme-value-corrected estimator for that regime:
the sample mean below a data-driven threshold is combined with a Karamata
tail estimate driven by the censoring-adapted Hill tail index, together
with bootstrap confidence intervals and a Monte Carlo harness for studying
the estimator's behavior over parameter grids.
"""

__version__ = "0.1.0"

from .bootstrap import BootstrapResult, bootstrap_mu
from .censoring import CensoredSample, censor, load_csv, load_sample, save_csv
from .errors import (
    AllCensoredTailError,
    CensMeanError,
    ConfigError,
    DegenerateDesignError,
    DomainError,
    EstimateDivergedError,
    EstimationError,
    InfiniteMeanError,
    ParseError,
    SelectionError,
    ShapeError,
    UnreliableBootstrapError,
)
from .estimator import (
    AsymptoticParams,
    MeanEstimate,
    asymptotic_mean_shift,
    mu1_hat,
    mu2_hat,
    mu_hat,
)
from .harness import (
    CellSummary,
    CLTResult,
    GridConfig,
    ThresholdRatioResult,
    clt_experiment,
    proposition1_experiment,
    read_summaries_csv,
    run_cell,
    run_grid,
    write_tables,
)
from .models import (
    CensoringDesign,
    Family,
    ModelSpec,
    censoring_quantities,
    gamma2_for,
    pareto_pair_curves,
    quantile,
    sample,
    stute_applicable,
    survival,
    true_mean,
)
from .streams import substream
from .survival import KMCurve, km_curve, km_mean, km_survival_product, km_weights
from .tail import TailEstimate, gamma1_hat, hill, k_star_trace, p_hat, select_k_star, tail_estimate

__all__ = [
    "__version__",
    # models
    "Family",
    "ModelSpec",
    "CensoringDesign",
    "survival",
    "quantile",
    "sample",
    "true_mean",
    "censoring_quantities",
    "gamma2_for",
    "stute_applicable",
    "pareto_pair_curves",
    # censoring
    "CensoredSample",
    "censor",
    "load_sample",
    "load_csv",
    "save_csv",
    # survival
    "KMCurve",
    "km_weights",
    "km_survival_product",
    "km_mean",
    "km_curve",
    # tail
    "TailEstimate",
    "hill",
    "p_hat",
    "gamma1_hat",
    "tail_estimate",
    "select_k_star",
    "k_star_trace",
    # estimator
    "MeanEstimate",
    "AsymptoticParams",
    "mu1_hat",
    "mu2_hat",
    "mu_hat",
    "asymptotic_mean_shift",
    # bootstrap
    "BootstrapResult",
    "bootstrap_mu",
    # harness
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
    # infrastructure
    "substream",
    "CensMeanError",
    "DomainError",
    "ShapeError",
    "ParseError",
    "InfiniteMeanError",
    "DegenerateDesignError",
    "EstimationError",
    "AllCensoredTailError",
    "EstimateDivergedError",
    "SelectionError",
    "UnreliableBootstrapError",
    "ConfigError",
]
