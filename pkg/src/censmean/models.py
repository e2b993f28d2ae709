"""Heavy-tailed distribution families and censoring designs.

Three families are supported, each parameterized so that ``gamma`` is the
tail index of the survival function (survival(x) ~ x**(-1/gamma) up to
slowly varying factors):

* Pareto:  survival(x) = x**(-1/gamma) on [1, inf)
* Frechet: cdf(x) = exp(-x**(-1/gamma)) on [0, inf)
* Burr:    survival(x) = (1 + x**(1/eta))**(-eta/gamma) on [0, inf)

A :class:`CensoringDesign` pairs the tail index ``gamma1`` of the variable
of interest with the tail index ``gamma2`` of the censoring variable.  The
observed minimum then has tail index gamma1*gamma2/(gamma1+gamma2), and the
asymptotic proportion of uncensored extremes is p = gamma2/(gamma1+gamma2).
"""

from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np
from scipy import special

from .errors import DegenerateDesignError, DomainError, InfiniteMeanError

__all__ = [
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
    "ParetoPairCurves",
]


class Family(str, Enum):
    PARETO = "pareto"
    FRECHET = "frechet"
    BURR = "burr"


@dataclass(frozen=True)
class ModelSpec:
    """One heavy-tailed marginal: a family, its tail index, and (for Burr)
    the second shape parameter ``eta``."""

    family: Family
    gamma: float
    eta: float = 0.25

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        if not self.gamma > 0:
            raise DomainError(f"gamma must be positive, got {self.gamma}")
        if self.family is Family.BURR and not self.eta > 0:
            raise DomainError(f"eta must be positive for Burr, got {self.eta}")

    @property
    def lower_support(self) -> float:
        return 1.0 if self.family is Family.PARETO else 0.0


def survival(model: ModelSpec, x):
    """Survival function P(X > x); accepts a scalar or an array.

    Raises DomainError for x below the lower support.
    """
    arr = np.asarray(x, dtype=float)
    if np.any(arr < model.lower_support):
        raise DomainError(
            f"x below the lower support {model.lower_support} of {model.family.value}"
        )
    g = model.gamma
    with np.errstate(divide="ignore"):
        if model.family is Family.PARETO:
            out = arr ** (-1.0 / g)
        elif model.family is Family.FRECHET:
            out = 1.0 - np.exp(-(arr ** (-1.0 / g)))
        else:
            out = (1.0 + arr ** (1.0 / model.eta)) ** (-model.eta / g)
    return out if isinstance(out, np.ndarray) and out.ndim else float(out)


def quantile(model: ModelSpec, u):
    """Inverse cdf at u in (0, 1); accepts a scalar or an array."""
    arr = np.asarray(u, dtype=float)
    if np.any(arr <= 0.0) or np.any(arr >= 1.0):
        raise DomainError("u must lie strictly inside (0, 1)")
    g = model.gamma
    if model.family is Family.PARETO:
        out = (1.0 - arr) ** (-g)
    elif model.family is Family.FRECHET:
        out = (-np.log(arr)) ** (-g)
    else:
        out = ((1.0 - arr) ** (-g / model.eta) - 1.0) ** model.eta
    return out if isinstance(out, np.ndarray) and out.ndim else float(out)


def sample(model: ModelSpec, n: int, rng: np.random.Generator) -> np.ndarray:
    """Draw n i.i.d. values by inverse transform from the given stream."""
    if n < 1:
        raise DomainError(f"sample size must be >= 1, got {n}")
    u = rng.random(n)
    # rng.random may return exactly 0, which sits outside the quantile domain
    np.maximum(u, np.finfo(float).tiny, out=u)
    return np.asarray(quantile(model, u))


def true_mean(model: ModelSpec) -> float:
    """Exact mean of the family; requires gamma < 1."""
    g = model.gamma
    if g >= 1.0:
        raise InfiniteMeanError(f"mean is infinite for gamma={g} >= 1")
    if model.family is Family.PARETO:
        return 1.0 / (1.0 - g)
    if model.family is Family.FRECHET:
        return float(special.gamma(1.0 - g))
    eta = model.eta
    return float(eta * special.beta(eta, eta * (1.0 - g) / g))


@dataclass(frozen=True)
class CensoringDesign:
    """Tail indices of the censored variable X (gamma1) and the censoring
    variable Y (gamma2)."""

    gamma1: float
    gamma2: float

    def __post_init__(self):
        if not (self.gamma1 > 0 and self.gamma2 > 0):
            raise DomainError("both tail indices must be positive")

    @property
    def p(self) -> float:
        """Asymptotic proportion of uncensored extreme observations."""
        return self.gamma2 / (self.gamma1 + self.gamma2)

    @property
    def gamma(self) -> float:
        """Tail index of the observed minimum Z = min(X, Y)."""
        return self.gamma1 * self.gamma2 / (self.gamma1 + self.gamma2)


def censoring_quantities(design: CensoringDesign) -> tuple[float, float]:
    """Return (p, gamma) for the design."""
    return design.p, design.gamma


def gamma2_for(gamma1: float, p: float) -> float:
    """Solve p = gamma2/(gamma1+gamma2) for gamma2."""
    if not gamma1 > 0:
        raise DomainError("gamma1 must be positive")
    if not 0.0 < p < 1.0:
        raise DegenerateDesignError(f"p must lie strictly inside (0, 1), got {p}")
    return p * gamma1 / (1.0 - p)


def stute_applicable(design: CensoringDesign) -> bool:
    """Whether the classical CLT for the Kaplan-Meier mean applies.

    Returns False exactly when gamma2/(1+2*gamma2) < gamma1 < 1, the region
    where the required second-moment integrals diverge and the tail-corrected
    estimator is needed instead.
    """
    if design.gamma1 >= 1.0:
        raise InfiniteMeanError("gamma1 >= 1: the mean itself is infinite")
    return not (design.gamma1 > design.gamma2 / (1.0 + 2.0 * design.gamma2))


class ParetoPairCurves(NamedTuple):
    z_survival: float
    censored_subcdf: float
    uncensored_subcdf: float
    exp_transform: float


def pareto_pair_curves(design: CensoringDesign, x) -> ParetoPairCurves:
    """Closed-form observation curves for an exact Pareto/Pareto pair.

    For x >= 1 returns the survival of Z = min(X, Y), the sub-cdfs
    P(Z <= x, censored) and P(Z <= x, uncensored), and the exponential
    integral transform exp(int_0^x dH0/Hbar) = x**(1/gamma2).
    """
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 1.0):
        raise DomainError("x must be >= 1 for the Pareto/Pareto pair")
    g = design.gamma
    z_surv = arr ** (-1.0 / g)
    body = 1.0 - z_surv
    h0 = g * body / design.gamma2
    h1 = g * body / design.gamma1
    gamma0 = arr ** (1.0 / design.gamma2)
    if isinstance(z_surv, np.ndarray) and z_surv.ndim:
        return ParetoPairCurves(z_surv, h0, h1, gamma0)
    return ParetoPairCurves(float(z_surv), float(h0), float(h1), float(gamma0))
