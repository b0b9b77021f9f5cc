"""Goodness-of-fit statistics, information criteria and descriptive statistics."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import NamedTuple

import numpy as np

from .dataset import as_dataset
from .errors import DegenerateDataError, DomainError, TailOverflowError
from .families import PARAM_NAMES, DistributionSpec, canonical_family, cdf

# Table-compatible parameter counts: the published fatima2 criteria were
# computed as if the model had two free parameters.
PAPER_K = {"fatima2": 2}


class InformationCriteria(NamedTuple):
    aic: float
    caic: float
    bic: float
    hqic: float


@dataclass(frozen=True)
class GofReport:
    log_lik: float
    k: int
    n: int
    aic: float
    caic: float
    bic: float
    hqic: float
    ks: float
    ks_pvalue: float
    cvm: float
    ad: float
    reject_at_5pct: bool

    @property
    def decision(self):
        return "Reject" if self.reject_at_5pct else "Fail to reject"

    def as_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class DescriptiveStats:
    n: int
    min: float
    max: float
    mean: float
    std_dev: float
    skewness: float
    kurtosis: float
    q25: float
    median: float
    q75: float

    def as_dict(self):
        return asdict(self)


def information_criteria(log_lik, k, n):
    """AIC, corrected AIC, BIC and Hannan-Quinn criterion.

    ``caic`` is the small-sample corrected AIC ``aic + 2k(k+1)/(n-k-1)``;
    requires ``n > k + 1``.
    """
    k, n = int(k), int(n)
    if k < 1 or n <= k + 1:
        raise DomainError(f"information criteria need k >= 1 and n > k + 1 (k={k}, n={n})")
    aic = 2.0 * k - 2.0 * log_lik
    caic = aic + 2.0 * k * (k + 1) / (n - k - 1)
    bic = k * math.log(n) - 2.0 * log_lik
    hqic = 2.0 * k * math.log(math.log(n)) - 2.0 * log_lik
    return InformationCriteria(aic, caic, bic, hqic)


def _sorted_probabilities(data, model_cdf):
    y = np.sort(as_dataset(data).array)
    if isinstance(model_cdf, DistributionSpec):
        spec = model_cdf
        model_cdf = lambda v: cdf(spec, v)  # noqa: E731
    return np.asarray(model_cdf(y), dtype=float)


def ks_statistic(data, model_cdf):
    """One-sample Kolmogorov-Smirnov distance to a model CDF.

    ``model_cdf`` is a vectorized callable or a :class:`DistributionSpec`.
    """
    u = _sorted_probabilities(data, model_cdf)
    n = u.size
    k = np.arange(1, n + 1)
    return float(max(np.max(k / n - u), np.max(u - (k - 1) / n)))


def ks_pvalue(d, n):
    """Asymptotic Kolmogorov p-value with Stephens' small-sample scaling.

    ``Q(lam) = 2 * sum_{j>=1} (-1)**(j-1) exp(-2 j**2 lam**2)`` with
    ``lam = (sqrt(n) + 0.12 + 0.11/sqrt(n)) * d``, clamped to [0, 1].
    """
    d = float(d)
    if not 0.0 <= d <= 1.0:
        raise DomainError(f"KS distance must lie in [0, 1], got {d}")
    rn = math.sqrt(n)
    lam = (rn + 0.12 + 0.11 / rn) * d
    if lam < 1e-3:
        return 1.0
    total = 0.0
    for j in range(1, 1001):
        term = math.exp(-2.0 * j * j * lam * lam)
        total += term if j % 2 else -term
        if term < 1e-12:
            break
    return min(1.0, max(0.0, 2.0 * total))


def cvm_statistic(data, model_cdf):
    """Cramer-von Mises ``W^2 = 1/(12n) + sum (F(y_(k)) - (2k-1)/(2n))^2``."""
    u = _sorted_probabilities(data, model_cdf)
    n = u.size
    k = np.arange(1, n + 1)
    return float(1.0 / (12.0 * n) + np.sum((u - (2 * k - 1) / (2.0 * n)) ** 2))


def ad_statistic(data, model_cdf):
    """Anderson-Darling ``A^2``.

    Raises :class:`TailOverflowError` when a fitted probability is exactly 0
    or 1, which would make the statistic infinite.
    """
    u = _sorted_probabilities(data, model_cdf)
    if np.any(u <= 0.0) or np.any(u >= 1.0):
        raise TailOverflowError("a model probability is 0 or 1; Anderson-Darling is infinite")
    n = u.size
    k = np.arange(1, n + 1)
    return float(-n - np.sum((2 * k - 1) * (np.log(u) + np.log1p(-u[::-1]))) / n)


def _table_quantile(sorted_y, p):
    # position h = n p + 1/2 with linear interpolation, clamped to the sample range
    n = sorted_y.size
    h = n * p + 0.5
    if h <= 1.0:
        return float(sorted_y[0])
    if h >= n:
        return float(sorted_y[-1])
    lo = int(math.floor(h))
    frac = h - lo
    return float((1.0 - frac) * sorted_y[lo - 1] + frac * sorted_y[lo])


def descriptive(data):
    """Summary statistics of a dataset.

    The standard deviation uses divisor ``n - 1``.  Skewness and kurtosis
    are the bias-corrected sample estimators (kurtosis is not in excess
    form), so a normal sample gives roughly 0 and 3; they need at least 3
    and 4 observations respectively and are NaN below that.  Quartiles use
    position ``h = n p + 1/2`` with linear interpolation.
    """
    y = as_dataset(data).array
    n = y.size
    if n < 2:
        raise DomainError("descriptive statistics need at least two observations")
    mean = float(y.mean())
    dev = y - mean
    m2 = float(np.mean(dev**2))
    if m2 == 0.0:
        raise DegenerateDataError("all observations are identical; skewness and kurtosis undefined")
    m3 = float(np.mean(dev**3))
    m4 = float(np.mean(dev**4))
    g1 = m3 / m2**1.5
    g2 = m4 / m2**2 - 3.0
    skew = g1 * math.sqrt(n * (n - 1)) / (n - 2) if n > 2 else math.nan
    kurt = 3.0 + (n - 1) / ((n - 2) * (n - 3)) * ((n + 1) * g2 + 6.0) if n > 3 else math.nan
    ys = np.sort(y)
    return DescriptiveStats(
        n=n,
        min=float(ys[0]),
        max=float(ys[-1]),
        mean=mean,
        std_dev=float(y.std(ddof=1)),
        skewness=skew,
        kurtosis=kurt,
        q25=_table_quantile(ys, 0.25),
        median=_table_quantile(ys, 0.5),
        q75=_table_quantile(ys, 0.75),
    )


def parameter_count(family, k=None, paper_k=False):
    """Parameter count used for the criteria: explicit ``k``, table value, or true count."""
    family = canonical_family(family)
    if k is not None:
        return int(k)
    if paper_k and family in PAPER_K:
        return PAPER_K[family]
    return len(PARAM_NAMES[family])


def gof_report(fit, data, k=None, paper_k=False, require_converged=True):
    """Assemble every fit statistic for one fitted family.

    Parameters
    ----------
    fit : FitResult
    data : Dataset or array_like
    k : int, optional
        Override for the parameter count in the information criteria.
    paper_k : bool
        Use the published tables' parameter counts (fatima2 counted as 2).
    require_converged : bool
        Refuse to score a fit whose optimizer did not converge.
    """
    if require_converged and not fit.converged:
        raise DomainError(f"{fit.family} fit did not converge; pass require_converged=False")
    data = as_dataset(data)
    kk = parameter_count(fit.family, k, paper_k)
    crit = information_criteria(fit.log_lik, kk, data.n)
    ks = ks_statistic(data, fit.spec)
    p = ks_pvalue(ks, data.n)
    return GofReport(
        log_lik=fit.log_lik,
        k=kk,
        n=data.n,
        aic=crit.aic,
        caic=crit.caic,
        bic=crit.bic,
        hqic=crit.hqic,
        ks=ks,
        ks_pvalue=p,
        cvm=cvm_statistic(data, fit.spec),
        ad=ad_statistic(data, fit.spec),
        reject_at_5pct=p < 0.05,
    )
