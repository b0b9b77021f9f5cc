"""Order statistics of a unit-supported parent distribution.

The density of the ``i``-th smallest of ``n`` draws is

    n! / ((i-1)! (n-i)!) * F(y)**(i-1) * (1 - F(y))**(n-i) * f(y)

with the factorials replaced by gamma functions, so that ``i`` and ``n``
may be any reals with ``0 < i <= n``.  Applying it to the unit-power and
unit-Rayleigh parents produces the closed-form families of
:mod:`unitdist.families`; :func:`derive_family` records which selector gives
which family.

Transforming an inverse-Weibull or Rayleigh sample first and taking order
statistics afterwards yields the same families, because the unit
transforms are monotone.  Only the unit-parent route is implemented.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import ConstructionError, DomainError
from .families import DistributionSpec, quantile
from .specfun import log_gamma, reg_inc_beta


@dataclass(frozen=True)
class ParentDistribution:
    """A parent distribution on (0, 1) given by callables.

    Only ``pdf`` and ``cdf`` are required.  The optional log-space callables
    let a parent supply accurate logarithms (e.g. ``log(1 - F)`` near 1);
    when absent they are derived from ``pdf`` and ``cdf``.
    """

    pdf: Callable
    cdf: Callable
    log_pdf: Optional[Callable] = None
    log_cdf: Optional[Callable] = None
    log_sf: Optional[Callable] = None
    quantile: Optional[Callable] = None

    def logpdf_at(self, y):
        if self.log_pdf is not None:
            return self.log_pdf(y)
        return np.log(self.pdf(y))

    def logcdf_at(self, y):
        if self.log_cdf is not None:
            return self.log_cdf(y)
        return np.log(self.cdf(y))

    def logsf_at(self, y):
        if self.log_sf is not None:
            return self.log_sf(y)
        return np.log1p(-np.asarray(self.cdf(y)))


@dataclass(frozen=True)
class OrderSelector:
    """Rank ``i`` within a sample of size ``n``; both may be non-integer."""

    i: float
    n: float

    def __post_init__(self):
        i, n = float(self.i), float(self.n)
        if not (math.isfinite(i) and math.isfinite(n)) or i <= 0 or n < i:
            raise DomainError(f"order selector requires 0 < i <= n, got i={i}, n={n}")
        object.__setattr__(self, "i", i)
        object.__setattr__(self, "n", n)

    @property
    def is_integer(self):
        return self.i.is_integer() and self.n.is_integer()


PARENT_TAGS = ("unit-power", "unit-rayleigh")


def unit_parent(tag, param):
    """Build the unit-power(beta) or unit-Rayleigh(alpha) parent.

    Both parents have ``F(y) = y**s`` (``s = beta`` or ``1/alpha**2``), so the
    log-CDF and log-survival are exact in log space.
    """
    if tag not in PARENT_TAGS:
        raise DomainError(f"parent must be one of {PARENT_TAGS}, got {tag!r}")
    spec = DistributionSpec(tag, (param,))
    s = param if tag == "unit-power" else 1.0 / param**2

    def _log_cdf(y):
        return s * np.log(y)

    def _log_sf(y):
        return np.log(-np.expm1(s * np.log(y)))

    return ParentDistribution(
        pdf=spec.pdf,
        cdf=spec.cdf,
        log_pdf=spec.log_pdf,
        log_cdf=_log_cdf,
        log_sf=_log_sf,
        quantile=spec.quantile,
    )


def _log_coefficient(sel):
    return log_gamma(sel.n + 1.0) - log_gamma(sel.i) - log_gamma(sel.n - sel.i + 1.0)


def order_stat_log_pdf(parent, sel, y):
    """Log density of the ``sel.i``-th order statistic out of ``sel.n``."""
    arr = np.asarray(y, dtype=float)
    if not np.all((arr > 0.0) & (arr < 1.0)):
        raise DomainError("order-statistic density arguments must lie strictly inside (0, 1)")
    out = _log_coefficient(sel) + parent.logpdf_at(arr)
    if sel.i != 1.0:
        out = out + (sel.i - 1.0) * parent.logcdf_at(arr)
    if sel.n != sel.i:
        out = out + (sel.n - sel.i) * parent.logsf_at(arr)
    return float(out) if np.ndim(y) == 0 else np.asarray(out)


def order_stat_pdf(parent, sel, y):
    """Density of the ``sel.i``-th order statistic out of ``sel.n``."""
    out = np.exp(order_stat_log_pdf(parent, sel, y))
    return float(out) if np.ndim(y) == 0 else out


def order_stat_cdf(parent, sel, y):
    """Distribution function ``I_{F(y)}(i, n - i + 1)`` of the order statistic."""
    arr = np.asarray(y, dtype=float)
    if not np.all((arr >= 0.0) & (arr <= 1.0)):
        raise DomainError("order-statistic CDF arguments must lie in [0, 1]")
    inner = np.clip(np.asarray(parent.cdf(arr), dtype=float), 0.0, 1.0)
    return reg_inc_beta(inner, sel.i, sel.n - sel.i + 1.0)


def derive_family(parent_tag, parent_param, sel):
    """Closed-form family produced by an order statistic of a unit parent.

    ======================  ===========================  ==========================
    parent                  selector                     result
    ======================  ===========================  ==========================
    unit-power(beta)        i = 1, n                     kumaraswamy(n, beta)
    unit-power(beta)        i = n                        fatima1(n, beta)
    unit-power(beta)        any other i <= n             fatima2(n, beta, i)
    unit-rayleigh(alpha)    i = 1, n                     fatima3(alpha, n)
    unit-rayleigh(alpha)    i = n                        fatima4(alpha, n)
    unit-rayleigh(alpha)    i = 2, n = 3                 fatima5(alpha)
    unit-rayleigh(alpha)    i = (n + 1) / 2, odd n       fatima7(alpha, n)
    ======================  ===========================  ==========================

    Rows are tried top to bottom.  Any other unit-Rayleigh selector raises
    :class:`ConstructionError`; :func:`order_stat_pdf` still evaluates it
    numerically.
    """
    if not isinstance(sel, OrderSelector):
        sel = OrderSelector(*sel)
    i, n = sel.i, sel.n
    if parent_tag == "unit-power":
        if i == 1.0:
            return DistributionSpec("kumaraswamy", (n, parent_param))
        if i == n:
            return DistributionSpec("fatima1", (n, parent_param))
        return DistributionSpec("fatima2", (n, parent_param, i))
    if parent_tag == "unit-rayleigh":
        if i == 1.0:
            return DistributionSpec("fatima3", (parent_param, n))
        if i == n:
            return DistributionSpec("fatima4", (parent_param, n))
        if i == 2.0 and n == 3.0:
            return DistributionSpec("fatima5", (parent_param,))
        if n.is_integer() and int(n) % 2 == 1 and i == (n + 1.0) / 2.0:
            return DistributionSpec("fatima7", (parent_param, n))
        raise ConstructionError(
            f"no closed-form family for unit-rayleigh with i={i:g}, n={n:g}"
        )
    raise ConstructionError(f"unknown parent {parent_tag!r}; expected one of {PARENT_TAGS}")


def sample_parent(tag, param, u):
    """Map uniforms ``u`` to parent variates by inverse transform."""
    return quantile(DistributionSpec(tag, (param,)), u)
