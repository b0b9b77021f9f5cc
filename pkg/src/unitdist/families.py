"""Catalogue of unit-interval distribution families.

Each family is evaluated in log space straight from its closed-form density.
Every family is also a power of a Beta variate, ``Y = B**c`` with
``B ~ Beta(a, b)``.  :func:`to_power_beta` returns that representation, and
it gives distribution functions and quantiles for the families that have no
elementary closed form.

Parameter order per family:

=================  =====================
``unit-power``     ``(beta,)``
``unit-rayleigh``  ``(alpha,)``
``kumaraswamy``    ``(alpha, beta)``; ``beta`` is the inner exponent
``fatima1``        ``(alpha, beta)``
``fatima2``        ``(alpha, beta, i)``
``fatima3``        ``(alpha, beta)``
``fatima4``        ``(alpha, beta)``
``fatima5``        ``(alpha,)``; alias ``mbur``
``fatima6``        ``(alpha, n)``
``fatima7``        ``(alpha, n)``
``beta``           ``(a, b)``
=================  =====================
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, TailOverflowError
from .specfun import inv_reg_inc_beta, log_beta, log_gamma, reg_inc_beta

PARAM_NAMES = {
    "unit-power": ("beta",),
    "unit-rayleigh": ("alpha",),
    "kumaraswamy": ("alpha", "beta"),
    "fatima1": ("alpha", "beta"),
    "fatima2": ("alpha", "beta", "i"),
    "fatima3": ("alpha", "beta"),
    "fatima4": ("alpha", "beta"),
    "fatima5": ("alpha",),
    "fatima6": ("alpha", "n"),
    "fatima7": ("alpha", "n"),
    "beta": ("a", "b"),
}
FAMILY_NAMES = tuple(PARAM_NAMES)
ALIASES = {"mbur": "fatima5"}

# Families whose quantile function is elementary.
CLOSED_QUANTILE = frozenset(
    {"unit-power", "unit-rayleigh", "kumaraswamy", "fatima1", "fatima3", "fatima4"}
)


def canonical_family(name):
    """Resolve a family name or alias to its registered spelling."""
    key = str(name).strip().lower()
    key = ALIASES.get(key, key)
    if key not in PARAM_NAMES:
        known = ", ".join(FAMILY_NAMES + tuple(ALIASES))
        raise DomainError(f"unknown distribution family {name!r}; registered names: {known}")
    return key


def _constraint_violation(family, p):
    """Return a message naming the violated constraint, or None."""
    if any(not math.isfinite(v) for v in p):
        return f"{family} parameters must be finite"
    names = PARAM_NAMES[family]
    if family == "fatima2":
        alpha, beta, i = p
        if beta <= 0:
            return "fatima2 requires beta > 0"
        if i <= 0:
            return "fatima2 requires i > 0"
        if alpha <= i - 1:
            return "fatima2 requires alpha > i - 1"
        return None
    if family == "fatima6":
        if p[0] <= 0:
            return "fatima6 requires alpha > 0"
        if p[1] < 0:
            return "fatima6 requires n >= 0"
        return None
    if family == "fatima7":
        if p[0] <= 0:
            return "fatima7 requires alpha > 0"
        if p[1] < 1:
            return "fatima7 requires n >= 1"
        return None
    for name, value in zip(names, p):
        if value <= 0:
            return f"{family} requires {name} > 0"
    return None


@dataclass(frozen=True)
class DistributionSpec:
    """A family tag together with a validated parameter vector.

    Instances are immutable; construction fails with :class:`DomainError`
    when the parameters violate the family's constraints.

    Examples
    --------
    >>> DistributionSpec("mbur", (0.4776,)).family
    'fatima5'
    """

    family: str
    params: tuple

    def __post_init__(self):
        family = canonical_family(self.family)
        params = tuple(float(v) for v in np.atleast_1d(self.params))
        names = PARAM_NAMES[family]
        if len(params) != len(names):
            raise DomainError(
                f"{family} takes {len(names)} parameter(s) ({', '.join(names)}), got {len(params)}"
            )
        problem = _constraint_violation(family, params)
        if problem:
            raise DomainError(problem)
        object.__setattr__(self, "family", family)
        object.__setattr__(self, "params", params)

    @classmethod
    def of(cls, family, *params):
        return cls(family, params)

    @property
    def param_names(self):
        return PARAM_NAMES[self.family]

    @property
    def k(self):
        """Number of free parameters."""
        return len(self.params)

    def as_dict(self):
        return dict(zip(self.param_names, self.params))

    def pdf(self, y):
        return pdf(self, y)

    def log_pdf(self, y):
        return log_pdf(self, y)

    def cdf(self, y):
        return cdf(self, y)

    def sf(self, y):
        return sf(self, y)

    def quantile(self, u):
        return quantile(self, u)

    def hazard(self, y):
        return hazard(self, y)

    def raw_moment(self, r):
        return raw_moment(self, r)


def is_valid(family, params):
    """True when ``params`` is admissible for ``family`` (no exception)."""
    family = canonical_family(family)
    params = tuple(float(v) for v in np.atleast_1d(params))
    return len(params) == len(PARAM_NAMES[family]) and _constraint_violation(family, params) is None


@dataclass(frozen=True)
class PowerBetaRep:
    """``Y = B**c`` with ``B ~ Beta(a, b)``."""

    a: float
    b: float
    c: float

    def __post_init__(self):
        for name in ("a", "b", "c"):
            v = float(getattr(self, name))
            if not (math.isfinite(v) and v > 0):
                raise DomainError(f"PowerBetaRep requires {name} > 0, got {v}")
            object.__setattr__(self, name, v)

    def log_pdf(self, y):
        logy = np.log(y)
        logw = logy / self.c
        return (
            (self.a - 1.0) * logw
            + (self.b - 1.0) * np.log(-np.expm1(logw))
            - log_beta(self.a, self.b)
            - math.log(self.c)
            + (1.0 / self.c - 1.0) * logy
        )

    def cdf(self, y):
        """Distribution function for ``y`` strictly inside (0, 1)."""
        return reg_inc_beta(np.exp(np.log(y) / self.c), self.a, self.b)

    def sf(self, y):
        # 1 - y**(1/c) formed with expm1 to avoid cancellation near y = 1
        return reg_inc_beta(-np.expm1(np.log(y) / self.c), self.b, self.a)

    def quantile(self, u):
        return inv_reg_inc_beta(u, self.a, self.b) ** self.c

    def raw_moment(self, r):
        return math.exp(log_beta(self.a + r * self.c, self.b) - log_beta(self.a, self.b))


def to_power_beta(spec):
    """Return the :class:`PowerBetaRep` of a distribution.

    ``Y**(1/c)`` follows ``Beta(a, b)`` for every family; for ``beta`` the
    exponent is 1.
    """
    f, p = spec.family, spec.params
    if f == "unit-power":
        return PowerBetaRep(1.0, 1.0, 1.0 / p[0])
    if f == "unit-rayleigh":
        return PowerBetaRep(1.0, 1.0, p[0] ** 2)
    if f == "kumaraswamy":
        return PowerBetaRep(1.0, p[0], 1.0 / p[1])
    if f == "fatima1":
        return PowerBetaRep(1.0, 1.0, 1.0 / (p[0] * p[1]))
    if f == "fatima2":
        alpha, beta, i = p
        return PowerBetaRep(i, alpha - i + 1.0, 1.0 / beta)
    if f == "fatima3":
        return PowerBetaRep(1.0, p[1], p[0] ** 2)
    if f == "fatima4":
        return PowerBetaRep(1.0, 1.0, p[0] ** 2 / p[1])
    if f == "fatima5":
        return PowerBetaRep(2.0, 2.0, p[0] ** 2)
    if f == "fatima6":
        return PowerBetaRep(p[1] + 1.0, p[1] + 1.0, p[0] ** 2)
    if f == "fatima7":
        half = (p[1] + 1.0) / 2.0
        return PowerBetaRep(half, half, p[0] ** 2)
    return PowerBetaRep(p[0], p[1], 1.0)


def _as_unit_open(y):
    arr = np.asarray(y, dtype=float)
    if not np.all((arr > 0.0) & (arr < 1.0)):
        raise DomainError("density arguments must lie strictly inside (0, 1)")
    return arr


def _as_unit_closed(y, what="argument"):
    arr = np.asarray(y, dtype=float)
    if not np.all((arr >= 0.0) & (arr <= 1.0)):
        raise DomainError(f"{what} must lie in [0, 1]")
    return arr


def _log1m_pow(logy, s):
    """``log(1 - y**s)`` given ``log y``; stable as y approaches 1."""
    return np.log(-np.expm1(s * logy))


def _xlogy_term(coef, log_term):
    # 0 * log(0) = 0 when an exponent vanishes
    return 0.0 if coef == 0.0 else coef * log_term


def _log_pdf_direct(spec, logy):
    f, p = spec.family, spec.params
    if f == "unit-power":
        (beta,) = p
        return math.log(beta) + (beta - 1.0) * logy
    if f == "unit-rayleigh":
        (alpha,) = p
        s = 1.0 / alpha**2
        return math.log(s) + (s - 1.0) * logy
    if f == "kumaraswamy":
        alpha, beta = p
        return (
            math.log(alpha)
            + math.log(beta)
            + (beta - 1.0) * logy
            + _xlogy_term(alpha - 1.0, _log1m_pow(logy, beta))
        )
    if f == "fatima1":
        alpha, beta = p
        return math.log(alpha) + math.log(beta) + (alpha * beta - 1.0) * logy
    if f == "fatima2":
        alpha, beta, i = p
        norm = math.log(beta) + log_gamma(alpha + 1.0) - log_gamma(i) - log_gamma(alpha - i + 1.0)
        return norm + (beta * i - 1.0) * logy + _xlogy_term(alpha - i, _log1m_pow(logy, beta))
    if f == "fatima3":
        alpha, beta = p
        s = 1.0 / alpha**2
        return (
            math.log(beta)
            - 2.0 * math.log(alpha)
            + (s - 1.0) * logy
            + _xlogy_term(beta - 1.0, _log1m_pow(logy, s))
        )
    if f == "fatima4":
        alpha, beta = p
        return math.log(beta) - 2.0 * math.log(alpha) + (beta / alpha**2 - 1.0) * logy
    if f == "fatima5":
        (alpha,) = p
        s = 1.0 / alpha**2
        return math.log(6.0) - 2.0 * math.log(alpha) + _log1m_pow(logy, s) + (2.0 * s - 1.0) * logy
    if f == "fatima6":
        alpha, n = p
        s = 1.0 / alpha**2
        norm = log_gamma(2.0 * n + 2.0) - 2.0 * log_gamma(n + 1.0) - 2.0 * math.log(alpha)
        return norm + _xlogy_term(n, _log1m_pow(logy, s)) + ((n + 1.0) * s - 1.0) * logy
    if f == "fatima7":
        alpha, n = p
        s = 1.0 / alpha**2
        half = (n + 1.0) / 2.0
        norm = log_gamma(n + 1.0) - 2.0 * log_gamma(half) - 2.0 * math.log(alpha)
        return norm + _xlogy_term((n - 1.0) / 2.0, _log1m_pow(logy, s)) + (half * s - 1.0) * logy
    a, b = p
    return (a - 1.0) * logy + _xlogy_term(b - 1.0, np.log(-np.expm1(logy))) - log_beta(a, b)


def _scalar_or_array(value, like):
    out = np.asarray(value, dtype=float)
    if np.ndim(like) == 0:
        return float(out)
    return np.broadcast_to(out, np.shape(like)).copy()


def log_pdf(spec, y):
    """Log density of ``spec`` at ``y`` (scalar or array in the open unit interval)."""
    arr = _as_unit_open(y)
    return _scalar_or_array(_log_pdf_direct(spec, np.log(arr)), y)


def pdf(spec, y):
    """Density of ``spec`` at ``y``, computed as ``exp(log_pdf)``."""
    return _scalar_or_array(np.exp(log_pdf(spec, y)), y)


def _cdf_direct(spec, y):
    """Closed-form or incomplete-beta distribution function on ``(0, 1)``."""
    f, p = spec.family, spec.params
    logy = np.log(y)
    if f == "unit-power":
        return np.exp(p[0] * logy)
    if f == "unit-rayleigh":
        return np.exp(logy / p[0] ** 2)
    if f == "kumaraswamy":
        alpha, beta = p
        return -np.expm1(alpha * _log1m_pow(logy, beta))
    if f == "fatima1":
        return np.exp(p[0] * p[1] * logy)
    if f == "fatima3":
        alpha, beta = p
        return -np.expm1(beta * _log1m_pow(logy, 1.0 / alpha**2))
    if f == "fatima4":
        alpha, beta = p
        return np.exp(beta / alpha**2 * logy)
    if f == "fatima2":
        alpha, beta, i = p
        return reg_inc_beta(np.exp(beta * logy), i, alpha - i + 1.0)
    if f == "beta":
        return reg_inc_beta(y, p[0], p[1])
    rep = to_power_beta(spec)
    return reg_inc_beta(np.exp(logy / rep.c), rep.a, rep.b)


def _sf_direct(spec, y):
    f, p = spec.family, spec.params
    logy = np.log(y)
    if f in ("unit-power", "unit-rayleigh", "fatima1", "fatima4"):
        return -np.expm1(logy / to_power_beta(spec).c)
    if f == "kumaraswamy":
        alpha, beta = p
        return np.exp(alpha * _log1m_pow(logy, beta))
    if f == "fatima3":
        alpha, beta = p
        return np.exp(beta * _log1m_pow(logy, 1.0 / alpha**2))
    return to_power_beta(spec).sf(y)


def _on_closed_unit(func, spec, y, at0, at1):
    arr = _as_unit_closed(y)
    flat = np.atleast_1d(arr).astype(float)
    out = np.empty_like(flat)
    out[flat == 0.0] = at0
    out[flat == 1.0] = at1
    inner = (flat > 0.0) & (flat < 1.0)
    if inner.any():
        out[inner] = func(spec, flat[inner])
    return _scalar_or_array(np.clip(out, 0.0, 1.0).reshape(np.shape(arr)), y)


def cdf(spec, y):
    """Distribution function; accepts the closed interval ``[0, 1]``."""
    return _on_closed_unit(_cdf_direct, spec, y, 0.0, 1.0)


def sf(spec, y):
    """Survival function ``1 - F(y)`` evaluated without cancellation."""
    return _on_closed_unit(_sf_direct, spec, y, 1.0, 0.0)


def _quantile_direct(spec, u):
    f, p = spec.family, spec.params
    if f == "unit-power":
        return u ** (1.0 / p[0])
    if f == "unit-rayleigh":
        return u ** (p[0] ** 2)
    if f == "kumaraswamy":
        alpha, beta = p
        return np.exp(np.log(-np.expm1(np.log1p(-u) / alpha)) / beta)
    if f == "fatima1":
        return u ** (1.0 / (p[0] * p[1]))
    if f == "fatima3":
        alpha, beta = p
        return np.exp(alpha**2 * np.log(-np.expm1(np.log1p(-u) / beta)))
    if f == "fatima4":
        alpha, beta = p
        return u ** (alpha**2 / beta)
    return to_power_beta(spec).quantile(u)


def quantile(spec, u):
    """Inverse distribution function.

    Elementary for unit-power, unit-rayleigh, kumaraswamy, fatima1, fatima3
    and fatima4; the other families invert the incomplete beta function of
    their power-of-Beta representation.
    """
    arr = _as_unit_closed(u, "probability")
    flat = np.atleast_1d(arr).astype(float)
    out = np.empty_like(flat)
    out[flat == 0.0] = 0.0
    out[flat == 1.0] = 1.0
    inner = (flat > 0.0) & (flat < 1.0)
    if inner.any():
        out[inner] = _quantile_direct(spec, flat[inner])
    return _scalar_or_array(out.reshape(np.shape(arr)), u)


def raw_moment(spec, r):
    """``E[Y**r]`` for ``r >= 0``."""
    r = float(r)
    if not (math.isfinite(r) and r >= 0):
        raise DomainError(f"moment order must be non-negative, got {r}")
    if r == 0:
        return 1.0
    f, p = spec.family, spec.params
    if f == "fatima1":
        ab = p[0] * p[1]
        return ab / (ab + r)
    if f == "fatima2":
        alpha, beta, i = p
        return math.exp(
            log_gamma(alpha + 1.0)
            + log_gamma(i + r / beta)
            - log_gamma(i)
            - log_gamma(r / beta + alpha + 1.0)
        )
    if f == "fatima3":
        alpha, beta = p
        ra2 = r * alpha**2
        return math.exp(log_gamma(ra2 + 1.0) + log_gamma(beta + 1.0) - log_gamma(ra2 + 1.0 + beta))
    if f == "fatima4":
        alpha, beta = p
        return beta / (beta + r * alpha**2)
    return to_power_beta(spec).raw_moment(r)


def hazard(spec, y):
    """Hazard rate ``f(y) / (1 - F(y))``.

    Raises :class:`TailOverflowError` when the survival probability
    underflows to zero at any requested point.
    """
    dens = pdf(spec, y)
    surv = sf(spec, y)
    if np.any(np.asarray(surv) <= 0.0):
        raise TailOverflowError("survival probability underflowed; hazard is not representable")
    return _scalar_or_array(np.asarray(dens) / np.asarray(surv), y)
