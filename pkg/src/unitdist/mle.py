"""Maximum-likelihood fitting by Nelder-Mead simplex search.

Positivity constraints are removed by working in log coordinates.  For
``fatima2`` the search runs over ``(log(alpha - i + 1), log beta, log i)`` so
that ``alpha > i - 1`` holds everywhere.  ``fatima6`` uses ``log n`` and
``fatima7`` uses ``log(n - 1)``.

``fatima1`` and ``fatima4`` are not identifiable.  Their likelihoods depend
only on ``alpha * beta`` and ``beta / alpha**2`` respectively, so any point
on that ridge is a maximiser.  Fits of these families report the identified
combination in :attr:`FitResult.identified` and raise the identifiability
flag.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from .dataset import Dataset, as_dataset
from .errors import DataError, DegenerateDataError, DomainError, EvaluationError
from .families import PARAM_NAMES, DistributionSpec, canonical_family, is_valid, log_pdf
from .specfun import (
    DEFAULT_CONFIG,
    NumericConfig,
    digamma,
    finite_diff_grad,
    log_gamma,
    numerical_hessian,
)

COND_LIMIT = 1e8
# eigenvalues of the step-scaled Hessian below this multiple of the
# objective's rounding error are indistinguishable from zero
_HESSIAN_NOISE_FACTOR = 1e3
_TIE_LL = 1e-8
# a converged fit must have |score| below this multiple of n
STATIONARITY_TOL = 1e-4

SCORE_FAMILIES = ("fatima1", "fatima2", "fatima3", "fatima4")


@dataclass(frozen=True)
class FitConfig:
    """Optimizer settings.

    ``multi_start`` extra runs start from Gaussian perturbations (sd 0.5 in
    the unconstrained coordinates) of the initial point, drawn from
    ``restart_seed``.
    """

    init: Optional[tuple] = None
    max_iter: int = 2000
    x_tol: float = 1e-9
    f_tol: float = 1e-9
    multi_start: int = 4
    restart_seed: int = 0
    numeric: NumericConfig = DEFAULT_CONFIG

    def __post_init__(self):
        if not (self.x_tol > 0 and self.f_tol > 0):
            raise DomainError("x_tol and f_tol must be positive")
        if self.max_iter < 1:
            raise DomainError("max_iter must be a positive integer")
        if self.multi_start < 0:
            raise DomainError("multi_start must be non-negative")


@dataclass
class FitResult:
    spec: DistributionSpec
    log_lik: float
    vcov: Optional[np.ndarray]
    std_err: Optional[np.ndarray]
    converged: bool
    n_evals: int
    identifiability_flag: bool
    identified: dict = field(default_factory=dict)
    hessian_cond: float = math.nan
    score_norm: float = math.nan
    message: str = ""

    @property
    def family(self):
        return self.spec.family

    @property
    def params(self):
        return self.spec.params

    def as_dict(self):
        return {
            "family": self.family,
            "params": self.spec.as_dict(),
            "log_lik": self.log_lik,
            "vcov": None if self.vcov is None else self.vcov.tolist(),
            "std_err": None if self.std_err is None else self.std_err.tolist(),
            "converged": self.converged,
            "n_evals": self.n_evals,
            "identifiability_flag": self.identifiability_flag,
            "identified": dict(self.identified),
            "score_norm": self.score_norm,
            "message": self.message,
        }


class NelderMeadResult(NamedTuple):
    x: np.ndarray
    fun: float
    converged: bool
    n_evals: int


# ---------------------------------------------------------------- likelihoods


def _log_stats(data):
    y = data.array
    return y, np.log(y)


def _log1m_pow(logy, s):
    return np.log(-np.expm1(s * logy))


def _closed_form_ll(family, p, logy):
    n = logy.size
    s_log = logy.sum()
    if family == "fatima1":
        alpha, beta = p
        return n * math.log(alpha) + n * math.log(beta) + (alpha * beta - 1.0) * s_log
    if family == "fatima2":
        alpha, beta, i = p
        return (
            n * math.log(beta)
            + n * log_gamma(alpha + 1.0)
            - n * log_gamma(i)
            - n * log_gamma(alpha - i + 1.0)
            + (beta * i - 1.0) * s_log
            + (alpha - i) * _log1m_pow(logy, beta).sum()
        )
    if family == "fatima3":
        alpha, beta = p
        s = 1.0 / alpha**2
        return (
            n * math.log(beta)
            - n * math.log(alpha**2)
            + (s - 1.0) * s_log
            + (beta - 1.0) * _log1m_pow(logy, s).sum()
        )
    alpha, beta = p
    return n * math.log(beta) - n * math.log(alpha**2) + (beta / alpha**2 - 1.0) * s_log


def log_likelihood(family, params, data, closed_form=True):
    """Log-likelihood of ``params`` for ``data``.

    Invalid parameters give ``-inf`` instead of raising, so the value can be
    fed straight to an optimizer.  With ``closed_form=True`` the four
    families fatima1-fatima4 use their sufficient-statistic expressions;
    every other family (or ``closed_form=False``) sums ``log_pdf``.
    """
    family = canonical_family(family)
    params = tuple(float(v) for v in np.atleast_1d(params))
    if not is_valid(family, params):
        return -math.inf
    data = as_dataset(data)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        if closed_form and family in SCORE_FAMILIES:
            value = _closed_form_ll(family, params, np.log(data.array))
        else:
            value = float(np.sum(log_pdf(DistributionSpec(family, params), data.array)))
    return float(value) if math.isfinite(value) else -math.inf


def score(family, params, data):
    """Analytic gradient of the log-likelihood for fatima1 to fatima4."""
    family = canonical_family(family)
    if family not in SCORE_FAMILIES:
        raise DomainError(f"analytic score is available for {SCORE_FAMILIES}, not {family}")
    params = tuple(float(v) for v in np.atleast_1d(params))
    if not is_valid(family, params):
        raise DomainError(f"parameters {params} are outside the valid region of {family}")
    y, logy = _log_stats(as_dataset(data))
    n = y.size
    s_log = logy.sum()
    if family == "fatima1":
        alpha, beta = params
        return np.array([n / alpha + beta * s_log, n / beta + alpha * s_log])
    if family == "fatima2":
        alpha, beta, i = params
        l1m = _log1m_pow(logy, beta)
        yb = np.exp(beta * logy)
        d_alpha = n * digamma(alpha + 1.0) - n * digamma(alpha - i + 1.0) + l1m.sum()
        d_beta = n / beta + i * s_log - (alpha - i) * np.sum(yb * logy / -np.expm1(beta * logy))
        d_i = -n * digamma(i) + n * digamma(alpha - i + 1.0) + beta * s_log - l1m.sum()
        return np.array([d_alpha, d_beta, d_i])
    if family == "fatima3":
        alpha, beta = params
        s = 1.0 / alpha**2
        ys = np.exp(s * logy)
        ratio = np.sum(ys * logy / -np.expm1(s * logy))
        d_alpha = -2.0 * n / alpha - 2.0 / alpha**3 * s_log + 2.0 * (beta - 1.0) / alpha**3 * ratio
        d_beta = n / beta + _log1m_pow(logy, s).sum()
        return np.array([d_alpha, d_beta])
    alpha, beta = params
    return np.array(
        [-2.0 * n / alpha - 2.0 * beta / alpha**3 * s_log, n / beta + s_log / alpha**2]
    )


# ---------------------------------------------------------------- optimizer


def nelder_mead(objective, x0, config=None):
    """Minimize ``objective`` with the classic Nelder-Mead simplex.

    Coefficients are reflection 1, expansion 2, contraction 0.5 and shrink
    0.5.  The initial simplex offsets each coordinate by 5% of its value,
    with a floor of 0.00025.  Iteration stops once every vertex lies within
    ``x_tol`` of the best vertex (max-norm) and every function value lies
    within ``f_tol`` of the best value, or after ``config.max_iter``
    iterations.  Failing to converge is reported through the ``converged``
    flag and never raised.
    """
    config = config or FitConfig()
    x0 = np.atleast_1d(np.asarray(x0, dtype=float))
    dim = x0.size
    n_evals = 0

    def f(x):
        nonlocal n_evals
        n_evals += 1
        v = float(objective(x))
        return v if math.isfinite(v) else math.inf

    f0 = f(x0)
    if not math.isfinite(f0):
        raise DomainError("objective must be finite at the starting point")
    sim = np.empty((dim + 1, dim))
    sim[0] = x0
    for j in range(dim):
        v = x0.copy()
        v[j] += max(0.05 * abs(x0[j]), 0.00025)
        sim[j + 1] = v
    fs = np.array([f0] + [f(sim[j]) for j in range(1, dim + 1)])

    converged = False
    for _ in range(config.max_iter):
        order = np.argsort(fs, kind="stable")
        sim, fs = sim[order], fs[order]
        with np.errstate(invalid="ignore"):
            if (
                np.max(np.abs(sim[1:] - sim[0])) <= config.x_tol
                and np.max(np.abs(fs[1:] - fs[0])) <= config.f_tol
            ):
                converged = True
                break
        centroid = sim[:-1].mean(axis=0)
        worst = sim[-1]
        xr = centroid + (centroid - worst)
        fr = f(xr)
        if fr < fs[0]:
            xe = centroid + 2.0 * (centroid - worst)
            fe = f(xe)
            if fe < fr:
                sim[-1], fs[-1] = xe, fe
            else:
                sim[-1], fs[-1] = xr, fr
            continue
        if fr < fs[-2]:
            sim[-1], fs[-1] = xr, fr
            continue
        if fr < fs[-1]:
            xc = centroid + 0.5 * (xr - centroid)
            fc = f(xc)
            if fc <= fr:
                sim[-1], fs[-1] = xc, fc
                continue
        else:
            xc = centroid + 0.5 * (worst - centroid)
            fc = f(xc)
            if fc < fs[-1]:
                sim[-1], fs[-1] = xc, fc
                continue
        for j in range(1, dim + 1):
            sim[j] = sim[0] + 0.5 * (sim[j] - sim[0])
            fs[j] = f(sim[j])
    else:
        order = np.argsort(fs, kind="stable")
        sim, fs = sim[order], fs[order]
        with np.errstate(invalid="ignore"):
            converged = bool(
                np.max(np.abs(sim[1:] - sim[0])) <= config.x_tol
                and np.max(np.abs(fs[1:] - fs[0])) <= config.f_tol
            )
    return NelderMeadResult(sim[0].copy(), float(fs[0]), converged, n_evals)


# ---------------------------------------------------------------- fitting


def to_unconstrained(family, params):
    p = np.asarray(params, dtype=float)
    if family == "fatima2":
        alpha, beta, i = p
        return np.log([alpha - i + 1.0, beta, i])
    if family == "fatima7":
        return np.array([math.log(p[0]), math.log(p[1] - 1.0)])
    return np.log(p)


def from_unconstrained(family, z):
    e = np.exp(np.asarray(z, dtype=float))
    if family == "fatima2":
        gap, beta, i = e
        return (i - 1.0 + gap, beta, i)
    if family == "fatima7":
        return (e[0], 1.0 + e[1])
    return tuple(e)


def default_init(family, data):
    """Moment-style starting values, always inside the parameter region."""
    family = canonical_family(family)
    y, logy = _log_stats(as_dataset(data))
    m = float(np.clip(y.mean(), 1e-6, 1.0 - 1e-6))
    odds = m / (1.0 - m)
    a0 = math.sqrt(max(-logy.mean(), 1e-12))
    if family == "unit-power":
        return (odds,)
    if family in ("unit-rayleigh", "fatima5"):
        return (a0,)
    if family == "kumaraswamy":
        return (1.0, odds)
    if family == "fatima1":
        return (math.sqrt(odds), math.sqrt(odds))
    if family == "fatima2":
        return (2.0, odds, 1.0)
    if family == "fatima3":
        return (a0, 1.0)
    if family == "fatima4":
        return (a0, a0**2 * odds)
    if family == "fatima6":
        return (a0, 1.0)
    if family == "fatima7":
        return (a0, 3.0)
    var = float(y.var(ddof=1)) if y.size > 1 else 0.0
    common = m * (1.0 - m) / var - 1.0 if var > 0 else 1.0
    if common <= 0:
        common = 1.0
    return (m * common, (1.0 - m) * common)


def identified_quantities(spec):
    """The parameter combinations the likelihood actually depends on."""
    if spec.family == "fatima1":
        alpha, beta = spec.params
        return {"alpha*beta": alpha * beta}
    if spec.family == "fatima4":
        alpha, beta = spec.params
        return {"beta/alpha^2": beta / alpha**2}
    return {}


def _covariance(family, params, data, numeric):
    """Inverse observed information, or ``None`` with the flag raised."""

    def nll(theta):
        return -log_likelihood(family, theta, data)

    theta = np.asarray(params, dtype=float)
    try:
        H = numerical_hessian(nll, theta, numeric)
    except EvaluationError:
        return None, None, True, math.inf
    eig = np.linalg.eigvalsh(H)
    abs_eig = np.abs(eig)
    cond = math.inf if abs_eig.min() == 0 else float(abs_eig.max() / abs_eig.min())
    steps = numeric.fd_step * np.maximum(np.abs(theta), 1.0)
    resolution = _HESSIAN_NOISE_FACTOR * np.finfo(float).eps * max(abs(nll(theta)), 1.0)
    scaled_min = np.linalg.eigvalsh(H * np.outer(steps, steps)).min()
    if cond > COND_LIMIT or scaled_min <= resolution:
        return None, None, True, cond
    try:
        vcov = np.linalg.inv(H)
    except np.linalg.LinAlgError:
        return None, None, True, cond
    vcov = 0.5 * (vcov + vcov.T)
    diag = np.diag(vcov)
    if np.any(diag < 0) or not np.all(np.isfinite(vcov)):
        return None, None, True, cond
    return vcov, np.sqrt(diag), False, cond


def _score_norm(family, params, data, numeric):
    if family in SCORE_FAMILIES:
        g = score(family, params, data)
    else:
        try:
            g = finite_diff_grad(lambda t: log_likelihood(family, t, data), np.asarray(params), numeric)
        except EvaluationError:
            # the stencil leaves the parameter region: the optimum sits on its edge
            return math.inf
    return float(np.linalg.norm(g))


def fit(family, data, config=None):
    """Maximum-likelihood fit of one family to a dataset.

    Runs Nelder-Mead from the initial point and from ``multi_start``
    perturbations of it, keeping the run with the highest log-likelihood
    (near-ties go to the smaller parameter vector).  The variance-covariance
    matrix is the inverse of the numerical Hessian of the negative
    log-likelihood in the original parameterization.  It is omitted, and
    ``identifiability_flag`` raised, when that Hessian is singular to
    finite-difference resolution, has condition number above 1e8, or does
    not invert to a valid covariance.

    Raises
    ------
    RangeError
        If any observation lies outside (0, 1).
    DegenerateDataError
        If every observation is identical.
    DataError
        If there are fewer observations than parameters.
    """
    family = canonical_family(family)
    config = config or FitConfig()
    data = as_dataset(data)
    k = len(PARAM_NAMES[family])
    if data.n < k:
        raise DataError(f"{family} has {k} parameters but only {data.n} observation(s)")
    if len(set(data.values)) == 1:
        raise DegenerateDataError("all observations are identical")

    init = tuple(config.init) if config.init is not None else default_init(family, data)
    if not is_valid(family, init):
        raise DomainError(f"initial point {init} is outside the parameter region of {family}")

    def objective(z):
        return -log_likelihood(family, from_unconstrained(family, z), data)

    z0 = to_unconstrained(family, init)
    rng = np.random.default_rng(config.restart_seed)
    starts = [z0] + [z0 + rng.normal(0.0, 0.5, size=z0.size) for _ in range(config.multi_start)]

    best = None
    total_evals = 0
    for z in starts:
        if not math.isfinite(objective(z)):
            continue
        run = nelder_mead(objective, z, config)
        total_evals += run.n_evals
        cand = (run, from_unconstrained(family, run.x))
        if best is None:
            best = cand
            continue
        gain = best[0].fun - run.fun
        if gain > _TIE_LL or (
            abs(gain) <= _TIE_LL and np.linalg.norm(cand[1]) < np.linalg.norm(best[1])
        ):
            best = cand

    if best is None:
        raise EvaluationError(f"{family} log-likelihood is not finite at any starting point")
    run, params = best
    spec = DistributionSpec(family, params)
    ll = log_likelihood(family, spec.params, data)
    vcov, std_err, flag, cond = _covariance(family, spec.params, data, config.numeric)
    gnorm = _score_norm(family, spec.params, data, config.numeric)
    stationary = gnorm <= STATIONARITY_TOL * data.n
    if not run.converged:
        message = f"simplex did not converge within {config.max_iter} iterations"
    elif not stationary:
        message = (
            f"simplex stalled where the log-likelihood gradient is still {gnorm:.3g}; "
            "the maximum is not attained inside the parameter region"
        )
    else:
        message = ""
    return FitResult(
        spec=spec,
        log_lik=ll,
        vcov=vcov,
        std_err=std_err,
        converged=run.converged and stationary,
        n_evals=total_evals,
        identifiability_flag=flag,
        identified=identified_quantities(spec),
        hessian_cond=cond,
        score_norm=gnorm,
        message=message,
    )
