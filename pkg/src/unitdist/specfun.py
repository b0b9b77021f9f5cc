"""Special functions and finite-difference utilities.

Everything here is a pure function of its arguments.  The incomplete beta
function and its inverse are evaluated with a continued fraction and a
safeguarded Newton iteration; ``log_gamma`` is backed by :func:`math.lgamma`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError, EvaluationError

_TINY = 1e-300
_EPS = np.finfo(float).eps
_INV_TOL = 1e-10

# B_{2k} / (2k) for the digamma asymptotic series, k = 1..7
_DIGAMMA_COEFS = (
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
)


@dataclass(frozen=True)
class NumericConfig:
    """Tolerances shared by the iterative and finite-difference routines.

    Parameters
    ----------
    rel_tol : float
        Relative tolerance for continued fractions and root finding.
    max_iter : int
        Iteration cap for continued-fraction and Newton loops.  The
        incomplete-beta continued fraction is allowed more terms when the
        shape parameters are large, since its length grows like their
        square root.
    fd_step : float
        Finite-difference step scale; the step for coordinate ``j`` is
        ``fd_step * max(|theta_j|, 1)``.
    """

    rel_tol: float = 1e-12
    max_iter: int = 200
    fd_step: float = 1e-5

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise DomainError(f"rel_tol must be positive, got {self.rel_tol}")
        if int(self.max_iter) != self.max_iter or self.max_iter < 1:
            raise DomainError(f"max_iter must be a positive integer, got {self.max_iter}")
        if not self.fd_step > 0:
            raise DomainError(f"fd_step must be positive, got {self.fd_step}")


DEFAULT_CONFIG = NumericConfig()


def _positive_scalar(name, x):
    x = float(x)
    if not math.isfinite(x) or x <= 0:
        raise DomainError(f"{name} must be a finite positive number, got {x!r}")
    return x


def log_gamma(x):
    """Natural log of the gamma function for positive arguments.

    Accepts a scalar or an array; raises :class:`DomainError` for
    non-positive or non-finite input.
    """
    if np.ndim(x) == 0:
        return math.lgamma(_positive_scalar("x", x))
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr) & (arr > 0)):
        raise DomainError("log_gamma requires finite positive arguments")
    return np.vectorize(math.lgamma, otypes=[float])(arr)


def log_beta(a, b):
    """``ln B(a, b)`` for positive scalars."""
    a = _positive_scalar("a", a)
    b = _positive_scalar("b", b)
    return math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b)


def digamma(x):
    """Logarithmic derivative of the gamma function, ``psi(x)``, for ``x > 0``.

    Shifts the argument above 6 with ``psi(x) = psi(x + 1) - 1/x`` and then
    sums the asymptotic series in ``1/x**2``.
    """
    scalar = np.ndim(x) == 0
    z = np.array(x, dtype=float, ndmin=1)
    if not np.all(np.isfinite(z) & (z > 0)):
        raise DomainError("digamma requires finite positive arguments")
    acc = np.zeros_like(z)
    while True:
        small = z < 6.0
        if not small.any():
            break
        acc[small] -= 1.0 / z[small]
        z[small] += 1.0
    inv2 = 1.0 / (z * z)
    series = np.zeros_like(z)
    for coef in reversed(_DIGAMMA_COEFS):
        series = coef + inv2 * series
    out = acc + np.log(z) - 0.5 / z - inv2 * series
    return float(out[0]) if scalar else out


def _beta_cf(x, a, b, limit):
    """Continued fraction for the incomplete beta (modified Lentz), vectorized in x."""
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = np.ones_like(x)
    d = 1.0 - qab * x / qap
    d = np.where(np.abs(d) < _TINY, _TINY, d)
    d = 1.0 / d
    h = d.copy()
    for m in range(1, limit + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        d = np.where(np.abs(d) < _TINY, _TINY, d)
        c = 1.0 + aa / c
        c = np.where(np.abs(c) < _TINY, _TINY, c)
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        d = np.where(np.abs(d) < _TINY, _TINY, d)
        c = 1.0 + aa / c
        c = np.where(np.abs(c) < _TINY, _TINY, c)
        d = 1.0 / d
        delta = d * c
        h *= delta
        if np.all(np.abs(delta - 1.0) <= 2 * _EPS):
            return h
    raise ConvergenceError(
        f"incomplete beta continued fraction did not converge in {limit} terms (a={a}, b={b})"
    )


def reg_inc_beta(x, a, b, config=DEFAULT_CONFIG):
    """Regularized incomplete beta function ``I_x(a, b)``.

    Parameters
    ----------
    x : float or array_like
        Evaluation point(s) in ``[0, 1]``.
    a, b : float
        Positive shape parameters.
    config : NumericConfig, optional
        Supplies the minimum continued-fraction length.

    Returns
    -------
    float or ndarray
        The Beta(a, b) distribution function at ``x``.  ``I_0 = 0`` and
        ``I_1 = 1`` exactly.
    """
    a = _positive_scalar("a", a)
    b = _positive_scalar("b", b)
    scalar = np.ndim(x) == 0
    x = np.array(x, dtype=float, ndmin=1)
    if not np.all((x >= 0.0) & (x <= 1.0)):
        raise DomainError("reg_inc_beta requires 0 <= x <= 1")
    limit = max(config.max_iter, int(20 * math.sqrt(max(a, b))) + 20)
    out = np.empty_like(x)
    out[x == 0.0] = 0.0
    out[x == 1.0] = 1.0
    interior = (x > 0.0) & (x < 1.0)
    lbeta = log_beta(a, b)
    lower = interior & (x < (a + 1.0) / (a + b + 2.0))
    upper = interior & ~lower
    if lower.any():
        xs = x[lower]
        front = np.exp(a * np.log(xs) + b * np.log1p(-xs) - lbeta)
        out[lower] = front * _beta_cf(xs, a, b, limit) / a
    if upper.any():
        xs = 1.0 - x[upper]
        front = np.exp(b * np.log(xs) + a * np.log1p(-xs) - lbeta)
        out[upper] = 1.0 - front * _beta_cf(xs, b, a, limit) / b
    np.clip(out, 0.0, 1.0, out=out)
    return float(out[0]) if scalar else out


def _beta_log_density(x, a, b, lbeta):
    return (a - 1.0) * math.log(x) + (b - 1.0) * math.log1p(-x) - lbeta


def _inv_beta_guess(p, a, b):
    # Starting points after the classic normal / power-law approximations.
    if a >= 1.0 and b >= 1.0:
        pp = p if p < 0.5 else 1.0 - p
        t = math.sqrt(-2.0 * math.log(pp))
        z = (2.30753 + t * 0.27061) / (1.0 + t * (0.99229 + t * 0.04481)) - t
        if p < 0.5:
            z = -z
        al = (z * z - 3.0) / 6.0
        h = 2.0 / (1.0 / (2.0 * a - 1.0) + 1.0 / (2.0 * b - 1.0))
        w = z * math.sqrt(al + h) / h - (1.0 / (2.0 * b - 1.0) - 1.0 / (2.0 * a - 1.0)) * (
            al + 5.0 / 6.0 - 2.0 / (3.0 * h)
        )
        return a / (a + b * math.exp(min(2.0 * w, 700.0)))
    lna = math.log(a / (a + b))
    lnb = math.log(b / (a + b))
    t = math.exp(a * lna) / a
    u = math.exp(b * lnb) / b
    w = t + u
    if p < t / w:
        return (a * w * p) ** (1.0 / a)
    return 1.0 - (b * w * (1.0 - p)) ** (1.0 / b)


def _inv_reg_inc_beta_scalar(p, a, b, config):
    if p == 0.0:
        return 0.0
    if p == 1.0:
        return 1.0
    lbeta = log_beta(a, b)
    lo, hi = 0.0, 1.0
    x = _inv_beta_guess(p, a, b)
    if not 0.0 < x < 1.0 or not math.isfinite(x):
        x = 0.5
    err = reg_inc_beta(x, a, b, config) - p
    best_x, best_err = x, err
    for _ in range(config.max_iter):
        if err == 0.0:
            return x
        if err > 0:
            hi = x
        else:
            lo = x
        dens = math.exp(_beta_log_density(x, a, b, lbeta))
        step = err / dens if dens > 0 and math.isfinite(dens) else math.nan
        x_new = x - step
        if not (lo < x_new < hi) or not math.isfinite(x_new):
            x_new = 0.5 * (lo + hi)
        collapsed = abs(x_new - x) <= 4 * _EPS * max(x_new, _TINY) or hi - lo <= 4 * _EPS * hi
        x = x_new
        err = reg_inc_beta(x, a, b, config) - p
        if abs(err) < abs(best_err):
            best_x, best_err = x, err
        if collapsed or abs(err) <= config.rel_tol * 1e-3 * min(p, 1.0 - p):
            break
    # near the endpoints the root may sit a few ulps from where Newton stopped
    x, err = best_x, best_err
    for _ in range(16):
        if abs(err) <= _INV_TOL:
            break
        cand = math.nextafter(x, 0.0 if err > 0 else 1.0)
        cand_err = reg_inc_beta(cand, a, b, config) - p
        if abs(cand_err) >= abs(err):
            break
        x, err = cand, cand_err
    if abs(err) > _INV_TOL:
        raise ConvergenceError(
            f"inv_reg_inc_beta failed for p={p}, a={a}, b={b}: residual {err:.3g}"
        )
    return x


def inv_reg_inc_beta(p, a, b, config=DEFAULT_CONFIG):
    """Inverse of :func:`reg_inc_beta` in its first argument.

    Returns ``x`` with ``|I_x(a, b) - p| <= 1e-10``; ``p = 0`` and ``p = 1``
    map to the endpoints exactly.  Raises :class:`ConvergenceError` when the
    residual cannot be brought under tolerance within ``config.max_iter``
    Newton/bisection steps.
    """
    a = _positive_scalar("a", a)
    b = _positive_scalar("b", b)
    if np.ndim(p) == 0:
        p = float(p)
        if not 0.0 <= p <= 1.0:
            raise DomainError(f"p must lie in [0, 1], got {p}")
        return _inv_reg_inc_beta_scalar(p, a, b, config)
    arr = np.asarray(p, dtype=float)
    if not np.all((arr >= 0.0) & (arr <= 1.0)):
        raise DomainError("p must lie in [0, 1]")
    flat = [_inv_reg_inc_beta_scalar(float(v), a, b, config) for v in arr.ravel()]
    return np.array(flat).reshape(arr.shape)


def _steps(theta, config):
    return config.fd_step * np.maximum(np.abs(theta), 1.0)


def _checked(f, point):
    try:
        value = float(f(point))
    except (ArithmeticError, ValueError) as exc:
        raise EvaluationError(f"function failed at {np.array2string(point)}: {exc}") from exc
    if not math.isfinite(value):
        raise EvaluationError(f"non-finite function value at {np.array2string(point)}")
    return value


def finite_diff_grad(f, theta, config=DEFAULT_CONFIG):
    """Central-difference gradient of a scalar function of a vector."""
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    h = _steps(theta, config)
    grad = np.empty_like(theta)
    for j in range(theta.size):
        e = np.zeros_like(theta)
        e[j] = h[j]
        grad[j] = (_checked(f, theta + e) - _checked(f, theta - e)) / (2.0 * h[j])
    return grad


def numerical_hessian(f, theta, config=DEFAULT_CONFIG):
    """Central-difference Hessian, symmetrized as ``(H + H.T) / 2``.

    Raises :class:`EvaluationError` if ``f`` is non-finite anywhere on the
    stencil.
    """
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    k = theta.size
    h = _steps(theta, config)
    f0 = _checked(f, theta)
    H = np.empty((k, k))
    for j in range(k):
        ej = np.zeros(k)
        ej[j] = h[j]
        H[j, j] = (_checked(f, theta + ej) - 2.0 * f0 + _checked(f, theta - ej)) / h[j] ** 2
        for m in range(j):
            em = np.zeros(k)
            em[m] = h[m]
            H[j, m] = (
                _checked(f, theta + ej + em)
                - _checked(f, theta + ej - em)
                - _checked(f, theta - ej + em)
                + _checked(f, theta - ej - em)
            ) / (4.0 * h[j] * h[m])
            H[m, j] = H[j, m]
    return 0.5 * (H + H.T)
