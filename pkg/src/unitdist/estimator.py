"""scikit-learn style wrapper around :func:`unitdist.mle.fit`."""

from __future__ import annotations

import dataclasses

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_random_state_seed, check_unit_array
from .dataset import Dataset
from .families import canonical_family, cdf, log_pdf, quantile
from .gof import gof_report
from .mle import FitConfig, fit
from .sampler import SampleRequest, sample


class UnitDensity(TransformerMixin, BaseEstimator):
    """Maximum-likelihood density estimator for one unit-interval family.

    Parameters
    ----------
    family : str, default="fatima5"
        Registered family name or alias.
    init : tuple of float, optional
        Starting parameters; a moment-based guess is used when omitted.
    max_iter : int, default=2000
    x_tol, f_tol : float, default=1e-9
        Simplex convergence tolerances.
    multi_start : int, default=4
        Number of perturbed restarts.
    random_state : int, optional
        Seed for the restarts and for :meth:`sample`.

    Attributes
    ----------
    spec_ : DistributionSpec
    params_ : ndarray
    log_lik_ : float
    vcov_ : ndarray or None
        ``None`` when the model is not locally identifiable.
    std_err_ : ndarray or None
    converged_ : bool
    fit_result_ : FitResult

    Examples
    --------
    >>> from unitdist import UnitDensity, load_builtin
    >>> est = UnitDensity("fatima5").fit(load_builtin("oecd-water").array)
    >>> round(est.params_[0], 3)
    0.478
    """

    def __init__(self, family="fatima5", init=None, max_iter=2000, x_tol=1e-9, f_tol=1e-9,
                 multi_start=4, random_state=0):
        self.family = family
        self.init = init
        self.max_iter = max_iter
        self.x_tol = x_tol
        self.f_tol = f_tol
        self.multi_start = multi_start
        self.random_state = random_state

    def fit(self, X, y=None):
        data = check_unit_array(X)
        family = canonical_family(self.family)
        seed = check_random_state_seed(self.random_state)
        config = FitConfig(
            init=None if self.init is None else tuple(self.init),
            max_iter=self.max_iter,
            x_tol=self.x_tol,
            f_tol=self.f_tol,
            multi_start=self.multi_start,
            restart_seed=seed,
        )
        self._data = Dataset(tuple(data))
        res = fit(family, self._data, config)
        self.fit_result_ = res
        self.spec_ = res.spec
        self.params_ = np.array(res.params)
        self.log_lik_ = res.log_lik
        self.vcov_ = res.vcov
        self.std_err_ = res.std_err
        self.converged_ = res.converged
        self.n_features_in_ = 1
        return self

    def score_samples(self, X):
        """Log density of each observation."""
        check_is_fitted(self, "spec_")
        return np.asarray(log_pdf(self.spec_, check_unit_array(X)))

    def score(self, X, y=None):
        """Total log-likelihood of ``X``."""
        return float(np.sum(self.score_samples(X)))

    def transform(self, X):
        """Probability integral transform, shaped ``(n, 1)``."""
        check_is_fitted(self, "spec_")
        u = cdf(self.spec_, check_unit_array(X, closed=True))
        return np.asarray(u, dtype=float).reshape(-1, 1)

    def inverse_transform(self, X):
        check_is_fitted(self, "spec_")
        y = quantile(self.spec_, check_unit_array(X, name="probabilities", closed=True))
        return np.asarray(y, dtype=float).reshape(-1, 1)

    def sample(self, n_samples=1, random_state=None):
        check_is_fitted(self, "spec_")
        seed = check_random_state_seed(self.random_state if random_state is None else random_state)
        return np.array(sample(SampleRequest(self.spec_, n_samples, seed)))

    def gof(self, X=None, paper_k=False):
        """Goodness-of-fit report on ``X`` (the training data by default)."""
        check_is_fitted(self, "spec_")
        data = self._data if X is None else Dataset(tuple(check_unit_array(X)))
        res = self.fit_result_
        if X is not None:
            res = dataclasses.replace(res, log_lik=self.score(data.array))
        return gof_report(res, data, paper_k=paper_k, require_converged=False)
