"""Seeded random variates for every family.

Generators are numpy ``PCG64`` bit generators created per call from the
seed, so a ``(spec, count, seed)`` triple always yields the same sequence
under a given library version.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .families import CLOSED_QUANTILE, DistributionSpec, quantile, to_power_beta
from .ordstat import PARENT_TAGS, OrderSelector, sample_parent

_MAX_SEED = 2**64 - 1


@dataclass(frozen=True)
class SampleRequest:
    spec: DistributionSpec
    count: int
    seed: int = 0

    def __post_init__(self):
        if not isinstance(self.spec, DistributionSpec):
            raise DomainError("spec must be a DistributionSpec")
        count = int(self.count)
        if count != self.count or count < 1:
            raise DomainError(f"count must be a positive integer, got {self.count!r}")
        seed = int(self.seed)
        if seed != self.seed or not 0 <= seed <= _MAX_SEED:
            raise DomainError(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")
        object.__setattr__(self, "count", count)
        object.__setattr__(self, "seed", seed)


def make_rng(seed):
    return np.random.Generator(np.random.PCG64(seed))


def _open_uniforms(rng, size):
    u = rng.random(size)
    # random() is on [0, 1); zero is the only endpoint that can appear
    while np.any(u == 0.0):
        bad = u == 0.0
        u[bad] = rng.random(int(bad.sum()))
    return u


def _draw_once(spec, rng, size):
    if spec.family in CLOSED_QUANTILE:
        return np.asarray(quantile(spec, _open_uniforms(rng, size)), dtype=float)
    rep = to_power_beta(spec)
    ga = rng.standard_gamma(rep.a, size)
    gb = rng.standard_gamma(rep.b, size)
    # B**c = exp(c * (log ga - log(ga + gb))) keeps small gammas from underflowing
    with np.errstate(divide="ignore"):
        return np.exp(rep.c * (np.log(ga) - np.log(ga + gb)))


def draw(spec, rng, size):
    """Draw ``size`` variates of ``spec`` from ``rng``, all strictly inside (0, 1).

    ``rng`` needs ``random`` and ``standard_gamma`` methods with the
    :class:`numpy.random.Generator` signatures.  Draws landing on 0 or 1
    after rounding are discarded and redrawn.
    """
    out = _draw_once(spec, rng, size)
    bad = ~((out > 0.0) & (out < 1.0))
    while bad.any():
        out[bad] = _draw_once(spec, rng, int(bad.sum()))
        bad = ~((out > 0.0) & (out < 1.0))
    return out


def sample(req):
    """Deterministic sample for a :class:`SampleRequest`.

    Families with an elementary quantile use inverse transform; the rest draw
    ``B ~ Beta(a, b)`` as a ratio of gamma variates and return ``B**c``.
    """
    return draw(req.spec, make_rng(req.seed), req.count).tolist()


def sample_by_order_stat(tag, param, sel, count, seed=0):
    """Draw ``count`` copies of the ``i``-th smallest of ``n`` parent variates.

    Parameters
    ----------
    tag : {"unit-power", "unit-rayleigh"}
    param : float
        The parent's single parameter.
    sel : OrderSelector or (i, n)
        Must have integer ``i`` and ``n``.
    count, seed : int
    """
    if tag not in PARENT_TAGS:
        raise DomainError(f"parent must be one of {PARENT_TAGS}, got {tag!r}")
    if not isinstance(sel, OrderSelector):
        sel = OrderSelector(*sel)
    if not sel.is_integer:
        raise DomainError("order-statistic sampling needs integer i and n")
    req = SampleRequest(DistributionSpec(tag, (param,)), count, seed)
    i, n = int(sel.i), int(sel.n)
    u = _open_uniforms(make_rng(req.seed), (req.count, n))
    draws = np.asarray(sample_parent(tag, param, u), dtype=float)
    draws.sort(axis=1)
    return draws[:, i - 1].tolist()
