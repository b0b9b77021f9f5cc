"""Input checks shared by the estimator API."""

from __future__ import annotations

import numpy as np

from .dataset import Dataset
from .errors import RangeError


def check_unit_array(X, *, name="X", closed=False):
    """Return ``X`` as a flat float array of observations in (0, 1).

    Accepts a 1-d array, a single-column 2-d array, or a :class:`Dataset`.
    With ``closed=True`` the endpoints 0 and 1 are allowed.
    """
    if isinstance(X, Dataset):
        return X.array
    arr = np.asarray(X, dtype=float)
    if arr.ndim == 2:
        if arr.shape[1] != 1:
            raise ValueError(f"{name} must have a single column, got shape {arr.shape}")
        arr = arr[:, 0]
    elif arr.ndim != 1:
        raise ValueError(f"{name} must be 1-d or a single column, got {arr.ndim} dimensions")
    if arr.size == 0:
        raise ValueError(f"{name} is empty")
    inside = (arr >= 0.0) & (arr <= 1.0) if closed else (arr > 0.0) & (arr < 1.0)
    if not np.all(inside):
        idx = np.flatnonzero(~inside)
        shown = ", ".join(f"#{k + 1}={arr[k]!r}" for k in idx[:10])
        interval = "[0, 1]" if closed else "(0, 1)"
        raise RangeError(f"{name} values must lie in {interval}: {shown}", tuple(idx + 1))
    return arr


def check_random_state_seed(random_state):
    """Map ``None``/int/Generator to an unsigned 64-bit seed."""
    if random_state is None:
        return int(np.random.default_rng().integers(0, 2**63))
    if isinstance(random_state, np.random.Generator):
        return int(random_state.integers(0, 2**63))
    seed = int(random_state)
    if seed < 0:
        raise ValueError(f"random_state must be non-negative, got {random_state}")
    return seed
