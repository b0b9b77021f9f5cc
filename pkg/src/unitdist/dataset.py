from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import EmptyDataError, RangeError


@dataclass(frozen=True)
class Dataset:
    """Ordered observations, each strictly inside (0, 1).

    ``values`` keeps source order.  ``name`` and ``metadata`` are free-form
    provenance and do not take part in equality.
    """

    values: tuple
    name: str = ""
    metadata: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        vals = tuple(float(v) for v in np.ravel(np.asarray(self.values, dtype=float)))
        if not vals:
            raise EmptyDataError("dataset is empty")
        bad = [(k, v) for k, v in enumerate(vals, start=1) if not (0.0 < v < 1.0)]
        if bad:
            shown = ", ".join(f"#{k}={v!r}" for k, v in bad[:10])
            more = f" (and {len(bad) - 10} more)" if len(bad) > 10 else ""
            raise RangeError(f"values must lie strictly inside (0, 1): {shown}{more}", bad)
        object.__setattr__(self, "values", vals)

    @property
    def n(self):
        return len(self.values)

    @property
    def array(self):
        return np.array(self.values)

    def __len__(self):
        return self.n


def as_dataset(data):
    """Coerce a :class:`Dataset` or array-like of observations to a Dataset."""
    return data if isinstance(data, Dataset) else Dataset(tuple(np.ravel(data)))
