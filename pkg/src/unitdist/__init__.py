"""Unit-interval distributions built from order statistics.

Families, maximum-likelihood fitting, goodness-of-fit reporting and
sampling for the unit-power, unit-Rayleigh, Kumaraswamy, Fatima 1-7 and
Beta distributions.
"""

__version__ = "0.1.0"

from .dataio import DataSource, export_report, load
from .dataset import Dataset
from .errors import (
    ConstructionError,
    ConvergenceError,
    DataError,
    DegenerateDataError,
    DomainError,
    EmptyDataError,
    EvaluationError,
    ParseError,
    RangeError,
    TailOverflowError,
    UnitDistError,
)
from .estimator import UnitDensity
from .families import (
    FAMILY_NAMES,
    DistributionSpec,
    PowerBetaRep,
    cdf,
    hazard,
    log_pdf,
    pdf,
    quantile,
    raw_moment,
    sf,
    to_power_beta,
)
from .gof import GofReport, descriptive, gof_report
from .mle import FitConfig, FitResult, fit, log_likelihood, score
from .ordstat import OrderSelector, derive_family, order_stat_pdf, unit_parent
from .sampler import SampleRequest, sample, sample_by_order_stat


def load_builtin(name="oecd-water"):
    """Load an embedded dataset by name."""
    return load(DataSource("builtin-name", name))


__all__ = [
    "ConstructionError", "ConvergenceError", "DataError", "DataSource", "Dataset",
    "DegenerateDataError", "DistributionSpec", "DomainError", "EmptyDataError",
    "EvaluationError", "FAMILY_NAMES", "FitConfig", "FitResult", "GofReport", "OrderSelector",
    "ParseError", "PowerBetaRep", "RangeError", "SampleRequest", "TailOverflowError",
    "UnitDensity", "UnitDistError", "cdf", "derive_family", "descriptive", "export_report",
    "fit", "gof_report", "hazard", "load", "load_builtin", "log_likelihood", "log_pdf",
    "order_stat_pdf", "pdf", "quantile", "raw_moment", "sample", "sample_by_order_stat",
    "score", "sf", "to_power_beta", "unit_parent",
]
