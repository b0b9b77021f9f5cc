import re
from collections import OrderedDict

import numpy as np
import pytest

from unitdist import fit, load_builtin

CRITERIA = OrderedDict(
    [
        (1, "descriptive statistics"),
        (2, "fatima5 fit and goodness of fit"),
        (3, "kumaraswamy fit"),
        (4, "beta fit"),
        (5, "fatima3 fit and kumaraswamy consistency"),
        (6, "fatima1 / fatima4 ridge fits"),
        (7, "fatima2 fit and parameter-count variants"),
        (8, "fatima6 / fatima7 fits"),
        (9, "pdf normalization"),
        (10, "order-statistic generator oracle"),
        (11, "analytic score oracle"),
        (12, "raw moment oracle"),
        (13, "quantile and sampler roundtrips"),
        (14, "ridge invariance of the likelihood"),
    ]
)

_outcomes = {}
_CRIT_RE = re.compile(r"test_criterion_(\d+)_")


def pytest_runtest_logreport(report):
    m = _CRIT_RE.search(report.nodeid)
    if not m:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        num = int(m.group(1))
        entry = _outcomes.setdefault(num, [])
        entry.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for num, title in CRITERIA.items():
        results = _outcomes.get(num)
        if not results:
            tr.write_line(f"criterion {num:2d} ({title}): NOT RUN")
            continue
        failed = [name for name, outcome in results if outcome != "passed"]
        status = "FAIL" if failed else "PASS"
        detail = f"  [failing: {', '.join(failed)}]" if failed else ""
        tr.write_line(f"criterion {num:2d} ({title}): {status}{detail}")


@pytest.fixture(scope="session")
def water():
    return load_builtin("oecd-water")


@pytest.fixture(scope="session")
def water_fits(water):
    """Lazily computed fits of the builtin data, shared across test modules."""
    cache = {}

    def get(family):
        if family not in cache:
            cache[family] = fit(family, water)
        return cache[family]

    return get


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
