import itertools
import math
from collections import Counter

import pytest

from proficiency.datasets_io import catalog, get_set

CATALOG_KEYS = [e.key for e in catalog()]


def brute_force_counts(values):
    """Counter of aggregated power over every configuration (itertools, no numpy)."""
    states = [(0,) + tuple(v) for v in values]
    return Counter(sum(combo) for combo in itertools.product(*states))


def brute_force_pmf(values, state_probs):
    """Aggregated-power pmf by summing the product of state probabilities per configuration."""
    pmf = Counter()
    states = [list(zip((0,) + tuple(v), probs)) for v, probs in zip(values, state_probs)]
    for combo in itertools.product(*states):
        pmf[sum(p for p, _ in combo)] += math.prod(q for _, q in combo)
    return pmf


@pytest.fixture(params=CATALOG_KEYS)
def catalog_set(request):
    return get_set(request.param)


@pytest.fixture
def set_a():
    return get_set("a")


@pytest.fixture
def set_b():
    return get_set("b")


# criterion number -> (passed, summary); filled by test_acceptance.py
ACCEPTANCE_RESULTS = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        passed, summary = ACCEPTANCE_RESULTS[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {summary}")
