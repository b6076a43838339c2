import math

import numpy as np
import pytest

from slopegeo import surfaces


@pytest.fixture(scope="session")
def gal():
    return surfaces.gallery()


@pytest.fixture(scope="session")
def rev_sqrt(gal):
    return gal["revolution-sqrt"]


@pytest.fixture(scope="session")
def rev_log(gal):
    return gal["revolution-log"]


@pytest.fixture(params=["revolution-sqrt", "revolution-log", "cone"])
def rev(request, gal):
    return gal[request.param]


@pytest.fixture
def rng():
    return np.random.default_rng(0)


def random_admissible(surface, rng, n):
    """Random points in the domain and random non-zero directions."""
    lo, hi = surface.domain
    hi = min(hi, lo + 10.0)
    us = rng.uniform(lo, hi, n)
    ang = rng.uniform(0.0, 2 * math.pi, n)
    ys = np.column_stack([np.cos(ang), np.sin(ang)]) * rng.uniform(0.1, 3.0, n)[:, None]
    return us, ys


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
