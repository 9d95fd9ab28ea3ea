"""Shared fixtures and the acceptance-criterion summary hook."""

import numpy as np
import pytest

from cuspscat.geometry import CuspGeometry
from cuspscat.scattering import ModelManifold
from cuspscat.weber import smooth_bump

# populated by tests/test_acceptance.py; printed once at the end of the run
CRITERION_RESULTS = {}


def record_criterion(number, passed, detail):
    CRITERION_RESULTS[number] = (bool(passed), detail)


def pytest_terminal_summary(terminalreporter):
    if not CRITERION_RESULTS:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for num in sorted(CRITERION_RESULTS):
        passed, detail = CRITERION_RESULTS[num]
        terminalreporter.write_line(
            "criterion %d %s: %s" % (num, "PASS" if passed else "FAIL", detail))


def window_coupling(lo, hi, mat):
    """Symmetric coupling matrix modulated by a smooth window in (lo, hi)."""
    mat = np.asarray(mat, dtype=float)
    bump = smooth_bump(lo, hi)
    return lambda x: float(bump(float(x))) * mat


@pytest.fixture(scope="session")
def mm_pure_b1():
    # a(n - 2p - 1) = 1 so the alpha-sector order is (1 + 1)/2 = 1
    return ModelManifold(CuspGeometry(1.0, 4, 1, mu=(1.0,)))


@pytest.fixture(scope="session")
def mm_pure_b0():
    # n = 2, p = 1 gives gamma = -1 and order 0
    return ModelManifold(CuspGeometry(1.0, 2, 1, mu=(1.0,)))


@pytest.fixture(scope="session")
def mm_m2():
    geo = CuspGeometry(1.0, 3, 1, mu=(1.0,), m_p=2)
    V = window_coupling(0.6, 0.95, [[1.2, 0.4], [0.4, -0.6]])
    return ModelManifold(geo, x0=0.5, interior_coupling=V)


@pytest.fixture(scope="session")
def mm_res():
    geo = CuspGeometry(1.0, 2, 1, mu=(1.0,), m_p=2)
    V = window_coupling(0.6, 0.95, [[1.2, 0.4], [0.4, -0.6]])
    return ModelManifold(geo, x0=0.5, interior_coupling=V)


RESONANCE_RECT = (2.5, 4.4, 11.4, 13.2)


@pytest.fixture(scope="session")
def resonance_reports(mm_res):
    # the argument-principle sweep costs ~15 s; share it across suites
    from cuspscat.scattering import find_resonances
    return find_resonances(mm_res, RESONANCE_RECT)
