import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from holgerbe.cech import canonical_cocycle, make_cycle
from holgerbe.cover import build_s4_cover, build_su2_cover

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def su2_cover():
    return build_su2_cover(5)


@pytest.fixture(scope="session")
def s4_cover():
    return build_s4_cover()


@pytest.fixture(scope="session")
def canonical_su2(su2_cover):
    """(sections, frames, cocycle) of the canonical gerbe on SU(2) over the 5-ball cover."""
    return canonical_cocycle(su2_cover, make_cycle("su2"))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(lines):
        terminalreporter.write_line(lines[k])
