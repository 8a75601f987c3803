import sys

import pytest
from hypothesis import settings

from reeskit.algebra import PolyRing
from reeskit.rees import PresentedRing

# Derandomized so the suite is reproducible run to run; no example database.
settings.register_profile("repro", derandomize=True, database=None)
settings.load_profile("repro")


@pytest.fixture
def ring_ab():
    return PolyRing(["a", "b"])


@pytest.fixture
def presented():
    """Build a presented ring from variable names and relation strings."""

    def build(names, relations=()):
        base = PresentedRing.polynomial(names)
        return PresentedRing(base.ring, tuple(base.ring.parse(r) for r in relations))

    return build


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.summary_lines():
        terminalreporter.write_line(line)
