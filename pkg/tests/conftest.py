from fractions import Fraction
from pathlib import Path

import pytest

from dissect import families
from dissect.exactnum import qn

FIXTURES = Path(__file__).parent / "fixtures"

X_PAIR = qn(Fraction(-1, 2), Fraction(1, 2))  # (sqrt3 - 1)/2


@pytest.fixture
def pair():
    return families.pair_tiling()


@pytest.fixture
def grid2():
    return families.grid(2, 2)


@pytest.fixture
def fixtures_dir():
    return FIXTURES


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
