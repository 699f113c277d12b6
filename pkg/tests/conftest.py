from pathlib import Path

import pytest

from zsep.boolring import sbox_system
from zsep.sysfile import load_system

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def refsys():
    """The 9-generator, 11-variable rational fixture system."""
    return load_system(FIXTURES / "ex34.sys")


@pytest.fixture(scope="session")
def sbox39():
    """Degree-2 vanishing ideal of the 256 S-box graph points (39 quadrics)."""
    return sbox_system(dmax=2)


@pytest.fixture()
def fixture_dir():
    return FIXTURES


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    """Emit one pass/fail line per acceptance criterion."""
    outcome = yield
    report = outcome.get_result()
    label = getattr(item.function, "criterion_label", None)
    if label and report.when == "call":
        verdict = "PASS" if report.passed else "FAIL"
        tw = item.config.get_terminal_writer()
        tw.line(f" [{verdict}] {label}")
