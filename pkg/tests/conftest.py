import numpy as np
import pytest

from moea_lab.core import RandomSource


@pytest.fixture
def rng() -> RandomSource:
    return RandomSource(12345)


@pytest.fixture
def np_rng() -> np.random.Generator:
    return np.random.default_rng(2024)


_CRITERIA: dict[str, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    props = dict(report.user_properties)
    if "criterion" not in props:
        return
    if report.when == "call" or (report.when == "setup" and report.failed):
        _CRITERIA[props["criterion"]] = ("PASS" if report.passed else "FAIL", props.get("detail", ""))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_CRITERIA, key=lambda c: int(c[2:])):
        status, detail = _CRITERIA[key]
        terminalreporter.write_line(f"{key:<5} {status}  {detail}")
