from __future__ import annotations

import pytest

from sflows.complex import SimplicialComplex, parse_complex
from sflows.fixtures import fixture_names, load_fixture

TETRA = "1 2 4\n1 3 4\n2 3 4\n1 2 3"
BIPYRAMID = "0 1 2\n0 1 3\n0 2 3\n1 2 3\n1 2 4\n1 3 4\n2 3 4"


@pytest.fixture(scope="session")
def tetra() -> SimplicialComplex:
    return parse_complex(TETRA)


@pytest.fixture(scope="session")
def bipyramid() -> SimplicialComplex:
    return parse_complex(BIPYRAMID)


@pytest.fixture(scope="session")
def simplex2() -> SimplicialComplex:
    return parse_complex("0 1 2")


@pytest.fixture(scope="session")
def klein() -> SimplicialComplex:
    return load_fixture("klein")


@pytest.fixture(scope="session")
def fixtures() -> dict[str, SimplicialComplex]:
    return {name: load_fixture(name) for name in fixture_names()}


_acceptance: list[tuple[str, str]] = []


def pytest_runtest_logreport(report):
    if "test_acceptance" in report.nodeid and "criterion" in report.nodeid:
        if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
            _acceptance.append((report.nodeid.split("::")[-1], report.outcome.upper()))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance:
        terminalreporter.write_line(f"{'PASS' if outcome == 'PASSED' else 'FAIL'}  {name}")
