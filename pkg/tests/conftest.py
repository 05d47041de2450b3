import pytest

from gaussforge import create_field, parse_poly

SEXTIC_TEXT = "Z0^4*Z3*Z4 + Z1^6 + Z2^6"
QUINTIC_TEXT = "Z0^5 + Z1^5 - Z2^3*Z3^2"


@pytest.fixture(scope="session")
def gf3():
    return create_field(3)


@pytest.fixture(scope="session")
def sextic(gf3):
    return parse_poly(SEXTIC_TEXT, gf3, 5, homogeneous=True)


@pytest.fixture(scope="session")
def quintic(gf3):
    return parse_poly(QUINTIC_TEXT, gf3, 4, homogeneous=True)


@pytest.fixture(scope="session")
def quadric7():
    return parse_poly("Z0^2 + Z1^2 + Z2^2 + Z3^2", create_field(7), 4, homogeneous=True)


ACCEPTANCE_LINES: list[str] = []


def record_criterion(number: int, ok: bool, summary: str) -> None:
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {summary}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
