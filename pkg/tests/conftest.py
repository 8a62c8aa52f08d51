from fractions import Fraction

import pytest
from hypothesis import settings

from dualgalois.curve import PlaneCurve
from dualgalois.poly import parse_polynomial

settings.register_profile("default", deadline=None)
settings.load_profile("default")

FERMAT = "X^3+Y^3+Z^3"
NODAL = "X^2*Z+Y^2*(Y+Z)"


def curve(expr: str) -> PlaneCurve:
    return PlaneCurve(parse_polynomial(expr), name=expr)


def hesse(lam) -> str:
    lam = Fraction(lam)
    return f"X^3+Y^3+Z^3+({lam.numerator}/{lam.denominator})*X*Y*Z"


@pytest.fixture(scope="session")
def fermat():
    return curve(FERMAT)


@pytest.fixture(scope="session")
def nodal():
    return curve(NODAL)


# one summary line per acceptance criterion, filled in by test_acceptance
ACCEPTANCE_LINES: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
