import pytest

from wesat.core import EquationSystem, WordEquation


def eq(lhs, rhs):
    """Uppercase characters are variables."""
    return WordEquation.parse(lhs, rhs)


def system(*pairs, constraints=(), bounds=None, letters=""):
    return EquationSystem.from_equations([eq(l, r) for l, r in pairs], constraints, bounds,
                                         letters=letters)


# aZXb = aXaY: two solutions at bound 1
@pytest.fixture
def ex_two_solutions():
    return system(("aZXb", "aXaY"))


# XaXbYbZ = aXYYbZZbaa: unique small solution X=a^8, Y=a^4, Z=a^2
@pytest.fixture
def ex_powers():
    return system(("XaXbYbZ", "aXYYbZZbaa"))


POWER_BOUNDS = {"X": 8, "Y": 6, "Z": 6}


# aAaB = aCAb with A, B, C standing for three variables
@pytest.fixture
def ex_lengths():
    return system(("aAaB", "aCAb"))


# -- acceptance report ------------------------------------------------------
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda l: int(l.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
