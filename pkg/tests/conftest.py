import pytest

from kdquad.core import GratingMode, PulseParams, depth_from_pulse_area

TAU = 1e-6
K = 1e7


def mode_for(w, kind="quadrupole", k=K, tau=TAU):
    depth = depth_from_pulse_area(w, tau)
    if kind == "dipole":
        return GratingMode.dipole(k, depth)
    return GratingMode.quadrupole(k, depth)


@pytest.fixture
def pulse():
    return PulseParams(TAU)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
