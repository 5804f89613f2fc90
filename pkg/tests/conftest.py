import math

import pytest

from hartmankit import kernels
from hartmankit.barriers import FtirGap, RectangularQuantumBarrier, UndersizedWaveguideBarrier, quarter_wave_stack
from hartmankit.units import C, EV, H, HBAR

# Shared configurations used across modules.
NU_FTIR = 8.345e9
LAMBDA_FTIR = C / NU_FTIR


@pytest.fixture(params=sorted(kernels.available_backends()))
def backend(request):
    return kernels.available_backends()[request.param]


@pytest.fixture
def quantum_1nm():
    return RectangularQuantumBarrier(10 * EV, 1e-9)


@pytest.fixture
def omega_5ev():
    return 5 * EV / HBAR


@pytest.fixture
def ftir_gap():
    return FtirGap(1.6, 1.0, math.radians(45), 3 * LAMBDA_FTIR, "s", NU_FTIR)


@pytest.fixture
def waveguide():
    return UndersizedWaveguideBarrier(6.557e9, 9.49e9, 0.040)


@pytest.fixture
def bragg():
    return quarter_wave_stack(2.0, 1.0, 5, 1e14)


# One summary line per acceptance criterion, taken from the actual test outcome.
_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is not None and rep.when == "call":
        detail = dict(item.user_properties).get("detail", "")
        _CRITERIA[marker.args[0]] = ("PASS" if rep.passed else "FAIL", marker.args[1], detail)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        status, title, detail = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number}: {status}  {title}  [{detail}]")
