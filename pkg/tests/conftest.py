import pytest

from modemsim import _fallback
from modemsim.signal import ModemConfig

try:
    from modemsim import _kernels
except ImportError:
    _kernels = None

BACKENDS = [pytest.param(_fallback, id="python")]
BACKENDS.append(pytest.param(_kernels, id="compiled",
                             marks=pytest.mark.skipif(_kernels is None, reason="extension not built")))


@pytest.fixture
def cfg():
    return ModemConfig()


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
