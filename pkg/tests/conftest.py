import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from noonsim import _pykernels  # noqa: E402

try:
    from noonsim import _ckernels
except ImportError:  # extension not built
    _ckernels = None

KERNEL_BACKENDS = [pytest.param(_pykernels, id="python")]
KERNEL_BACKENDS.append(
    pytest.param(_ckernels, id="cython",
                 marks=pytest.mark.skipif(_ckernels is None, reason="extension not built"))
)

ACCEPTANCE_LINES = []


@pytest.fixture(params=KERNEL_BACKENDS)
def kernels(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
