import pytest

from betaline import kernels


@pytest.fixture(params=kernels.available_backends())
def backend(request):
    """Run the test once per available kernel backend."""
    previous = kernels.backend_name()
    kernels.use_backend(request.param)
    yield request.param
    kernels.use_backend(previous)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
