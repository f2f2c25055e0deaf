import pytest

from packcolor import _backend

BACKENDS = ["python"] + (["compiled"] if _backend.BACKEND == "compiled" else [])


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for res in results:
            terminalreporter.write_line(res.line())
