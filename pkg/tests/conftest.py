import pytest

from theorycomb import logic as L

_RESULTS = pytest.StashKey[dict]()


@pytest.fixture(autouse=True)
def _fresh_names():
    L.reset_fresh()
    yield


@pytest.fixture
def record(request):
    """record(criterion, ok, detail) keeps a pass/fail line for the summary."""
    store = request.config.stash.setdefault(_RESULTS, {})

    def _record(criterion: int, ok: bool, detail: str) -> None:
        store[criterion] = (ok, detail)
        print(f"criterion {criterion}: {'PASS' if ok else 'FAIL'} - {detail}")

    return _record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    store = config.stash.get(_RESULTS, {})
    if not store:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(store):
        ok, detail = store[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")
