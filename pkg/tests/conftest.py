import numpy as np
import pytest

from pivotcc import LabelMatrix


def random_matrix(rng, n, k, max_label=3):
    return LabelMatrix(rng.integers(0, max_label, size=(n, k)))


@pytest.fixture
def nprng():
    return np.random.default_rng(20240611)


@pytest.fixture
def small_matrix():
    # rows are node label tuples over k=4 inputs
    return LabelMatrix([[0, 1, 2, 0], [0, 3, 2, 1], [1, 1, 0, 0], [1, 0, 0, 1], [0, 1, 2, 0]])


_CRITERIA = []


@pytest.fixture
def criterion(request):
    """Record one acceptance criterion outcome for the end-of-run summary."""
    entry = {"name": request.node.name, "detail": "", "passed": False}
    _CRITERIA.append(entry)

    def note(detail):
        entry["detail"] = detail

    yield note
    call = getattr(request.node, "rep_call", None)
    entry["passed"] = bool(call is not None and call.passed)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for e in _CRITERIA:
        status = "PASS" if e["passed"] else "FAIL"
        terminalreporter.write_line(f"[{status}] {e['name']}: {e['detail']}")
