import pytest

CRITERIA = {
    1: "SRG oracle equivalence",
    2: "weak-solver agreement",
    3: "comparison budgets and doubling ratio",
    4: "iteration counts",
    5: "zero-comparison retrograde",
    6: "sorting-network reduction",
    7: "interdiction oracle equivalence",
    8: "weak interdiction agreement",
    9: "reduction soundness",
    10: "monotone bucket queue",
    11: "linear-pass scaling",
}

_outcomes: dict[int, list[bool]] = {}
_notes: dict[int, list[str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion covered by the test")


@pytest.fixture
def note(request):
    """Attach a measurement to the acceptance line of the test's criterion."""
    marker = request.node.get_closest_marker("criterion")

    def add(text):
        if marker:
            _notes.setdefault(marker.args[0], []).append(text)

    return add


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker and (rep.when == "call" or rep.failed or rep.skipped):
        _outcomes.setdefault(marker.args[0], []).append(rep.passed and not rep.skipped)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n, name in CRITERIA.items():
        if n not in _outcomes:
            continue
        results = _outcomes[n]
        verdict = "PASS" if all(results) else "FAIL"
        extra = "; ".join(_notes.get(n, []))
        terminalreporter.write_line(f"criterion {n:2d} {verdict}: {name}" + (f" ({extra})" if extra else ""))
