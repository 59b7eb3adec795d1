import pytest

_CRITERIA: dict[str, dict] = {}


@pytest.fixture
def criterion(request):
    """Register an acceptance criterion; the test's outcome decides PASS or FAIL."""
    marker = request.node.get_closest_marker("criterion")
    ac_id, title = marker.args
    entry = _CRITERIA.setdefault(ac_id, {"title": title, "detail": [], "failed": False, "ran": False})

    def note(text: str):
        entry["detail"].append(text)
    return note


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(id, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call":
        return
    ac_id, title = marker.args
    entry = _CRITERIA.setdefault(ac_id, {"title": title, "detail": [], "failed": False, "ran": False})
    entry["ran"] = True
    if report.failed:
        entry["failed"] = True


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for ac_id in sorted(_CRITERIA, key=lambda s: int(s[2:])):
        e = _CRITERIA[ac_id]
        status = "FAIL" if e["failed"] or not e["ran"] else "PASS"
        detail = "; ".join(e["detail"])
        terminalreporter.write_line(f"{ac_id:5s} {status}  {e['title']}" + (f"  [{detail}]" if detail else ""))
