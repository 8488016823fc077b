"""Collects acceptance outcomes and prints one PASS/FAIL line per criterion."""

_CRITERIA: dict[str, tuple[str, str]] = {}  # nodeid -> (id, description)
_OUTCOMES: dict[str, str] = {}  # criterion id -> "PASS" | "FAIL"


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(cid, description): an acceptance criterion checked exactly")


def pytest_collection_finish(session):
    for item in session.items:
        mark = item.get_closest_marker("acceptance")
        if mark is not None:
            _CRITERIA[item.nodeid] = mark.args


def pytest_runtest_logreport(report):
    if report.nodeid not in _CRITERIA:
        return
    cid = _CRITERIA[report.nodeid][0]
    if report.failed:
        _OUTCOMES[cid] = "FAIL"
    elif report.when == "call" and report.passed:
        _OUTCOMES.setdefault(cid, "PASS")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    seen = {}
    for cid, desc in _CRITERIA.values():
        seen.setdefault(cid, desc)
    for cid in sorted(seen, key=lambda c: int(c[2:])):
        status = _OUTCOMES.get(cid, "FAIL")
        note = "" if cid in _OUTCOMES else ", not run"
        terminalreporter.write_line(f"{status} {cid}: {seen[cid]} (exact{note})")
