import re

_CRITERIA = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_criterion_(\d+)_(\w+)", report.nodeid)
    if m and report.when == "call":
        _CRITERIA[int(m.group(1))] = (m.group(2), report.outcome)
    elif m and report.failed:
        _CRITERIA[int(m.group(1))] = (m.group(2), "failed")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_CRITERIA):
        name, outcome = _CRITERIA[k]
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {k}: {verdict}  {name.replace('_', ' ')}")
