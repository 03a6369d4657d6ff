import re

_ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)", report.nodeid)
    if not m:
        return
    key = (int(m.group(1)), m.group(2).replace("_", " "))
    if report.failed:
        _ACCEPTANCE[key] = "FAIL"
    elif report.when == "call":
        _ACCEPTANCE.setdefault(key, "PASS")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for (num, name), outcome in sorted(_ACCEPTANCE.items()):
        terminalreporter.write_line(f"criterion {num:>2}  {name:<36} {outcome}")
