import re

import pytest

_CRITERIA = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = re.match(r"test_criterion_(\d+)", item.name)
    if m and item.module.__name__.endswith("test_acceptance"):
        if rep.when == "call" or (rep.when == "setup" and rep.failed):
            _CRITERIA[item.name] = (int(m.group(1)), rep.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name, (n, outcome) in sorted(_CRITERIA.items(), key=lambda kv: (kv[1][0], kv[0])):
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {n}: {status}  ({name})")
