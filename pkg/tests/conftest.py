import re

import pytest

_CRITERION = re.compile(r"test_criterion_(\d+)")


def pytest_configure(config):
    config._criteria = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    match = _CRITERION.match(item.name)
    if match is None:
        return
    number = int(match.group(1))
    doc = (item.function.__doc__ or "").strip()
    note = doc.splitlines()[0] if doc else ""
    if report.when == "call":
        item.config._criteria[number] = (report.passed, note)
    elif report.failed:
        # setup or teardown error counts as a failure of the criterion
        item.config._criteria[number] = (False, note)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    criteria = getattr(config, "_criteria", None)
    if not criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(criteria):
        passed, note = criteria[number]
        verdict = "PASS" if passed else "FAIL"
        terminalreporter.write_line("criterion %2d: %s  %s" % (number, verdict, note))
