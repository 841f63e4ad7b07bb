"""Collects acceptance-criterion outcomes and prints one line per criterion."""

import pytest

_RESULTS = {}


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    num, title = mark.args
    if call.when == "setup" and call.excinfo is not None:
        _RESULTS[num] = (title, "FAIL")
    elif call.when == "call":
        _RESULTS[num] = (title, "FAIL" if call.excinfo is not None else "PASS")


@pytest.hookimpl(trylast=True)
def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_RESULTS):
        title, verdict = _RESULTS[num]
        terminalreporter.write_line(f"criterion {num:2d}: {verdict}  {title}")
