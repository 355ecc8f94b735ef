"""Acceptance-criterion reporting: one PASS/FAIL line per ``criterion`` marker."""

import pytest

_RESULTS = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, label): acceptance criterion covered by a test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, label = marker.args
    failed = rep.failed or (rep.when == "call" and rep.outcome != "passed")
    if rep.when == "call" or failed:
        prev = _RESULTS.get(number, (label, True, ""))
        detail = getattr(item, "criterion_detail", "")
        _RESULTS[number] = (label, prev[1] and not failed, detail or prev[2])


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        label, ok, detail = _RESULTS[number]
        line = f"[{'PASS' if ok else 'FAIL'}] {number}. {label}"
        terminalreporter.write_line(line + (f"  ({detail})" if detail else ""))
