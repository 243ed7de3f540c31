from __future__ import annotations

from collections import Counter
from itertools import product

import pytest
from hypothesis import strategies as st

from window_lab import parse_sequence

bit_strings = st.text(alphabet="01", min_size=1, max_size=80)


def brute_counts(text: str, k: int) -> Counter:
    """Independent oracle: slice a string repeated enough times to cover every wrap."""
    n = len(text)
    tiled = text * (k // n + 2)
    return Counter(tiled[i : i + k] for i in range(n))


def all_texts(n: int):
    return ("".join(bits) for bits in product("01", repeat=n))


def seq(text: str):
    return parse_sequence(text)


_criteria: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion this test belongs to")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    marks = getattr(report, "criterion", None)
    if marks is None:
        return
    number, title = marks
    entry = _criteria.setdefault(number, {"title": title, "passed": 0, "failed": 0, "skipped": 0})
    entry[report.outcome] += 1


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        report.criterion = (mark.args[0], mark.args[1])


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        e = _criteria[number]
        status = "FAIL" if e["failed"] else ("PASS" if e["passed"] else "SKIP")
        terminalreporter.write_line(f"criterion {number}: {status}  {e['title']}  ({e['passed']} passed, {e['failed']} failed, {e['skipped']} skipped)")
