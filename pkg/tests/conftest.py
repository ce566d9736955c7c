from __future__ import annotations

import pytest

CRITERIA = {
    1: "path-graph edge expansion is 2/(i+1) or 2/i",
    2: "path-graph SLEM >= 1 - 1/i",
    3: "adapted walk SLEM = 1 - |F|/|M(diam)|, graph complete",
    4: "slem-curve CSV: adapted below conventional, conventional non-decreasing",
    5: "fiber-graph diameters",
    6: "Hemmecke hypercube cut S_k",
    7: "inequality suite on the corpus",
    8: "boundary count in F(A3,6)",
    9: "oracle equivalence of enumeration and power moves",
    10: "walk statistics and TV envelope",
}

_outcomes: dict[int, list[tuple[str, str]]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number = marker.args[0]
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _outcomes.setdefault(number, []).append((item.name, report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(CRITERIA):
        results = _outcomes.get(number)
        if not results:
            terminalreporter.write_line(f"criterion {number:2d}: NOT RUN  {CRITERIA[number]}")
            continue
        failed = [name for name, status in results if status != "passed"]
        status = "FAIL" if failed else "PASS"
        line = f"criterion {number:2d}: {status}     {CRITERIA[number]}"
        if failed:
            line += f"  [failing: {', '.join(failed)}]"
        terminalreporter.write_line(line)
