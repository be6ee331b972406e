import os

import pytest

from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", deadline=None, max_examples=200,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


# acceptance bookkeeping: tests tagged @pytest.mark.criterion(k, "title") report
# their real outcome here and one summary line per criterion is printed at the end
_CRITERIA: dict[int, dict] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    k, title = mark.args
    entry = _CRITERIA.setdefault(k, {"title": title, "ok": True, "notes": [], "ran": False})
    if report.when == "call" or report.failed or report.skipped:
        entry["ran"] = entry["ran"] or report.when == "call"
        if report.failed or report.skipped:
            entry["ok"] = False
    if report.when == "teardown":
        entry["notes"] += [f"{k_}={v}" for k_, v in item.user_properties]


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_CRITERIA):
        e = _CRITERIA[k]
        status = "PASS" if e["ok"] and e["ran"] else "FAIL"
        line = f"criterion {k}: {status}  {e['title']}"
        if e["notes"]:
            line += "  [" + "; ".join(e["notes"]) + "]"
        terminalreporter.write_line(line)
