import pytest
from hypothesis import settings

settings.register_profile("sunhom", deadline=None)
settings.load_profile("sunhom")

_CRITERIA: dict[str, list[str]] = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    for mark in report.keywords:
        if mark.startswith("criterion_"):
            _CRITERIA.setdefault(mark, []).append(report.outcome)


def pytest_configure(config):
    for k in range(1, 12):
        config.addinivalue_line("markers", f"criterion_{k}: acceptance criterion {k}")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_CRITERIA, key=lambda s: int(s.split("_")[1])):
        outcomes = _CRITERIA[key]
        n_fail = sum(o == "failed" for o in outcomes)
        n_skip = sum(o == "skipped" for o in outcomes)
        if n_fail:
            status = "FAIL"
        elif n_skip == len(outcomes):
            status = "SKIP"
        else:
            status = "PASS"
        detail = f"{len(outcomes)} checks" + (f", {n_fail} failed" if n_fail else "") + (
            f", {n_skip} skipped" if n_skip else "")
        terminalreporter.write_line(f"criterion {key.split('_')[1]:>2}: {status} ({detail})")
