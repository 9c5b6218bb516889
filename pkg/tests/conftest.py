import sys
from pathlib import Path

from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much])
settings.load_profile("default")

_ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        if name.startswith("test_criterion_"):
            _ACCEPTANCE[name] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    # one line per criterion; a criterion passes when all of its tests pass
    by_number = {}
    for name, outcome in _ACCEPTANCE.items():
        by_number.setdefault(int(name.split("_")[2]), []).append(outcome)
    terminalreporter.section("acceptance criteria")
    for n in sorted(by_number):
        outcomes = by_number[n]
        verdict = "PASS" if all(o == "passed" for o in outcomes) else "FAIL"
        terminalreporter.write_line(f"criterion {n:2d}: {verdict} ({len(outcomes)} tests)")
