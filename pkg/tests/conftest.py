import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

_criteria: list[tuple[str, str, str]] = []


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    props = dict(report.user_properties)
    if "criterion" in props:
        _criteria.append((props["criterion"], report.outcome.upper(), props.get("measured", "")))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome, measured in sorted(_criteria, key=lambda c: int(c[0].split(".")[0])):
        line = f"{'PASS' if outcome == 'PASSED' else 'FAIL'}  {name}"
        if measured:
            line += f"  [{measured}]"
        terminalreporter.write_line(line)
