import math

import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20211014)


def brute_force_links(positions, radius):
    out = set()
    for i in range(len(positions)):
        for j in range(i + 1, len(positions)):
            if math.dist(positions[i], positions[j]) <= radius:
                out.add((i, j))
    return out


_CRITERIA = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label, text): acceptance criterion this test checks")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.failed):
        detail = getattr(item, "criterion_detail", "")
        _CRITERIA.append((marker.args[0], marker.args[1], report.passed, detail))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for label, text, passed, detail in sorted(_CRITERIA, key=lambda c: c[0]):
        status = "PASS" if passed else "FAIL"
        line = f"[{status}] {label:<4} {text}"
        if detail:
            line += f"  ({detail})"
        terminalreporter.write_line(line)
