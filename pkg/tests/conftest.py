from collections import defaultdict

import pytest

from ringlogic.device import Gate, fit_ring_params, program_for


def pytest_addoption(parser):
    parser.addoption("--update-golden", action="store_true", help="rewrite golden files instead of comparing")


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")
    config._criteria = defaultdict(list)


@pytest.fixture
def update_golden(request):
    return request.config.getoption("--update-golden")


@pytest.fixture(scope="session")
def params():
    return fit_ring_params()


@pytest.fixture(scope="session")
def programs():
    return {g: program_for(g) for g in Gate}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        item.config._criteria[marker.args[0]].append((item.name, report.outcome))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    crit = config._criteria
    if not crit:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(crit):
        results = crit[n]
        ok = all(o == "passed" for _, o in results)
        failed = [name for name, o in results if o != "passed"]
        line = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'} ({len(results) - len(failed)}/{len(results)} checks)"
        if failed:
            line += " failing: " + ", ".join(failed)
        terminalreporter.write_line(line)
