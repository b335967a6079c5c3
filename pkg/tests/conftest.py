import pytest

_ACCEPTANCE: list[tuple[str, str, str]] = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    criterion = item.get_closest_marker("criterion")
    if criterion is None or report.when != "call":
        return
    number, title = criterion.args
    _ACCEPTANCE.append((str(number), "PASS" if report.passed else "FAIL", title))


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, status, title in sorted(_ACCEPTANCE, key=lambda t: int(t[0])):
        terminalreporter.write_line(f"[{status}] criterion {number}: {title}")
