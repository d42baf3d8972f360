import pytest

_RESULTS: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None or (rep.when != "call" and not rep.failed):
        return
    number, title = marker.args
    detail = dict(item.user_properties).get("detail", "")
    ok = rep.passed and _RESULTS.get(number, (title, True, ""))[1]
    _RESULTS[number] = (title, ok, detail)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        title, ok, detail = _RESULTS[number]
        line = f"criterion {number} [{'PASS' if ok else 'FAIL'}] {title}"
        terminalreporter.write_line(line + (f" -- {detail}" if detail else ""))
