import pytest

_verdicts = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if item.get_closest_marker("acceptance") is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        detail = dict(item.user_properties).get("detail", "")
        status = "PASS" if report.passed else "FAIL"
        _verdicts.append((item.name, status, detail))


def pytest_terminal_summary(terminalreporter):
    if not _verdicts:
        return
    terminalreporter.section("acceptance")
    for name, status, detail in _verdicts:
        terminalreporter.write_line(f"{status} {name.removeprefix('test_')}: {detail}")
    passed = sum(s == "PASS" for _, s, _ in _verdicts)
    terminalreporter.write_line(f"{passed}/{len(_verdicts)} acceptance checks passed")
