import pytest

# criterion id -> (passed, detail), filled by test_acceptance
ACCEPTANCE = {}


@pytest.fixture
def record():
    def _record(key, passed, detail=""):
        ACCEPTANCE[key] = (bool(passed), detail)
        return passed

    return _record


def pytest_runtest_makereport(item, call):
    # a criterion whose test raised counts as failed, whatever it recorded
    key = getattr(item.function, "criterion", None)
    if key and call.when == "call" and call.excinfo is not None:
        detail = ACCEPTANCE.get(key, (False, call.excinfo.typename))[1]
        ACCEPTANCE[key] = (False, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: int(k[2:])):
        passed, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"{key} {'PASS' if passed else 'FAIL'} {detail}")
