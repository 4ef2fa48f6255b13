import pytest

ACCEPTANCE: dict[int, tuple[str, str]] = {}


@pytest.fixture
def criterion(request):
    """Record a PASS/FAIL line for one acceptance criterion."""
    def record(number: int, summary: str):
        ACCEPTANCE[number] = ("FAIL", summary)
        request.node.user_properties.append(("criterion", number))
        return number
    yield record
    for name, number in request.node.user_properties:
        if name == "criterion":
            failed = getattr(request.node, "rep_call", None)
            status = "PASS" if failed is not None and failed.passed else "FAIL"
            ACCEPTANCE[number] = (status, ACCEPTANCE[number][1])
            print(f"criterion {number}: {status} {ACCEPTANCE[number][1]}")


@pytest.hookimpl(tryfirst=True, hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    setattr(item, "rep_" + rep.when, rep)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        status, summary = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d}: {status}  {summary}")
