import time

SESSION = {}


def pytest_sessionstart(session):
    SESSION["start"] = time.monotonic()


def pytest_collection_modifyitems(session, config, items):
    # the wall-clock criterion has to see every other test finish first
    last = [it for it in items if it.name == "test_criterion_13_suite_runtime"]
    items[:] = [it for it in items if it not in last] + last


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        terminalreporter.write_line(f"criterion {n:2d}: {RESULTS[n]}")
