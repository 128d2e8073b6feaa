import os
from collections import defaultdict

import pytest

# acceptance-criterion bookkeeping: tests marked ``criterion(k, title)`` are
# tallied and one PASS/FAIL line per criterion is printed at the end
_TITLES = {}
_OUTCOMES = defaultdict(list)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")
    config.addinivalue_line("markers", "slow: long-running check")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, title = mark.args
    _TITLES[number] = title
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _OUTCOMES[number].append((item.nodeid, rep.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _OUTCOMES:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_OUTCOMES):
        results = _OUTCOMES[number]
        passed = sum(1 for _, o in results if o == "passed")
        failed = [nid for nid, o in results if o == "failed"]
        if failed:
            status = "FAIL"
        elif passed == 0:
            status = "SKIP"
        else:
            status = "PASS"
        tr.write_line(f"criterion {number:2d}: {status}  {passed}/{len(results)} checks passed  "
                      f"{_TITLES[number]}")
        for nid in failed:
            tr.write_line(f"    failed: {nid}")


def mc_replications():
    """Replications for the simulation comparison (``GINISCALE_MC_REPS``)."""
    return int(os.environ.get("GINISCALE_MC_REPS", "100000"))
