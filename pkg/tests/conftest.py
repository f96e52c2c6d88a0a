import pytest

_RESULTS = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    failed = call.excinfo is not None and call.when in ("setup", "call")
    entry = _RESULTS.setdefault(number, [title, True])
    if failed:
        entry[1] = False


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        title, ok = _RESULTS[number]
        terminalreporter.write_line("criterion %d: %s  %s" % (number, "PASS" if ok else "FAIL",
                                                             title))


@pytest.fixture
def two_world():
    from evidence_logic.corpus import gallery
    return gallery("two-world")


@pytest.fixture
def chain3():
    from evidence_logic.corpus import gallery
    return gallery("chain3")


@pytest.fixture(scope="session")
def clock1():
    from evidence_logic.corpus import clock_example1
    return clock_example1()
