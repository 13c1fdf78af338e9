import pytest

from ngram_cluster import build_context_index, build_corpus

# The four example phrases used for the worked tri-gram example.
PHRASES = "ভোরে সূর্য উঠার আগে।\nআগে খাওয়া শেষ করি।\nসকালে সূর্য উঠার পরে।\nপরে কাজটি শেষ করি।\n"


@pytest.fixture
def phrases_text():
    return PHRASES


@pytest.fixture
def phrases():
    return build_corpus([PHRASES])


@pytest.fixture
def phrases_index(phrases):
    return build_context_index(phrases, 3)


# -- acceptance summary --------------------------------------------------------

_criteria = {}


def pytest_runtest_logreport(report):
    if "criterion" not in report.keywords or report.when not in ("setup", "call"):
        return
    key = report.nodeid
    if report.failed or key not in _criteria:
        _criteria[key] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid, outcome in _criteria.items():
        name = nodeid.split("::", 1)[-1]
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion: acceptance criterion (reported in the summary)")
