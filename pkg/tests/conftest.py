import pytest

from maxrank.exact import jet_space

P = 2**31 - 1


@pytest.fixture
def xy():
    sp = jet_space(2, 8, P)
    return sp, *sp.gens()


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
