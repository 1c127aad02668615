import contextlib
import time

import pytest

from fatgraph_xi.enumeration import enumerate_graphs, random_graphs


@pytest.fixture(scope="session")
def bordered1():
    return enumerate_graphs(1)


@pytest.fixture(scope="session")
def bordered2():
    return enumerate_graphs(2)


@pytest.fixture(scope="session")
def bordered12(bordered1, bordered2):
    return bordered1 + bordered2


@pytest.fixture(scope="session")
def punctured12():
    return enumerate_graphs(1, "punctured") + enumerate_graphs(2, "punctured")


@pytest.fixture(scope="session")
def random3():
    return random_graphs(3, 40, seed=7)


# -- acceptance bookkeeping -----------------------------------------------------

def pytest_configure(config):
    config.acceptance_lines = []


@pytest.fixture
def accept(request):
    """``with accept(n, title, limit=seconds): ...`` records one summary line."""
    lines = request.config.acceptance_lines

    @contextlib.contextmanager
    def run(n, title, limit=None):
        t0 = time.perf_counter()
        ok = False
        try:
            yield
            ok = True
        finally:
            dt = time.perf_counter() - t0
            if ok and limit is not None and dt >= limit:
                ok = False
                title += " (over %ss limit)" % limit
            lines.append((n, "PASS" if ok else "FAIL", title, dt))
        if limit is not None:
            assert dt < limit, "took %.1fs, limit %ss" % (dt, limit)
    return run


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "acceptance_lines", [])
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for n, status, title, dt in sorted(lines):
        terminalreporter.write_line("criterion %2d  %s  %-72s %7.2fs" % (n, status, title, dt))
