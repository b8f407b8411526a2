import re
from pathlib import Path

import pytest

from ontosem.ontology import default_data

DATA = Path(__file__).resolve().parent.parent / "src" / "ontosem" / "data"


@pytest.fixture(scope="session")
def onto():
    return default_data(DATA)[0]


@pytest.fixture(scope="session")
def lex():
    return default_data(DATA)[1]


def edge_list(path=DATA / "default.ont"):
    """Child/parent pairs read straight from the file, independently of the loader."""
    edges = []
    for line in Path(path).read_text().splitlines():
        m = re.match(r"\s*type\s+(\w+)\s*<\s*(\w+)", line)
        if m:
            edges.append(m.groups())
    return edges


def reachable(edges, a, b):
    """Brute-force reachability: can ``b`` be reached from ``a`` along child->parent edges?"""
    frontier, seen = [a], {a}
    while frontier:
        x = frontier.pop()
        if x == b:
            return True
        for child, parent in edges:
            if child == x and parent not in seen:
                seen.add(parent)
                frontier.append(parent)
    return False


def categories(edges):
    return sorted({c for e in edges for c in e})


CORPUS = [s.strip() for s in (DATA / "corpus.txt").read_text().splitlines()
          if s.strip() and not s.startswith("#")]


_ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: one test per acceptance criterion")


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_criterion[" in report.nodeid:
        _ACCEPTANCE[report.nodeid.split("[")[1].rstrip("]")] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE, key=lambda n: int(n.rsplit("_", 1)[1])):
        verdict = "PASS" if _ACCEPTANCE[name] == "passed" else "FAIL"
        terminalreporter.write_line(f"{verdict} {name}")
