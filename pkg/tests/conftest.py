import random
import sys
from itertools import combinations

import pytest

from chipfire.graph import Graph, GraphError, make_complete, make_cycle, make_path


def all_connected_graphs(n):
    """Every connected simple graph on n labelled vertices (fine for n <= 5)."""
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        edges = frozenset(frozenset(p) for k, p in enumerate(pairs) if mask >> k & 1)
        try:
            yield Graph(n, edges)
        except GraphError:
            continue


def named_graphs(max_n=6):
    out = []
    for n in range(2, max_n + 1):
        out += [make_path(n), make_complete(n)]
        if n >= 3:
            out.append(make_cycle(n))
    return out


@pytest.fixture
def rng():
    return random.Random(20240601)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for number in sorted(results):
            terminalreporter.write_line(results[number])
