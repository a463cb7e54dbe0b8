from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from matchcov.families import complete_graph, cycle, generate  # noqa: E402


@pytest.fixture(scope="session")
def named():
    """The fixed bricks plus a few small graphs, keyed by name."""
    out = {name: generate(name) for name in ("k4", "c6bar", "bicorn", "tricorn", "petersen")}
    out["c6"] = cycle(6)
    out["k33"] = generate("complete_bipartite", 3)
    out["w5"] = generate("odd_wheel", 5)
    out["w7"] = generate("odd_wheel", 7)
    out["k2"] = complete_graph(2)
    return out


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
