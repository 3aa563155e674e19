import json
import sys
from pathlib import Path

import pytest

from qwdist.graphs import LabeledGraph
from qwdist.lattice import classify

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def order3():
    data = json.loads((FIXTURES / "order3_bases.json").read_text())
    data["graphs"] = {k: LabeledGraph.from_mask(3, m) for k, m in data["labels"].items()}
    return data


@pytest.fixture(scope="session")
def report3():
    return classify(3)


@pytest.fixture(scope="session")
def report4():
    return classify(4)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    rows = getattr(mod, "RESULTS", None)
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for number, status, text in rows:
        terminalreporter.write_line(f"[{status}] AC{number}: {text}")
