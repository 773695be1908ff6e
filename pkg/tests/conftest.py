import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from oracles import AB, corpus, reference_corpus  # noqa: E402


@pytest.fixture(scope="session")
def ab():
    return AB


@pytest.fixture(scope="session")
def regex_corpus():
    return corpus() + reference_corpus()


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.RESULTS:
        terminalreporter.write_line(line)
