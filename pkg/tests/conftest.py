import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from kresolve.kmd_reduction import build_kmd_instance  # noqa: E402
from kresolve.resolving import table_for  # noqa: E402
from kresolve.threedm import TripleSystem  # noqa: E402

SMALL_3DM = TripleSystem(4, ((1, 1, 1), (1, 2, 3), (2, 3, 3), (2, 4, 1), (3, 1, 2), (4, 3, 4)))
SMALL_3DM_MATCHING = (2, 4, 5, 6)

TWELVE = TripleSystem(
    4,
    (
        (2, 1, 1), (3, 2, 2), (2, 1, 1), (1, 2, 1), (4, 3, 2), (1, 3, 3),
        (2, 1, 3), (1, 4, 4), (3, 2, 2), (4, 2, 4), (4, 3, 1), (4, 4, 4),
    ),
)
TWELVE_MATCHING = (1, 2, 6, 7, 8, 9, 11, 12)

# n = 3: a 2-matching (all six triples) but no perfect matching
NO_PERFECT_N3 = TripleSystem(3, ((1, 1, 1), (1, 2, 2), (2, 1, 2), (2, 3, 3), (3, 2, 3), (3, 3, 1)))


@pytest.fixture(scope="session")
def small_3dm():
    return SMALL_3DM


@pytest.fixture(scope="session")
def k3_instance():
    return build_kmd_instance(TWELVE, 3)


@pytest.fixture(scope="session")
def k3_table(k3_instance):
    return table_for(k3_instance.graph)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
