import json
from pathlib import Path

import pytest

from longcycle.bijection import CactusTree
from longcycle.cactus import PartitionedCactus
from longcycle.perm import Permutation

DATA = Path(__file__).parent / "data"
ACCEPTANCE_LINES: list[str] = []


def cyc(n, *cycles):
    return Permutation.from_cycles(n, cycles)


@pytest.fixture
def five_color_pc():
    return PartitionedCactus.from_dict(json.loads((DATA / "five_color_cactus.json").read_text()))


@pytest.fixture
def four_color_tree():
    return CactusTree.from_dict(json.loads((DATA / "four_color_tree.json").read_text()))


@pytest.fixture
def four_cactus_pc():
    alphas = [cyc(3, (1, 2)), cyc(3, (1, 3)), cyc(3, (1, 2)), cyc(3, (1, 3))]
    return PartitionedCactus.build(alphas, [[[1, 2, 3]], [[1, 3], [2]], [[1, 2], [3]], [[1, 2, 3]]])


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
