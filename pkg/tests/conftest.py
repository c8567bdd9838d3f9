"""Общие фикстуры: малые графы, группы каталога и прогон до n = 12."""

import networkx as nx
import pytest

from graphcore import SimpleGraph
from groups import catalog_group
from harness.report import SweepConfig
from harness.sweep import sweep_cyclic
from tests.helpers import graph_of


@pytest.fixture
def p3() -> SimpleGraph:
    return graph_of(nx.path_graph(3))


@pytest.fixture
def c5() -> SimpleGraph:
    return graph_of(nx.cycle_graph(5))


@pytest.fixture
def two_k2() -> SimpleGraph:
    return SimpleGraph.from_edges(4, [(0, 1), (2, 3)])


@pytest.fixture
def s3():
    return catalog_group("S3")


@pytest.fixture(scope="session")
def sweep_12():
    return sweep_cyclic(SweepConfig(max_n=12, workers=1))
