import pytest

from framex.biased import bicircular_bias, graphic_bias
from framex.graph import MultiGraph
from framex.matroid import FrameMatroid


K4_EDGES = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]


@pytest.fixture
def k4():
    return MultiGraph(4, K4_EDGES)


@pytest.fixture
def triangle():
    return MultiGraph(3, [(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def graphic_k4(k4):
    return FrameMatroid(graphic_bias(k4), "frame")


@pytest.fixture
def bicircular_k4(k4):
    return FrameMatroid(bicircular_bias(k4), "frame")
