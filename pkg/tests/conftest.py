from pathlib import Path

import pytest

from repind import GroupNeighbors, ReifyCopair, TriangleToStar
from util import build_movie_graph, build_two_char_graph

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture
def movie_graph():
    return build_movie_graph()


@pytest.fixture
def two_char_graph():
    return build_two_char_graph()


@pytest.fixture
def movie_transform():
    return TriangleToStar(film="F", actor="A", character="C", star="S")


@pytest.fixture
def dblp_group_transform():
    return GroupNeighbors(hub="P", leaf="A", group="G")


@pytest.fixture
def dblp_reify_transform():
    return ReifyCopair(anchor1="C", anchor2="Y", member="P", reified="R")
