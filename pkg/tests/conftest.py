import pytest

from dnvflops.core.degeneration import build_YP, build_YT
from dnvflops.core.enumeration import bfs
from dnvflops.core.morifan import build_flop_graph


@pytest.fixture(scope="module")
def yp():
    return build_YP()


@pytest.fixture(scope="module")
def yt():
    return build_YT()


@pytest.fixture(scope="session")
def p_classes():
    return bfs("P")


@pytest.fixture(scope="session")
def t_classes():
    return bfs("T")


@pytest.fixture(scope="session")
def flop_graph():
    return build_flop_graph()
