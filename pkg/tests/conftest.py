import math

import pytest

from matchkit.model import Graph, make_graph

ROOT3 = math.sqrt(3.0)


def build(vertices, edges, red=(), **kw) -> Graph:
    return make_graph(vertices=[(float(x), float(y)) for x, y in vertices],
                      edges=edges, red_edges=red, **kw)


@pytest.fixture
def triangle() -> Graph:
    return build([(0, 0), (1, 0), (0.5, ROOT3 / 2)],
                 [(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def unit_square() -> Graph:
    return build([(0, 0), (1, 0), (1, 1), (0, 1)],
                 [(0, 1), (1, 2), (2, 3), (0, 3)])


@pytest.fixture
def braced_square() -> Graph:
    d = math.sqrt(2.0)
    g = build([(0, 0), (1, 0), (1, 1), (0, 1)],
              [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)])
    assert abs(math.dist(g.vertices[0], g.vertices[2]) - d) < 1e-12
    return g
