import pytest

from hamsat.core.graph import parse_edge_list

FIVE_VERTEX_EDGES = """\
a 2 3
b 3 5
c 3 4
d 2 5
e 4 5
f 1 2
g 1 4
"""

THETA_EDGES = """\
a 2 3
c 3 4
d 2 5
e 4 5
f 1 2
g 1 4
"""

TWO_TRIANGLES_EDGES = """\
p 1 2
q 2 3
r 1 3
s 4 5
t 5 6
u 4 6
"""

TRIANGLE_EDGES = "p 1 2\nq 2 3\nr 1 3\n"

PATH_EDGES = "x 1 2\ny 2 3\n"


@pytest.fixture
def five_vertex():
    return parse_edge_list(FIVE_VERTEX_EDGES, vertex_order="natural")


@pytest.fixture
def theta():
    return parse_edge_list(THETA_EDGES, vertex_order="natural")


@pytest.fixture
def two_triangles():
    return parse_edge_list(TWO_TRIANGLES_EDGES, vertex_order="natural")


@pytest.fixture
def triangle():
    return parse_edge_list(TRIANGLE_EDGES)


@pytest.fixture
def path_graph():
    return parse_edge_list(PATH_EDGES, vertex_order="natural")


@pytest.fixture
def edge_index(five_vertex):
    """Номер переменной по метке ребра"""
    return {label: i for i, label in enumerate(five_vertex.edge_labels)}
