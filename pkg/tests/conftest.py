import pytest

from token_spectra.graphs import Graph, KiteSpec, complete_graph, cycle_graph


@pytest.fixture
def y_tree() -> Graph:
    """Five-vertex tree shaped like a Y: two leaves at 2, then the path 2-3-4."""
    return Graph(5, [(0, 2), (1, 2), (2, 3), (3, 4)])


@pytest.fixture
def c4_kite_spec() -> KiteSpec:
    """13-vertex kite: 4-cycle head rooted at 0 with three pendant paths of length 3."""
    return KiteSpec(head=cycle_graph(4), root=0, s=3, r=3)


@pytest.fixture
def k3_kite_spec() -> KiteSpec:
    """12-vertex kite: triangle head rooted at 0 with three pendant paths of length 3."""
    return KiteSpec(head=complete_graph(3), root=0, s=3, r=3)


@pytest.fixture
def six_head_kite() -> tuple[Graph, KiteSpec]:
    """Kite with a 6-cycle-plus-chord head and two pendant paths of length 3."""
    head = Graph(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5), (1, 4)])
    return head, KiteSpec(head=head, root=0, s=2, r=3)
