import pytest
from hypothesis import given

from config_loader import EngineOptions
from core import oracle, tjoin
from core.errors import CapExceeded, Disconnected, InvalidEdge, InvalidWalk
from core.generators import named_instances
from core.graft import build_multigraph, is_join, validate_graft, weight

from .strategies import grafts


@pytest.fixture(scope="module")
def named():
    return named_instances()


def ids(G, *labels):
    return [G.graph.vertex_id(label) for label in labels]


def test_k2(named):
    G = named["K2"]
    assert tjoin.nu(G) == 1
    assert tjoin.min_join(G).join == {0}
    assert tjoin.dist(G, 0, 1) == -1


def test_p4_join_and_allowed(named):
    G = named["P4"]
    assert tjoin.nu(G) == 2
    assert tjoin.min_join(G).join == {0, 2}
    assert tjoin.allowed_edges(G) == {0, 2}
    assert not tjoin.is_allowed(G, 1)


def test_p4_distances(named):
    G = named["P4"]
    v1, v2, v3, v4 = ids(G, "v1", "v2", "v3", "v4")
    assert tjoin.dist(G, v1, v2) == -1
    assert tjoin.dist(G, v1, v3) == 0
    assert tjoin.dist(G, v1, v4) == -1
    assert tjoin.dist(G, v2, v3) == 1


def test_p4_witness(named):
    G = named["P4"]
    v1, v4 = ids(G, "v1", "v4")
    witness = tjoin.shortest_path_witness(G, v1, v4)
    assert witness.weight == -1
    assert witness.walk.vertices == (0, 1, 2, 3)
    assert weight(tjoin.min_join(G).join, witness.walk) == -1


def test_c4_reference_join_and_allowed(named):
    G = named["C4"]
    assert tjoin.nu(G) == 2
    assert tjoin.min_join(G).join == {0, 2}
    assert tjoin.allowed_edges(G) == {0, 1, 2, 3}
    a1, b1, a2 = ids(G, "a1", "b1", "a2")
    assert tjoin.dist(G, a1, a2) == 0
    assert tjoin.dist(G, a1, b1) == -1


def test_star_distances(named):
    G = named["star-4"]
    assert tjoin.nu(G) == 4
    assert tjoin.min_join(G).join == {0, 1, 2, 3}
    teeth = ids(G, "b1", "b2", "b3", "b4")
    for x in teeth:
        for y in teeth:
            if x != y:
                assert tjoin.dist(G, x, y) == -2
    assert tjoin.dist(G, 0, teeth[0]) == -1


def test_triangle_single_allowed_edge(named):
    G = named["triangle"]
    assert tjoin.nu(G) == 1
    assert tjoin.allowed_edges(G) == {0}
    assert tjoin.dist(G, 0, 2) == 0


def test_loop_is_never_allowed():
    graph = build_multigraph(["a", "b"], [("a", "b"), ("a", "a")])
    G = validate_graft(graph, {0, 1})
    assert not tjoin.is_allowed(G, 1)
    with pytest.raises(InvalidEdge):
        tjoin.is_allowed(G, 5)


def test_empty_terminal_set_has_empty_join(named):
    G = validate_graft(named["C4"].graph, set())
    assert tjoin.nu(G) == 0
    assert tjoin.min_join(G).join == frozenset()
    assert tjoin.allowed_edges(G) == frozenset()


def test_distance_errors(named):
    G = named["K2+w"]
    assert tjoin.dist(G, 2, 2) == 0
    with pytest.raises(Disconnected):
        tjoin.dist(G, 0, 2)
    with pytest.raises(InvalidWalk):
        tjoin.shortest_path_witness(G, 0, 0)
    table = tjoin.dist_table(G)
    assert table[0][2] is None and table[0][1] == -1


def test_terminal_cap(named):
    with pytest.raises(CapExceeded) as excinfo:
        tjoin.nu(named["star-4"], EngineOptions(max_terminals=2))
    assert excinfo.value.quantity == "|T|"


@given(grafts())
def test_engine_matches_oracle(G):
    size, joins = oracle.brute_min_joins(G)
    result = tjoin.min_join(G)
    assert result.nu == size == tjoin.nu(G)
    assert is_join(G, result.join)
    assert result.join in joins
    assert tjoin.allowed_edges(G) == oracle.brute_allowed(G)


@given(grafts(max_vertices=5, max_edges=6))
def test_distances_match_oracle(G):
    join = tjoin.min_join(G).join
    for x in range(G.graph.n):
        for y in range(x + 1, G.graph.n):
            if G.connected(x, y):
                assert tjoin.dist(G, x, y) == oracle.brute_dist(G, x, y, join)


@given(grafts(max_vertices=5, max_edges=6))
def test_witness_attains_distance(G):
    join = tjoin.min_join(G).join
    for x in range(G.graph.n):
        for y in range(x + 1, G.graph.n):
            if G.connected(x, y):
                witness = tjoin.shortest_path_witness(G, x, y)
                assert witness.walk.ends == (x, y)
                assert weight(join, witness.walk) == witness.weight == tjoin.dist(G, x, y)


@given(grafts())
def test_min_join_is_deterministic(G):
    assert tjoin.min_join(G) == tjoin.min_join(G)
    assert tjoin.dist_table(G) == tjoin.dist_table(G)


@given(grafts(max_vertices=5, max_edges=7))
def test_distance_is_symmetric(G):
    for x in range(G.graph.n):
        for y in range(x + 1, G.graph.n):
            if G.connected(x, y):
                assert tjoin.dist(G, x, y) == tjoin.dist(G, y, x)


def test_hop_distances_hide_blocked_parallel_edges():
    graph = build_multigraph(["a", "b", "c"], [("a", "b"), ("a", "b"), ("b", "c")])
    assert tjoin._hops(graph, 0, frozenset()) == [0, 1, 2]
    assert tjoin._hops(graph, 0, frozenset({0})) == [0, 1, 2]
    assert tjoin._hops(graph, 0, frozenset({0, 1})) == [0, None, None]
    assert tjoin._least_path(graph, 0, 2, frozenset({0})) == (1, 2)
