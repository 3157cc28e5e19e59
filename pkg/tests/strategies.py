from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from core.graft import Graft, Multigraph, connected_components

settings.register_profile(
    "combgraft",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("combgraft")


@st.composite
def grafts(draw, max_vertices=6, max_edges=8, loops=True):
    """Small multigraphs with a parity-repaired terminal set"""
    n = draw(st.integers(min_value=1, max_value=max_vertices))
    vertex = st.integers(min_value=0, max_value=n - 1)
    pairs = st.tuples(vertex, vertex)
    if not loops:
        pairs = pairs.filter(lambda pair: pair[0] != pair[1])
    edges = draw(st.lists(pairs, max_size=max_edges))
    graph = Multigraph(tuple(f"v{i}" for i in range(n)), tuple(edges))
    terminals = set(draw(st.sets(vertex)))
    for component in connected_components(graph):
        inside = component & terminals
        if len(inside) % 2:
            terminals.discard(min(inside))
    return Graft(graph, frozenset(terminals))


def relabel(G, perm):
    """The same graft with vertex v renumbered perm[v]; labels and edge ids travel along"""
    graph = G.graph
    labels = [None] * graph.n
    for v, label in enumerate(graph.labels):
        labels[perm[v]] = label
    edges = tuple((perm[u], perm[v]) for u, v in graph.edges)
    return Graft(Multigraph(tuple(labels), edges), frozenset(perm[v] for v in G.terminals))


@st.composite
def relabeled_grafts(draw, **kwargs):
    """A graft, a vertex permutation, and the graft renumbered by it"""
    G = draw(grafts(**kwargs))
    perm = draw(st.permutations(range(G.graph.n)))
    return G, perm, relabel(G, perm)
