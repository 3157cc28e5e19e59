# ===============================================================
#  File: graft.py
#  Description: Multigraph and graft data model for Combgraft.
#               Cuts, neighbor sets, F-weights, joins, walks,
#               ears, balance, and path / circuit enumeration.
#
#  Author: ac.craft8
#  Created: 2025-06-24
#  License: MIT
# ===============================================================

# ================================
#  Module and Library Imports
# ================================
from __future__ import annotations

import enum
import hashlib
import json
from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable, Iterator, Optional, Union

import networkx as nx

from core.errors import (
    DuplicateLabel,
    InvalidEdge,
    InvalidVertex,
    InvalidWalk,
    OddComponent,
    UnknownLabel,
)

EdgeSet = frozenset  # frozenset[int] of edge ids
VertexSet = frozenset  # frozenset[int] of vertex ids


# ================================
#  Multigraph
# ================================

@dataclass(frozen=True)
class Multigraph:
    """Labeled vertices plus an indexed edge list; loops and parallel edges allowed.

    Vertex ids are the positions in ``labels``; edge ids are the positions in
    ``edges``. Nothing ever renumbers an edge.
    """

    labels: tuple
    edges: tuple

    def __post_init__(self):
        n = len(self.labels)
        for e, (u, v) in enumerate(self.edges):
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidEdge(e)

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def index(self) -> dict:
        return {label: i for i, label in enumerate(self.labels)}

    @cached_property
    def incidence(self) -> tuple:
        """Per vertex, the sorted ids of incident edges (a loop is listed once)"""
        table = [set() for _ in range(self.n)]
        for e, (u, v) in enumerate(self.edges):
            table[u].add(e)
            table[v].add(e)
        return tuple(tuple(sorted(ids)) for ids in table)

    def ends(self, e: int) -> tuple:
        if not 0 <= e < self.m:
            raise InvalidEdge(e)
        return self.edges[e]

    def other_end(self, e: int, v: int) -> int:
        u, w = self.ends(e)
        if v == u:
            return w
        if v == w:
            return u
        raise InvalidWalk(f"edge {e} is not incident to vertex {v}")

    def is_loop(self, e: int) -> bool:
        u, v = self.ends(e)
        return u == v

    def vertex_id(self, label: Hashable) -> int:
        try:
            return self.index[label]
        except KeyError:
            raise UnknownLabel(label) from None

    def label(self, v: int) -> Hashable:
        return self.labels[v]

    def check_vertices(self, X: Iterable[int]) -> VertexSet:
        X = frozenset(X)
        for v in X:
            if not isinstance(v, int) or not 0 <= v < self.n:
                raise InvalidVertex(v)
        return X

    def check_edges(self, S: Iterable[int]) -> EdgeSet:
        S = frozenset(S)
        for e in S:
            if not isinstance(e, int) or not 0 <= e < self.m:
                raise InvalidEdge(e)
        return S

    def to_networkx(self) -> nx.MultiGraph:
        """Read-only networkx view; edge keys are edge ids"""
        return self._nx

    @cached_property
    def _nx(self) -> nx.MultiGraph:
        H = nx.MultiGraph()
        H.add_nodes_from(range(self.n))
        H.add_edges_from((u, v, e) for e, (u, v) in enumerate(self.edges))
        return H


def build_multigraph(labels: Iterable[Hashable], endpoint_pairs: Iterable) -> Multigraph:
    """Build a multigraph from distinct labels and label pairs (edge id = position)"""
    labels = tuple(labels)
    index = {}
    for i, label in enumerate(labels):
        if label in index:
            raise DuplicateLabel(label)
        index[label] = i
    edges = []
    for u, v in endpoint_pairs:
        for label in (u, v):
            if label not in index:
                raise UnknownLabel(label)
        edges.append((index[u], index[v]))
    return Multigraph(labels, tuple(edges))


def connected_components(G: Multigraph) -> tuple:
    """Connected components as vertex sets, ordered by smallest vertex id"""
    parts = (frozenset(c) for c in nx.connected_components(G.to_networkx()))
    return tuple(sorted(parts, key=min))


def two_coloring(G: Multigraph):
    """Colors 0/1 per vertex, the smallest vertex of each component colored 0; None if not bipartite"""
    if any(u == v for u, v in G.edges):
        return None
    H = G.to_networkx()
    if not nx.is_bipartite(H):
        return None
    color = nx.bipartite.color(H)
    for component in connected_components(G):
        if color[min(component)]:
            for v in component:
                color[v] ^= 1
    return tuple(color[v] for v in range(G.n))


def cut(G: Multigraph, X: Iterable[int]) -> EdgeSet:
    X = G.check_vertices(X)
    return frozenset(e for e, (u, v) in enumerate(G.edges) if (u in X) != (v in X))


def neighbors(G: Multigraph, X: Iterable[int]) -> VertexSet:
    X = G.check_vertices(X)
    found = set()
    for u, v in G.edges:
        if u in X and v not in X:
            found.add(v)
        elif v in X and u not in X:
            found.add(u)
    return frozenset(found)


def induced_edges(G: Multigraph, X: Iterable[int]) -> EdgeSet:
    X = G.check_vertices(X)
    return frozenset(e for e, (u, v) in enumerate(G.edges) if u in X and v in X)


# ================================
#  Graft
# ================================

@dataclass(frozen=True)
class Graft:
    """A multigraph with a terminal set holding an even count in every component"""

    graph: Multigraph
    terminals: frozenset

    def __post_init__(self):
        object.__setattr__(self, "terminals", self.graph.check_vertices(self.terminals))
        for component in self.components:
            if len(component & self.terminals) % 2:
                raise OddComponent(component)

    @cached_property
    def components(self) -> tuple:
        return connected_components(self.graph)

    @cached_property
    def component_of(self) -> tuple:
        owner = [0] * self.graph.n
        for i, component in enumerate(self.components):
            for v in component:
                owner[v] = i
        return tuple(owner)

    def connected(self, x: int, y: int) -> bool:
        return self.component_of[x] == self.component_of[y]

    def fingerprint(self) -> str:
        payload = {
            "vertices": [str(label) for label in self.graph.labels],
            "edges": [list(pair) for pair in self.graph.edges],
            "terminals": sorted(self.terminals),
        }
        raw = json.dumps(payload, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(raw.encode("utf-8")).hexdigest()


def validate_graft(G: Multigraph, T: Iterable[int]) -> Graft:
    """Return the graft (G, T); raises OddComponent on a parity violation"""
    return Graft(G, G.check_vertices(T))


def weight(F: Iterable[int], S: Union[Iterable[int], "Walk"]) -> int:
    """F-weight: -1 for each edge in F, +1 otherwise"""
    F = frozenset(F)
    ids = S.edges if isinstance(S, Walk) else S
    return sum(-1 if e in F else 1 for e in ids)


def is_join(G: Graft, F: Iterable[int]) -> bool:
    graph = G.graph
    parity = [0] * graph.n
    for e in graph.check_edges(F):
        u, v = graph.edges[e]
        if u != v:
            parity[u] ^= 1
            parity[v] ^= 1
    return all(parity[v] == (v in G.terminals) for v in range(graph.n))


# ================================
#  Walks
# ================================

class WalkKind(enum.Enum):
    PATH = "path"
    CIRCUIT = "circuit"


@dataclass(frozen=True)
class Walk:
    """Alternating vertex / edge-id sequence that is a path or a circuit"""

    vertices: tuple
    edges: tuple
    kind: WalkKind = WalkKind.PATH

    @classmethod
    def from_edges(cls, G: Multigraph, start: int, edge_ids: Iterable[int], kind=None) -> "Walk":
        vertices = [start]
        edge_ids = tuple(edge_ids)
        for e in edge_ids:
            vertices.append(G.other_end(e, vertices[-1]))
        if kind is None:
            closed = bool(edge_ids) and vertices[-1] == start
            kind = WalkKind.CIRCUIT if closed else WalkKind.PATH
        return cls(tuple(vertices), edge_ids, kind).validate(G)

    def validate(self, G: Multigraph) -> "Walk":
        if len(self.vertices) != len(self.edges) + 1:
            raise InvalidWalk("vertex and edge sequences do not alternate")
        for i, e in enumerate(self.edges):
            u, v = G.ends(e)
            if {u, v} != {self.vertices[i], self.vertices[i + 1]}:
                raise InvalidWalk(f"edge {e} does not join positions {i} and {i + 1}")
        if self.kind is WalkKind.PATH:
            if len(set(self.vertices)) != len(self.vertices):
                raise InvalidWalk("a path repeats a vertex")
        else:
            if not self.edges or self.vertices[0] != self.vertices[-1]:
                raise InvalidWalk("a circuit must close on its first vertex")
            body = self.vertices[:-1]
            if len(set(body)) != len(body) or len(set(self.edges)) != len(self.edges):
                raise InvalidWalk("a circuit repeats a vertex or an edge")
        return self

    @property
    def ends(self) -> tuple:
        return self.vertices[0], self.vertices[-1]

    @property
    def interior(self) -> tuple:
        return self.vertices[1:-1]

    def subpath(self, x: int, y: int) -> "Walk":
        """xPy: the subpath between two vertices of a path"""
        if self.kind is not WalkKind.PATH:
            raise InvalidWalk("subpaths are taken on paths only")
        i, j = self.vertices.index(x), self.vertices.index(y)
        if i <= j:
            return Walk(self.vertices[i:j + 1], self.edges[i:j], WalkKind.PATH)
        return Walk(self.vertices[j:i + 1][::-1], self.edges[j:i][::-1], WalkKind.PATH)

    def segments(self, edge_set: Iterable[int], inside: bool) -> list:
        """Maximal subpaths whose edges all lie in (or all avoid) ``edge_set``"""
        if self.kind is not WalkKind.PATH:
            raise InvalidWalk("segments are taken on paths only")
        edge_set = frozenset(edge_set)
        found, start = [], None
        for i, e in enumerate(self.edges + (None,)):
            member = e is not None and (e in edge_set) == inside
            if member and start is None:
                start = i
            elif not member and start is not None:
                found.append(Walk(self.vertices[start:i + 1], self.edges[start:i], WalkKind.PATH))
                start = None
        return found


def is_ear(G: Multigraph, X: Iterable[int], W: Walk) -> bool:
    X = G.check_vertices(X)
    W.validate(G)
    if W.kind is WalkKind.PATH:
        if not W.edges:
            return False
        return W.vertices[0] in X and W.vertices[-1] in X and not X.intersection(W.interior)
    return len(X.intersection(W.vertices)) == 1


def is_balanced(W: Walk, F: Iterable[int], exempt_ends: bool = False,
                teeth: Optional[Iterable[int]] = None) -> bool:
    """Every vertex with two walk-edges has exactly one of them in F.

    With ``exempt_ends`` a circuit is read as a closed ear: its first vertex is
    treated as the ear's end and is not required to be balanced. Given ``teeth``
    (the tooth set of a comb designation) only tooth vertices are checked, so a
    path may pass a spine vertex on two F edges or on two non-F edges.
    """
    F = frozenset(F)
    checked = None if teeth is None else frozenset(teeth)
    incident = defaultdict(list)
    for i, e in enumerate(W.edges):
        incident[W.vertices[i]].append(e)
        incident[W.vertices[i + 1]].append(e)
    skip = W.vertices[0] if exempt_ends and W.kind is WalkKind.CIRCUIT else None
    for v, ids in incident.items():
        if v == skip or len(ids) < 2:
            continue
        if checked is not None and v not in checked:
            continue
        inside = sum(e in F for e in ids)
        if inside != 1 or len(ids) - inside != 1:
            return False
    return True


# ================================
#  Enumeration
# ================================

def simple_paths(G: Multigraph, source: int, max_len: int, avoid: Iterable[int] = (),
                 targets: Iterable[int] = None) -> Iterator[Walk]:
    """All simple paths from ``source`` with 1..max_len edges, parallel edges kept apart"""
    avoid = G.check_vertices(avoid)
    if source in avoid or max_len < 1:
        return
    pool = range(G.n) if targets is None else G.check_vertices(targets)
    ends = {t for t in pool if t != source and t not in avoid}
    if not ends:
        return
    H = G.to_networkx()
    if avoid:
        H = nx.restricted_view(H, avoid, [])
    for edge_path in nx.all_simple_edge_paths(H, source, ends, cutoff=max_len):
        yield Walk.from_edges(G, source, (key for _, _, key in edge_path), WalkKind.PATH)


def circuits(G: Multigraph, max_len: int) -> Iterator[Walk]:
    """Every circuit with at most ``max_len`` edges, each listed once.

    A circuit is generated from its smallest edge id ``e = uv`` followed by a
    v-u path over larger edge ids.
    """
    for e, (u, v) in enumerate(G.edges):
        if max_len < 1:
            return
        if u == v:
            yield Walk((u, u), (e,), WalkKind.CIRCUIT)
            continue
        if max_len < 2:
            continue
        H = nx.MultiGraph()
        H.add_nodes_from(range(G.n))
        H.add_edges_from((a, b, k) for k, (a, b) in enumerate(G.edges) if k > e and a != b)
        for edge_path in nx.all_simple_edge_paths(H, v, u, cutoff=max_len - 1):
            ids = (e,) + tuple(key for _, _, key in edge_path)
            yield Walk.from_edges(G, u, ids, WalkKind.CIRCUIT)
