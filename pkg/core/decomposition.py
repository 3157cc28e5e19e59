# ===============================================================
#  File: decomposition.py
#  Description: Canonical decompositions of grafts.
#               Factor-components, the Kotzig-Lovasz partition,
#               comb-bipartite designations, the Dulmage-Mendelsohn
#               poset with defining sequences, attributes of upper
#               bounds, and the classical DM specialization.
#
#  Author: ac.craft8
#  Created: 2025-06-24
#  License: MIT
# ===============================================================

# ================================
#  Module and Library Imports
# ================================
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass

import networkx as nx

from config_loader import DEFAULT_OPTIONS
from core import oracle, tjoin
from core.errors import (
    AntisymmetryViolation,
    InconsistentLabeling,
    NotBipartite,
    NotComb,
    NotFactorizable,
    NotRelated,
    OddComponent,
    UnknownComponent,
)
from core.graft import Graft, Multigraph, cut, neighbors, two_coloring, validate_graft

logger = logging.getLogger(__name__)


# ================================
#  Domain Types
# ================================

@dataclass(frozen=True)
class FactorComponent:
    id: int
    vertices: frozenset
    edges: frozenset  # allowed edges inside the component


@dataclass(frozen=True)
class KLPartition:
    classes: tuple  # vertex sets, ordered by smallest vertex
    class_of: tuple  # vertex id -> class index
    component_classes: tuple  # component id -> class indices

    def related(self, x: int, y: int) -> bool:
        return self.class_of[x] == self.class_of[y]


@dataclass(frozen=True)
class CombDesignation:
    spine: frozenset  # A
    teeth: frozenset  # B


@dataclass(frozen=True)
class DMPoset:
    designation: CombDesignation
    components: tuple  # FactorComponent, indexed by id
    base: tuple  # base[i][j]: component i directly below (or equal to) j
    closure: tuple  # closure[i][j]: component i below (or equal to) j
    hasse: tuple  # cover pairs (lower, upper)

    def __len__(self):
        return len(self.components)

    def leq(self, c1: int, c2: int) -> bool:
        return self.closure[c1][c2]

    def component_of(self, v: int) -> int:
        for component in self.components:
            if v in component.vertices:
                return component.id
        raise UnknownComponent(v)

    def minimal(self) -> tuple:
        return tuple(j for j in range(len(self)) if not any(
            self.closure[i][j] for i in range(len(self)) if i != j))

    def maximal(self) -> tuple:
        return tuple(i for i in range(len(self)) if not any(
            self.closure[i][j] for j in range(len(self)) if i != j))


@dataclass(frozen=True)
class AttributeMap:
    base: int
    classes: tuple  # the KL classes partitioning B within the base component
    labels: dict  # strict upper bound -> index into classes
    buckets: tuple  # per class, the upper bounds carrying it (possibly empty)


# ================================
#  Factor-Components and KL Classes
# ================================

def factor_components(G: Graft, options=None) -> tuple:
    """Connected components of the allowed-edge subgraph, singletons included"""
    options = options or DEFAULT_OPTIONS
    graph = G.graph
    allowed = tjoin.allowed_edges(G, options)
    H = nx.Graph()
    H.add_nodes_from(range(graph.n))
    H.add_edges_from(graph.edges[e] for e in allowed)
    parts = sorted((frozenset(part) for part in nx.connected_components(H)), key=min)
    return tuple(
        FactorComponent(i, part, frozenset(e for e in allowed if graph.edges[e][0] in part))
        for i, part in enumerate(parts)
    )


def kl_partition(G: Graft, options=None, components=None) -> KLPartition:
    """Classes of: same factor-component and distance zero"""
    options = options or DEFAULT_OPTIONS
    components = components or factor_components(G, options)
    found = []
    for component in components:
        assigned = set()
        for v in sorted(component.vertices):
            if v in assigned:
                continue
            members = {v} | {u for u in component.vertices
                             if u not in assigned and u != v and tjoin.dist(G, v, u, options) == 0}
            assigned |= members
            found.append(frozenset(members))
    classes = tuple(sorted(found, key=min))
    class_of = [0] * G.graph.n
    for i, members in enumerate(classes):
        for v in members:
            class_of[v] = i
    component_classes = tuple(
        tuple(sorted({class_of[v] for v in component.vertices})) for component in components
    )
    return KLPartition(classes, tuple(class_of), component_classes)


# ================================
#  Comb-Bipartite Designations
# ================================

def is_bipartition(graph: Multigraph, d: CombDesignation) -> bool:
    if d.spine & d.teeth or (d.spine | d.teeth) != frozenset(range(graph.n)):
        return False
    return all((u in d.spine) != (v in d.spine) for u, v in graph.edges)


def is_comb(G: Graft, d: CombDesignation, options=None) -> bool:
    return is_bipartition(G.graph, d) and tjoin.nu(G, options) == len(d.teeth)


def check_designation(G: Graft, d: CombDesignation, options=None):
    if not is_bipartition(G.graph, d):
        raise NotComb("spine and tooth sets do not form a bipartition of the graph")
    total = tjoin.nu(G, options)
    if total != len(d.teeth):
        raise NotComb(f"nu = {total} differs from the tooth count {len(d.teeth)}")


def comb_designations(G: Graft, options=None) -> list:
    """Both role assignments of the canonical 2-coloring that satisfy nu = |B|"""
    coloring = two_coloring(G.graph)
    if coloring is None:
        return []
    first = frozenset(v for v, c in enumerate(coloring) if c == 0)
    second = frozenset(v for v, c in enumerate(coloring) if c == 1)
    total = tjoin.nu(G, options)
    candidates = (CombDesignation(first, second), CombDesignation(second, first))
    return [d for d in candidates if len(d.teeth) == total]


def verify_comb_characterization(G: Graft, d: CombDesignation, options=None) -> bool:
    """Every minimum join meets every tooth's cut exactly once"""
    _, joins = oracle.brute_min_joins(G, options)
    cuts = [cut(G.graph, {v}) for v in sorted(d.teeth)]
    return all(len(join & star) == 1 for join in joins for star in cuts)


def comb_characterization_exists(G: Graft, d: CombDesignation, options=None) -> bool:
    """Some minimum join meets every tooth's cut exactly once"""
    _, joins = oracle.brute_min_joins(G, options)
    cuts = [cut(G.graph, {v}) for v in sorted(d.teeth)]
    return any(all(len(join & star) == 1 for star in cuts) for join in joins)


# ================================
#  Dulmage-Mendelsohn Poset
# ================================

def base_relation(G: Graft, d: CombDesignation, components) -> tuple:
    """base[i][j] iff i == j or some edge joins A in component j to B in component i"""
    owner = {v: c.id for c in components for v in c.vertices}
    k = len(components)
    base = [[i == j for j in range(k)] for i in range(k)]
    for u, v in G.graph.edges:
        a, b = (u, v) if u in d.spine else (v, u)
        base[owner[b]][owner[a]] = True
    return tuple(tuple(row) for row in base)


def dm_relation(G: Graft, d: CombDesignation, options=None) -> DMPoset:
    options = options or DEFAULT_OPTIONS
    check_designation(G, d, options)
    components = factor_components(G, options)
    base = base_relation(G, d, components)
    k = len(components)
    D = nx.DiGraph()
    D.add_nodes_from(range(k))
    D.add_edges_from((i, j) for i in range(k) for j in range(k) if i != j and base[i][j])
    reach = {i: nx.descendants(D, i) | {i} for i in range(k)}
    for i in range(k):
        for j in range(i + 1, k):
            if j in reach[i] and i in reach[j]:
                logger.warning("Antisymmetry broken between components %d and %d", i, j)
                raise AntisymmetryViolation(i, j)
    closure = tuple(tuple(j in reach[i] for j in range(k)) for i in range(k))
    hasse = tuple(sorted(nx.transitive_reduction(D).edges()))
    return DMPoset(d, components, base, closure, hasse)


def _check_component(p: DMPoset, c: int):
    if not isinstance(c, int) or not 0 <= c < len(p):
        raise UnknownComponent(c)


def upper_bounds(p: DMPoset, c: int) -> frozenset:
    """Strict upper bounds of component c"""
    _check_component(p, c)
    return frozenset(j for j in range(len(p)) if j != c and p.closure[c][j])


def defining_sequence(p: DMPoset, c1: int, c2: int) -> list:
    """Shortest base-relation chain from c1 up to c2; ties go to smaller ids"""
    _check_component(p, c1)
    _check_component(p, c2)
    if c1 == c2 or not p.leq(c1, c2):
        raise NotRelated(c1, c2)
    k = len(p)
    steps = {c2: 0}
    queue = deque([c2])
    while queue:
        j = queue.popleft()
        for i in range(k):
            if i != j and p.base[i][j] and i not in steps:
                steps[i] = steps[j] + 1
                queue.append(i)
    sequence = [c1]
    while sequence[-1] != c2:
        cur = sequence[-1]
        sequence.append(min(j for j in range(k)
                            if j != cur and p.base[cur][j] and steps.get(j) == steps[cur] - 1))
    return sequence


# ================================
#  Attributes of Upper Bounds
# ================================

def b_classes(partition: KLPartition, d: CombDesignation, component: FactorComponent) -> tuple:
    """Indices of the KL classes that make up B within a component"""
    return tuple(i for i in partition.component_classes[component.id]
                 if partition.classes[i] <= d.teeth)


def attributes(G: Graft, d: CombDesignation, p: DMPoset, c0: int, options=None,
               partition=None) -> AttributeMap:
    """Label each strict upper bound of c0 by a KL class inside B within c0.

    Upper bounds adjacent to c0 are seeded by the class of their neighbors in
    c0; labels then spread along edges between upper bounds.
    """
    options = options or DEFAULT_OPTIONS
    _check_component(p, c0)
    partition = partition or kl_partition(G, options, p.components)
    graph = G.graph
    base_vertices = p.components[c0].vertices
    class_ids = b_classes(partition, d, p.components[c0])
    up = sorted(upper_bounds(p, c0))

    seeds = {}
    for c in up:
        touching = neighbors(graph, p.components[c].vertices) & base_vertices
        if not touching:
            continue
        found = {partition.class_of[v] for v in touching}
        if len(found) != 1 or not found <= set(class_ids):
            raise InconsistentLabeling(c, found)
        seeds[c] = found.pop()

    owner = {v: comp.id for comp in p.components for v in comp.vertices}
    blocks = nx.Graph()
    blocks.add_nodes_from(up)
    for u, v in graph.edges:
        cu, cv = owner[u], owner[v]
        if cu != cv and cu in blocks and cv in blocks:
            blocks.add_edge(cu, cv)

    labels = {}
    for block in nx.connected_components(blocks):
        found = {seeds[c] for c in block if c in seeds}
        if len(found) != 1:
            raise InconsistentLabeling(min(block), found)
        label = found.pop()
        for c in block:
            labels[c] = class_ids.index(label)

    buckets = tuple(tuple(c for c in up if labels[c] == i) for i in range(len(class_ids)))
    classes = tuple(partition.classes[i] for i in class_ids)
    return AttributeMap(c0, classes, dict(sorted(labels.items())), buckets)


# ================================
#  Classical Dulmage-Mendelsohn
# ================================

def classic_dm(graph: Multigraph, options=None) -> DMPoset:
    """DM poset of a factorizable bipartite graph, read as the graft (G, V(G))"""
    options = options or DEFAULT_OPTIONS
    coloring = two_coloring(graph)
    if coloring is None:
        raise NotBipartite("graph is not bipartite")
    try:
        G = validate_graft(graph, range(graph.n))
    except OddComponent as exc:
        raise NotFactorizable(f"component {sorted(exc.component)} has odd order") from None
    if tjoin.nu(G, options) * 2 != graph.n:
        raise NotFactorizable("graph has no 1-factor")
    d = CombDesignation(
        frozenset(v for v, c in enumerate(coloring) if c == 0),
        frozenset(v for v, c in enumerate(coloring) if c == 1),
    )
    return dm_relation(G, d, options)
