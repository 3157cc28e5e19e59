# ===============================================================
#  File: oracle.py
#  Description: Exhaustive ground truth for small grafts.
#               Join and 1-factor enumeration, brute-force
#               distances, and the classical Dulmage-Mendelsohn
#               poset, used to cross-check the engine.
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
import math
from dataclasses import dataclass

import networkx as nx

from config_loader import DEFAULT_OPTIONS
from core.errors import CapExceeded, Disconnected, NotBipartite, NotFactorizable
from core.graft import Graft, Multigraph, circuits, simple_paths, two_coloring, weight
from core import tjoin

logger = logging.getLogger(__name__)

INFEASIBLE = math.inf


# ================================
#  Report Type
# ================================

@dataclass(frozen=True)
class OracleReport:
    fingerprint: str
    quantity: str
    oracle_value: object
    engine_value: object
    matched: bool

    @classmethod
    def compare(cls, G: Graft, quantity: str, oracle_value, engine_value) -> "OracleReport":
        return cls(G.fingerprint(), quantity, oracle_value, engine_value, oracle_value == engine_value)


# ================================
#  Joins
# ================================

def _check_edges(graph: Multigraph, options):
    if graph.m > options.max_edges:
        raise CapExceeded("|E|", graph.m, options.max_edges)


def _mask_to_set(mask: int) -> frozenset:
    found, e = [], 0
    while mask:
        if mask & 1:
            found.append(e)
        mask >>= 1
        e += 1
    return frozenset(found)


def _join_order(join: frozenset) -> tuple:
    return len(join), tuple(sorted(join))


def enumerate_joins(G: Graft, options=None) -> list:
    """Every join of G, sorted by (size, lexicographic edge ids)"""
    options = options or DEFAULT_OPTIONS
    graph = G.graph
    _check_edges(graph, options)
    # Gray-code walk: one edge flips per step, parity updates incrementally
    toggles = [(1 << u) ^ (1 << v) for u, v in graph.edges]
    target = sum(1 << v for v in G.terminals)
    subset = parity = 0
    masks = [0] if parity == target else []
    for step in range(1, 1 << graph.m):
        flip = (step & -step).bit_length() - 1
        subset ^= 1 << flip
        parity ^= toggles[flip]
        if parity == target:
            masks.append(subset)
    return sorted((_mask_to_set(mask) for mask in masks), key=_join_order)


def brute_min_joins(G: Graft, options=None) -> tuple:
    """(nu, every minimum join)"""
    joins = enumerate_joins(G, options)
    size = len(joins[0])
    return size, [join for join in joins if len(join) == size]


def brute_allowed(G: Graft, options=None) -> frozenset:
    _, joins = brute_min_joins(G, options)
    return frozenset().union(*joins)


def brute_dist(G: Graft, x: int, y: int, join=None, options=None):
    """Minimum F-weight over explicit x-y paths (or circuits through x when x == y).

    ``join`` defaults to the first oracle minimum join. Returns INFEASIBLE for
    x == y when no circuit passes through x.
    """
    options = options or DEFAULT_OPTIONS
    graph = G.graph
    _check_edges(graph, options)
    graph.check_vertices({x, y})
    if not G.connected(x, y):
        raise Disconnected(x, y)
    if join is None:
        join = brute_min_joins(G, options)[1][0]
    if x != y:
        walks = simple_paths(graph, x, graph.m, targets={y})
    else:
        walks = (c for c in circuits(graph, graph.m) if x in c.vertices)
    return min((weight(join, walk) for walk in walks), default=INFEASIBLE)


# ================================
#  1-Factors and Classical DM
# ================================

def enumerate_one_factors(graph: Multigraph, options=None) -> list:
    """Every perfect matching, sorted lexicographically by edge ids"""
    options = options or DEFAULT_OPTIONS
    _check_edges(graph, options)
    if graph.n % 2:
        return []
    found = []

    def extend(matched, chosen):
        free = next((v for v in range(graph.n) if not matched >> v & 1), None)
        if free is None:
            found.append(frozenset(chosen))
            return
        for e in graph.incidence[free]:
            w = graph.other_end(e, free)
            if w == free or matched >> w & 1:
                continue
            chosen.append(e)
            extend(matched | 1 << free | 1 << w, chosen)
            chosen.pop()

    extend(0, [])
    return sorted(found, key=lambda factor: tuple(sorted(factor)))


@dataclass(frozen=True)
class ClassicDMReference:
    components: tuple
    closure: frozenset  # (i, j) pairs with component i below component j, reflexive


def brute_classic_dm(graph: Multigraph, options=None) -> ClassicDMReference:
    """Classical DM poset built straight from 1-factor enumeration"""
    coloring = two_coloring(graph)
    if coloring is None:
        raise NotBipartite("graph is not bipartite")
    factors = enumerate_one_factors(graph, options)
    if not factors:
        raise NotFactorizable("graph has no 1-factor")
    allowed = frozenset().union(*factors)
    H = nx.Graph()
    H.add_nodes_from(range(graph.n))
    H.add_edges_from(graph.edges[e] for e in allowed)
    components = tuple(sorted((frozenset(c) for c in nx.connected_components(H)), key=min))
    owner = {v: i for i, c in enumerate(components) for v in c}
    k = len(components)
    related = [[i == j for j in range(k)] for i in range(k)]
    for u, v in graph.edges:
        a, b = (u, v) if coloring[u] == 0 else (v, u)
        # edge from A in C2 to B in C1 puts C1 below C2
        related[owner[b]][owner[a]] = True
    for mid in range(k):
        for i in range(k):
            if related[i][mid]:
                for j in range(k):
                    if related[mid][j]:
                        related[i][j] = True
    closure = frozenset((i, j) for i in range(k) for j in range(k) if related[i][j])
    return ClassicDMReference(components, closure)


# ================================
#  Engine Cross-Check
# ================================

def cross_check(G: Graft, options=None) -> list:
    """Compare every engine quantity with its exhaustive counterpart"""
    options = options or DEFAULT_OPTIONS
    size, joins = brute_min_joins(G, options)
    engine_join = tjoin.min_join(G, options)
    reports = [
        OracleReport.compare(G, "nu", size, tjoin.nu(G, options)),
        OracleReport.compare(G, "min_join", True, engine_join.join in joins),
        OracleReport.compare(G, "allowed", sorted(frozenset().union(*joins)),
                             sorted(tjoin.allowed_edges(G, options))),
    ]
    n = G.graph.n
    oracle_table = [[None] * n for _ in range(n)]
    for x in range(n):
        for y in range(x + 1, n):
            if G.connected(x, y):
                oracle_table[x][y] = oracle_table[y][x] = brute_dist(G, x, y, joins[0], options)
    engine_table = [list(row) for row in tjoin.dist_table(G, options)]
    for x in range(n):
        engine_table[x][x] = None
    reports.append(OracleReport.compare(G, "dist", oracle_table, engine_table))
    for report in reports:
        if not report.matched:
            logger.warning("Oracle mismatch on %s for %s", report.fingerprint[:12], report.quantity)
    return reports
