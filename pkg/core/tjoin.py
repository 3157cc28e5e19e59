# ===============================================================
#  File: tjoin.py
#  Description: Exact minimum-join engine for Combgraft.
#               Computes nu(G, T), a deterministic minimum join,
#               allowed edges, and join-independent distances
#               with witness paths.
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
from functools import lru_cache

import networkx as nx

from config_loader import DEFAULT_OPTIONS
from core.errors import CapExceeded, Disconnected, InvalidWalk
from core.graft import Graft, Multigraph, Walk, WalkKind, is_join, weight

logger = logging.getLogger(__name__)

INFEASIBLE = math.inf
NO_EDGES = frozenset()


# ================================
#  Result Types
# ================================

@dataclass(frozen=True)
class MinJoinResult:
    nu: int
    join: frozenset


@dataclass(frozen=True)
class PathWitness:
    walk: Walk
    weight: int


# ================================
#  Shortest Paths (unit weights)
# ================================

def _hop_view(graph: Multigraph, blocked: frozenset):
    H = graph.to_networkx()
    if not blocked:
        return H
    return nx.restricted_view(H, [], [(*graph.ends(e), e) for e in blocked])


def _hops(graph: Multigraph, source: int, blocked: frozenset) -> list:
    """Hop distances from ``source`` avoiding ``blocked`` edges; None when unreachable"""
    reach = nx.single_source_shortest_path_length(_hop_view(graph, blocked), source)
    return [reach.get(v) for v in range(graph.n)]


def _least_path(graph: Multigraph, source: int, target: int, blocked: frozenset) -> tuple:
    """Lexicographically least edge-id sequence among shortest source-target paths"""
    to_target = _hops(graph, target, blocked)
    if to_target[source] is None:
        raise InvalidWalk(f"no path between {source} and {target}")
    path, cur = [], source
    while cur != target:
        for e in graph.incidence[cur]:
            if e in blocked:
                continue
            w = graph.other_end(e, cur)
            if to_target[w] is not None and to_target[w] == to_target[cur] - 1:
                path.append(e)
                cur = w
                break
    return tuple(path)


# ================================
#  Exact Pairing of Terminals
# ================================

@lru_cache(maxsize=8192)
def _solve(graph: Multigraph, terminals: frozenset, blocked: frozenset) -> tuple:
    """Minimum-cost pairing of terminals under hop distance.

    Returns ``(cost, pairs)``; cost is INFEASIBLE when no pairing exists, which
    happens exactly when some component of the residual graph holds an odd
    number of terminals. Subset DP over the remaining-terminal mask, always
    pairing the lowest remaining terminal; ties keep the smallest partner.
    """
    terms = sorted(terminals)
    t = len(terms)
    if t % 2:
        return INFEASIBLE, ()
    rows = [_hops(graph, s, blocked) for s in terms]
    hops = [[INFEASIBLE if rows[i][terms[j]] is None else rows[i][terms[j]]
             for j in range(t)] for i in range(t)]
    memo = {0: (0, None)}

    def best(mask):
        if mask in memo:
            return memo[mask][0]
        i = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << i)
        value, choice = INFEASIBLE, None
        pending = rest
        while pending:
            low = pending & -pending
            pending ^= low
            j = low.bit_length() - 1
            if hops[i][j] == INFEASIBLE:
                continue
            candidate = hops[i][j] + best(rest & ~low)
            if candidate < value:
                value, choice = candidate, j
        memo[mask] = (value, choice)
        return value

    full = (1 << t) - 1
    total = best(full)
    if total == INFEASIBLE:
        return INFEASIBLE, ()
    pairs, mask = [], full
    while mask:
        i = (mask & -mask).bit_length() - 1
        j = memo[mask][1]
        pairs.append((terms[i], terms[j]))
        mask &= ~((1 << i) | (1 << j))
    return int(total), tuple(pairs)


def _realize(graph: Multigraph, pairs: tuple, blocked: frozenset) -> frozenset:
    join = set()
    for s, t in pairs:
        join.symmetric_difference_update(_least_path(graph, s, t, blocked))
    return frozenset(join)


def _check_cap(G: Graft, options):
    if len(G.terminals) > options.max_terminals:
        logger.warning("Refusing graft with |T| = %d (cap %d)", len(G.terminals), options.max_terminals)
        raise CapExceeded("|T|", len(G.terminals), options.max_terminals)


# ================================
#  Public Engine
# ================================

def nu(G: Graft, options=None) -> int:
    """Size of a minimum join of G"""
    _check_cap(G, options or DEFAULT_OPTIONS)
    value, _ = _solve(G.graph, G.terminals, NO_EDGES)
    return value


def min_join(G: Graft, options=None) -> MinJoinResult:
    """A concrete minimum join, identical for identical input"""
    _check_cap(G, options or DEFAULT_OPTIONS)
    value, pairs = _solve(G.graph, G.terminals, NO_EDGES)
    join = _realize(G.graph, pairs, NO_EDGES)
    if len(join) != value or not is_join(G, join):
        raise RuntimeError(f"engine produced an invalid join {sorted(join)} for nu = {value}")
    logger.debug("min_join %s: nu=%d join=%s", G.fingerprint()[:12], value, sorted(join))
    return MinJoinResult(value, join)


def is_allowed(G: Graft, e: int, options=None) -> bool:
    """True iff some minimum join contains edge e"""
    options = options or DEFAULT_OPTIONS
    graph = G.graph
    graph.check_edges({e})
    if graph.is_loop(e):
        return False
    total = nu(G, options)
    residual, _ = _solve(graph, G.terminals.symmetric_difference(graph.ends(e)), frozenset({e}))
    return residual == total - 1


def allowed_edges(G: Graft, options=None) -> frozenset:
    options = options or DEFAULT_OPTIONS
    found = set(min_join(G, options).join)
    for e in range(G.graph.m):
        if e not in found and is_allowed(G, e, options):
            found.add(e)
    return frozenset(found)


def dist(G: Graft, x: int, y: int, options=None) -> int:
    """Minimum F-weight of an x-y path for any minimum join F.

    Computed as nu(G, T ^ {x, y}) - nu(G, T); dist(x, x) is 0.
    """
    options = options or DEFAULT_OPTIONS
    G.graph.check_vertices({x, y})
    if not G.connected(x, y):
        raise Disconnected(x, y)
    if x == y:
        return 0
    base = nu(G, options)
    shifted, _ = _solve(G.graph, G.terminals.symmetric_difference({x, y}), NO_EDGES)
    return shifted - base


def dist_table(G: Graft, options=None) -> tuple:
    """All-pairs distances; None marks pairs in different components"""
    options = options or DEFAULT_OPTIONS
    n = G.graph.n
    table = [[None] * n for _ in range(n)]
    for x in range(n):
        for y in range(x, n):
            if G.connected(x, y):
                table[x][y] = table[y][x] = dist(G, x, y, options)
    return tuple(tuple(row) for row in table)


def shortest_path_witness(G: Graft, x: int, y: int, options=None) -> PathWitness:
    """An F-shortest x-y path for the engine's reference minimum join F"""
    options = options or DEFAULT_OPTIONS
    if x == y:
        raise InvalidWalk("a witness path needs two distinct ends")
    expected = dist(G, x, y, options)
    graph = G.graph
    reference = min_join(G, options).join
    _, pairs = _solve(graph, G.terminals.symmetric_difference({x, y}), NO_EDGES)
    shifted = _realize(graph, pairs, NO_EDGES)
    # reference ^ shifted is an x-y path plus zero-weight circuits
    difference = reference.symmetric_difference(shifted)
    blocked = frozenset(range(graph.m)) - difference
    walk = Walk.from_edges(graph, x, _least_path(graph, x, y, blocked), WalkKind.PATH)
    witness = PathWitness(walk, weight(reference, walk))
    if witness.weight != expected:
        raise RuntimeError(f"witness weight {witness.weight} differs from dist {expected}")
    return witness
