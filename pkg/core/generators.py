# ===============================================================
#  File: generators.py
#  Description: Deterministic instance construction for Combgraft.
#               Named desk instances, seeded random grafts, and
#               comb-bipartite grafts (constructive families plus
#               a rejection sampler).
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
import random
from dataclasses import dataclass

from core import tjoin
from core.decomposition import CombDesignation
from core.errors import Exhausted, GraftError
from core.graft import Graft, Multigraph, build_multigraph, connected_components, validate_graft

logger = logging.getLogger(__name__)


# ================================
#  Instance Specs
# ================================

@dataclass(frozen=True)
class InstanceSpec:
    family: str
    params: tuple = ()
    seed: int = 0


def _graft(labels, pairs, terminals) -> Graft:
    graph = build_multigraph(labels, pairs)
    return validate_graft(graph, {graph.vertex_id(t) for t in terminals})


def _cycle_labels(k):
    return [name for i in range(1, k + 1) for name in (f"a{i}", f"b{i}")]


# ================================
#  Named Instances
# ================================

def named_instances() -> dict:
    """Small instances with hand-checked decompositions, keyed by name"""
    instances = {}
    instances["K2"] = _graft(["u", "v"], [("u", "v")], ["u", "v"])
    instances["K2+w"] = _graft(["u", "v", "w"], [("u", "v")], ["u", "v"])
    instances["P4"] = comb_path(2)[0]
    instances["P6"] = comb_path(3)[0]
    instances["C4"] = comb_cycle(1)[0]
    instances["C6"] = _cycle_graft(3)
    instances["C8"] = comb_cycle(2)[0]
    instances["star-4"] = comb_star(4)[0]

    pendant_labels = ["a0", "b1", "b2", "x1", "y1", "x2", "y2"]
    pendant_edges = [("a0", "b1"), ("a0", "b2"), ("x1", "y1"), ("x2", "y2"), ("x1", "b1"), ("x2", "b2")]
    pendant_terminals = ["b1", "b2", "x1", "y1", "x2", "y2"]
    instances["two-pendant"] = _graft(pendant_labels, pendant_edges, pendant_terminals)
    instances["chain"] = _graft(
        pendant_labels + ["z1", "w1"],
        pendant_edges + [("z1", "w1"), ("z1", "y1")],
        pendant_terminals + ["z1", "w1"],
    )
    instances["triangle"] = _graft(
        ["v1", "v2", "v3"], [("v1", "v2"), ("v2", "v3"), ("v3", "v1")], ["v1", "v2"]
    )
    return instances


# ================================
#  Constructive Comb Families
# ================================

def comb_path(k: int) -> tuple:
    """P_2k with T = V; spine at odd positions"""
    labels = [f"v{i}" for i in range(1, 2 * k + 1)]
    G = _graft(labels, list(zip(labels, labels[1:])), labels)
    return G, CombDesignation(frozenset(range(0, 2 * k, 2)), frozenset(range(1, 2 * k, 2)))


def _cycle_graft(k: int) -> Graft:
    labels = _cycle_labels(k)
    return _graft(labels, list(zip(labels, labels[1:] + labels[:1])), labels)


def comb_cycle(k: int) -> tuple:
    """C_4k with T = V; spine a1, a2, ..."""
    G = _cycle_graft(2 * k)
    return G, CombDesignation(frozenset(range(0, 4 * k, 2)), frozenset(range(1, 4 * k, 2)))


def comb_star(teeth: int) -> tuple:
    """Star a0; b1..b_teeth with the teeth as terminals (teeth must be even)"""
    labels = ["a0"] + [f"b{i}" for i in range(1, teeth + 1)]
    G = _graft(labels, [("a0", b) for b in labels[1:]], labels[1:])
    return G, CombDesignation(frozenset({0}), frozenset(range(1, teeth + 1)))


# ================================
#  Random Generators
# ================================

def gen_random_graft(n: int, m: int, t_prob: float, seed: int) -> Graft:
    """Seeded uniform multigraph; terminal parity repaired by dropping terminals"""
    if n < 1 or m < 0:
        raise GraftError(f"need n >= 1 and m >= 0, got n={n}, m={m}")
    rng = random.Random(seed)
    edges = tuple((rng.randrange(n), rng.randrange(n)) for _ in range(m))
    graph = Multigraph(tuple(f"v{i}" for i in range(n)), edges)
    terminals = {v for v in range(n) if rng.random() < t_prob}
    for component in connected_components(graph):
        inside = component & terminals
        if len(inside) % 2:
            terminals.discard(min(inside))
    return Graft(graph, frozenset(terminals))


def gen_comb_random(n_spine: int, n_teeth: int, m: int, seed: int, max_tries: int) -> tuple:
    """Rejection-sample a comb-bipartite graft with |B| = n_teeth.

    Each try draws m spine-tooth edges, picks one edge per tooth, and takes the
    odd-degree vertices of that pick as T, so nu <= |B| always; the try is kept
    when nu = |B|.
    """
    rng = random.Random(seed)
    labels = tuple([f"a{i}" for i in range(n_spine)] + [f"b{j}" for j in range(n_teeth)])
    spine = frozenset(range(n_spine))
    teeth = frozenset(range(n_spine, n_spine + n_teeth))
    for attempt in range(max_tries):
        if n_spine == 0 and n_teeth:
            break
        edges = tuple((rng.randrange(n_spine), n_spine + rng.randrange(n_teeth)) for _ in range(m)) \
            if n_teeth else ()
        graph = Multigraph(labels, edges)
        if any(not graph.incidence[b] for b in teeth):
            continue
        parity = [0] * graph.n
        for b in sorted(teeth):
            u, v = graph.edges[rng.choice(graph.incidence[b])]
            parity[u] ^= 1
            parity[v] ^= 1
        G = Graft(graph, frozenset(v for v in range(graph.n) if parity[v]))
        if tjoin.nu(G) == n_teeth:
            logger.debug("Comb instance found after %d tries", attempt + 1)
            return G, CombDesignation(spine, teeth)
    raise Exhausted(max_tries)


def build_instance(spec: InstanceSpec) -> Graft:
    """Materialize an InstanceSpec; identical specs give identical grafts"""
    family, params = spec.family, tuple(spec.params)
    if family == "random":
        n, m, t_prob = params
        return gen_random_graft(int(n), int(m), float(t_prob), spec.seed)
    if family == "comb":
        n_spine, n_teeth, m, max_tries = params
        return gen_comb_random(int(n_spine), int(n_teeth), int(m), spec.seed, int(max_tries))[0]
    if family == "path":
        return comb_path(int(params[0]))[0]
    if family == "cycle":
        return comb_cycle(int(params[0]))[0]
    if family == "star":
        return comb_star(int(params[0]))[0]
    if family == "named":
        instances = named_instances()
        if params[0] not in instances:
            raise GraftError(f"unknown named instance {params[0]!r}")
        return instances[params[0]]
    raise GraftError(f"unknown instance family {family!r}")


# ================================
#  Sweeps
# ================================

def random_sweep(count: int, seed: int, max_edges: int = 12) -> list:
    """Seeded random grafts with at most ``max_edges`` edges"""
    rng = random.Random(seed)
    sweep = []
    for _ in range(count):
        n = rng.randint(1, 8)
        m = rng.randint(0, max_edges)
        sweep.append(gen_random_graft(n, m, rng.choice([0.3, 0.5, 0.8, 1.0]), rng.randrange(1 << 30)))
    return sweep


def comb_sweep(count: int, seed: int, max_vertices: int = 14) -> list:
    """Constructive and sampled comb-bipartite grafts as (graft, designation) pairs"""
    rng = random.Random(seed)
    constructive = [comb_path(k) for k in range(1, max_vertices // 2 + 1)]
    constructive += [comb_cycle(k) for k in range(1, max_vertices // 4 + 1)]
    constructive += [comb_star(t) for t in range(2, max_vertices, 2)]
    sweep = constructive[:count]
    while len(sweep) < count:
        n_spine = rng.randint(1, max_vertices // 2)
        n_teeth = rng.randint(1, max_vertices - n_spine)
        m = rng.randint(n_teeth, n_teeth + 6)
        try:
            sweep.append(gen_comb_random(n_spine, n_teeth, m, rng.randrange(1 << 30), 200))
        except Exhausted:
            continue
    return sweep
