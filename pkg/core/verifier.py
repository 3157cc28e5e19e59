# ===============================================================
#  File: verifier.py
#  Description: Executable checks of the structure theorems for
#               grafts and comb-bipartite grafts. Every check is
#               deterministic, enumerates explicit witnesses up
#               to the configured caps, and reports a replayable
#               counterexample when it fails.
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
import functools
import itertools
import logging
from dataclasses import dataclass, field, replace

from config_loader import DEFAULT_OPTIONS
from core import decomposition, oracle, tjoin
from core.errors import CapExceeded, GraftError
from core.graft import (
    Graft,
    circuits,
    induced_edges,
    is_balanced,
    is_ear,
    is_join,
    neighbors,
    simple_paths,
    weight,
)

logger = logging.getLogger(__name__)


# ================================
#  Result Type
# ================================

class CheckStatus(enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    CAP = "cap-exceeded"


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: CheckStatus
    witnessed: int = 0
    counterexample: dict = None
    coverage: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status is CheckStatus.PASS

    @property
    def vacuous(self) -> bool:
        return self.passed and self.witnessed == 0

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "status": self.status.value,
            "witnessed": self.witnessed,
            "vacuous": self.vacuous,
            "counterexample": self.counterexample,
            "coverage": self.coverage,
        }


def _guarded(name):
    """Turn a CapExceeded raised inside a check into a cap-exceeded result"""
    def wrap(check):
        @functools.wraps(check)
        def run(G, *args, **kwargs):
            try:
                return check(G, *args, **kwargs)
            except CapExceeded as exc:
                logger.warning("Check %s skipped: %s", name, exc)
                return CheckResult(name, CheckStatus.CAP, 0, {"error": str(exc)})
        run.check_name = name
        return run
    return wrap


def _walk_payload(G: Graft, walk) -> dict:
    return {
        "kind": walk.kind.value,
        "vertices": [str(G.graph.label(v)) for v in walk.vertices],
        "edges": list(walk.edges),
    }


def _labels(G: Graft, vertices) -> list:
    return [str(G.graph.label(v)) for v in sorted(vertices)]


def _fail(name, witnessed, **payload) -> CheckResult:
    logger.warning("Check %s failed: %s", name, payload)
    return CheckResult(name, CheckStatus.FAIL, witnessed, payload)


def _pass(name, witnessed, **coverage) -> CheckResult:
    return CheckResult(name, CheckStatus.PASS, witnessed, None, coverage)


def _connected_pairs(G: Graft):
    n = G.graph.n
    return [(x, y) for x in range(n) for y in range(x + 1, n) if G.connected(x, y)]


def _component_pairs(component):
    return list(itertools.combinations(sorted(component.vertices), 2))


# ================================
#  General Graft Checks
# ================================

@_guarded("circuit_lemma")
def check_circuit_lemma(G: Graft, options=None) -> CheckResult:
    """Zero-weight circuits flip one minimum join into another; no circuit is negative"""
    name = "circuit_lemma"
    options = options or DEFAULT_OPTIONS
    result = tjoin.min_join(G, options)
    allowed = tjoin.allowed_edges(G, options)
    witnessed = 0
    for circuit in circuits(G.graph, options.max_path_len):
        value = weight(result.join, circuit)
        if value < 0:
            return _fail(name, witnessed, circuit=_walk_payload(G, circuit), weight=value)
        if value:
            continue
        witnessed += 1
        flipped = result.join.symmetric_difference(circuit.edges)
        if not is_join(G, flipped) or len(flipped) != result.nu:
            return _fail(name, witnessed, circuit=_walk_payload(G, circuit), reason="flip is not a minimum join")
        if not allowed.issuperset(circuit.edges):
            return _fail(name, witnessed, circuit=_walk_payload(G, circuit), reason="edge not allowed")
    return _pass(name, witnessed, max_path_len=options.max_path_len)


@_guarded("distance_invariance")
def check_distance_invariance(G: Graft, options=None) -> CheckResult:
    """Path-enumeration distances agree under every minimum join"""
    name = "distance_invariance"
    options = options or DEFAULT_OPTIONS
    graph = G.graph
    _, joins = oracle.brute_min_joins(G, options)
    witnessed = 0
    every_circuit = list(circuits(graph, graph.m))
    pairs = _connected_pairs(G) + [(x, x) for x in range(graph.n)]
    for x, y in pairs:
        if x != y:
            walks = list(simple_paths(graph, x, graph.m, targets={y}))
        else:
            walks = [c for c in every_circuit if x in c.vertices]
        values = [min((weight(F, w) for w in walks), default=None) for F in joins]
        if len(joins) > 1:
            witnessed += 1
        if len(set(values)) > 1:
            return _fail(name, witnessed, pair=_labels(G, {x, y}),
                         values={",".join(map(str, sorted(F))): v for F, v in zip(joins, values)})
    return _pass(name, witnessed, minimum_joins=len(joins))


@_guarded("nonpositive_distance")
def check_nonpositive_distance(G: Graft, options=None) -> CheckResult:
    """Distances inside a factor-component are never positive"""
    name = "nonpositive_distance"
    options = options or DEFAULT_OPTIONS
    witnessed = 0
    for component in decomposition.factor_components(G, options):
        for x, y in _component_pairs(component):
            witnessed += 1
            value = tjoin.dist(G, x, y, options)
            if value > 0:
                return _fail(name, witnessed, pair=_labels(G, {x, y}), dist=value)
    return _pass(name, witnessed)


@_guarded("kl_equivalence")
def check_kl_equivalence(G: Graft, options=None) -> CheckResult:
    """Same-component-and-distance-zero is transitive and matches the KL partition"""
    name = "kl_equivalence"
    options = options or DEFAULT_OPTIONS
    components = decomposition.factor_components(G, options)
    partition = decomposition.kl_partition(G, options, components)
    witnessed = 0
    for component in components:
        members = sorted(component.vertices)
        related = {(x, y): x == y or tjoin.dist(G, x, y, options) == 0 for x in members for y in members}
        for x, y in related:
            if related[x, y] != partition.related(x, y):
                return _fail(name, witnessed, pair=_labels(G, {x, y}), reason="partition disagrees")
        for x, y, z in itertools.permutations(members, 3):
            if related[x, y] and related[y, z]:
                witnessed += 1
                if not related[x, z]:
                    return _fail(name, witnessed, triple=[str(G.graph.label(v)) for v in (x, y, z)])
    return _pass(name, witnessed, classes=len(partition.classes))


# ================================
#  Comb-Bipartite Checks
# ================================

def _comb_guard(G, d, options):
    decomposition.check_designation(G, d, options)


@_guarded("comb_characterization")
def check_comb_characterization(G: Graft, d, options=None) -> CheckResult:
    """Every (and hence some) minimum join meets each tooth exactly once"""
    name = "comb_characterization"
    options = options or DEFAULT_OPTIONS
    _comb_guard(G, d, options)
    _, joins = oracle.brute_min_joins(G, options)
    witnessed = len(joins) * len(d.teeth)
    if not decomposition.verify_comb_characterization(G, d, options):
        return _fail(name, witnessed, reason="a minimum join meets some tooth more than once")
    if not decomposition.comb_characterization_exists(G, d, options):
        return _fail(name, witnessed, reason="no minimum join meets every tooth once")
    return _pass(name, witnessed)


def balanced_weight(d, F, walk) -> int:
    """Weight an F-balanced path must have, read off its end types and end edges"""
    x, y = walk.ends
    ex, ey = walk.edges[0], walk.edges[-1]
    if x in d.spine and y in d.spine:
        return 0
    if x in d.spine or y in d.spine:
        tooth_edge = ey if y in d.teeth else ex
        return -1 if tooth_edge in F else 1
    return {2: -2, 1: 0, 0: 2}[(ex in F) + (ey in F)]


@_guarded("balanced_weights")
def check_balanced_weights(G: Graft, d, options=None) -> CheckResult:
    name = "balanced_weights"
    options = options or DEFAULT_OPTIONS
    _comb_guard(G, d, options)
    F = tjoin.min_join(G, options).join
    witnessed = 0
    for x in range(G.graph.n):
        for walk in simple_paths(G.graph, x, options.max_path_len):
            if walk.ends[1] < x or not is_balanced(walk, F, teeth=d.teeth):
                continue
            witnessed += 1
            expected, actual = balanced_weight(d, F, walk), weight(F, walk)
            if expected != actual:
                return _fail(name, witnessed, path=_walk_payload(G, walk), expected=expected, weight=actual)
    return _pass(name, witnessed, max_path_len=options.max_path_len)


@_guarded("comb_distances")
def check_comb_distances(G: Graft, d, options=None) -> CheckResult:
    """Lower bounds A-B >= -1, A-A >= 0, B-B >= -2 on every connected pair"""
    name = "comb_distances"
    options = options or DEFAULT_OPTIONS
    _comb_guard(G, d, options)
    witnessed = 0
    for x, y in _connected_pairs(G):
        witnessed += 1
        spines = (x in d.spine) + (y in d.spine)
        bound = {2: 0, 1: -1, 0: -2}[spines]
        value = tjoin.dist(G, x, y, options)
        if value < bound:
            return _fail(name, witnessed, pair=_labels(G, {x, y}), dist=value, bound=bound)
    return _pass(name, witnessed)


@_guarded("incomppath")
def check_incomppath(G: Graft, d, options=None) -> CheckResult:
    """Inside a factor-component: A-B at -1, A-A at 0, B-B at 0 or -2"""
    name = "incomppath"
    options = options or DEFAULT_OPTIONS
    _comb_guard(G, d, options)
    witnessed = 0
    for component in decomposition.factor_components(G, options):
        for x, y in _component_pairs(component):
            witnessed += 1
            spines = (x in d.spine) + (y in d.spine)
            allowed_values = {2: {0}, 1: {-1}, 0: {0, -2}}[spines]
            value = tjoin.dist(G, x, y, options)
            if value not in allowed_values:
                return _fail(name, witnessed, pair=_labels(G, {x, y}), dist=value)
    return _pass(name, witnessed)


@_guarded("comb_kl")
def check_comb_kl(G: Graft, d, options=None) -> CheckResult:
    """Spine part of a component is one KL class; tooth pairs split at 0 / -2"""
    name = "comb_kl"
    options = options or DEFAULT_OPTIONS
    _comb_guard(G, d, options)
    components = decomposition.factor_components(G, options)
    partition = decomposition.kl_partition(G, options, components)
    witnessed = 0
    for component in components:
        spine = component.vertices & d.spine
        if spine:
            witnessed += 1
            owners = {partition.class_of[v] for v in spine}
            if len(owners) != 1 or partition.classes[owners.pop()] != spine:
                return _fail(name, witnessed, component=_labels(G, component.vertices),
                             reason="spine part is not a single class")
        teeth = sorted(component.vertices & d.teeth)
        for x, y in itertools.combinations(teeth, 2):
            witnessed += 1
            value = tjoin.dist(G, x, y, options)
            if partition.related(x, y) != (value == 0) or (not partition.related(x, y)) != (value == -2):
                return _fail(name, witnessed, pair=_labels(G, {x, y}), dist=value)
    return _pass(name, witnessed)


@_guarded("dm_antisymmetry")
def check_dm_antisymmetry(G: Graft, d, options=None) -> CheckResult:
    """The closed DM relation has no 2-cycle between distinct components"""
    name = "dm_antisymmetry"
    options = options or DEFAULT_OPTIONS
    _comb_guard(G, d, options)
    components = decomposition.factor_components(G, options)
    base = decomposition.base_relation(G, d, components)
    k = len(components)
    reach = [list(row) for row in base]
    for mid in range(k):
        for i in range(k):
            if reach[i][mid]:
                for j in range(k):
                    reach[i][j] = reach[i][j] or reach[mid][j]
    witnessed = 0
    for i in range(k):
        for j in range(k):
            if i != j and reach[i][j]:
                witnessed += 1
                if reach[j][i]:
                    return _fail(name, witnessed, components=[_labels(G, components[i].vertices),
                                                              _labels(G, components[j].vertices)])
    return _pass(name, witnessed, components=k)


def _has_weighted_path(G, F, x, y, target, region, max_len) -> bool:
    avoid = frozenset(range(G.graph.n)) - region
    return any(weight(F, walk) == target
               for walk in simple_paths(G.graph, x, max_len, avoid=avoid, targets={y}))


@_guarded("order_paths")
def check_order_paths(G: Graft, d, options=None) -> CheckResult:
    """Along a defining sequence, A-A pairs have a 0-path and A-B pairs a (-1)-path"""
    name = "order_paths"
    options = options or DEFAULT_OPTIONS
    p = decomposition.dm_relation(G, d, options)
    F = tjoin.min_join(G, options).join
    witnessed = truncated = 0
    for c1, c2 in itertools.permutations(range(len(p)), 2):
        if not p.leq(c1, c2):
            continue
        sequence = decomposition.defining_sequence(p, c1, c2)
        region = frozenset().union(*(p.components[c].vertices for c in sequence))
        for x in sorted(p.components[c1].vertices & d.spine):
            for y in sorted(p.components[c2].vertices):
                target = 0 if y in d.spine else -1
                witnessed += 1
                if _has_weighted_path(G, F, x, y, target, region, options.max_path_len):
                    continue
                if len(region) - 1 > options.max_path_len:
                    truncated += 1
                    continue
                return _fail(name, witnessed, pair=_labels(G, {x, y}), target=target,
                             sequence=[_labels(G, p.components[c].vertices) for c in sequence])
    return _pass(name, witnessed, truncated=truncated, max_path_len=options.max_path_len)


def _ears(G: Graft, X: frozenset, max_len: int, every_circuit):
    """Ears relative to X that leave X: paths with an interior, and circuits meeting X once"""
    graph = G.graph
    for s, t in itertools.combinations(sorted(X), 2):
        for walk in simple_paths(graph, s, max_len, avoid=X - {s, t}, targets={t}):
            if len(walk.edges) >= 2:
                yield walk
    for circuit in every_circuit:
        if len(X.intersection(circuit.vertices)) != 1:
            continue
        # rotate so the ear's end comes first
        i = next(i for i, v in enumerate(circuit.vertices) if v in X)
        vertices = circuit.vertices[i:-1] + circuit.vertices[:i + 1]
        edges = circuit.edges[i:] + circuit.edges[:i]
        yield replace(circuit, vertices=vertices, edges=edges)


@_guarded("ear_lemmas")
def check_ear_lemmas(G: Graft, d, options=None) -> CheckResult:
    """Balanced ears end in B, weigh 2, and join equivalent teeth"""
    name = "ear_lemmas"
    options = options or DEFAULT_OPTIONS
    _comb_guard(G, d, options)
    F = tjoin.min_join(G, options).join
    components = decomposition.factor_components(G, options)
    partition = decomposition.kl_partition(G, options, components)
    every_circuit = list(circuits(G.graph, options.max_path_len))
    witnessed = 0
    for component in components:
        for ear in _ears(G, component.vertices, options.max_path_len, every_circuit):
            if not is_ear(G.graph, component.vertices, ear):
                continue
            if not is_balanced(ear, F, exempt_ends=True, teeth=d.teeth):
                continue
            witnessed += 1
            s, t = ear.ends
            problem = None
            if s not in d.teeth or t not in d.teeth:
                problem = "ear end in the spine set"
            elif weight(F, ear) != 2:
                problem = f"ear weight {weight(F, ear)}"
            elif not partition.related(s, t):
                problem = "ear ends are not equivalent"
            if problem:
                return _fail(name, witnessed, ear=_walk_payload(G, ear), reason=problem)
    return _pass(name, witnessed, max_path_len=options.max_path_len)


@_guarded("relativepath")
def check_relativepath(G: Graft, d, options=None) -> CheckResult:
    """A (-2)-path between vertices of C splits into weight-2 ears and (-2)-segments in C"""
    name = "relativepath"
    options = options or DEFAULT_OPTIONS
    _comb_guard(G, d, options)
    F = tjoin.min_join(G, options).join
    graph = G.graph
    witnessed = 0
    for component in decomposition.factor_components(G, options):
        X = component.vertices
        inside = induced_edges(graph, X)
        for x in sorted(X):
            later = {y for y in X if y > x}
            if not later:
                continue
            for walk in simple_paths(graph, x, options.max_path_len, targets=later):
                if weight(F, walk) != -2:
                    continue
                witnessed += 1
                for segment in walk.segments(inside, inside=False):
                    if not is_ear(graph, X, segment) or weight(F, segment) != 2:
                        return _fail(name, witnessed, path=_walk_payload(G, walk),
                                     segment=_walk_payload(G, segment), reason="outer segment")
                for segment in walk.segments(inside, inside=True):
                    if weight(F, segment) != -2:
                        return _fail(name, witnessed, path=_walk_payload(G, walk),
                                     segment=_walk_payload(G, segment), reason="inner segment")
    return _pass(name, witnessed, max_path_len=options.max_path_len)


@_guarded("ear_disjointness")
def check_ear_disjointness(G: Graft, d, options=None) -> CheckResult:
    """A balanced path leaving a tooth t avoids the outside part of any (-2)-path to t"""
    name = "ear_disjointness"
    options = options or DEFAULT_OPTIONS
    _comb_guard(G, d, options)
    F = tjoin.min_join(G, options).join
    graph = G.graph
    components = decomposition.factor_components(G, options)
    partition = decomposition.kl_partition(G, options, components)
    witnessed = 0
    for component in components:
        X = component.vertices
        for s, t in itertools.permutations(sorted(X & d.teeth), 2):
            if partition.related(s, t):
                continue
            heavy = [w for w in simple_paths(graph, s, options.max_path_len, targets={t})
                     if weight(F, w) == -2]
            if not heavy:
                continue
            leaving = [q for q in simple_paths(graph, t, options.max_path_len, avoid=X - {t})
                       if is_balanced(q, F, teeth=d.teeth)]
            for P in heavy:
                outside = set(P.vertices) - X
                for Q in leaving:
                    witnessed += 1
                    if outside.intersection(Q.vertices):
                        return _fail(name, witnessed, path=_walk_payload(G, P), other=_walk_payload(G, Q))
    return _pass(name, witnessed, max_path_len=options.max_path_len)


def _properties_hold(G, p, c0, classes, up, assignment) -> bool:
    """Both attribute properties for an assignment upper bound -> class position"""
    graph = G.graph
    base_vertices = p.components[c0].vertices
    for c in up:
        touching = neighbors(graph, p.components[c].vertices) & base_vertices
        if touching and not touching <= classes[assignment[c]]:
            return False
    owner = {v: comp.id for comp in p.components for v in comp.vertices}
    for u, v in graph.edges:
        cu, cv = owner[u], owner[v]
        if cu != cv and cu in assignment and cv in assignment and assignment[cu] != assignment[cv]:
            return False
    return True


@_guarded("attribute_partition")
def check_attribute_partition(G: Graft, d, options=None) -> CheckResult:
    """Attributes exist, satisfy both rules, are unique, and split no common upper bound"""
    name = "attribute_partition"
    options = options or DEFAULT_OPTIONS
    p = decomposition.dm_relation(G, d, options)
    partition = decomposition.kl_partition(G, options, p.components)
    graph = G.graph
    witnessed = skipped = 0
    for c0 in range(len(p)):
        up = sorted(decomposition.upper_bounds(p, c0))
        if not up:
            continue
        try:
            amap = decomposition.attributes(G, d, p, c0, options, partition)
        except GraftError as exc:
            return _fail(name, witnessed, base=c0, reason=str(exc))
        witnessed += len(up)
        if sorted(c for bucket in amap.buckets for c in bucket) != up:
            return _fail(name, witnessed, base=c0, reason="buckets do not partition the upper bounds")
        if not _properties_hold(G, p, c0, amap.classes, up, amap.labels):
            return _fail(name, witnessed, base=c0, reason="labeling breaks an attribute property")
        if len(amap.classes) ** len(up) <= options.relabel_search_cap:
            solutions = sum(
                _properties_hold(G, p, c0, amap.classes, up, dict(zip(up, choice)))
                for choice in itertools.product(range(len(amap.classes)), repeat=len(up))
            )
            if solutions != 1:
                return _fail(name, witnessed, base=c0, reason=f"{solutions} labelings satisfy both rules")
        else:
            skipped += 1
        seeds = {}
        for c in up:
            if p.base[c0][c]:
                touching = neighbors(graph, p.components[c].vertices) & p.components[c0].vertices
                seeds[c] = partition.class_of[min(touching)]
        for c1, c2 in itertools.combinations(sorted(seeds), 2):
            if seeds[c1] == seeds[c2]:
                continue
            common = [c for c in range(len(p)) if p.leq(c1, c) and p.leq(c2, c)]
            if common:
                return _fail(name, witnessed, base=c0, pair=[c1, c2], common=common,
                             reason="distinct attributes share an upper bound")
    return _pass(name, witnessed, uniqueness_skipped=skipped)


# ================================
#  Aggregation
# ================================

GRAFT_CHECKS = (
    check_circuit_lemma,
    check_distance_invariance,
    check_nonpositive_distance,
    check_kl_equivalence,
)

COMB_CHECKS = (
    check_comb_characterization,
    check_balanced_weights,
    check_comb_distances,
    check_incomppath,
    check_comb_kl,
    check_dm_antisymmetry,
    check_order_paths,
    check_ear_lemmas,
    check_relativepath,
    check_ear_disjointness,
    check_attribute_partition,
)


def verify_all(G: Graft, designations=None, options=None) -> list:
    """Run every applicable check; comb checks once per comb designation"""
    options = options or DEFAULT_OPTIONS
    results = [check(G, options) for check in GRAFT_CHECKS]
    if designations is None:
        try:
            designations = decomposition.comb_designations(G, options)
        except CapExceeded as exc:
            results.append(CheckResult("comb_designations", CheckStatus.CAP, 0, {"error": str(exc)}))
            designations = []
    for index, d in enumerate(designations):
        for check in COMB_CHECKS:
            result = check(G, d, options)
            coverage = dict(result.coverage, designation=index, spine=_labels(G, d.spine))
            results.append(replace(result, coverage=coverage))
    results.sort(key=lambda r: (r.name, r.coverage.get("designation", -1)))
    return results

