import random
from collections import Counter

import pytest
from hypothesis import given

from config_loader import EngineOptions
from core import decomposition, oracle, verifier
from core.decomposition import CombDesignation
from core.errors import NotComb
from core.generators import comb_sweep, named_instances, random_sweep
from core.graft import Multigraph, Walk, build_multigraph, is_balanced, validate_graft, weight
from core.verifier import CheckStatus

from .strategies import grafts

THEOREM_SUITE = (
    "kl_equivalence",
    "dm_antisymmetry",
    "incomppath",
    "balanced_weights",
    "ear_lemmas",
    "relativepath",
    "attribute_partition",
)


@pytest.fixture(scope="module")
def named():
    return named_instances()


def failures(results):
    return [r.to_dict() for r in results if r.status is CheckStatus.FAIL]


@pytest.mark.parametrize("name", sorted(named_instances()))
def test_every_named_instance_passes(name):
    results = verifier.verify_all(named_instances()[name])
    assert failures(results) == []
    assert all(r.status is CheckStatus.PASS for r in results)


def test_two_pendant_runs_comb_checks(named):
    results = verifier.verify_all(named["two-pendant"])
    names = {r.name for r in results}
    assert names >= set(THEOREM_SUITE)
    attribute = next(r for r in results if r.name == "attribute_partition")
    assert attribute.witnessed == 2
    assert attribute.coverage["spine"] == ["a0", "x1", "x2"]


def test_results_are_sorted_and_serializable(named):
    results = verifier.verify_all(named["C4"])
    keys = [(r.name, r.coverage.get("designation", -1)) for r in results]
    assert keys == sorted(keys)
    payload = results[0].to_dict()
    assert set(payload) == {"name", "status", "witnessed", "vacuous", "counterexample", "coverage"}


def test_star_ear_and_relativepath_checks_see_witnesses(named):
    G = named["star-4"]
    (d,) = decomposition.comb_designations(G)
    relativepath = verifier.check_relativepath(G, d)
    assert relativepath.passed and relativepath.witnessed == 6
    incomppath = verifier.check_incomppath(G, d)
    assert incomppath.passed and incomppath.witnessed == 10


def cycle_with_outer_ear():
    """C4 a1 b1 a2 b2 plus a pendant pair x1 y1 tied to b1 and b2 through the spine vertex x1"""
    labels = ["a1", "b1", "a2", "b2", "x1", "y1"]
    pairs = [("a1", "b1"), ("b1", "a2"), ("a2", "b2"), ("b2", "a1"), ("x1", "y1"), ("b1", "x1"), ("b2", "x1")]
    G = validate_graft(build_multigraph(labels, pairs), range(6))
    d = next(d for d in decomposition.comb_designations(G) if 0 in d.spine)
    return G, d


def test_ear_through_a_spine_vertex_is_balanced():
    G, d = cycle_with_outer_ear()
    assert d.teeth == frozenset({1, 3, 5})
    ear = Walk.from_edges(G.graph, 1, [5, 6])
    F = frozenset({0, 2, 4})
    assert is_balanced(ear, F, teeth=d.teeth)
    assert weight(F, ear) == 2
    result = verifier.check_ear_lemmas(G, d)
    assert result.passed and result.witnessed == 1
    balanced = verifier.check_balanced_weights(G, d)
    assert balanced.passed and balanced.witnessed > 0


def test_star_balanced_paths_reach_minus_two(named):
    G = named["star-4"]
    (d,) = decomposition.comb_designations(G)
    F = frozenset({0, 1, 2, 3})
    path = Walk.from_edges(G.graph, 1, [0, 1])
    assert is_balanced(path, F, teeth=d.teeth)
    assert verifier.balanced_weight(d, F, path) == weight(F, path) == -2


def test_vacuous_pass_is_flagged(named):
    result = verifier.check_relativepath(named["K2"], decomposition.comb_designations(named["K2"])[0])
    assert result.passed and result.vacuous


def test_balanced_weight_table(named):
    G = named["P4"]
    d = decomposition.comb_designations(G)[0]
    F = frozenset({0, 2})
    assert verifier.balanced_weight(d, F, Walk.from_edges(G.graph, 0, [0, 1, 2])) == -1
    assert verifier.balanced_weight(d, F, Walk.from_edges(G.graph, 0, [0, 1])) == 0
    assert verifier.balanced_weight(d, F, Walk.from_edges(G.graph, 1, [1])) == 1


def test_caps_turn_into_cap_status(named):
    results = verifier.verify_all(named["chain"], options=EngineOptions(max_edges=3))
    statuses = {r.name: r.status for r in results}
    assert statuses["distance_invariance"] is CheckStatus.CAP
    assert statuses["circuit_lemma"] is CheckStatus.PASS
    assert failures(results) == []


def test_comb_checks_reject_non_comb_designation(named):
    with pytest.raises(NotComb):
        verifier.check_incomppath(named["P4"], CombDesignation(frozenset({0, 1}), frozenset({2, 3})))


@given(grafts(max_vertices=5, max_edges=7))
def test_graft_checks_hold_on_random_grafts(G):
    assert failures(verifier.verify_all(G, designations=[])) == []


# ================================
#  Seeded acceptance sweeps
# ================================

@pytest.mark.slow
def test_engine_matches_oracle_on_random_sweep():
    for G in random_sweep(300, seed=2025, max_edges=12):
        reports = oracle.cross_check(G)
        assert all(r.matched for r in reports), G.fingerprint()


@pytest.mark.slow
def test_distance_invariance_on_random_sweep():
    checked = 0
    for G in random_sweep(300, seed=2025, max_edges=12):
        if len(oracle.brute_min_joins(G)[1]) < 2:
            continue
        checked += 1
        assert verifier.check_distance_invariance(G).passed, G.fingerprint()
    assert checked > 0


@pytest.mark.slow
def test_theorem_suite_on_comb_sweep():
    witnessed = Counter()
    for G, d in comb_sweep(200, seed=7, max_vertices=14):
        for check in verifier.COMB_CHECKS + verifier.GRAFT_CHECKS:
            name = check.check_name
            if name not in THEOREM_SUITE:
                continue
            result = check(G, d) if check in verifier.COMB_CHECKS else check(G)
            assert result.status is not CheckStatus.FAIL, (name, result.counterexample, G.fingerprint())
            witnessed[name] += result.witnessed
    assert all(witnessed[name] > 0 for name in THEOREM_SUITE), witnessed


def factorizable_bipartite(seed, max_edges=12):
    """Random bipartite multigraph built around a planted perfect matching"""
    rng = random.Random(seed)
    k = rng.randint(1, 4)
    partner = list(range(k))
    rng.shuffle(partner)
    edges = [(i, k + partner[i]) for i in range(k)]
    edges += [(rng.randrange(k), k + rng.randrange(k)) for _ in range(rng.randint(0, max_edges - k))]
    rng.shuffle(edges)
    return Multigraph(tuple(f"v{i}" for i in range(2 * k)), tuple(edges))


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(100))
def test_classic_dm_on_random_factorizable_graphs(seed):
    graph = factorizable_bipartite(seed)
    poset = decomposition.classic_dm(graph)
    reference = oracle.brute_classic_dm(graph)
    assert tuple(c.vertices for c in poset.components) == reference.components
    k = len(poset)
    assert {(i, j) for i in range(k) for j in range(k) if poset.leq(i, j)} == reference.closure
