import pytest
from hypothesis import given
from hypothesis import strategies as st

from core import decomposition, tjoin
from core.errors import Exhausted, GraftError, OddComponent
from core.generators import (
    InstanceSpec,
    build_instance,
    comb_cycle,
    comb_path,
    comb_star,
    comb_sweep,
    gen_comb_random,
    gen_random_graft,
    named_instances,
    random_sweep,
)

from . import strategies  # noqa: F401  (loads the hypothesis profile)

NAMED = {"K2", "K2+w", "P4", "P6", "C4", "C6", "C8", "star-4", "two-pendant", "chain", "triangle"}


def test_named_instance_catalog():
    instances = named_instances()
    assert set(instances) == NAMED
    assert tjoin.nu(instances["two-pendant"]) == 4
    assert tjoin.nu(instances["chain"]) == 5
    assert instances["C8"].graph.n == 8


@pytest.mark.parametrize("family", [comb_path, comb_cycle])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_constructive_families_are_combs(family, k):
    G, d = family(k)
    assert decomposition.is_comb(G, d)


def test_star_needs_even_teeth():
    G, d = comb_star(6)
    assert decomposition.is_comb(G, d)
    with pytest.raises(OddComponent):
        comb_star(3)


@given(st.integers(1, 7), st.integers(0, 10), st.floats(0, 1), st.integers(0, 2**16))
def test_random_graft_is_valid_and_deterministic(n, m, t_prob, seed):
    G = gen_random_graft(n, m, t_prob, seed)
    assert G == gen_random_graft(n, m, t_prob, seed)
    assert G.graph.n == n and G.graph.m == m
    for component in G.components:
        assert len(component & G.terminals) % 2 == 0


def test_random_graft_rejects_bad_sizes():
    with pytest.raises(GraftError):
        gen_random_graft(0, 3, 0.5, 1)


@given(st.integers(1, 4), st.integers(1, 4), st.integers(0, 2**16))
def test_comb_sampler_returns_combs(n_spine, n_teeth, seed):
    try:
        G, d = gen_comb_random(n_spine, n_teeth, n_teeth + 3, seed, 50)
    except Exhausted:
        return
    assert decomposition.is_comb(G, d)
    assert len(d.teeth) == n_teeth
    assert gen_comb_random(n_spine, n_teeth, n_teeth + 3, seed, 50) == (G, d)


def test_comb_sampler_exhaustion():
    with pytest.raises(Exhausted) as excinfo:
        gen_comb_random(0, 2, 3, seed=1, max_tries=5)
    assert excinfo.value.max_tries == 5
    with pytest.raises(Exhausted):
        gen_comb_random(2, 3, 1, seed=1, max_tries=5)


def test_comb_sampler_without_teeth():
    G, d = gen_comb_random(3, 0, 0, seed=4, max_tries=1)
    assert G.terminals == frozenset() and d.teeth == frozenset()


def test_build_instance_families():
    assert build_instance(InstanceSpec("named", ("P4",))) == named_instances()["P4"]
    assert build_instance(InstanceSpec("path", (2,))) == comb_path(2)[0]
    assert build_instance(InstanceSpec("cycle", ("1",))).graph.n == 4
    assert build_instance(InstanceSpec("star", (4,))).graph.n == 5
    spec = InstanceSpec("random", (5, 6, 0.5), seed=11)
    assert build_instance(spec) == build_instance(spec)
    G = build_instance(InstanceSpec("comb", (3, 3, 6, 100), seed=2))
    assert tjoin.nu(G) == 3
    with pytest.raises(GraftError):
        build_instance(InstanceSpec("lattice", (3,)))
    with pytest.raises(GraftError):
        build_instance(InstanceSpec("named", ("nope",)))


def test_sweeps_are_deterministic():
    assert random_sweep(5, seed=3) == random_sweep(5, seed=3)
    combs = comb_sweep(30, seed=3, max_vertices=10)
    assert len(combs) == 30
    assert combs == comb_sweep(30, seed=3, max_vertices=10)
    for G, d in combs:
        assert G.graph.n <= 10
        assert decomposition.is_comb(G, d)


def test_random_graft_edge_cases():
    assert gen_random_graft(1, 0, 1.0, 5).terminals == frozenset()
    G = gen_random_graft(4, 0, 0.0, 9)
    assert G.graph.m == 0 and G.terminals == frozenset()
    assert gen_random_graft(4, 4, 0.5, 7) == gen_random_graft(4, 4, 0.5, 7)
