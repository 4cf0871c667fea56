import itertools
import json
import random
from fractions import Fraction as F

import pytest

from conftest import random_planar_theory
from polygpt.discrimination import is_perfectly_distinguishable
from polygpt.families import classical_simplex, hypercube_theory, ngon_theory, prism_product
from polygpt.hypergraph import (Clique, DistinguishabilityHypergraph, build_hypergraph,
                                clique_is_valid, exact_max_clique, greedy_max_clique,
                                hypergraph_from_json, hypergraph_to_json, is_fully_connected,
                                load_hypergraph, save_hypergraph)


def brute_hypergraph(theory, n):
    """Unpruned construction: every N-subset straight to the LP."""
    edges = set()
    for s in itertools.combinations(range(theory.num_generators), n):
        states = [theory.generators[i] for i in s]
        if is_perfectly_distinguishable(theory, states, validate=False).distinguishable:
            edges.add(s)
    return DistinguishabilityHypergraph(n, theory.num_generators, frozenset(edges))


def test_square_pairwise_graph_is_complete():
    h = build_hypergraph(hypercube_theory(2), 2)
    assert h.sorted_edges() == [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]


def test_square_triples_are_empty():
    h = build_hypergraph(hypercube_theory(2), 3)
    assert not h.edges


def test_simplex4_triples_all_present():
    h = build_hypergraph(classical_simplex(4), 3)
    assert h.sorted_edges() == [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]


def test_n_range_is_enforced():
    sq = hypercube_theory(2)
    for bad in (1, 5):
        with pytest.raises(ValueError):
            build_hypergraph(sq, bad)


def test_fully_connected():
    h = build_hypergraph(hypercube_theory(2), 2)
    assert is_fully_connected(3, (0, 1, 2), h)
    pent = build_hypergraph(ngon_theory(5), 2)
    assert not is_fully_connected(1, (0, 2), pent)
    with pytest.raises(ValueError):
        is_fully_connected(0, (0, 1), h)
    with pytest.raises(ValueError):
        is_fully_connected(0, (), h)


def test_greedy_on_empty_hypergraph():
    h = DistinguishabilityHypergraph(3, 4, frozenset())
    assert greedy_max_clique(h).members == ()
    assert exact_max_clique(h).members == ()


@pytest.mark.parametrize("family,n,size", [
    ("square", 2, 4), ("square", 3, 0),
    ("pentagon", 2, 2), ("pentagon", 3, 0),
    ("cube", 2, 8), ("simplex3x3", 2, 9), ("simplex3x3", 3, 4),
])
def test_greedy_matches_exact_on_fixtures(family, n, size):
    theories = {
        "square": hypercube_theory(2),
        "pentagon": ngon_theory(5),
        "cube": hypercube_theory(3),
        "simplex3x3": prism_product(classical_simplex(3), classical_simplex(3)),
    }
    t = theories[family]
    h = build_hypergraph(t, n)
    greedy = greedy_max_clique(h)
    exact = exact_max_clique(h)
    assert len(exact) == size
    assert len(greedy) == len(exact)
    assert clique_is_valid(h, greedy)
    assert clique_is_valid(h, exact)
    # Soundness: re-certify a sample of the winning clique's subsets by LP.
    rng = random.Random(7)
    subsets = list(itertools.combinations(exact.members, n))
    for s in rng.sample(subsets, min(5, len(subsets))):
        states = [t.generators[i] for i in s]
        assert is_perfectly_distinguishable(t, states, validate=False).distinguishable


def test_hypercube_cliques_reach_all_vertices():
    for m in (1, 2, 3, 4):
        h = build_hypergraph(hypercube_theory(m), 2)
        assert len(greedy_max_clique(h)) == 2 ** m
        if 2 ** m <= 24:
            assert len(exact_max_clique(h)) == 2 ** m


def test_simplex_pairwise_clique_is_d():
    for d in (2, 3, 4, 5):
        h = build_hypergraph(classical_simplex(d), 2)
        assert len(exact_max_clique(h)) == d


def test_exact_budget_refusal():
    h = build_hypergraph(classical_simplex(3), 2)
    with pytest.raises(ValueError):
        exact_max_clique(h, node_budget=2)


def test_pairwise_prefilter_matches_brute_force_up_to_10_nodes():
    cases = [(classical_simplex(4), 3), (hypercube_theory(2), 3),
             (hypercube_theory(3), 2), (hypercube_theory(3), 3)]
    for seed in (1, 2):
        t = random_planar_theory(seed)
        if 3 <= t.num_generators <= 10:
            cases.append((t, 3))
    for t, n in cases:
        assert t.num_generators <= 10
        pruned = build_hypergraph(t, n)
        assert pruned.edges == brute_hypergraph(t, n).edges


def test_oracle_dominates_greedy_on_random_hypergraphs():
    rng = random.Random(99)
    for _ in range(30):
        nodes = rng.randint(3, 9)
        n = rng.randint(2, 3)
        if n > nodes:
            continue
        all_edges = list(itertools.combinations(range(nodes), n))
        edges = frozenset(e for e in all_edges if rng.random() < 0.5)
        h = DistinguishabilityHypergraph(n, nodes, edges)
        g = greedy_max_clique(h)
        x = exact_max_clique(h)
        assert len(x) >= len(g)
        assert clique_is_valid(h, g) and clique_is_valid(h, x)


def test_max_clique_monotone_in_edges():
    rng = random.Random(5)
    nodes, n = 7, 3
    all_edges = list(itertools.combinations(range(nodes), n))
    edges = set(e for e in all_edges if rng.random() < 0.4)
    base = len(exact_max_clique(DistinguishabilityHypergraph(n, nodes, frozenset(edges))))
    for extra in all_edges:
        if extra in edges:
            continue
        grown = len(exact_max_clique(
            DistinguishabilityHypergraph(n, nodes, frozenset(edges | {extra}))))
        assert grown >= base


def test_pairwise_clique_never_exceeds_four_in_the_plane():
    # The planar slice of the general bound: 30 seeded polytopes here, the
    # acceptance suite runs the full 200.
    for seed in range(30):
        t = random_planar_theory(seed)
        if t.num_generators < 2:
            continue
        h = build_hypergraph(t, 2)
        assert len(exact_max_clique(h)) <= 4


def test_json_roundtrip_and_files(tmp_path):
    h = build_hypergraph(hypercube_theory(2), 2)
    doc = hypergraph_to_json(h)
    assert doc["N"] == 2 and doc["num_nodes"] == 4
    assert hypergraph_from_json(json.loads(json.dumps(doc))) == h
    path = tmp_path / "square.json"
    save_hypergraph(h, path)
    assert load_hypergraph(path) == h
    with pytest.raises(ValueError):
        hypergraph_from_json({"N": 2})


def test_cache_roundtrip(tmp_path):
    t = hypercube_theory(2)
    first = build_hypergraph(t, 2, cache_dir=str(tmp_path))
    files = list(tmp_path.iterdir())
    assert len(files) == 1
    again = build_hypergraph(t, 2, cache_dir=str(tmp_path))
    assert first == again


def test_parallel_workers_agree_with_sequential():
    t = hypercube_theory(3)
    assert build_hypergraph(t, 2, workers=2) == build_hypergraph(t, 2)


def test_clique_invariant_rejects_non_complete_sets():
    h = build_hypergraph(ngon_theory(5), 2)
    assert not clique_is_valid(h, Clique((0, 1, 2)))
