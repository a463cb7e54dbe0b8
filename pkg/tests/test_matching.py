from __future__ import annotations

import random
from itertools import combinations

import pytest
from oracles import brute_perfect_matchings, has_pm, is_mcg, nx_matching_number

from matchcov import settings
from matchcov.corpus import random_graph
from matchcov.families import complete_bipartite, complete_graph, cycle, generate, path
from matchcov.graph import CapExceeded, Graph, GraphError
from matchcov.matching import (
    all_barriers,
    enumerate_perfect_matchings,
    find_v0_matching,
    has_perfect_matching,
    is_admissible,
    is_barrier,
    is_matching,
    is_matching_covered,
    is_perfect_matching,
    is_v0_matching,
    matching_number,
    maximal_barriers,
    maximum_matching,
    odd_components,
)


def test_maximum_matching_examples(named):
    assert len(maximum_matching(named["k4"])) == 2
    m = maximum_matching(named["petersen"])
    assert len(m) == 5 and is_perfect_matching(named["petersen"], m)
    claw = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    assert len(maximum_matching(claw)) == 1


def test_maximum_matching_agrees_with_networkx():
    rng = random.Random(7)
    for _ in range(300):
        g = random_graph(rng.randint(1, 13), rng.uniform(0.1, 0.7), rng)
        m = maximum_matching(g)
        assert is_matching(g, m)
        assert len(m) == nx_matching_number(g.vertices, g.edges.values())


def test_perfect_matching_counts(named):
    assert len(enumerate_perfect_matchings(cycle(6))) == 2
    assert len(enumerate_perfect_matchings(named["k4"])) == 3
    # six perfect matchings of the Petersen graph, from the brute-force oracle
    assert len(enumerate_perfect_matchings(named["petersen"])) == 6


@pytest.mark.parametrize("name", ["k4", "c6bar", "bicorn", "tricorn", "petersen", "w7", "k33"])
def test_perfect_matchings_equal_oracle(named, name):
    g = named[name]
    ours = enumerate_perfect_matchings(g)
    assert len(ours) == len(set(ours))
    assert set(ours) == set(brute_perfect_matchings(g))
    assert all(is_perfect_matching(g, m) for m in ours)


def test_perfect_matchings_with_parallel_edges():
    g = Graph.from_edges(4, [(0, 1), (0, 1), (2, 3), (1, 2), (0, 3)])
    assert set(enumerate_perfect_matchings(g)) == set(brute_perfect_matchings(g))
    assert len(enumerate_perfect_matchings(g)) == 3


def test_enumeration_cap():
    g = cycle(settings.VERTEX_CAP + 2)
    with pytest.raises(CapExceeded):
        enumerate_perfect_matchings(g)
    assert len(enumerate_perfect_matchings(g, cap=settings.VERTEX_CAP + 2)) == 2


def test_admissibility_examples(named):
    for g in (named["k4"], named["c6bar"]):
        for e in g.edge_ids:
            res = is_admissible(g, e)
            assert res and is_perfect_matching(g, res.matching) and e in res.matching
    p4 = path(4)
    mid = next(e for e, uv in p4.edges.items() if set(uv) == {1, 2})
    res = is_admissible(p4, mid)
    assert not res
    assert res.barrier.vertices == frozenset({1, 2})
    assert res.barrier.validate(p4)


def test_admissibility_requires_perfect_matching():
    with pytest.raises(GraphError):
        is_admissible(path(3), 0)


def test_admissibility_witnesses_on_random_graphs():
    rng = random.Random(11)
    checked = 0
    while checked < 60:
        g = random_graph(rng.choice([4, 6, 8, 10]), rng.uniform(0.2, 0.6), rng)
        if not has_perfect_matching(g):
            continue
        checked += 1
        for e in g.edge_ids:
            res = is_admissible(g, e)
            if res:
                assert e in res.matching and is_perfect_matching(g, res.matching)
            else:
                assert set(g.ends(e)) <= res.barrier.vertices
                assert is_barrier(g, res.barrier.vertices)


def test_matching_covered_examples(named):
    assert is_matching_covered(named["c6bar"])
    assert not is_matching_covered(path(4))
    assert is_matching_covered(named["k2"])
    assert not is_matching_covered(Graph([0]))


def test_matching_covered_methods_agree_with_oracle():
    rng = random.Random(3)
    for _ in range(200):
        g = random_graph(rng.choice([2, 4, 6, 8]), rng.uniform(0.3, 0.8), rng)
        expected = is_mcg(g)
        assert is_matching_covered(g) == expected
        assert is_matching_covered(Graph(g.vertices, g.edges), method="barriers") == expected


def test_tutte_condition_exhaustive():
    rng = random.Random(5)
    for _ in range(60):
        n = rng.randint(2, 9)
        g = random_graph(n, rng.uniform(0.2, 0.6), rng)
        tutte_ok = all(
            len(odd_components(g, s)) <= len(s)
            for r in range(n + 1)
            for s in combinations(g.vertices, r)
        )
        assert has_perfect_matching(g) == tutte_ok


def test_maximal_barriers(named):
    k33 = named["k33"]
    sets = {b.vertices for b in maximal_barriers(k33)}
    assert frozenset({0, 1, 2}) in sets and frozenset({3, 4, 5}) in sets
    for name in ("k4", "c6bar"):
        assert all(len(b.vertices) == 1 for b in maximal_barriers(named[name]))


def test_barriers_validate(named):
    for name in ("bicorn", "k33", "c6"):
        for b in all_barriers(named[name]):
            assert b.validate(named[name])


def test_barriers_require_perfect_matching():
    with pytest.raises(GraphError):
        all_barriers(path(3))


def test_v0_matching_examples(named):
    assert find_v0_matching(complete_bipartite(3), 0) is None
    assert find_v0_matching(generate("biwheel", 8), 6) is None
    w5 = named["w5"]
    m = find_v0_matching(w5, 5)
    assert m is not None and is_v0_matching(w5, 5, m)
    assert sum(1 for e in m if 5 in w5.ends(e)) % 2 == 1
    assert find_v0_matching(named["k2"], 0) is None


def test_v0_matching_exhaustive(named):
    """Compare with a scan over all edge subsets on small graphs."""
    for name in ("k4", "w5", "c6bar", "k33"):
        g = named[name]
        for v0 in g.vertices:
            exists = any(
                is_v0_matching(g, v0, sub)
                for r in range(1, g.size + 1)
                for sub in combinations(g.edge_ids, r)
            )
            found = find_v0_matching(g, v0)
            assert (found is not None) == exists
            if found is not None:
                assert is_v0_matching(g, v0, found)


def test_matching_number_of_odd_complete_graph():
    assert matching_number(complete_graph(7)) == 3
    assert has_pm(complete_graph(6))
