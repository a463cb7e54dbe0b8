from __future__ import annotations

import random

import pytest
from oracles import brute_doubletons, brute_perfect_matchings, brute_removable, brute_retract, is_mcg, nx_isomorphic

from matchcov.corpus import random_bi_split, random_bisubdivision
from matchcov.families import complete_bipartite, complete_graph, cycle, generate
from matchcov.graph import Graph, GraphError
from matchcov.iso import are_isomorphic
from matchcov.matching import is_matching_covered
from matchcov.transforms import (
    bi_contract,
    bi_split,
    bi_subdivide,
    bisubdivision_map,
    dependence_classes,
    depends_on,
    ear_decomposition,
    induced_minimal_classes,
    is_bisubdivision_of,
    is_removable,
    minimal_classes,
    removable_classes,
    removable_doubletons,
    removable_edges,
    retract,
    threads,
)


def test_bi_subdivide_examples():
    k4 = complete_graph(4)
    g = bi_subdivide(k4, {0: 2})
    assert (g.order, g.size) == (6, 8)
    assert len(brute_perfect_matchings(g)) == len(brute_perfect_matchings(k4))
    assert are_isomorphic(bi_subdivide(k4, {}), k4)
    with pytest.raises(GraphError):
        bi_subdivide(k4, {0: 1})
    with pytest.raises(GraphError):
        bi_subdivide(k4, {42: 2})


def test_bi_subdivide_preserves_matching_count():
    rng = random.Random(4)
    for name in ("c6bar", "bicorn", "petersen"):
        g = generate(name)
        h = random_bisubdivision(g, rng, g.order + 4)
        assert len(brute_perfect_matchings(h)) == len(brute_perfect_matchings(g))


def test_threads_cover_edges_once(named):
    g = bi_subdivide(named["bicorn"], {0: 2, 3: 4})
    ts = threads(g)
    seen = [e for t in ts for e in t.edges]
    assert sorted(seen) == sorted(g.edge_ids)
    for t in ts:
        assert all(g.degree(v) == 2 for v in t.vertices[1:-1])


def test_bisubdivision_map(named):
    j = named["c6bar"]
    g = bi_subdivide(j, {0: 2, 4: 2})
    m = bisubdivision_map(g, j)
    assert m is not None
    assert sorted(m.edge_map) == sorted(j.edge_ids)
    assert all(len(t.edges) % 2 == 1 for t in m.edge_map.values())
    assert is_bisubdivision_of(g, j)
    assert not is_bisubdivision_of(g, named["k4"])
    # one inserted vertex gives an even path, which is not a bi-subdivision
    u, v = j.ends(0)
    w = j.fresh_vertex_id()
    edges = dict(j.edges)
    edges[0] = (u, w)
    edges[j.fresh_edge_id()] = (w, v)
    odd = Graph([*j.vertices, w], edges)
    assert bisubdivision_map(odd, j) is None


def test_bi_contract_examples(named):
    k4 = complete_graph(4)
    g = bi_subdivide(k4, {0: 2})
    deg2 = [v for v in g.vertices if g.degree(v) == 2]
    h = bi_contract(g, deg2[0])
    assert are_isomorphic(h, k4)
    assert are_isomorphic(bi_contract(cycle(6), 0), cycle(4))
    with pytest.raises(GraphError):
        bi_contract(k4, 0)
    with pytest.raises(GraphError):
        bi_contract(cycle(2), 0)


def test_bi_contract_matches_shore_contraction(named):
    g = bi_subdivide(named["petersen"], {3: 2})
    for v in g.vertices:
        if g.degree(v) == 2:
            assert nx_isomorphic(bi_contract(g, v), named["petersen"])
            assert is_matching_covered(bi_contract(g, v))
            assert bi_contract(g, v).order == g.order - 2


def test_retract_examples(named):
    c6b = named["c6bar"]
    assert are_isomorphic(retract(bi_subdivide(c6b, {1: 2, 7: 4})), c6b)
    assert retract(named["petersen"]) == named["petersen"]
    with pytest.raises(GraphError):
        retract(cycle(8))
    with pytest.raises(GraphError):
        retract(complete_graph(2))


def test_retract_order_independent():
    rng = random.Random(9)
    g = random_bisubdivision(generate("tricorn"), rng, 16)
    ref = retract(g)
    assert nx_isomorphic(ref, brute_retract(g))
    for k in range(10):
        assert are_isomorphic(retract(g, random.Random(k)), ref)


def test_bi_split_examples(named):
    w5 = named["w5"]
    hub = 5
    inc = list(w5.incident(hub))
    s = bi_split(w5, hub, set(inc[:3]), set(inc[3:]))
    h = s.graph
    assert (h.order, h.size) == (w5.order + 2, w5.size + 2)
    assert is_matching_covered(h)
    assert h.degree(s.inner) == 2
    back = bi_contract(h, s.inner)
    assert back == w5
    with pytest.raises(GraphError):
        bi_split(w5, hub, set(inc[:1]), set(inc[1:]))
    with pytest.raises(GraphError):
        bi_split(w5, hub, set(inc[:2]), set(inc[3:]))


def test_bi_split_round_trip_random():
    rng = random.Random(12)
    for g in (generate("petersen").add_edge(0, 7), generate("odd_wheel", 7), generate("odd_wheel", 5)):
        h = random_bi_split(g, rng)
        assert h is not None and is_matching_covered(h)
        assert (h.order, h.size) == (g.order + 2, g.size + 2)
        assert are_isomorphic(retract(h), g)


def test_dependence_on_even_cycle():
    for k in (2, 3, 4):
        classes = dependence_classes(cycle(2 * k))
        assert sorted(len(c) for c in classes) == [k, k]


def test_dependence_matches_definition(named):
    g = named["bicorn"]
    pms = brute_perfect_matchings(g)
    for e in g.edge_ids:
        for f in g.edge_ids:
            expected = all(f in m for m in pms if e in m)
            assert depends_on(g, e, f) == expected


def test_brick_classes_small(named):
    for name in ("k4", "c6bar", "bicorn", "tricorn", "petersen", "w5"):
        g = named[name]
        assert all(len(c) <= 2 for c in dependence_classes(g))


def test_doubleton_sides_bipartite(named):
    for name in ("k4", "c6bar", "bicorn"):
        g = named[name]
        for d in removable_doubletons(g):
            e, f = sorted(d)
            h = g.delete_edges([e, f])
            parts = h.bipartition()
            assert parts is not None
            side = parts[0]
            ue, ve = g.ends(e)
            uf, vf = g.ends(f)
            assert (ue in side) == (ve in side)
            assert (uf in side) == (vf in side)
            assert (ue in side) != (uf in side)


def test_minimal_classes_are_sources(named):
    g = named["bicorn"]
    mins = minimal_classes(g)
    classes = dependence_classes(g)
    for c in mins:
        e = next(iter(c))
        for other in classes:
            if other == c:
                continue
            f = next(iter(other))
            assert not (depends_on(g, f, e) and not depends_on(g, e, f))


def test_removable_class_examples(named):
    counts = {}
    for name in ("bicorn", "c6bar", "tricorn", "k4", "petersen"):
        cls = removable_classes(named[name])
        counts[name] = (
            sum(1 for c in cls if c.kind == "single"),
            sum(1 for c in cls if c.kind == "doubleton"),
        )
    assert counts["bicorn"] == (1, 2)
    assert counts["c6bar"] == (0, 3)
    assert counts["tricorn"][0] == 3
    assert counts["k4"] == (0, 3)
    assert counts["petersen"][0] == 15


@pytest.mark.parametrize("name", ["k4", "c6bar", "bicorn", "tricorn", "w5", "k33", "c6"])
def test_removable_sets_match_brute_force(named, name):
    g = named[name]
    assert removable_edges(g) == brute_removable(g)
    assert set(removable_doubletons(g)) == set(brute_doubletons(g))
    for e in g.edge_ids:
        assert is_removable(g, e) == is_mcg(g.delete_edges([e]))


def test_removable_sets_match_brute_force_on_decomposable():
    rng = random.Random(21)
    for _ in range(6):
        g = random_bisubdivision(generate("bicorn"), rng, 12)
        assert removable_edges(g) == brute_removable(g)
        assert set(removable_doubletons(g)) == set(brute_doubletons(g))


def test_induced_minimal_classes(named):
    g = named["w5"]
    for e in g.edge_ids:
        induced = induced_minimal_classes(g, e)
        assert induced
        for c in induced:
            assert any(depends_on(g, f, e) for f in c)


def test_ear_decomposition_examples(named):
    d = ear_decomposition(named["c6"])
    assert d.validate() and len(d.steps) == 2 and d.double_ears == 0
    d = ear_decomposition(named["k33"])
    assert d.validate() and d.double_ears == 0
    d = ear_decomposition(named["c6bar"])
    assert d.validate() and d.double_ears >= 1
    gs = d.graphs
    assert (len(gs) > 2 and is_bisubdivision_of(gs[2], complete_graph(4))) or (
        len(gs) > 3 and is_bisubdivision_of(gs[3], named["c6bar"])
    )


@pytest.mark.parametrize("name", ["k4", "bicorn", "tricorn", "petersen", "w7"])
def test_ear_decompositions_validate(named, name):
    d = ear_decomposition(named[name])
    assert d.validate()
    assert d.graphs[0].size == 1 and d.graphs[-1] == named[name]
    assert d.double_ears >= 1


def test_ear_decomposition_of_bipartite_uses_single_ears():
    for g in (complete_bipartite(4), generate("biwheel", 8), generate("mobius", 10)):
        d = ear_decomposition(g)
        assert d.validate() and d.double_ears == 0


def test_ear_validation_rejects_wrong_host(named):
    d = ear_decomposition(named["k4"])
    broken = type(d)(named["c6bar"], d.steps)
    assert not broken.validate()
