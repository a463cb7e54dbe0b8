from __future__ import annotations

import random

import pytest
from oracles import (
    brute_has_nontrivial_tight_cut,
    brute_is_brick,
    brute_separating,
    brute_tight,
    odd_shores,
)

from matchcov.corpus import random_bisubdivision, two_edge_cut_cubic
from matchcov.cuts import (
    classify,
    classify_cut,
    elp_cuts,
    enumerate_separating_cuts,
    enumerate_tight_cuts,
    has_nontrivial_tight_cut,
    is_brace,
    is_brick,
    is_near_brick,
    is_separating,
    is_tight,
    number_of_bricks,
    tight_cut_decomposition,
)
from matchcov.families import complete_bipartite, complete_graph, cycle, generate
from matchcov.graph import Graph, GraphError, cut_of, splice
from matchcov.iso import are_isomorphic
from matchcov.matching import is_matching_covered, is_perfect_matching
from matchcov.transforms import bi_subdivide


def k4_k33():
    return splice(complete_graph(4), 0, complete_bipartite(3), 0).relabeled()


def test_trivial_cuts_tight(named):
    for name in ("k4", "petersen", "bicorn", "c6"):
        g = named[name]
        for v in g.vertices:
            assert is_tight(g, cut_of(g, {v}))
            assert is_separating(g, cut_of(g, {v}))


def test_c6bar_triangle_cut(named):
    g = named["c6bar"]
    c = cut_of(g, {0, 2, 4})
    info = classify_cut(g, c)
    assert info.separating and not info.tight
    assert sum(1 for e in info.witness if e in c.edges) == 3
    for e, m in info.crossing_matchings.items():
        assert e in m and is_perfect_matching(g, m)
        assert sum(1 for f in m if f in c.edges) == 1


def test_c6_consecutive_cut_tight():
    assert is_tight(cycle(6), cut_of(cycle(6), {0, 1, 2}))


def test_bicorn_splicing_cut_separating():
    k4, c6b = complete_graph(4), generate("c6bar")
    g = splice(k4, 0, c6b, 0)
    shore = [v for v in g.vertices if v in (1, 2, 3)]
    assert is_separating(g, cut_of(g, shore))
    assert is_separating(g, cut_of(g, shore), method="contractions")


@pytest.mark.parametrize("name", ["k4", "c6bar", "bicorn", "c6", "k33", "w5"])
def test_cut_tests_match_oracle(named, name):
    g = named[name]
    for x in odd_shores(g):
        c = cut_of(g, x)
        assert is_tight(g, c) == brute_tight(g, x)
        sep = brute_separating(g, x)
        assert is_separating(g, c) == sep
        assert is_separating(g, c, method="contractions") == sep


def test_enumerate_separating_cuts_examples(named):
    k4_cuts = enumerate_separating_cuts(named["k4"])
    assert len(k4_cuts) == 4 and all(c.is_trivial for c in k4_cuts)
    c6bar_cuts = enumerate_separating_cuts(named["c6bar"])
    nontrivial = [c for c in c6bar_cuts if not c.is_trivial]
    assert len(c6bar_cuts) == 7
    # both triangles give the same cut; one representative is kept
    assert len(nontrivial) == 1
    assert nontrivial[0].shore in (frozenset({0, 2, 4}), frozenset({1, 3, 5}))
    c6 = named["c6"]
    sep = {c.canonical_shore() for c in enumerate_separating_cuts(c6)}
    tight = {c.canonical_shore() for c in enumerate_tight_cuts(c6)}
    assert sep == tight


def test_enumerated_cuts_match_oracle(named):
    for name in ("bicorn", "w5", "k33"):
        g = named[name]
        expected = {cut_of(g, x).canonical_shore() for x in odd_shores(g) if brute_separating(g, x)}
        assert {c.canonical_shore() for c in enumerate_separating_cuts(g)} == expected


def test_elp_cut_of_bisubdivided_k4():
    g = bi_subdivide(complete_graph(4), {0: 2})
    cuts = elp_cuts(g)
    assert cuts
    deg2 = [v for v in g.vertices if g.degree(v) == 2]
    shores = {c.cut.shore for c in cuts}
    for v in deg2:
        assert frozenset({v, *g.neighbors(v)}) in shores or any(
            c.cut.same_cut(cut_of(g, {v, *g.neighbors(v)})) for c in cuts
        )


def test_elp_cuts_empty_for_k4(named):
    assert elp_cuts(named["k4"]) == []


def test_elp_finds_unique_tight_cut_of_k4_k33():
    g = k4_k33()
    brute = [x for x in odd_shores(g, nontrivial=True) if brute_tight(g, x)]
    assert len(brute) == 1
    cuts = elp_cuts(g)
    assert len(cuts) == 1
    assert cuts[0].cut.same_cut(cut_of(g, brute[0]))


def test_elp_cuts_are_tight_and_complete():
    rng = random.Random(1)
    graphs = [k4_k33(), two_edge_cut_cubic(6, 6, rng), random_bisubdivision(generate("bicorn"), rng, 12)]
    for g in graphs:
        for c in elp_cuts(g):
            assert brute_tight(g, c.cut.shore)
            assert c.kind in ("barrier", "2-separation")
        assert bool(elp_cuts(g)) == brute_has_nontrivial_tight_cut(g)


def test_decomposition_examples(named):
    d = tight_cut_decomposition(named["c6"])
    # the 6-cycle has a nontrivial tight cut, so it splits into two 4-cycles
    assert d.b == 0 and len(d.braces) == 2
    assert all(are_isomorphic(h, cycle(4)) for h in d.braces)
    d = tight_cut_decomposition(named["bicorn"])
    assert d.b == 1 and d.pieces[0].graph == named["bicorn"] and not d.cut_tree
    d = tight_cut_decomposition(bi_subdivide(complete_graph(4), {0: 2}))
    assert d.b == 1 and len(d.braces) == 1
    assert are_isomorphic(d.bricks[0], complete_graph(4), simple=True)


def test_decomposition_pieces_classify(named):
    g = k4_k33()
    d = tight_cut_decomposition(g)
    assert d.b == 1 and len(d.braces) == 1
    assert are_isomorphic(d.bricks[0], complete_graph(4))
    assert are_isomorphic(d.braces[0], complete_bipartite(3))
    for p in d.pieces:
        assert classify(p.graph) == p.kind
    assert len(d.cut_tree) == 1 and d.cut_tree[0].node == 0


def test_decomposition_with_random_order_uses_all_tight_cuts():
    g = bi_subdivide(generate("bicorn"), {0: 2, 5: 2})
    ref = tight_cut_decomposition(g)
    for k in range(5):
        d = tight_cut_decomposition(g, rng=random.Random(k), source="all")
        assert d.b == ref.b and len(d.braces) == len(ref.braces)
    with pytest.raises(GraphError):
        tight_cut_decomposition(g, rng=random.Random(0), source="nope")


def test_classification_examples(named):
    for name in ("k4", "c6bar", "bicorn", "tricorn", "petersen"):
        assert classify(named[name]) == "brick"
        assert is_near_brick(named[name])
    assert classify(generate("biwheel", 8)) == "brace"
    assert classify(generate("prism", 8)) == "brace"
    assert classify(named["c6"]) == "neither"
    assert classify(cycle(4)) == "brace"
    assert classify(k4_k33()) == "neither"
    with pytest.raises(GraphError):
        classify(Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)]))


def test_brick_definitions_agree():
    rng = random.Random(2)
    graphs = [generate(s) for s in ("k4", "c6bar", "bicorn", "tricorn", "petersen")]
    graphs += [k4_k33(), two_edge_cut_cubic(4, 6, rng), bi_subdivide(generate("c6bar"), {1: 2})]
    graphs += [generate("odd_wheel", 7), generate("prism", 10), generate("mobius", 8), generate("staircase", 10)]
    for g in graphs:
        brute = brute_is_brick(g)
        assert is_brick(g) == brute
        assert is_brick(Graph(g.vertices, g.edges), method="scan") == brute
        assert has_nontrivial_tight_cut(g) == brute_has_nontrivial_tight_cut(g)


def test_b_counts(named):
    assert number_of_bricks(named["c6"]) == 0
    assert number_of_bricks(named["petersen"]) == 1
    assert number_of_bricks(k4_k33()) == 1
    # two K4s minus an edge, joined by two edges: each side closes up to a K4
    g = two_edge_cut_cubic(4, 4, random.Random(0))
    assert is_matching_covered(g) and number_of_bricks(g) == 2


def test_brace_examples(named):
    assert is_brace(named["k33"])
    assert not is_brace(named["k4"])
    assert not is_brace(bi_subdivide(complete_bipartite(3), {0: 2}))
