from __future__ import annotations

import pytest
from oracles import brute_removable, nx_isomorphic

from matchcov.cuts import classify
from matchcov.families import (
    FAMILIES,
    FamilySpec,
    complete_bipartite,
    complete_graph,
    generate,
    instances,
    recognize,
)
from matchcov.graph import GraphError
from matchcov.iso import are_isomorphic
from matchcov.matching import is_matching_covered


def test_identities():
    assert are_isomorphic(generate("staircase", 6), generate("c6bar"))
    assert are_isomorphic(generate("staircase", 8), generate("bicorn"))
    assert are_isomorphic(generate("mobius", 6), complete_bipartite(3))
    assert are_isomorphic(generate("biwheel", 8), generate("prism", 8))
    assert are_isomorphic(generate("mobius", 4), complete_graph(4))
    assert are_isomorphic(generate("truncated_biwheel", 6), generate("c6bar"))


def test_recognize_examples():
    assert set(recognize(generate("c6bar"))) == {
        FamilySpec("c6bar"),
        FamilySpec("prism", 6),
        FamilySpec("staircase", 6),
        FamilySpec("truncated_biwheel", 6),
    }
    assert set(recognize(complete_graph(4))) == {FamilySpec("k4"), FamilySpec("odd_wheel", 3), FamilySpec("mobius", 4)}
    assert recognize(generate("petersen")) == [FamilySpec("petersen")]


def test_generators_are_deterministic():
    for spec in instances(12):
        assert generate(spec) == generate(spec)


@pytest.mark.parametrize(
    "spec",
    [FamilySpec("odd_wheel", 4), FamilySpec("biwheel", 6), FamilySpec("prism", 5),
     FamilySpec("k4", 4), FamilySpec("cycle"), FamilySpec("nonsense", 3)],
)
def test_illegal_parameters(spec):
    with pytest.raises(GraphError):
        generate(spec)


def test_basic_sizes():
    sizes = {s: (generate(s).order, generate(s).size) for s in ("k4", "c6bar", "bicorn", "tricorn", "petersen")}
    assert sizes == {"k4": (4, 6), "c6bar": (6, 9), "bicorn": (8, 12), "tricorn": (10, 15), "petersen": (10, 15)}


def test_tricorn_is_planar_cubic_with_three_removable_edges():
    import networkx as nx

    t = generate("tricorn")
    assert all(d == 3 for d in t.degrees().values())
    assert len(brute_removable(t)) == 3
    h = nx.Graph(list(t.edges.values()))
    assert nx.check_planarity(h)[0]


def test_petersen_matches_networkx():
    import networkx as nx

    from oracles import from_nx

    assert nx_isomorphic(generate("petersen"), from_nx(nx.petersen_graph()))
    assert nx_isomorphic(generate("prism", 10), from_nx(nx.circular_ladder_graph(5)))
    assert nx_isomorphic(generate("odd_wheel", 5), from_nx(nx.wheel_graph(6)))


@pytest.mark.parametrize(
    "family, sizes, kind",
    [
        ("odd_wheel", (3, 5, 7, 9, 11), "brick"),
        ("truncated_biwheel", (6, 8, 10, 12), "brick"),
        ("staircase", (6, 8, 10, 12), "brick"),
        ("prism", (6, 10), "brick"),
        ("mobius", (4, 8, 12), "brick"),
        ("biwheel", (8, 10, 12), "brace"),
        ("prism", (8, 12), "brace"),
        ("mobius", (6, 10), "brace"),
    ],
)
def test_family_classification(family, sizes, kind):
    for n in sizes:
        g = generate(family, n)
        assert is_matching_covered(g)
        assert classify(g) == kind


def test_family_list():
    assert set(FAMILIES) >= {"odd_wheel", "biwheel", "truncated_biwheel", "truncated_biwheel_plus", "prism",
                             "mobius", "staircase", "k4", "c6bar", "bicorn", "tricorn", "petersen", "cycle",
                             "complete_bipartite"}
