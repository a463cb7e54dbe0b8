from __future__ import annotations

import random

from matchcov.corpus import (
    build_corpus,
    decomposable_entries,
    random_cubic,
    random_general_entries,
    read_corpus,
    two_edge_cut_cubic,
    write_corpus,
)
from matchcov.cuts import number_of_bricks, tight_cut_decomposition
from matchcov.matching import is_matching_covered


def small():
    return build_corpus(seed=7, max_order=8, n_cubic=8, n_dense=6, n_decomposable=8, n_general=10)


def test_corpus_is_deterministic():
    a, b = small(), small()
    assert [(e.name, e.graph) for e in a] == [(e.name, e.graph) for e in b]
    c = build_corpus(seed=8, max_order=8, n_cubic=8, n_dense=6, n_decomposable=8, n_general=10)
    assert [e.graph for e in a] != [e.graph for e in c]


def test_corpus_round_trip(tmp_path):
    entries = small()
    path = write_corpus(entries, tmp_path / "c", seed=7)
    back = read_corpus(tmp_path / "c")
    assert [(e.name, e.source, e.graph) for e in back] == [(e.name, e.source, e.graph) for e in entries]
    first = path.read_text()
    write_corpus(small(), tmp_path / "c", seed=7)
    assert path.read_text() == first


def test_corpus_respects_max_order():
    assert all(e.graph.order <= 8 for e in small())


def test_random_cubic_is_cubic():
    rng = random.Random(3)
    for n in (4, 6, 8, 10):
        g = random_cubic(n, rng)
        assert g.is_simple and all(d == 3 for d in g.degrees().values())


def test_decomposable_entries_have_tight_cuts():
    for e in decomposable_entries(10, random.Random(5), 12):
        assert is_matching_covered(e.graph)
        assert len(tight_cut_decomposition(e.graph).pieces) >= 2


def test_two_edge_cut_cubic_has_two_bricks():
    g = two_edge_cut_cubic(4, 6, random.Random(2))
    assert is_matching_covered(g) and number_of_bricks(g) == 2


def test_general_entries_are_mixed():
    es = random_general_entries(40, random.Random(1))
    kinds = {is_matching_covered(e.graph) for e in es if e.graph.order >= 2 and e.graph.is_connected}
    assert False in kinds
