"""Tight and separating cuts, ELP cuts and the tight cut decomposition."""

from __future__ import annotations

import random
from collections.abc import Iterator
from dataclasses import dataclass, field
from itertools import combinations

from .graph import Cut, EdgeId, Graph, GraphError, VertexId, contract_shore, cut_of
from .matching import (
    all_barriers,
    check_cap,
    has_perfect_matching_on,
    is_barrier,
    is_matching_covered,
    perfect_matching_masks,
)


def _require_mcg(g: Graph) -> None:
    if not is_matching_covered(g):
        raise GraphError("graph is not matching covered")


# -- single cuts -------------------------------------------------------------


def crossing_counts(g: Graph, cut: Cut) -> list[int]:
    """``|C & M|`` for every perfect matching ``M`` (in mask order)."""
    c = cut.edge_mask
    return [(pm & c).bit_count() for pm in perfect_matching_masks(g)]


def tight_witness(g: Graph, cut: Cut) -> frozenset[EdgeId] | None:
    """A perfect matching meeting the cut other than exactly once, or None."""
    c = cut.edge_mask
    for pm in perfect_matching_masks(g):
        if (pm & c).bit_count() != 1:
            return g.edges_of_mask(pm)
    return None


def is_tight(g: Graph, cut: Cut) -> bool:
    return tight_witness(g, cut) is None


def _separating_by_matchings(g: Graph, cmask: int) -> bool:
    covered = 0
    for pm in perfect_matching_masks(g):
        if (pm & cmask).bit_count() == 1:
            covered |= pm
    return covered == g.all_edges_mask


def is_separating(g: Graph, cut: Cut, method: str = "matchings") -> bool:
    """Whether both cut-contractions are matching covered.

    ``method="matchings"`` uses the equivalent test that every edge lies in
    a perfect matching meeting the cut exactly once; ``"contractions"``
    builds the two contractions and tests them directly.
    """
    if method == "matchings":
        return _separating_by_matchings(g, cut.edge_mask)
    if method == "contractions":
        a = contract_shore(g, cut.shore).graph
        b = contract_shore(g, cut.complement).graph
        return is_matching_covered(a) and is_matching_covered(b)
    raise GraphError(f"unknown method {method!r}")


@dataclass(frozen=True)
class CutClassification:
    cut: Cut
    separating: bool
    tight: bool
    witness: frozenset[EdgeId] | None = None
    crossing_matchings: dict[EdgeId, frozenset[EdgeId]] = field(default_factory=dict)


def classify_cut(g: Graph, cut: Cut) -> CutClassification:
    """Tightness and separation of one cut, with the matchings that prove them.

    ``witness`` is a perfect matching meeting the cut more than once (when
    the cut is not tight); ``crossing_matchings`` gives, for every edge, a
    perfect matching containing it that meets the cut exactly once (when
    the cut is separating).
    """
    c = cut.edge_mask
    witness = None
    per_edge: dict[int, int] = {}
    for pm in perfect_matching_masks(g):
        k = (pm & c).bit_count()
        if k == 1:
            rest = pm
            while rest:
                low = rest & -rest
                per_edge.setdefault(low.bit_length() - 1, pm)
                rest ^= low
        elif witness is None:
            witness = pm
    separating = len(per_edge) == g.size
    eids = g.edge_ids
    crossing = {eids[k]: g.edges_of_mask(pm) for k, pm in sorted(per_edge.items())} if separating else {}
    return CutClassification(
        cut=cut,
        separating=separating,
        tight=witness is None,
        witness=None if witness is None else g.edges_of_mask(witness),
        crossing_matchings=crossing,
    )


# -- exhaustive shore scans --------------------------------------------------


def _odd_shores(g: Graph, nontrivial: bool) -> Iterator[tuple[int, int]]:
    """(shore mask, cut mask) for every odd shore holding vertex index 0."""
    n = g.order
    inc = g.incidence_masks
    cuts = [inc[0]] * (1 << (n - 1))
    for sub in range(1, 1 << (n - 1)):
        low = sub & -sub
        cuts[sub] = cuts[sub ^ low] ^ inc[low.bit_length()]
    for sub in range(1 << (n - 1)):
        size = sub.bit_count() + 1
        if not size & 1:
            continue
        if nontrivial and (size == 1 or n - size == 1):
            continue
        if size == n:
            continue
        yield (sub << 1) | 1, cuts[sub]


def _cut_from_mask(g: Graph, shore: int) -> Cut:
    c = cut_of(g, g.vertices_of_mask(shore))
    return Cut(g, c.canonical_shore())


def _sort_cuts(cuts: list[Cut]) -> list[Cut]:
    return sorted(cuts, key=lambda c: (len(c.shore), sorted(c.shore)))


def enumerate_separating_cuts(g: Graph, cap: int | None = None, nontrivial: bool = False) -> list[Cut]:
    """All separating cuts with odd shores, one per pair of shores.

    Each cut is returned with its canonical (smaller) shore; trivial cuts are
    included unless ``nontrivial`` is set.
    """
    check_cap(g, cap)
    _require_mcg(g)
    out = [
        _cut_from_mask(g, shore)
        for shore, c in _odd_shores(g, nontrivial)
        if _separating_by_matchings(g, c)
    ]
    return _sort_cuts(out)


def enumerate_tight_cuts(g: Graph, cap: int | None = None, nontrivial: bool = False) -> list[Cut]:
    check_cap(g, cap)
    _require_mcg(g)
    pms = perfect_matching_masks(g)
    out = [
        _cut_from_mask(g, shore)
        for shore, c in _odd_shores(g, nontrivial)
        if all((pm & c).bit_count() == 1 for pm in pms)
    ]
    return _sort_cuts(out)


def separating_non_tight_cut(g: Graph, cap: int | None = None) -> Cut | None:
    """First nontrivial odd-shore cut that is separating but not tight."""
    check_cap(g, cap)
    _require_mcg(g)
    pms = perfect_matching_masks(g)
    full = g.all_edges_mask
    for shore, c in _odd_shores(g, nontrivial=True):
        covered = 0
        tight = True
        for pm in pms:
            k = (pm & c).bit_count()
            if k == 1:
                covered |= pm
            else:
                tight = False
        if not tight and covered == full:
            return _cut_from_mask(g, shore)
    return None


# -- ELP cuts ----------------------------------------------------------------


@dataclass(frozen=True)
class ElpCut:
    cut: Cut
    kind: str  # "barrier" or "2-separation"
    source: frozenset[VertexId]  # the barrier, or the 2-separation pair


def elp_cuts(g: Graph, cap: int | None = None) -> list[ElpCut]:
    """All nontrivial barrier cuts and 2-separation cuts, each checked tight.

    Sorted by the canonical shore: smaller shores first, then
    lexicographically.
    """
    _require_mcg(g)
    check_cap(g, cap)
    found: dict[frozenset[VertexId], ElpCut] = {}

    def add(shore: frozenset[VertexId], kind: str, source: frozenset[VertexId]) -> None:
        cut = Cut(g, cut_of(g, shore).canonical_shore())
        found.setdefault(cut.shore, ElpCut(cut, kind, source))

    for b in all_barriers(g):
        if len(b.vertices) < 2:
            continue
        for comp in b.odd_components:
            if len(comp) > 1:
                add(comp, "barrier", b.vertices)

    full = g.all_vertices_mask
    for i, j in combinations(range(g.order), 2):
        comps = g.component_masks(full & ~(1 << i) & ~(1 << j))
        if len(comps) < 2:
            continue
        u, v = g.vertices[i], g.vertices[j]
        if is_barrier(g, (u, v)):
            continue
        for r in range(1, len(comps)):
            for chosen in combinations(comps, r):
                s = g.vertices_of_mask(sum(chosen))
                add(s | {u}, "2-separation", frozenset((u, v)))
                add(s | {v}, "2-separation", frozenset((u, v)))

    out = sorted(found.values(), key=lambda ec: (len(ec.cut.shore), sorted(ec.cut.shore)))
    for ec in out:
        if not is_tight(g, ec.cut):
            raise RuntimeError(f"ELP cut {sorted(ec.cut.shore)} is not tight")
    return out


# -- bricks, braces, decomposition --------------------------------------------


def is_bicritical(g: Graph) -> bool:
    """``G - u - v`` has a perfect matching for every pair of distinct vertices."""
    full = g.all_vertices_mask
    return all(
        has_perfect_matching_on(g, full & ~(1 << i) & ~(1 << j))
        for i, j in combinations(range(g.order), 2)
    )


def _brick_by_elp(g: Graph) -> bool:
    return (
        not g.is_bipartite
        and g.order >= 4
        and g.vertex_connectivity_at_least(3)
        and is_bicritical(g)
    )


def has_nontrivial_tight_cut(g: Graph, method: str = "elp") -> bool:
    """``method="scan"`` checks every odd shore; ``"elp"`` looks for ELP cuts."""
    _require_mcg(g)
    if method == "scan":
        pms = perfect_matching_masks(g)
        return any(
            all((pm & c).bit_count() == 1 for pm in pms)
            for _, c in _odd_shores(g, nontrivial=True)
        )
    if method == "elp":
        if not g.is_bipartite:
            return not _brick_by_elp(g)
        return bool(elp_cuts(g))
    raise GraphError(f"unknown method {method!r}")


def is_brick(g: Graph, method: str = "elp") -> bool:
    """Nonbipartite, matching covered and free of nontrivial tight cuts.

    The default method uses the equivalent criterion: 3-connected and
    bicritical (no barrier with two or more vertices).
    """
    if not is_matching_covered(g) or g.is_bipartite:
        return False
    if method == "elp":
        key = "is_brick"
        if key not in g._cache:
            g._cache[key] = _brick_by_elp(g)
        return g._cache[key]
    return not has_nontrivial_tight_cut(g, method)


def is_brace(g: Graph, method: str = "elp") -> bool:
    if not is_matching_covered(g) or not g.is_bipartite:
        return False
    return not has_nontrivial_tight_cut(g, method)


def classify(g: Graph) -> str:
    """``"brick"``, ``"brace"`` or ``"neither"`` for a matching covered graph."""
    _require_mcg(g)
    if is_brick(g):
        return "brick"
    if is_brace(g):
        return "brace"
    return "neither"


@dataclass(frozen=True)
class Piece:
    graph: Graph
    kind: str  # "brick" or "brace"


@dataclass(frozen=True)
class CutRecord:
    """One split: node ``node`` was cut along ``shore`` into nodes ``children``."""

    node: int
    shore: frozenset[VertexId]
    kind: str
    children: tuple[int, int]


@dataclass
class DecompositionResult:
    pieces: list[Piece]
    cut_tree: list[CutRecord]
    nodes: list[Graph]

    @property
    def b(self) -> int:
        return sum(1 for p in self.pieces if p.kind == "brick")

    @property
    def bricks(self) -> list[Graph]:
        return [p.graph for p in self.pieces if p.kind == "brick"]

    @property
    def braces(self) -> list[Graph]:
        return [p.graph for p in self.pieces if p.kind == "brace"]


def _candidate_cuts(g: Graph, source: str) -> list[tuple[Cut, str]]:
    if source == "elp":
        if not g.is_bipartite and _brick_by_elp(g):
            return []
        return [(ec.cut, ec.kind) for ec in elp_cuts(g)]
    if source == "all":
        return [(c, "tight") for c in enumerate_tight_cuts(g, nontrivial=True)]
    raise GraphError(f"unknown cut source {source!r}")


def tight_cut_decomposition(
    g: Graph,
    rng: random.Random | None = None,
    source: str = "elp",
    cap: int | None = None,
) -> DecompositionResult:
    """Split along nontrivial tight cuts until only bricks and braces remain.

    Without ``rng`` every node is split along its first ELP cut (smallest
    shore, then lexicographic). With ``rng`` the cut is drawn at random from
    the candidates; ``source="all"`` draws from every nontrivial tight cut
    rather than only ELP cuts.
    """
    check_cap(g, cap)
    _require_mcg(g)
    nodes = [g]
    records: list[CutRecord] = []
    pieces: list[Piece] = []
    stack = [0]
    while stack:
        idx = stack.pop()
        h = nodes[idx]
        cands = _candidate_cuts(h, source)
        if not cands:
            pieces.append(Piece(h, "brace" if h.is_bipartite else "brick"))
            continue
        cut, kind = rng.choice(cands) if rng is not None else cands[0]
        a = contract_shore(h, cut.shore).graph
        b = contract_shore(h, cut.complement).graph
        nodes += [a, b]
        kids = (len(nodes) - 2, len(nodes) - 1)
        records.append(CutRecord(idx, cut.shore, kind, kids))
        stack += [kids[1], kids[0]]
    return DecompositionResult(pieces, records, nodes)


def number_of_bricks(g: Graph) -> int:
    """``b(G)``: the number of bricks in any tight cut decomposition."""
    if "b" not in g._cache:
        _require_mcg(g)
        if g.is_bipartite:
            g._cache["b"] = 0
        elif is_brick(g):
            g._cache["b"] = 1
        else:
            g._cache["b"] = tight_cut_decomposition(g).b
    return g._cache["b"]


def is_near_brick(g: Graph) -> bool:
    return is_matching_covered(g) and number_of_bricks(g) == 1
