"""Solidity, disjoint odd cycles, characteristic, robust cuts and b-invariant edges."""

from __future__ import annotations

from dataclasses import dataclass

from .cuts import (
    enumerate_separating_cuts,
    is_brick,
    number_of_bricks,
    separating_non_tight_cut,
)
from .graph import Cut, EdgeId, Graph, GraphError, VertexId, contract_shore
from .matching import check_cap, has_perfect_matching_on, maximum_matching, perfect_matching_masks
from .transforms import is_removable


def _require_brick(g: Graph) -> None:
    if not is_brick(g):
        raise GraphError("graph is not a brick")


def solidity_witness(g: Graph, cap: int | None = None) -> Cut | None:
    """A nontrivial separating cut that is not tight, or None if ``g`` is solid."""
    key = "solidity_witness"
    if key not in g._cache:
        g._cache[key] = separating_non_tight_cut(g, cap)
    return g._cache[key]


def is_solid(g: Graph, cap: int | None = None) -> bool:
    return solidity_witness(g, cap) is None


# -- odd cycles ---------------------------------------------------------------


def _odd_cycle_table(g: Graph) -> dict[int, tuple[int, ...]]:
    """Map each vertex mask spanned by an odd cycle to one such cycle (vertex indices)."""
    cached = g._cache.get("odd_cycles")
    if cached is not None:
        return cached
    adj = g.adjacency_masks
    n = g.order
    table: dict[int, tuple[int, ...]] = {}
    for s in range(n):
        above = g.all_vertices_mask & ~((1 << (s + 1)) - 1)
        # reach[m]: ends of paths from s whose other vertices are exactly m
        reach: dict[int, int] = {}
        for v in range(s + 1, n):
            if adj[s] >> v & 1:
                reach[1 << v] = 1 << v
        m = 0
        while True:
            m = (m - above) & above  # next submask of ``above`` in increasing order
            if not m:
                break
            ends = reach.get(m)
            if not ends:
                continue
            size = m.bit_count()
            if size >= 2 and size % 2 == 0 and ends & adj[s]:
                table[m | (1 << s)] = _trace_cycle(adj, reach, s, m, ends & adj[s])
            rest = ends
            while rest:
                low = rest & -rest
                v = low.bit_length() - 1
                rest ^= low
                nxt = adj[v] & above & ~m
                while nxt:
                    w = nxt & -nxt
                    nxt ^= w
                    reach[m | w] = reach.get(m | w, 0) | w
    g._cache["odd_cycles"] = table
    return table


def _trace_cycle(adj: tuple[int, ...], reach: dict[int, int], s: int, m: int, closing: int) -> tuple[int, ...]:
    v = (closing & -closing).bit_length() - 1
    path = [v]
    mask = m
    while mask.bit_count() > 1:
        prev_mask = mask & ~(1 << v)
        cands = reach.get(prev_mask, 0) & adj[v]
        u = (cands & -cands).bit_length() - 1
        path.append(u)
        mask, v = prev_mask, u
    path.append(s)
    return tuple(reversed(path))


def odd_cycles(g: Graph, cap: int | None = None) -> list[tuple[VertexId, ...]]:
    """One odd cycle per vertex set that spans one, as a closed vertex sequence (first vertex not repeated)."""
    check_cap(g, cap)
    vs = g.vertices
    table = _odd_cycle_table(g)
    keys = sorted(table, key=lambda m: (m.bit_count(), m))
    return [tuple(vs[i] for i in table[k]) for k in keys]


def is_odd_intercyclic(g: Graph, cap: int | None = None) -> bool:
    """True when every two odd cycles share a vertex."""
    check_cap(g, cap)
    full = g.all_vertices_mask
    return all(g.two_coloring(full & ~m) is not None for m in _odd_cycle_table(g))


@dataclass(frozen=True)
class NonSolidityCertificate:
    """Two disjoint odd cycles and a perfect matching of the rest of the graph."""

    cycle1: tuple[VertexId, ...]
    cycle2: tuple[VertexId, ...]
    residual_matching: frozenset[EdgeId]

    def validate(self, g: Graph) -> bool:
        for cyc in (self.cycle1, self.cycle2):
            if len(cyc) < 3 or len(cyc) % 2 == 0 or len(set(cyc)) != len(cyc):
                return False
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                if not g.multiplicity(a, b):
                    return False
        if set(self.cycle1) & set(self.cycle2):
            return False
        rest = set(g.vertices) - set(self.cycle1) - set(self.cycle2)
        covered: list[VertexId] = []
        for e in self.residual_matching:
            if not g.has_edge(e):
                return False
            covered += g.ends(e)
        return len(covered) == len(set(covered)) and set(covered) == rest


def rw_certificate(g: Graph, cap: int | None = None) -> NonSolidityCertificate | None:
    """Two disjoint odd cycles whose removal leaves a graph with a perfect matching.

    A brick has such a pair exactly when it is not solid. Pairs are tried in
    order of total size.
    """
    check_cap(g, cap)
    _require_brick(g)
    table = _odd_cycle_table(g)
    keys = sorted(table, key=lambda m: (m.bit_count(), m))
    full = g.all_vertices_mask
    best = None
    for i, a in enumerate(keys):
        if best is not None and 2 * a.bit_count() >= best[0]:
            break
        for b in keys[i + 1 :]:
            if a & b:
                continue
            size = a.bit_count() + b.bit_count()
            if best is not None and size >= best[0]:
                break
            if has_perfect_matching_on(g, full & ~a & ~b):
                best = (size, a, b)
                break
    if best is None:
        return None
    _, a, b = best
    vs = g.vertices
    rest = g.delete_vertices(g.vertices_of_mask(a | b))
    return NonSolidityCertificate(
        tuple(vs[i] for i in table[a]),
        tuple(vs[i] for i in table[b]),
        frozenset(maximum_matching(rest)),
    )


# -- characteristic and robust cuts -------------------------------------------


def characteristic(g: Graph, cut: Cut) -> int:
    """Least ``|M & C|`` over perfect matchings meeting the cut at least three times."""
    _require_brick(g)
    if cut.is_trivial:
        raise GraphError("the characteristic is defined for nontrivial cuts")
    c = cut.edge_mask
    counts = [(pm & c).bit_count() for pm in perfect_matching_masks(g)]
    big = [k for k in counts if k >= 3]
    if not big:
        raise GraphError("the cut is tight, so it has no characteristic")
    return min(big)


@dataclass(frozen=True)
class RobustCutReport:
    cut: Cut
    characteristic: int
    robust: bool


def robust_cuts(g: Graph, cap: int | None = None, include_nonrobust: bool = False) -> list[RobustCutReport]:
    """Nontrivial separating cuts whose two contractions are near-bricks.

    With ``include_nonrobust`` every nontrivial separating cut is reported,
    each flagged.
    """
    check_cap(g, cap)
    _require_brick(g)
    out = []
    for cut in enumerate_separating_cuts(g, cap, nontrivial=True):
        a = contract_shore(g, cut.shore).graph
        b = contract_shore(g, cut.complement).graph
        robust = number_of_bricks(a) == 1 and number_of_bricks(b) == 1
        if robust or include_nonrobust:
            out.append(RobustCutReport(cut, characteristic(g, cut), robust))
    return out


# -- b-invariant edges ---------------------------------------------------------


def is_b_invariant(g: Graph, e: EdgeId) -> bool:
    """Whether ``e`` is removable and ``g - e`` has exactly one brick."""
    _require_brick(g)
    return is_removable(g, e) and number_of_bricks(g.delete_edges([e])) == 1


def b_invariant_edges(g: Graph) -> list[EdgeId]:
    _require_brick(g)
    return [e for e in g.edge_ids if is_b_invariant(g, e)]
