"""Bi-subdivision, bi-contraction, retracts, dependence and ears."""

from __future__ import annotations

import random
from collections.abc import Iterator, Mapping
from dataclasses import dataclass
from itertools import combinations
from typing import NamedTuple

from .graph import EdgeId, Graph, GraphError, VertexId, contract_shore
from .iso import isomorphisms
from .matching import check_cap, is_matching_covered, perfect_matching_masks


def _require_mcg(g: Graph) -> None:
    if not is_matching_covered(g):
        raise GraphError("graph is not matching covered")


# -- bi-subdivision and threads ----------------------------------------------


def bi_subdivide(g: Graph, plan: Mapping[EdgeId, int]) -> Graph:
    """Replace edge ``e`` by a path through ``plan[e]`` new vertices (an even number).

    The first segment of each path keeps the id of the edge it replaces.
    """
    for e, k in plan.items():
        if not g.has_edge(e):
            raise GraphError(f"unknown edge {e}")
        if k < 0 or k % 2:
            raise GraphError(f"edge {e}: inserted vertex count must be even and nonnegative, got {k}")
    verts = list(g.vertices)
    edges = dict(g.edges)
    nv = g.fresh_vertex_id()
    ne = g.fresh_edge_id()
    for e in sorted(plan):
        k = plan[e]
        if not k:
            continue
        u, v = g.ends(e)
        inner = list(range(nv, nv + k))
        nv += k
        verts += inner
        chain = [u, *inner, v]
        edges[e] = (chain[0], chain[1])
        for a, b in zip(chain[1:], chain[2:]):
            edges[ne] = (a, b)
            ne += 1
    return Graph(verts, edges)


class Thread(NamedTuple):
    """A path whose internal vertices have degree two and whose ends do not."""

    vertices: tuple[VertexId, ...]
    edges: tuple[EdgeId, ...]

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def ends(self) -> tuple[VertexId, VertexId]:
        return self.vertices[0], self.vertices[-1]


def threads(g: Graph) -> list[Thread]:
    """Maximal paths between vertices of degree other than two.

    Returns an empty list when every vertex has degree two.
    """
    branch = [v for v in g.vertices if g.degree(v) != 2]
    seen: set[EdgeId] = set()
    out = []
    for v in branch:
        for e in g.incident(v):
            if e in seen:
                continue
            vs, es = [v], [e]
            cur = g.other_end(e, v)
            while g.degree(cur) == 2:
                vs.append(cur)
                a, b = g.incident(cur)
                e = b if a == es[-1] else a
                es.append(e)
                cur = g.other_end(e, cur)
            vs.append(cur)
            seen.update(es)
            out.append(Thread(tuple(vs), tuple(es)))
    return out


@dataclass(frozen=True)
class BisubdivisionMap:
    """How ``host`` arises from ``pattern`` by bi-subdivision."""

    vertex_map: dict[VertexId, VertexId]
    edge_map: dict[EdgeId, Thread]


def _cycle_vertices(g: Graph) -> tuple[list[VertexId], list[EdgeId]]:
    start = g.vertices[0]
    vs, es = [start], []
    prev = None
    cur = start
    while True:
        a, b = g.incident(cur)
        e = b if a == prev else a
        es.append(e)
        cur = g.other_end(e, cur)
        prev = e
        if cur == start:
            return vs, es
        vs.append(cur)


def _is_cycle(g: Graph) -> bool:
    return g.order >= 2 and g.is_connected and all(d == 2 for d in g.degrees().values())


def bisubdivision_map(host: Graph, pattern: Graph) -> BisubdivisionMap | None:
    """A certificate that ``host`` is a bi-subdivision of ``pattern``, or None."""
    if host.size - host.order != pattern.size - pattern.order:
        return None
    if not host.is_connected or not pattern.is_connected:
        return None
    if _is_cycle(pattern):
        if not _is_cycle(host) or host.order % 2 or pattern.order % 2 or host.order < pattern.order:
            return None
        pv, pe = _cycle_vertices(pattern)
        hv, he = _cycle_vertices(host)
        vmap = dict(zip(pv, hv))
        emap = {}
        for i, e in enumerate(pe[:-1]):
            emap[e] = Thread((hv[i], hv[i + 1]), (he[i],))
        k = len(pe) - 1
        emap[pe[-1]] = Thread(tuple(hv[k:]) + (hv[0],), tuple(he[k:]))
        return BisubdivisionMap(vmap, emap)
    if _is_cycle(host):
        return None

    def suppressed(g: Graph) -> tuple[Graph, list[Thread]] | None:
        ts = threads(g)
        if any(t.ends[0] == t.ends[1] for t in ts):
            return None
        branch = [v for v in g.vertices if g.degree(v) != 2]
        return Graph(branch, {k: t.ends for k, t in enumerate(ts)}), ts

    sp, sh = suppressed(pattern), suppressed(host)
    if sp is None or sh is None:
        return None
    (pg, pts), (hg, hts) = sp, sh
    for iso in isomorphisms(pg, hg):
        phi = iso.mapping
        emap: dict[EdgeId, Thread] = {}
        ok = True
        for a, b in {t.ends for t in pts} | {t.ends[::-1] for t in pts}:
            if a > b:
                continue
            ours = [k for k, t in enumerate(pts) if set(t.ends) == {a, b}]
            theirs = [k for k, t in enumerate(hts) if set(t.ends) == {phi[a], phi[b]}]
            for parity in (0, 1):
                p_side = sorted((k for k in ours if pts[k].length % 2 == parity), key=lambda k: pts[k].length)
                h_side = sorted((k for k in theirs if hts[k].length % 2 == parity), key=lambda k: hts[k].length)
                if len(p_side) != len(h_side):
                    ok = False
                    break
                for kp, kh in zip(p_side, h_side):
                    if hts[kh].length < pts[kp].length:
                        ok = False
                        break
                    pt, ht = pts[kp], hts[kh]
                    path = ht if ht.vertices[0] == phi[pt.vertices[0]] else Thread(ht.vertices[::-1], ht.edges[::-1])
                    for e in pt.edges:
                        emap[e] = path
                if not ok:
                    break
            if not ok:
                break
        if ok:
            vmap = {v: phi[v] for v in pg.vertices}
            # pattern vertices of degree two sit on threads; place them along the host path
            for pt in pts:
                inner = pt.vertices[1:-1]
                if not inner:
                    continue
                path = emap[pt.edges[0]]
                for i, v in enumerate(inner):
                    vmap[v] = path.vertices[i + 1]
                # only the last pattern edge of the thread absorbs the extra length
                for i, e in enumerate(pt.edges):
                    if i < len(pt.edges) - 1:
                        emap[e] = Thread(path.vertices[i : i + 2], path.edges[i : i + 1])
                    else:
                        emap[e] = Thread(path.vertices[i:], path.edges[i:])
            return BisubdivisionMap(vmap, emap)
    return None


def is_bisubdivision_of(host: Graph, pattern: Graph) -> bool:
    return bisubdivision_map(host, pattern) is not None


# -- bi-contraction, retract, bi-splitting ------------------------------------


def bi_contract(g: Graph, v0: VertexId) -> Graph:
    """Shrink a degree-two vertex together with its two neighbours.

    The new vertex takes the smaller of the two neighbour ids.
    """
    if g.degree(v0) != 2:
        raise GraphError(f"vertex {v0} has degree {g.degree(v0)}, not two")
    if g.order < 4:
        raise GraphError("bi-contraction needs at least four vertices")
    nbrs = g.neighbors(v0)
    if len(nbrs) != 2:
        raise GraphError(f"vertex {v0} is joined to a single neighbour by two edges")
    return contract_shore(g, {v0, *nbrs}, vertex=min(nbrs)).graph


def _retract_unchecked(g: Graph, rng: random.Random | None = None) -> Graph:
    while g.order >= 4:
        cands = [v for v in g.vertices if g.degree(v) == 2 and len(g.neighbors(v)) == 2]
        if not cands:
            break
        v = rng.choice(cands) if rng is not None else cands[0]
        g = bi_contract(g, v)
    return g


def retract(g: Graph, rng: random.Random | None = None) -> Graph:
    """Bi-contract vertices of degree two until none is left (or order drops below four).

    Without ``rng`` the smallest eligible vertex is taken each time; with it
    the vertex is drawn at random.
    """
    if g.order < 4:
        raise GraphError("retract needs at least four vertices")
    if _is_cycle(g):
        raise GraphError("the retract of an even cycle is not defined")
    _require_mcg(g)
    return _retract_unchecked(g, rng)


class BiSplit(NamedTuple):
    graph: Graph
    outer1: VertexId
    inner: VertexId
    outer2: VertexId


def bi_split(g: Graph, v: VertexId, part1: set[EdgeId], part2: set[EdgeId]) -> BiSplit:
    """Split ``v`` into ``outer1 - inner - outer2``.

    Edges of ``part1`` stay at ``v`` (which becomes ``outer1``); edges of
    ``part2`` move to a fresh vertex ``outer2``.
    """
    part1, part2 = set(part1), set(part2)
    if part1 & part2 or part1 | part2 != set(g.incident(v)):
        raise GraphError("the two parts must partition the edges at v")
    for part in (part1, part2):
        if len({g.other_end(e, v) for e in part}) < 2:
            raise GraphError("each side of a bi-split needs at least two distinct neighbours")
    outer2 = g.fresh_vertex_id()
    inner = outer2 + 1
    edges = dict(g.edges)
    for e in part2:
        edges[e] = (g.other_end(e, v), outer2)
    ne = g.fresh_edge_id()
    edges[ne] = (v, inner)
    edges[ne + 1] = (inner, outer2)
    return BiSplit(Graph([*g.vertices, outer2, inner], edges), v, inner, outer2)


# -- dependence and removable classes -----------------------------------------


def _dependence_masks(g: Graph) -> list[int]:
    """``D[k]``: edge-index mask of the edges every perfect matching through edge ``k`` uses."""
    cached = g._cache.get("dependence")
    if cached is not None:
        return cached
    _require_mcg(g)
    full = g.all_edges_mask
    dep = [full] * g.size
    for pm in perfect_matching_masks(g):
        rest = pm
        while rest:
            low = rest & -rest
            k = low.bit_length() - 1
            dep[k] &= pm
            rest ^= low
    g._cache["dependence"] = dep
    return dep


def depends_on(g: Graph, e: EdgeId, f: EdgeId) -> bool:
    """Whether every perfect matching containing ``e`` also contains ``f``."""
    ei = g._eindex
    return bool(_dependence_masks(g)[ei[e]] >> ei[f] & 1)


def dependence_classes(g: Graph, cap: int | None = None) -> list[frozenset[EdgeId]]:
    """Classes of mutual dependence, ordered by least edge id."""
    check_cap(g, cap)
    dep = _dependence_masks(g)
    left = g.all_edges_mask
    out = []
    for k in range(g.size):
        if not left >> k & 1:
            continue
        cls = 0
        cand = dep[k]
        while cand:
            low = cand & -cand
            j = low.bit_length() - 1
            if dep[j] >> k & 1:
                cls |= low
            cand ^= low
        left &= ~cls
        out.append(g.edges_of_mask(cls))
    return out


def minimal_classes(g: Graph, cap: int | None = None) -> list[frozenset[EdgeId]]:
    """Classes that no edge outside them depends on."""
    dep = _dependence_masks(g)
    ei = g._eindex
    out = []
    for cls in dependence_classes(g, cap):
        k = ei[min(cls)]
        inside = g.edge_mask(cls)
        if not any(dep[j] >> k & 1 for j in range(g.size) if not inside >> j & 1):
            out.append(cls)
    return out


def induced_minimal_classes(g: Graph, e: EdgeId) -> list[frozenset[EdgeId]]:
    """Minimal classes holding an edge that depends on ``e``."""
    dep = _dependence_masks(g)
    k = g._eindex[e]
    return [
        q for q in minimal_classes(g)
        if any(dep[g._eindex[f]] >> k & 1 for f in q)
    ]


def _mcg_after_deleting(g: Graph, gone: int) -> bool:
    """Is ``g`` minus the edges of index mask ``gone`` matching covered?"""
    keep = g.all_edges_mask & ~gone
    covered = 0
    for pm in perfect_matching_masks(g):
        if not pm & gone:
            covered |= pm
    if covered != keep:
        return False
    return g.delete_edges(g.edges_of_mask(gone)).is_connected


def is_removable(g: Graph, e: EdgeId) -> bool:
    _require_mcg(g)
    return _mcg_after_deleting(g, g.edge_mask([e]))


def removable_edges(g: Graph) -> list[EdgeId]:
    _require_mcg(g)
    return [e for k, e in enumerate(g.edge_ids) if _mcg_after_deleting(g, 1 << k)]


def removable_doubletons(g: Graph) -> list[frozenset[EdgeId]]:
    """Pairs of non-removable edges whose joint deletion leaves a matching covered graph.

    Only minimal classes of size two are examined; every removable doubleton
    is one.
    """
    single = set(removable_edges(g))
    out = []
    for cls in minimal_classes(g):
        if len(cls) != 2 or cls & single:
            continue
        if _mcg_after_deleting(g, g.edge_mask(cls)):
            out.append(cls)
    return out


@dataclass(frozen=True)
class RemovableClass:
    edges: frozenset[EdgeId]
    kind: str  # "single" or "doubleton"


def removable_classes(g: Graph) -> list[RemovableClass]:
    singles = [RemovableClass(frozenset([e]), "single") for e in removable_edges(g)]
    doubles = [RemovableClass(d, "doubleton") for d in removable_doubletons(g)]
    return singles + sorted(doubles, key=lambda c: sorted(c.edges))


# -- ears --------------------------------------------------------------------


@dataclass(frozen=True)
class Ear:
    vertices: tuple[VertexId, ...]
    edges: tuple[EdgeId, ...]

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def internal(self) -> tuple[VertexId, ...]:
        return self.vertices[1:-1]


class SubgraphState:
    """Conformal subgraphs of a fixed matching covered host, in bitmask form.

    A state is a pair ``(E, F)``: ``E`` is the edge mask of the subgraph
    ``S`` and ``F`` is a perfect matching of ``host - V(S)``. The perfect
    matchings of ``S`` are then exactly the host's perfect matchings inside
    ``E | F`` with ``F`` removed.
    """

    def __init__(self, host: Graph) -> None:
        _require_mcg(host)
        self.host = host
        self.pms = perfect_matching_masks(host)
        self.ends = host.index_ends
        self.inc = host.incidence_masks
        self.n = host.order

    def vertex_mask(self, emask: int) -> int:
        vm = 0
        rest = emask
        while rest:
            low = rest & -rest
            i, j = self.ends[low.bit_length() - 1]
            vm |= (1 << i) | (1 << j)
            rest ^= low
        return vm

    def degree(self, i: int, emask: int) -> int:
        return (self.inc[i] & emask).bit_count()

    def is_connected(self, emask: int) -> bool:
        vm = self.vertex_mask(emask)
        if not vm:
            return False
        seen = vm & -vm
        frontier = seen
        while frontier:
            i = frontier.bit_length() - 1
            frontier &= ~(1 << i)
            es = self.inc[i] & emask
            while es:
                low = es & -es
                a, b = self.ends[low.bit_length() - 1]
                j = b if a == i else a
                if not seen >> j & 1:
                    seen |= 1 << j
                    frontier |= 1 << j
                es ^= low
        return seen == vm

    def is_matching_covered(self, emask: int, fmask: int) -> bool:
        if not emask or not self.is_connected(emask):
            return False
        allowed = emask | fmask
        covered = 0
        for pm in self.pms:
            if not pm & ~allowed:
                covered |= pm
        return covered & emask == emask

    def is_bipartite(self, emask: int) -> bool:
        h = self.host
        return h.edge_subgraph(h.edges_of_mask(emask)).is_bipartite

    def graph(self, emask: int) -> Graph:
        h = self.host
        return h.edge_subgraph(h.edges_of_mask(emask))

    def threads(self, emask: int) -> list[tuple[list[int], list[int]]]:
        """Threads of ``S`` as (vertex indices, edge indices); cycles get one ear per edge."""
        vm = self.vertex_mask(emask)
        degs = {}
        rest = vm
        while rest:
            low = rest & -rest
            i = low.bit_length() - 1
            degs[i] = self.degree(i, emask)
            rest ^= low
        branch = [i for i, d in degs.items() if d != 2]
        out = []
        if not branch:
            # an even cycle: for each edge, the rest of the cycle is an ear
            start = min(degs)
            vs, es = [start], []
            prev = -1
            cur = start
            while True:
                inc = self.inc[cur] & emask
                a = (inc & -inc).bit_length() - 1
                b = (inc & ~(1 << a)).bit_length() - 1
                e = b if a == prev else a
                es.append(e)
                x, y = self.ends[e]
                cur = y if x == cur else x
                prev = e
                if cur == start:
                    break
                vs.append(cur)
            k = len(es)
            if k == 1:
                return []
            for t in range(k):
                # drop edge es[t] joining vs[t] and vs[t+1]; the ear runs the long way round
                path_v = [vs[(t + 1 + s) % k] for s in range(k)]
                path_e = [es[(t + 1 + s) % k] for s in range(k - 1)]
                out.append((path_v, path_e))
            return out
        seen = 0
        for v in branch:
            inc = self.inc[v] & emask
            while inc:
                low = inc & -inc
                inc ^= low
                e = low.bit_length() - 1
                if seen >> e & 1:
                    continue
                vs, es = [v], [e]
                x, y = self.ends[e]
                cur = y if x == v else x
                while degs[cur] == 2:
                    vs.append(cur)
                    both = self.inc[cur] & emask & ~(1 << es[-1])
                    e = both.bit_length() - 1
                    es.append(e)
                    x, y = self.ends[e]
                    cur = y if x == cur else x
                vs.append(cur)
                for f in es:
                    seen |= 1 << f
                if vs[0] != vs[-1]:
                    out.append((vs, es))
        return out

    @staticmethod
    def delete_ear(emask: int, fmask: int, ear: tuple[list[int], list[int]]) -> tuple[int, int]:
        _, es = ear
        for e in es:
            emask &= ~(1 << e)
        for e in es[1:-1:2]:
            fmask |= 1 << e
        return emask, fmask

    def removable_ears(self, emask: int, fmask: int) -> Iterator[tuple[tuple, int, int]]:
        """Yield ``(ears, E', F')`` for every removable single ear, then every removable double ear."""
        odd = [t for t in self.threads(emask) if len(t[1]) % 2]
        single_ok = []
        for t in odd:
            e2, f2 = self.delete_ear(emask, fmask, t)
            if self.is_matching_covered(e2, f2):
                single_ok.append(True)
                yield (t,), e2, f2
            else:
                single_ok.append(False)
        for a, b in combinations(range(len(odd)), 2):
            if single_ok[a] or single_ok[b]:
                continue
            ta, tb = odd[a], odd[b]
            if set(ta[0]) & set(tb[0]):
                continue
            e2, f2 = self.delete_ear(emask, fmask, ta)
            e2, f2 = self.delete_ear(e2, f2, tb)
            if self.is_matching_covered(e2, f2):
                yield (ta, tb), e2, f2

    def to_ear(self, t: tuple[list[int], list[int]]) -> Ear:
        vs, es = t
        h = self.host
        return Ear(tuple(h.vertices[i] for i in vs), tuple(h.edge_ids[e] for e in es))


@dataclass(frozen=True)
class EarStep:
    """``graph`` is obtained from the previous graph by adding ``ears``."""

    graph: Graph
    ears: tuple[Ear, ...]


@dataclass(frozen=True)
class EarDecomposition:
    host: Graph
    steps: tuple[EarStep, ...]

    @property
    def graphs(self) -> list[Graph]:
        return [s.graph for s in self.steps]

    @property
    def double_ears(self) -> int:
        return sum(1 for s in self.steps if len(s.ears) == 2)

    def validate(self) -> bool:
        gs = self.graphs
        if not gs or gs[0].order != 2 or gs[0].size != 1:
            return False
        if gs[-1].edges != self.host.edges:
            return False
        for prev, step in zip(gs, self.steps[1:]):
            cur = step.graph
            if not is_matching_covered(cur) or not 1 <= len(step.ears) <= 2:
                return False
            rest = cur
            for ear in step.ears:
                if ear.length % 2 == 0:
                    return False
                if any(cur.degree(v) != 2 for v in ear.internal):
                    return False
                rest = rest.delete_vertices(ear.internal) if ear.internal else rest.delete_edges(ear.edges)
            if len(step.ears) == 2:
                a, b = step.ears
                if set(a.vertices) & set(b.vertices):
                    return False
                for ear in step.ears:
                    alone = cur.delete_vertices(ear.internal) if ear.internal else cur.delete_edges(ear.edges)
                    if is_matching_covered(alone):
                        return False
            if rest.edges != prev.edges or not is_matching_covered(rest):
                return False
        return True


def _decompose_from(
    state: SubgraphState, emask: int, fmask: int, failed: set[int]
) -> list[tuple[int, tuple]] | None:
    """Ear deletions from ``E`` down to a single edge, as ``[(E_i, ears_i), ...]``."""
    if emask.bit_count() == 1:
        return [(emask, ())]
    if emask in failed:
        return None
    for ears, e2, f2 in state.removable_ears(emask, fmask):
        rest = _decompose_from(state, e2, f2, failed)
        if rest is not None:
            return [(emask, ears)] + rest
    failed.add(emask)
    return None


def _build_decomposition(state: SubgraphState, chain: list[tuple[int, tuple]]) -> EarDecomposition:
    # chain runs from the host down to K2; ears_i were deleted from E_i
    steps = [
        EarStep(state.graph(emask), tuple(state.to_ear(t) for t in ears))
        for emask, ears in reversed(chain)
    ]
    return EarDecomposition(state.host, tuple(steps))


def ear_decomposition(g: Graph, cap: int | None = None) -> EarDecomposition:
    """An ear decomposition from ``K2`` up to ``g``.

    Found in reverse: delete a removable single ear when there is one,
    otherwise a removable double ear, backtracking on dead ends.
    """
    check_cap(g, cap)
    state = SubgraphState(g)
    chain = _decompose_from(state, g.all_edges_mask, 0, set())
    if chain is None:
        raise RuntimeError("no ear decomposition found")
    return _build_decomposition(state, chain)
