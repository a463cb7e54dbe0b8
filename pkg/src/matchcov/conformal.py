"""Conformal subgraphs, conformal minors and matching minors.

Deciding whether ``J`` is a conformal minor of ``G`` uses the fact that every
conformal matching covered subgraph of ``G`` is reached from ``G`` by
deleting removable single or double ears. The search walks those deletions
depth first over edge masks, memoising dead states, and stops at subgraphs
that are bi-subdivisions of ``J``. Deleting an ear lowers ``|E| - |V|`` by
one, which bounds the depth.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass
from functools import lru_cache

from . import settings
from .cuts import is_brick, tight_cut_decomposition
from .families import generate
from .graph import CapExceeded, EdgeId, Graph, GraphError, VertexId
from .iso import are_isomorphic
from .matching import has_perfect_matching, is_matching_covered, is_perfect_matching, maximum_matching
from .transforms import SubgraphState, Thread, _retract_unchecked, bisubdivision_map

PATTERN_NAMES = ("k4", "c6bar", "bicorn", "tricorn", "petersen")


@lru_cache(maxsize=None)
def pattern(name: str) -> Graph:
    if name not in PATTERN_NAMES:
        raise GraphError(f"unknown pattern {name!r}")
    return generate(name)


def _check_cap(g: Graph, cap: int | None) -> None:
    cap = settings.CONFORMAL_CAP if cap is None else cap
    if g.order > cap:
        raise CapExceeded(f"graph has {g.order} vertices, conformal search cap is {cap}")


def is_conformal_subgraph(g: Graph, h: Graph) -> bool:
    """Whether the matching covered subgraph ``h`` leaves a perfectly matchable rest."""
    for e, uv in h.edges.items():
        if not g.has_edge(e) or g.ends(e) != uv:
            raise GraphError(f"edge {e} of h is not an edge of g")
    if any(not g.has_vertex(v) for v in h.vertices):
        raise GraphError("h has a vertex outside g")
    if not is_matching_covered(h):
        raise GraphError("h is not matching covered")
    rest = g.delete_vertices(h.vertices)
    return rest.order == 0 or has_perfect_matching(rest)


@dataclass(frozen=True)
class ConformalEmbedding:
    """A bi-subdivision of ``pattern`` sitting in the host as a conformal subgraph."""

    pattern: Graph
    vertex_map: dict[VertexId, VertexId]
    edge_map: dict[EdgeId, Thread]
    residual_matching: frozenset[EdgeId]

    @property
    def image_vertices(self) -> frozenset[VertexId]:
        return frozenset(v for t in self.edge_map.values() for v in t.vertices)

    @property
    def image_edges(self) -> frozenset[EdgeId]:
        return frozenset(e for t in self.edge_map.values() for e in t.edges)

    def validate(self, g: Graph) -> bool:
        j = self.pattern
        vm = self.vertex_map
        if sorted(vm) != list(j.vertices) or len(set(vm.values())) != len(vm):
            return False
        if sorted(self.edge_map) != sorted(j.edge_ids):
            return False
        used_inner: set[VertexId] = set()
        used_edges: set[EdgeId] = set()
        branch = set(vm.values())
        for f, path in self.edge_map.items():
            a, b = j.ends(f)
            if {path.vertices[0], path.vertices[-1]} != {vm[a], vm[b]}:
                return False
            if path.length % 2 == 0:
                return False
            for x, y, e in zip(path.vertices, path.vertices[1:], path.edges):
                if not g.has_edge(e) or set(g.ends(e)) != {x, y}:
                    return False
            inner = set(path.vertices[1:-1])
            if inner & (used_inner | branch) or len(inner) != path.length - 1:
                return False
            if used_edges & set(path.edges):
                return False
            used_inner |= inner
            used_edges |= set(path.edges)
        rest = g.delete_vertices(self.image_vertices)
        return is_perfect_matching(rest, self.residual_matching)


def _pattern_info(j: Graph) -> tuple[int, int, bool]:
    branch = sum(1 for d in j.degrees().values() if d >= 3)
    return j.size - j.order, branch, j.is_bipartite


def _walk(
    state: SubgraphState,
    slack: int,
    branch_needed: int,
    need_nonbipartite: bool,
    at_target: Callable[[int, int], object],
) -> object:
    """Depth-first ear deletions; return the first truthy ``at_target`` value."""
    dead: set[int] = set()
    n_inc = state.inc

    def go(emask: int, fmask: int) -> object:
        if emask in dead:
            return None
        vm = state.vertex_mask(emask)
        diff = emask.bit_count() - vm.bit_count()
        if diff < slack:
            dead.add(emask)
            return None
        if diff == slack:
            found = at_target(emask, fmask)
            if not found:
                dead.add(emask)
            return found
        big = 0
        rest = vm
        while rest:
            low = rest & -rest
            if (n_inc[low.bit_length() - 1] & emask).bit_count() >= 3:
                big += 1
            rest ^= low
        if big < branch_needed or (need_nonbipartite and state.is_bipartite(emask)):
            dead.add(emask)
            return None
        for _, e2, f2 in state.removable_ears(emask, fmask):
            found = go(e2, f2)
            if found:
                return found
        dead.add(emask)
        return None

    return go(state.host.all_edges_mask, 0)


def find_conformal_minor(g: Graph, j: Graph, cap: int | None = None) -> ConformalEmbedding | None:
    """A conformal bi-subdivision of ``j`` in ``g``, or None when ``g`` is ``j``-free."""
    _check_cap(g, cap)
    if not is_matching_covered(j):
        raise GraphError("pattern is not matching covered")
    if not is_matching_covered(g):
        raise GraphError("graph is not matching covered")
    slack, branch, j_bip = _pattern_info(j)
    if j.order == 2 and j.size == 1:
        # K2: any edge of a perfect matching
        m = sorted(maximum_matching(g))
        e = m[0]
        u, v = g.ends(e)
        return ConformalEmbedding(j, {j.vertices[0]: u, j.vertices[1]: v},
                                  {j.edge_ids[0]: Thread((u, v), (e,))}, frozenset(m[1:]))
    state = SubgraphState(g)

    def at_target(emask: int, fmask: int) -> ConformalEmbedding | None:
        h = state.graph(emask)
        cert = bisubdivision_map(h, j)
        if cert is None:
            return None
        return ConformalEmbedding(j, cert.vertex_map, cert.edge_map, g.edges_of_mask(fmask))

    return _walk(state, slack, branch, not j_bip, at_target)


def is_j_based(g: Graph, j: Graph, cap: int | None = None) -> bool:
    return find_conformal_minor(g, j, cap) is not None


def is_j_free(g: Graph, j: Graph, cap: int | None = None) -> bool:
    return find_conformal_minor(g, j, cap) is None


def basic_nonsolid_minor(g: Graph, cap: int | None = None) -> tuple[str, ConformalEmbedding] | None:
    """The first of C6bar, bicorn, tricorn, Petersen found as a conformal minor."""
    for name in ("c6bar", "bicorn", "tricorn", "petersen"):
        emb = find_conformal_minor(g, pattern(name), cap)
        if emb is not None:
            return name, emb
    return None


def _is_cubic_brick(j: Graph) -> bool:
    return all(d == 3 for d in j.degrees().values()) and is_brick(j)


def j_free_via_bricks(g: Graph, j: Graph, cap: int | None = None) -> bool:
    """Decide ``j``-freeness brick by brick; valid for cubic bricks ``j``."""
    if not _is_cubic_brick(j):
        raise GraphError("the pattern must be a cubic brick")
    _check_cap(g, cap)
    return all(is_j_free(b, j, cap) for b in tight_cut_decomposition(g).bricks)


def find_matching_minor(g: Graph, j: Graph, cap: int | None = None) -> Graph | None:
    """A conformal subgraph of ``g`` whose retract is isomorphic to ``j``, or None.

    ``j`` should have no vertex of degree two.
    """
    _check_cap(g, cap)
    if not is_matching_covered(g) or not is_matching_covered(j):
        raise GraphError("both graphs must be matching covered")
    if any(d == 2 for d in j.degrees().values()):
        raise GraphError("the pattern must have no vertex of degree two")
    slack, branch, j_bip = _pattern_info(j)
    state = SubgraphState(g)

    def at_target(emask: int, fmask: int) -> Graph | None:
        h = state.graph(emask)
        return h if are_isomorphic(_retract_unchecked(h), j) else None

    return _walk(state, slack, branch, not j_bip, at_target)


def is_matching_minor(g: Graph, j: Graph, cap: int | None = None) -> bool:
    return find_matching_minor(g, j, cap) is not None
