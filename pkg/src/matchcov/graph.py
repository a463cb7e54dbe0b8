"""Loopless multigraphs with stable vertex and edge identifiers.

A :class:`Graph` is immutable. Every mutating-looking operation returns a new
graph; identifiers of surviving vertices and edges are never renamed, so edge
sets computed on one graph (cuts, matchings) stay meaningful on its
contractions and subgraphs.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

VertexId = int
EdgeId = int


class GraphError(ValueError):
    """Raised when an operation receives arguments it cannot accept."""


class CapExceeded(GraphError):
    """Raised when an exhaustive routine is asked to run above its vertex cap."""


class Graph:
    """A loopless multigraph.

    ``edges`` maps each edge id to its pair of end vertices. Parallel edges
    are distinct ids with the same pair of ends.
    """

    def __init__(
        self,
        vertices: Iterable[VertexId],
        edges: Mapping[EdgeId, tuple[VertexId, VertexId]] | None = None,
    ) -> None:
        vs = tuple(sorted(set(vertices)))
        vset = set(vs)
        es: dict[EdgeId, tuple[VertexId, VertexId]] = {}
        for eid in sorted(edges or {}):
            u, v = edges[eid]
            if u == v:
                raise GraphError(f"edge {eid} is a loop at {u}")
            if u not in vset or v not in vset:
                raise GraphError(f"edge {eid} has an end outside the vertex set")
            es[eid] = (u, v) if u < v else (v, u)
        self._vertices = vs
        self._edges = es
        self._cache: dict = {}

    @classmethod
    def from_edges(
        cls, vertices: int | Iterable[VertexId], pairs: Iterable[tuple[VertexId, VertexId]]
    ) -> Graph:
        """Build a graph whose edges get ids ``0, 1, ...`` in the order given."""
        if isinstance(vertices, int):
            vertices = range(vertices)
        return cls(vertices, dict(enumerate(pairs)))

    # -- basic queries -----------------------------------------------------

    @property
    def vertices(self) -> tuple[VertexId, ...]:
        return self._vertices

    @property
    def edges(self) -> Mapping[EdgeId, tuple[VertexId, VertexId]]:
        return self._edges

    @property
    def edge_ids(self) -> tuple[EdgeId, ...]:
        return self._eids

    @property
    def order(self) -> int:
        return len(self._vertices)

    @property
    def size(self) -> int:
        return len(self._edges)

    def ends(self, e: EdgeId) -> tuple[VertexId, VertexId]:
        try:
            return self._edges[e]
        except KeyError:
            raise GraphError(f"unknown edge {e}") from None

    def other_end(self, e: EdgeId, v: VertexId) -> VertexId:
        a, b = self._edges[e]
        if v == a:
            return b
        if v == b:
            return a
        raise GraphError(f"vertex {v} is not an end of edge {e}")

    def incident(self, v: VertexId) -> tuple[EdgeId, ...]:
        try:
            return self._incidence[v]
        except KeyError:
            raise GraphError(f"unknown vertex {v}") from None

    def degree(self, v: VertexId) -> int:
        return len(self.incident(v))

    def neighbors(self, v: VertexId) -> tuple[VertexId, ...]:
        return tuple(sorted({self.other_end(e, v) for e in self.incident(v)}))

    def multiplicity(self, u: VertexId, v: VertexId) -> int:
        key = (u, v) if u < v else (v, u)
        return len(self._pair_edges.get(key, ()))

    def edges_between(self, u: VertexId, v: VertexId) -> tuple[EdgeId, ...]:
        key = (u, v) if u < v else (v, u)
        return self._pair_edges.get(key, ())

    def has_vertex(self, v: VertexId) -> bool:
        return v in self._vindex

    def has_edge(self, e: EdgeId) -> bool:
        return e in self._edges

    @property
    def is_simple(self) -> bool:
        return all(len(es) == 1 for es in self._pair_edges.values())

    def degrees(self) -> dict[VertexId, int]:
        return {v: len(self._incidence[v]) for v in self._vertices}

    # -- derived structure -------------------------------------------------

    @cached_property
    def _eids(self) -> tuple[EdgeId, ...]:
        return tuple(self._edges)

    @cached_property
    def _vindex(self) -> dict[VertexId, int]:
        return {v: i for i, v in enumerate(self._vertices)}

    @cached_property
    def _eindex(self) -> dict[EdgeId, int]:
        return {e: i for i, e in enumerate(self._eids)}

    @cached_property
    def _incidence(self) -> dict[VertexId, tuple[EdgeId, ...]]:
        inc: dict[VertexId, list[EdgeId]] = {v: [] for v in self._vertices}
        for e, (u, v) in self._edges.items():
            inc[u].append(e)
            inc[v].append(e)
        return {v: tuple(es) for v, es in inc.items()}

    @cached_property
    def _pair_edges(self) -> dict[tuple[VertexId, VertexId], tuple[EdgeId, ...]]:
        pairs: dict[tuple[VertexId, VertexId], list[EdgeId]] = {}
        for e, key in self._edges.items():
            pairs.setdefault(key, []).append(e)
        return {k: tuple(v) for k, v in pairs.items()}

    @cached_property
    def index_ends(self) -> tuple[tuple[int, int], ...]:
        """End pairs of the edges as vertex indices, in ``edge_ids`` order."""
        vi = self._vindex
        return tuple((vi[u], vi[v]) for u, v in self._edges.values())

    @cached_property
    def adjacency_masks(self) -> tuple[int, ...]:
        """Bitmask of neighbour indices for every vertex index."""
        adj = [0] * self.order
        for i, j in self.index_ends:
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        return tuple(adj)

    @cached_property
    def incidence_masks(self) -> tuple[int, ...]:
        """Bitmask over edge indices of the edges at every vertex index."""
        inc = [0] * self.order
        for k, (i, j) in enumerate(self.index_ends):
            inc[i] |= 1 << k
            inc[j] |= 1 << k
        return tuple(inc)

    def vertex_mask(self, vs: Iterable[VertexId]) -> int:
        vi = self._vindex
        mask = 0
        for v in vs:
            mask |= 1 << vi[v]
        return mask

    def vertices_of_mask(self, mask: int) -> frozenset[VertexId]:
        return frozenset(v for i, v in enumerate(self._vertices) if mask >> i & 1)

    def edge_mask(self, es: Iterable[EdgeId]) -> int:
        ei = self._eindex
        mask = 0
        for e in es:
            mask |= 1 << ei[e]
        return mask

    def edges_of_mask(self, mask: int) -> frozenset[EdgeId]:
        return frozenset(e for k, e in enumerate(self._eids) if mask >> k & 1)

    @property
    def all_vertices_mask(self) -> int:
        return (1 << self.order) - 1

    @property
    def all_edges_mask(self) -> int:
        return (1 << self.size) - 1

    # -- connectivity and bipartiteness -------------------------------------

    def component_masks(self, within: int | None = None) -> list[int]:
        """Connected components of the subgraph induced by ``within`` (index masks)."""
        adj = self.adjacency_masks
        left = self.all_vertices_mask if within is None else within
        comps = []
        while left:
            seed = left & -left
            comp = seed
            frontier = seed
            while frontier:
                i = frontier.bit_length() - 1
                frontier &= ~(1 << i)
                new = adj[i] & left & ~comp
                comp |= new
                frontier |= new
            comps.append(comp)
            left &= ~comp
        return comps

    def components(self) -> list[frozenset[VertexId]]:
        return [self.vertices_of_mask(c) for c in self.component_masks()]

    @property
    def is_connected(self) -> bool:
        return self.order > 0 and len(self.component_masks()) == 1

    def two_coloring(self, within: int | None = None) -> tuple[int, int] | None:
        """Colour classes (index masks) of a proper 2-colouring, or None."""
        adj = self.adjacency_masks
        left = self.all_vertices_mask if within is None else within
        side = [0, 0]
        while left:
            seed = left & -left
            side[0] |= seed
            left &= ~seed
            stack = [(seed.bit_length() - 1, 0)]
            while stack:
                i, c = stack.pop()
                nb = adj[i] & (self.all_vertices_mask if within is None else within)
                if nb & side[c]:
                    return None
                fresh = nb & left
                side[1 - c] |= fresh
                left &= ~fresh
                while fresh:
                    j = fresh.bit_length() - 1
                    fresh &= ~(1 << j)
                    stack.append((j, 1 - c))
        return side[0], side[1]

    @property
    def is_bipartite(self) -> bool:
        return self.two_coloring() is not None

    def bipartition(self) -> tuple[frozenset[VertexId], frozenset[VertexId]] | None:
        sides = self.two_coloring()
        if sides is None:
            return None
        return self.vertices_of_mask(sides[0]), self.vertices_of_mask(sides[1])

    def vertex_connectivity_at_least(self, k: int) -> bool:
        """True if removing fewer than ``k`` vertices never disconnects the graph.

        Graphs on at most ``k`` vertices count as ``k``-connected only when
        complete in the simple sense (every pair adjacent).
        """
        n = self.order
        if n <= k:
            adj = self.adjacency_masks
            full = self.all_vertices_mask
            return all(adj[i] | (1 << i) == full for i in range(n))
        from itertools import combinations

        full = self.all_vertices_mask
        for r in range(k):
            for removed in combinations(range(n), r):
                mask = full
                for i in removed:
                    mask &= ~(1 << i)
                if len(self.component_masks(mask)) != 1:
                    return False
        return True

    # -- derived graphs ----------------------------------------------------

    def delete_vertices(self, vs: Iterable[VertexId]) -> Graph:
        gone = set(vs)
        for v in gone:
            if v not in self._vindex:
                raise GraphError(f"unknown vertex {v}")
        return Graph(
            (v for v in self._vertices if v not in gone),
            {e: uv for e, uv in self._edges.items() if uv[0] not in gone and uv[1] not in gone},
        )

    def delete_edges(self, es: Iterable[EdgeId]) -> Graph:
        gone = set(es)
        for e in gone:
            if e not in self._edges:
                raise GraphError(f"unknown edge {e}")
        return Graph(self._vertices, {e: uv for e, uv in self._edges.items() if e not in gone})

    def induced_subgraph(self, vs: Iterable[VertexId]) -> Graph:
        keep = set(vs)
        for v in keep:
            if v not in self._vindex:
                raise GraphError(f"unknown vertex {v}")
        return Graph(
            keep, {e: uv for e, uv in self._edges.items() if uv[0] in keep and uv[1] in keep}
        )

    def edge_subgraph(self, es: Iterable[EdgeId]) -> Graph:
        """Subgraph formed by the given edges and their ends."""
        es = list(es)
        vs = {v for e in es for v in self._edges[e]}
        return Graph(vs, {e: self._edges[e] for e in es})

    def add_edge(self, u: VertexId, v: VertexId, eid: EdgeId | None = None) -> Graph:
        if eid is None:
            eid = self.fresh_edge_id()
        if eid in self._edges:
            raise GraphError(f"edge id {eid} already used")
        es = dict(self._edges)
        es[eid] = (u, v)
        return Graph(self._vertices, es)

    def fresh_vertex_id(self) -> VertexId:
        return (self._vertices[-1] + 1) if self._vertices else 0

    def fresh_edge_id(self) -> EdgeId:
        return (max(self._edges) + 1) if self._edges else 0

    def relabeled(self) -> Graph:
        """Copy with vertices renamed ``0..n-1`` and edges ``0..m-1`` in order."""
        vi = self._vindex
        return Graph(range(self.order), {k: (vi[u], vi[v]) for k, (u, v) in enumerate(self._edges.values())})

    def simplify(self) -> Graph:
        """Collapse every class of parallel edges to its smallest edge id."""
        return Graph(self._vertices, {es[0]: key for key, es in self._pair_edges.items()})

    # -- dunder ------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._vertices == other._vertices and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._vertices, tuple(self._edges.items())))

    def __repr__(self) -> str:
        return f"Graph(order={self.order}, size={self.size})"


@dataclass(frozen=True)
class Cut:
    """The cut of a vertex set ``shore`` in ``graph``."""

    graph: Graph
    shore: frozenset[VertexId]

    @cached_property
    def edges(self) -> frozenset[EdgeId]:
        x = self.shore
        return frozenset(e for e, (u, v) in self.graph.edges.items() if (u in x) != (v in x))

    @property
    def complement(self) -> frozenset[VertexId]:
        return frozenset(self.graph.vertices) - self.shore

    @property
    def is_trivial(self) -> bool:
        return len(self.shore) == 1 or len(self.complement) == 1

    @cached_property
    def edge_mask(self) -> int:
        return self.graph.edge_mask(self.edges)

    def __len__(self) -> int:
        return len(self.edges)

    def canonical_shore(self) -> frozenset[VertexId]:
        """The smaller shore; on a tie, the one holding the least vertex."""
        x, y = self.shore, self.complement
        if len(x) != len(y):
            return x if len(x) < len(y) else y
        return x if min(x) < min(y) else y

    def same_cut(self, other: Cut) -> bool:
        return self.canonical_shore() == other.canonical_shore()


def cut_of(g: Graph, x: Iterable[VertexId]) -> Cut:
    shore = frozenset(x)
    for v in shore:
        if not g.has_vertex(v):
            raise GraphError(f"unknown vertex {v}")
    if not shore or len(shore) == g.order:
        raise GraphError("a shore must be a nonempty proper subset of the vertices")
    return Cut(g, shore)


class Contraction(NamedTuple):
    graph: Graph
    vertex: VertexId


def contract_shore(g: Graph, x: Iterable[VertexId], vertex: VertexId | None = None) -> Contraction:
    """Shrink ``x`` to one fresh vertex, dropping loops and keeping parallel edges.

    Edges of the cut keep their ids; they become the edges at the contraction
    vertex.
    """
    shore = frozenset(x)
    cut_of(g, shore)
    if vertex is None:
        vertex = g.fresh_vertex_id()
    elif g.has_vertex(vertex) and vertex not in shore:
        raise GraphError(f"vertex id {vertex} collides with a surviving vertex")
    edges = {}
    for e, (u, v) in g.edges.items():
        iu, iv = u in shore, v in shore
        if iu and iv:
            continue
        edges[e] = (vertex if iu else u, vertex if iv else v)
    verts = [v for v in g.vertices if v not in shore]
    verts.append(vertex)
    return Contraction(Graph(verts, edges), vertex)


def cut_contractions(g: Graph, x: Iterable[VertexId]) -> tuple[Contraction, Contraction]:
    """Both contractions of the cut of ``x``: ``(G/X, G/X-bar)``."""
    shore = frozenset(x)
    comp = frozenset(g.vertices) - shore
    return contract_shore(g, shore), contract_shore(g, comp)


def splice(
    g1: Graph,
    u: VertexId,
    g2: Graph,
    v: VertexId,
    pi: Mapping[EdgeId, EdgeId] | None = None,
) -> Graph:
    """Splice ``g1`` at ``u`` with ``g2`` at ``v`` along the edge bijection ``pi``.

    ``pi`` maps the edges at ``u`` onto the edges at ``v``; by default the
    two incidence lists are paired in id order. Vertices and edges of ``g1``
    keep their ids, and each joined edge keeps the id of its ``g1`` half.
    Vertices and edges of ``g2`` are shifted past those of ``g1``.
    """
    inc1, inc2 = g1.incident(u), g2.incident(v)
    if len(inc1) != len(inc2):
        raise GraphError(f"degree mismatch: {len(inc1)} at u versus {len(inc2)} at v")
    if pi is None:
        pi = dict(zip(inc1, inc2))
    if set(pi) != set(inc1) or sorted(pi.values()) != sorted(inc2):
        raise GraphError("pi must be a bijection between the two incidence sets")

    voff = max(g1.vertices) + 1 - min(g2.vertices)
    eoff = max(g1.edges) + 1 - min(g2.edges)
    verts = [w for w in g1.vertices if w != u]
    verts += [w + voff for w in g2.vertices if w != v]
    edges: dict[EdgeId, tuple[VertexId, VertexId]] = {}
    for e, (a, b) in g1.edges.items():
        if u not in (a, b):
            edges[e] = (a, b)
    stubs2 = set(inc2)
    for e, (a, b) in g2.edges.items():
        if e not in stubs2:
            edges[e + eoff] = (a + voff, b + voff)
    for e1, e2 in pi.items():
        edges[e1] = (g1.other_end(e1, u), g2.other_end(e2, v) + voff)
    return Graph(verts, edges)
