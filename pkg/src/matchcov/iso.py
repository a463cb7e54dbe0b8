"""Multigraph isomorphism by colour refinement and backtracking.

Intended for graphs of order up to about sixteen; the search is exhaustive.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterator
from dataclasses import dataclass

from .graph import Graph, VertexId


@dataclass(frozen=True)
class IsoCertificate:
    """A vertex bijection from the first graph onto the second."""

    mapping: dict[VertexId, VertexId]

    def inverse(self) -> IsoCertificate:
        return IsoCertificate({b: a for a, b in self.mapping.items()})

    def verify(self, g1: Graph, g2: Graph, simple: bool = False) -> bool:
        m = self.mapping
        if sorted(m) != list(g1.vertices) or sorted(m.values()) != list(g2.vertices):
            return False
        h1 = g1.simplify() if simple else g1
        h2 = g2.simplify() if simple else g2
        if h1.size != h2.size:
            return False
        mapped = Counter(tuple(sorted((m[a], m[b]))) for a, b in h1.edges.values())
        return mapped == Counter(h2.edges.values())


def _multiplicity_rows(g: Graph) -> list[dict[int, int]]:
    rows: list[dict[int, int]] = [dict() for _ in range(g.order)]
    for i, j in g.index_ends:
        rows[i][j] = rows[i].get(j, 0) + 1
        rows[j][i] = rows[j].get(i, 0) + 1
    return rows


def _refine(rows_list: list[list[dict[int, int]]]) -> list[list[int]]:
    """Joint colour refinement of several graphs; colours are comparable across them."""
    colors = [[sum(r.values()) for r in rows] for rows in rows_list]
    n_classes = -1
    while True:
        sigs = [
            [
                (col[i], tuple(sorted((col[j], k) for j, k in rows[i].items())))
                for i in range(len(rows))
            ]
            for rows, col in zip(rows_list, colors)
        ]
        palette = {s: c for c, s in enumerate(sorted({s for ss in sigs for s in ss}))}
        colors = [[palette[s] for s in ss] for ss in sigs]
        if len(palette) == n_classes:
            return colors
        n_classes = len(palette)


def invariant_key(g: Graph) -> tuple:
    """A cheap isomorphism invariant, usable for bucketing."""
    rows = _multiplicity_rows(g)
    (col,) = _refine([rows])
    mult = sorted(Counter(g.index_ends).values())
    return (g.order, g.size, tuple(sorted(col)), tuple(mult))


def isomorphisms(g1: Graph, g2: Graph) -> Iterator[IsoCertificate]:
    """Yield every isomorphism from ``g1`` onto ``g2`` (multiplicities respected)."""
    n = g1.order
    if n != g2.order or g1.size != g2.size:
        return
    r1, r2 = _multiplicity_rows(g1), _multiplicity_rows(g2)
    c1, c2 = _refine([r1, r2])
    if sorted(c1) != sorted(c2):
        return
    if n == 0:
        yield IsoCertificate({})
        return

    class_size = Counter(c1)
    # Assign rare colours first, then grow along adjacency so constraints bite early.
    order: list[int] = []
    placed = [False] * n
    while len(order) < n:
        start = min((i for i in range(n) if not placed[i]), key=lambda i: (class_size[c1[i]], c1[i], i))
        placed[start] = True
        order.append(start)
        k = len(order) - 1
        while k < len(order):
            i = order[k]
            for j in sorted(r1[i], key=lambda j: (class_size[c1[j]], c1[j], j)):
                if not placed[j]:
                    placed[j] = True
                    order.append(j)
            k += 1

    by_color: dict[int, list[int]] = {}
    for j in range(n):
        by_color.setdefault(c2[j], []).append(j)

    image = [-1] * n
    used = [False] * n
    v1, v2 = g1.vertices, g2.vertices

    def extend(pos: int) -> Iterator[IsoCertificate]:
        if pos == n:
            yield IsoCertificate({v1[i]: v2[image[i]] for i in range(n)})
            return
        i = order[pos]
        row = r1[i]
        for j in by_color[c1[i]]:
            if used[j]:
                continue
            rj = r2[j]
            ok = True
            for a in order[:pos]:
                if row.get(a, 0) != rj.get(image[a], 0):
                    ok = False
                    break
            if not ok:
                continue
            image[i] = j
            used[j] = True
            yield from extend(pos + 1)
            used[j] = False
            image[i] = -1

    yield from extend(0)


def are_isomorphic(g1: Graph, g2: Graph, simple: bool = False) -> IsoCertificate | None:
    """Return an isomorphism certificate, or None.

    With ``simple=True`` the graphs are compared after collapsing parallel
    edges.
    """
    if simple:
        g1, g2 = g1.simplify(), g2.simplify()
    return next(isomorphisms(g1, g2), None)


def automorphisms(g: Graph) -> list[IsoCertificate]:
    return list(isomorphisms(g, g))


def vertex_orbits(g: Graph) -> list[frozenset[VertexId]]:
    """Orbits of the automorphism group on the vertices, sorted by least member."""
    parent = {v: v for v in g.vertices}

    def find(v: VertexId) -> VertexId:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for cert in isomorphisms(g, g):
        for a, b in cert.mapping.items():
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    orbits: dict[VertexId, set[VertexId]] = {}
    for v in g.vertices:
        orbits.setdefault(find(v), set()).add(v)
    return [frozenset(o) for _, o in sorted(orbits.items())]


def unique_up_to_isomorphism(graphs: list[Graph], simple: bool = False) -> list[Graph]:
    """Keep the first representative of every isomorphism class."""
    kept: list[Graph] = []
    buckets: dict[tuple, list[Graph]] = {}
    for g in graphs:
        h = g.simplify() if simple else g
        key = invariant_key(h)
        bucket = buckets.setdefault(key, [])
        if any(are_isomorphic(h, other) for other in bucket):
            continue
        bucket.append(h)
        kept.append(g)
    return kept


def same_multiset_up_to_isomorphism(a: list[Graph], b: list[Graph], simple: bool = False) -> bool:
    """True if the two lists agree as multisets of isomorphism classes."""
    if len(a) != len(b):
        return False
    pool = [g.simplify() if simple else g for g in b]
    for g in a:
        h = g.simplify() if simple else g
        for k, other in enumerate(pool):
            if are_isomorphic(h, other):
                del pool[k]
                break
        else:
            return False
    return True
