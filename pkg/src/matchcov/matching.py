"""Matchings, barriers and admissibility.

The maximum-matching oracle is Edmonds' augmenting-path search with blossom
shrinking. Perfect matchings are also enumerated exhaustively; the cached
bitmask form (bit ``k`` is ``g.edge_ids[k]``) feeds the cut, dependence and
ear routines.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable
from dataclasses import dataclass
from itertools import combinations

from . import settings
from .graph import CapExceeded, EdgeId, Graph, GraphError, VertexId

Matching = frozenset  # frozenset[EdgeId]


def check_cap(g: Graph, cap: int | None = None) -> None:
    cap = settings.VERTEX_CAP if cap is None else cap
    if g.order > cap:
        raise CapExceeded(f"graph has {g.order} vertices, cap is {cap}")


# -- maximum matching --------------------------------------------------------


def _edmonds(n: int, adj: list[list[int]]) -> list[int]:
    match = [-1] * n
    for v in range(n):
        if match[v] == -1:
            for u in adj[v]:
                if match[u] == -1:
                    match[u], match[v] = v, u
                    break

    def augment_from(root: int) -> bool:
        used = [False] * n
        parent = [-1] * n
        base = list(range(n))
        used[root] = True
        queue = deque([root])

        def lca(a: int, b: int) -> int:
            seen = [False] * n
            while True:
                a = base[a]
                seen[a] = True
                if match[a] == -1:
                    break
                a = parent[match[a]]
            while True:
                b = base[b]
                if seen[b]:
                    return b
                b = parent[match[b]]

        def mark(v: int, b: int, child: int, blossom: list[bool]) -> None:
            while base[v] != b:
                blossom[base[v]] = blossom[base[match[v]]] = True
                parent[v] = child
                child = match[v]
                v = parent[match[v]]

        while queue:
            v = queue.popleft()
            for to in adj[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and parent[match[to]] != -1):
                    b = lca(v, to)
                    blossom = [False] * n
                    mark(v, b, to, blossom)
                    mark(to, b, v, blossom)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = b
                            if not used[i]:
                                used[i] = True
                                queue.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if match[to] == -1:
                        w = to
                        while w != -1:
                            pw = parent[w]
                            nxt = match[pw]
                            match[w], match[pw] = pw, w
                            w = nxt
                        return True
                    used[match[to]] = True
                    queue.append(match[to])
        return False

    for v in range(n):
        if match[v] == -1:
            augment_from(v)
    return match


def maximum_matching(g: Graph) -> Matching:
    """A maximum-cardinality matching of ``g`` as a set of edge ids."""
    cached = g._cache.get("max_matching")
    if cached is not None:
        return cached
    n = g.order
    adj_sets: list[set[int]] = [set() for _ in range(n)]
    for i, j in g.index_ends:
        adj_sets[i].add(j)
        adj_sets[j].add(i)
    mate = _edmonds(n, [sorted(s) for s in adj_sets])
    vs = g.vertices
    result = frozenset(
        g.edges_between(vs[i], vs[mate[i]])[0] for i in range(n) if mate[i] > i
    )
    g._cache["max_matching"] = result
    return result


def matching_number(g: Graph) -> int:
    return len(maximum_matching(g))


def has_perfect_matching(g: Graph) -> bool:
    return 2 * matching_number(g) == g.order


def is_matching(g: Graph, m: Iterable[EdgeId]) -> bool:
    seen: set[VertexId] = set()
    for e in m:
        if not g.has_edge(e):
            return False
        u, v = g.ends(e)
        if u in seen or v in seen:
            return False
        seen.update((u, v))
    return True


def is_perfect_matching(g: Graph, m: Iterable[EdgeId]) -> bool:
    m = list(m)
    return is_matching(g, m) and 2 * len(m) == g.order


# -- perfect matchings as bitmasks ------------------------------------------


def perfect_matching_masks(g: Graph, cap: int | None = None) -> tuple[int, ...]:
    """All perfect matchings as edge-index bitmasks, in increasing order."""
    cached = g._cache.get("pm_masks")
    if cached is not None:
        return cached
    check_cap(g, cap)
    n = g.order
    if n % 2:
        g._cache["pm_masks"] = ()
        return ()
    inc: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for k, (i, j) in enumerate(g.index_ends):
        inc[i].append((k, j))
        inc[j].append((k, i))
    found: list[int] = []

    def rec(free: int, acc: int) -> None:
        if not free:
            found.append(acc)
            return
        i = (free & -free).bit_length() - 1
        rest = free & ~(1 << i)
        for k, j in inc[i]:
            if rest >> j & 1:
                rec(rest & ~(1 << j), acc | (1 << k))

    if has_perfect_matching(g):
        rec(g.all_vertices_mask, 0)
    result = tuple(sorted(found))
    g._cache["pm_masks"] = result
    return result


def enumerate_perfect_matchings(g: Graph, cap: int | None = None) -> list[Matching]:
    """Every perfect matching, ordered lexicographically by sorted edge ids."""
    ms = [g.edges_of_mask(m) for m in perfect_matching_masks(g, cap)]
    return sorted(ms, key=lambda m: sorted(m))


def has_perfect_matching_on(g: Graph, vertex_mask: int) -> bool:
    """Whether the subgraph induced by the index mask has a perfect matching."""
    memo = g._cache.setdefault("pm_exists", {0: True})
    adj = g.adjacency_masks

    def rec(mask: int) -> bool:
        r = memo.get(mask)
        if r is not None:
            return r
        res = False
        if not mask.bit_count() & 1:
            i = (mask & -mask).bit_length() - 1
            rest = mask & ~(1 << i)
            cand = adj[i] & rest
            while cand:
                j = cand.bit_length() - 1
                cand &= ~(1 << j)
                if rec(rest & ~(1 << j)):
                    res = True
                    break
        memo[mask] = res
        return res

    return rec(vertex_mask)


# -- barriers ----------------------------------------------------------------


def odd_components(g: Graph, removed: Iterable[VertexId]) -> list[frozenset[VertexId]]:
    """Vertex sets of the odd components of ``g - removed``."""
    rest = g.all_vertices_mask & ~g.vertex_mask(removed)
    return [g.vertices_of_mask(c) for c in g.component_masks(rest) if c.bit_count() & 1]


def _odd_count(g: Graph, removed_mask: int) -> int:
    rest = g.all_vertices_mask & ~removed_mask
    return sum(1 for c in g.component_masks(rest) if c.bit_count() & 1)


@dataclass(frozen=True)
class Barrier:
    """A vertex set ``B`` with ``o(G - B) = |B|`` and its odd components."""

    vertices: frozenset[VertexId]
    odd_components: tuple[frozenset[VertexId], ...]

    @property
    def is_trivial(self) -> bool:
        return len(self.vertices) <= 1

    def validate(self, g: Graph) -> bool:
        comps = odd_components(g, self.vertices)
        return len(comps) == len(self.vertices) and set(comps) == set(self.odd_components)


def make_barrier(g: Graph, vs: Iterable[VertexId]) -> Barrier:
    vs = frozenset(vs)
    comps = tuple(sorted(odd_components(g, vs), key=lambda c: sorted(c)))
    return Barrier(vs, comps)


def is_barrier(g: Graph, vs: Iterable[VertexId]) -> bool:
    vs = frozenset(vs)
    return bool(vs) and _odd_count(g, g.vertex_mask(vs)) == len(vs)


def tutte_set(g: Graph) -> frozenset[VertexId]:
    """The Gallai-Edmonds set ``A(G)``.

    ``o(G - A) - |A|`` equals the deficiency of ``g``, so for a graph without
    a perfect matching ``A`` violates Tutte's condition.
    """
    nu = matching_number(g)
    deficient = set()
    for v in g.vertices:
        if matching_number(g.delete_vertices([v])) == nu:
            deficient.add(v)
    return frozenset(
        w for v in deficient for w in g.neighbors(v) if w not in deficient
    )


def _stable_sets(g: Graph) -> list[int]:
    adj = g.adjacency_masks
    n = g.order
    out: list[int] = []

    def rec(i: int, chosen: int, blocked: int) -> None:
        if i == n:
            if chosen:
                out.append(chosen)
            return
        rec(i + 1, chosen, blocked)
        if not blocked >> i & 1:
            rec(i + 1, chosen | (1 << i), blocked | adj[i])

    rec(0, 0, 0)
    return out


def all_barriers(g: Graph, cap: int | None = None) -> list[Barrier]:
    """Every nonempty barrier of a graph with a perfect matching.

    In a matching covered graph barriers are stable sets, so only stable sets
    are scanned there; otherwise all vertex subsets are.
    """
    check_cap(g, cap)
    if not has_perfect_matching(g):
        raise GraphError("barriers are defined for graphs with a perfect matching")
    if is_matching_covered(g):
        candidates = _stable_sets(g)
    else:
        candidates = list(range(1, 1 << g.order))
    found = [m for m in candidates if _odd_count(g, m) == m.bit_count()]
    found.sort(key=lambda m: (m.bit_count(), sorted(g.vertices_of_mask(m))))
    return [make_barrier(g, g.vertices_of_mask(m)) for m in found]


def maximal_barriers(g: Graph, cap: int | None = None) -> list[Barrier]:
    """Inclusion-maximal barriers of a matching covered graph."""
    if not is_matching_covered(g):
        raise GraphError("graph is not matching covered")
    bs = all_barriers(g, cap)
    masks = [g.vertex_mask(b.vertices) for b in bs]
    return [
        b
        for b, m in zip(bs, masks)
        if not any(o != m and o & m == m for o in masks)
    ]


# -- admissibility -----------------------------------------------------------


@dataclass(frozen=True)
class Admissibility:
    edge: EdgeId
    admissible: bool
    matching: Matching | None = None
    barrier: Barrier | None = None

    def __bool__(self) -> bool:
        return self.admissible


def is_admissible(g: Graph, e: EdgeId) -> Admissibility:
    """Decide admissibility of ``e`` with a certificate either way.

    An admissible edge comes with a perfect matching through it; an
    inadmissible one with a barrier holding both of its ends.
    """
    if not has_perfect_matching(g):
        raise GraphError("graph has no perfect matching")
    u, v = g.ends(e)
    rest = g.delete_vertices([u, v])
    m = maximum_matching(rest)
    if 2 * len(m) == rest.order:
        return Admissibility(e, True, matching=frozenset(m | {e}))
    barrier = make_barrier(g, tutte_set(rest) | {u, v})
    return Admissibility(e, False, barrier=barrier)


def admissible_edge_mask(g: Graph) -> int:
    full = g.all_vertices_mask
    mask = 0
    for k, (i, j) in enumerate(g.index_ends):
        if has_perfect_matching_on(g, full & ~(1 << i) & ~(1 << j)):
            mask |= 1 << k
    return mask


def is_matching_covered(g: Graph, method: str = "matchings") -> bool:
    """Connected, order at least two, and every edge admissible.

    ``method="barriers"`` instead checks that every barrier is stable, which
    is equivalent for connected graphs with a perfect matching.
    """
    key = ("mcg", method)
    if key in g._cache:
        return g._cache[key]
    if g.order < 2 or not g.is_connected or not has_perfect_matching(g):
        res = False
    elif method == "matchings":
        res = admissible_edge_mask(g) == g.all_edges_mask
    elif method == "barriers":
        adj = g.adjacency_masks
        res = True
        for m in range(1, 1 << g.order):
            if m.bit_count() < 2:
                continue
            stable = all(not (adj[i] & m) for i in range(g.order) if m >> i & 1)
            if not stable and _odd_count(g, m) == m.bit_count():
                res = False
                break
    else:
        raise GraphError(f"unknown method {method!r}")
    g._cache[key] = res
    return res


# -- v0-matchings ------------------------------------------------------------


def find_v0_matching(g: Graph, v0: VertexId) -> Matching | None:
    """An edge set covering every vertex but ``v0`` exactly once and ``v0`` at least twice.

    Candidates are tried by increasing number of edges at ``v0``, then
    lexicographically by neighbour set.
    """
    nbrs = g.neighbors(v0)
    for r in range(2, len(nbrs) + 1):
        if (g.order - 1 - r) % 2:
            continue
        for chosen in combinations(nbrs, r):
            removed = g.vertex_mask([v0, *chosen])
            if has_perfect_matching_on(g, g.all_vertices_mask & ~removed):
                rest = g.delete_vertices([v0, *chosen])
                m = set(maximum_matching(rest))
                m.update(g.edges_between(v0, w)[0] for w in chosen)
                return frozenset(m)
    return None


def is_v0_matching(g: Graph, v0: VertexId, m: Iterable[EdgeId]) -> bool:
    count = {v: 0 for v in g.vertices}
    for e in m:
        for w in g.ends(e):
            count[w] += 1
    return count[v0] > 1 and all(c == 1 for v, c in count.items() if v != v0)
