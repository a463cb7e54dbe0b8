"""Named graphs and graph families.

Size parameters are vertex counts, except for odd wheels (rim length ``k``,
so ``W_k`` has ``k + 1`` vertices) and complete bipartite graphs (part size
``k`` for ``K_{k,k}``). The fixed graphs (``k4``, ``c6bar``, ``bicorn``,
``tricorn``, ``petersen``) take no parameter.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .graph import Graph, GraphError, splice
from .iso import are_isomorphic

FIXED = ("k4", "c6bar", "bicorn", "tricorn", "petersen")
PARAMETRIZED = (
    "odd_wheel",
    "biwheel",
    "truncated_biwheel",
    "truncated_biwheel_plus",
    "prism",
    "mobius",
    "staircase",
    "cycle",
    "complete_bipartite",
)
FAMILIES = FIXED + PARAMETRIZED


@dataclass(frozen=True, order=True)
class FamilySpec:
    family: str
    size: int | None = None

    def __str__(self) -> str:
        return self.family if self.size is None else f"{self.family}({self.size})"


def _check(spec: FamilySpec) -> None:
    name, n = spec.family, spec.size
    if name not in FAMILIES:
        raise GraphError(f"unknown family {name!r}")
    if name in FIXED:
        if n is not None:
            raise GraphError(f"{name} takes no size parameter")
        return
    if n is None:
        raise GraphError(f"{name} needs a size parameter")
    legal = {
        "odd_wheel": n >= 3 and n % 2 == 1,
        "biwheel": n >= 8 and n % 2 == 0,
        "truncated_biwheel": n >= 6 and n % 2 == 0,
        "truncated_biwheel_plus": n >= 8 and n % 2 == 0,
        "prism": n >= 6 and n % 2 == 0,
        "mobius": n >= 4 and n % 2 == 0,
        "staircase": n >= 6 and n % 2 == 0,
        "cycle": n >= 2,
        "complete_bipartite": n >= 1,
    }[name]
    if not legal:
        raise GraphError(f"illegal size {n} for {name}")


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2))


def cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete_bipartite(a: int, b: int | None = None) -> Graph:
    b = a if b is None else b
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def wheel(k: int) -> Graph:
    """Rim ``0..k-1``, hub ``k``."""
    rim = [(i, (i + 1) % k) for i in range(k)]
    return Graph.from_edges(k + 1, rim + [(i, k) for i in range(k)])


def odd_wheel(k: int) -> Graph:
    if k < 3 or k % 2 == 0:
        raise GraphError(f"odd wheels need an odd rim of length at least 3, got {k}")
    return wheel(k)


def prism(n: int) -> Graph:
    """The ``n/2``-prism: cycles ``0..k-1`` and ``k..2k-1`` joined by rungs."""
    k = n // 2
    pairs = [(i, (i + 1) % k) for i in range(k)]
    pairs += [(k + i, k + (i + 1) % k) for i in range(k)]
    pairs += [(i, k + i) for i in range(k)]
    return Graph.from_edges(n, pairs)


def mobius(n: int) -> Graph:
    """Mobius ladder of order ``n``: paths ``0..k-1`` and ``k..2k-1``, rungs, two crossing ends."""
    k = n // 2
    pairs = [(i, i + 1) for i in range(k - 1)]
    pairs += [(k + i, k + i + 1) for i in range(k - 1)]
    pairs += [(i, k + i) for i in range(k)]
    pairs += [(0, 2 * k - 1), (k - 1, k)]
    return Graph.from_edges(n, pairs)


def staircase(n: int) -> Graph:
    """Paths ``u = 0..k-1`` and ``v = k..2k-1`` with rungs; ``x = 2k``, ``y = 2k+1``."""
    k = (n - 2) // 2
    x, y = 2 * k, 2 * k + 1
    pairs = [(i, i + 1) for i in range(k - 1)]
    pairs += [(k + i, k + i + 1) for i in range(k - 1)]
    pairs += [(i, k + i) for i in range(k)]
    pairs += [(x, 0), (x, k), (y, k - 1), (y, 2 * k - 1), (x, y)]
    return Graph.from_edges(n, pairs)


def biwheel(n: int) -> Graph:
    """Rim ``0..2k-1``; hub ``2k`` sees even rim vertices, hub ``2k+1`` odd ones."""
    r = n - 2
    pairs = [(i, (i + 1) % r) for i in range(r)]
    pairs += [(i, r) for i in range(0, r, 2)]
    pairs += [(i, r + 1) for i in range(1, r, 2)]
    return Graph.from_edges(n, pairs)


def truncated_biwheel(n: int, join_hubs: bool = False) -> Graph:
    """Path ``v_1..v_{2k}`` as ``0..2k-1``; hubs ``h = 2k`` and ``h' = 2k+1``."""
    r = n - 2
    h, h2 = r, r + 1
    pairs = [(i, i + 1) for i in range(r - 1)]
    pairs += [(i, h) for i in range(0, r, 2)] + [(r - 1, h)]
    pairs += [(0, h2)] + [(i, h2) for i in range(1, r, 2)]
    if join_hubs:
        pairs.append((h, h2))
    return Graph.from_edges(n, pairs)


def c6bar() -> Graph:
    """Complement of the 6-cycle (the triangular prism)."""
    cyc = {frozenset((i, (i + 1) % 6)) for i in range(6)}
    return Graph.from_edges(6, [p for p in combinations(range(6), 2) if frozenset(p) not in cyc])


def petersen() -> Graph:
    """Outer cycle ``0..4``, spokes ``i - i+5``, inner pentagram on ``5..9``."""
    pairs = [(i, (i + 1) % 5) for i in range(5)]
    pairs += [(i, i + 5) for i in range(5)]
    pairs += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, pairs)


def petersen_plus_edge(u: int, v: int) -> Graph:
    p = petersen()
    if u == v or p.multiplicity(u, v):
        raise GraphError("the added edge must join two nonadjacent vertices")
    return p.add_edge(u, v)


def bicorn() -> Graph:
    """The splice of ``K4`` with the triangular prism."""
    return splice(complete_graph(4), 0, c6bar(), 0).relabeled()


@lru_cache(maxsize=None)
def _tricorn() -> Graph:
    # Splice K4 onto the bicorn at an end of the bicorn's only removable edge;
    # among such splices keep the one with exactly three removable edges.
    from .transforms import removable_edges

    b = bicorn()
    (e,) = removable_edges(b)
    candidates = []
    for end in b.ends(e):
        g = splice(b, end, complete_graph(4), 0).relabeled()
        if len(removable_edges(g)) == 3:
            candidates.append(g)
    if not candidates:
        raise RuntimeError("no splice of K4 with the bicorn has three removable edges")
    return candidates[0]


def tricorn() -> Graph:
    return _tricorn()


_BUILDERS = {
    "k4": lambda n: complete_graph(4),
    "c6bar": lambda n: c6bar(),
    "bicorn": lambda n: bicorn(),
    "tricorn": lambda n: tricorn(),
    "petersen": lambda n: petersen(),
    "odd_wheel": odd_wheel,
    "biwheel": biwheel,
    "truncated_biwheel": truncated_biwheel,
    "truncated_biwheel_plus": lambda n: truncated_biwheel(n, join_hubs=True),
    "prism": prism,
    "mobius": mobius,
    "staircase": staircase,
    "cycle": cycle,
    "complete_bipartite": complete_bipartite,
}


@lru_cache(maxsize=None)
def _generate(spec: FamilySpec) -> Graph:
    _check(spec)
    return _BUILDERS[spec.family](spec.size)


def generate(spec: FamilySpec | str, size: int | None = None) -> Graph:
    if isinstance(spec, str):
        spec = FamilySpec(spec, size)
    return _generate(spec)


def order_of(spec: FamilySpec) -> int:
    if spec.family in FIXED:
        return {"k4": 4, "c6bar": 6, "bicorn": 8, "tricorn": 10, "petersen": 10}[spec.family]
    if spec.family == "odd_wheel":
        return spec.size + 1
    if spec.family == "complete_bipartite":
        return 2 * spec.size
    return spec.size


def specs_of_order(n: int) -> list[FamilySpec]:
    """Every legal family instance with ``n`` vertices."""
    out = []
    for name in FAMILIES:
        if name in FIXED:
            spec = FamilySpec(name)
        elif name == "odd_wheel":
            spec = FamilySpec(name, n - 1)
        elif name == "complete_bipartite":
            if n % 2:
                continue
            spec = FamilySpec(name, n // 2)
        else:
            spec = FamilySpec(name, n)
        try:
            _check(spec)
        except GraphError:
            continue
        if order_of(spec) == n:
            out.append(spec)
    return out


def recognize(g: Graph) -> list[FamilySpec]:
    """All family memberships of ``g``, up to isomorphism."""
    return [s for s in specs_of_order(g.order) if are_isomorphic(g, generate(s))]


def instances(max_order: int, families: tuple[str, ...] = FAMILIES) -> list[FamilySpec]:
    """Every legal instance of the given families with at most ``max_order`` vertices."""
    out = []
    for n in range(2, max_order + 1):
        out += [s for s in specs_of_order(n) if s.family in families]
    return out
