"""Test corpora: family instances and seeded random graphs, with on-disk storage.

Every generator takes an explicit ``random.Random`` so a corpus is a pure
function of its seed.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path

from .cuts import classify
from .families import complete_bipartite, generate, instances, specs_of_order
from .graph import Graph, GraphError, splice
from .io import format_edgelist, parse_edgelist
from .matching import is_matching_covered
from .transforms import bi_subdivide, bi_split


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    source: str
    graph: Graph


def random_cubic(n: int, rng: random.Random, simple: bool = True, tries: int = 1000) -> Graph:
    """A random cubic graph on ``n`` vertices from the pairing model, by rejection."""
    if n % 2 or n < 4:
        raise GraphError("cubic graphs need an even order of at least four")
    for _ in range(tries):
        points = [v for v in range(n) for _ in range(3)]
        rng.shuffle(points)
        pairs = [(points[i], points[i + 1]) for i in range(0, len(points), 2)]
        if any(a == b for a, b in pairs):
            continue
        if simple and len({frozenset(p) for p in pairs}) != len(pairs):
            continue
        return Graph.from_edges(n, pairs)
    raise GraphError(f"no cubic graph of order {n} found in {tries} tries")


def random_matching_covered_cubic(n: int, rng: random.Random, tries: int = 1000) -> Graph:
    for _ in range(tries):
        g = random_cubic(n, rng)
        if is_matching_covered(g):
            return g
    raise GraphError(f"no matching covered cubic graph of order {n} found")


def add_random_edges(g: Graph, k: int, rng: random.Random) -> Graph:
    """Join ``k`` random nonadjacent pairs."""
    free = [p for p in combinations(g.vertices, 2) if not g.multiplicity(*p)]
    for u, v in rng.sample(free, min(k, len(free))):
        g = g.add_edge(u, v)
    return g


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    return Graph.from_edges(n, [uv for uv in combinations(range(n), 2) if rng.random() < p])


def random_bisubdivision(g: Graph, rng: random.Random, max_order: int) -> Graph:
    """Insert two vertices on randomly chosen edges while staying within ``max_order``."""
    budget = (max_order - g.order) // 2
    if budget < 1:
        return g
    k = rng.randint(1, budget)
    plan: dict[int, int] = {}
    for _ in range(k):
        e = rng.choice(g.edge_ids)
        plan[e] = plan.get(e, 0) + 2
    return bi_subdivide(g, plan)


def random_bi_split(g: Graph, rng: random.Random) -> Graph | None:
    """Bi-split a random vertex of degree at least four, if there is one."""
    cands = [v for v in g.vertices if len(g.neighbors(v)) >= 4]
    if not cands:
        return None
    v = rng.choice(cands)
    inc = list(g.incident(v))
    for _ in range(50):
        rng.shuffle(inc)
        cut = rng.randint(2, len(inc) - 2)
        p1, p2 = set(inc[:cut]), set(inc[cut:])
        try:
            return bi_split(g, v, p1, p2).graph
        except GraphError:
            continue
    return None


def two_edge_cut_cubic(n1: int, n2: int, rng: random.Random) -> Graph:
    """Two random cubic graphs, one edge removed from each, rejoined across a 2-edge cut."""
    a = random_matching_covered_cubic(n1, rng)
    b = random_matching_covered_cubic(n2, rng)
    ea, eb = rng.choice(a.edge_ids), rng.choice(b.edge_ids)
    (a1, a2), (b1, b2) = a.ends(ea), b.ends(eb)
    pairs = [uv for e, uv in a.edges.items() if e != ea]
    pairs += [(u + n1, v + n1) for e, (u, v) in b.edges.items() if e != eb]
    pairs += [(a1, b1 + n1), (a2, b2 + n1)]
    return Graph.from_edges(n1 + n2, pairs)


def family_entries(max_order: int = 12) -> list[CorpusEntry]:
    """Every family instance up to ``max_order`` vertices that is matching covered."""
    out = []
    for spec in instances(max_order):
        g = generate(spec)
        if is_matching_covered(g):
            out.append(CorpusEntry(f"family-{spec.family}" + ("" if spec.size is None else f"-{spec.size}"), "family", g))
    return out


def _small_bricks(max_order: int) -> list[Graph]:
    out = []
    for n in range(4, max_order + 1):
        for spec in specs_of_order(n):
            g = generate(spec)
            if is_matching_covered(g) and classify(g) == "brick":
                out.append(g)
    return out


def _small_braces(max_order: int) -> list[Graph]:
    out = [complete_bipartite(k) for k in (2, 3, 4)]
    out += [generate("biwheel", 8), generate("prism", 8), generate("mobius", 6), generate("mobius", 10)]
    return [g for g in out if g.order <= max_order]


def decomposable_entries(count: int, rng: random.Random, max_order: int = 12) -> list[CorpusEntry]:
    """Matching covered graphs with a nontrivial tight cut, from several recipes.

    Recipes cycle through bi-subdivisions of bricks, splices of a brick with
    a brace, splices of two small bricks, bi-splits, and cubic graphs with a
    2-edge cut.
    """
    bricks = _small_bricks(max_order - 2)
    braces = _small_braces(max_order)
    out: list[CorpusEntry] = []
    seen: set[Graph] = set()
    recipe = 0
    attempts = 0
    while len(out) < count and attempts < 50 * count:
        attempts += 1
        kind = ("bisubdivision", "brick-brace-splice", "brick-brick-splice", "bi-split", "two-edge-cut")[recipe % 5]
        recipe += 1
        g = None
        if kind == "bisubdivision":
            g = random_bisubdivision(rng.choice(bricks), rng, max_order)
        elif kind == "brick-brace-splice":
            a, b = rng.choice(bricks), rng.choice(braces)
            u = rng.choice(a.vertices)
            vs = [v for v in b.vertices if b.degree(v) == a.degree(u)]
            if vs and a.order + b.order - 2 <= max_order:
                v = rng.choice(vs)
                dst = list(b.incident(v))
                rng.shuffle(dst)
                g = splice(a, u, b, v, dict(zip(a.incident(u), dst))).relabeled()
        elif kind == "brick-brick-splice":
            a, b = rng.choice(bricks), rng.choice(bricks)
            u, v = rng.choice(a.vertices), rng.choice(b.vertices)
            if a.degree(u) == b.degree(v) and a.order + b.order - 2 <= max_order:
                dst = list(b.incident(v))
                rng.shuffle(dst)
                g = splice(a, u, b, v, dict(zip(a.incident(u), dst))).relabeled()
        elif kind == "bi-split":
            base = rng.choice([b for b in bricks if b.order <= max_order - 2])
            g = random_bi_split(base, rng)
        else:
            pairs = [(a, b) for a in (4, 6) for b in (4, 6) if a + b <= max_order]
            if pairs:
                g = two_edge_cut_cubic(*rng.choice(pairs), rng)
        if g is None or g.order > max_order:
            continue
        g = g.relabeled()
        if g in seen or not is_matching_covered(g) or classify(g) != "neither":
            continue
        seen.add(g)
        out.append(CorpusEntry(f"decomposable-{kind}-{len(out):03d}", kind, g))
    return out


def random_cubic_entries(count: int, rng: random.Random, orders=(4, 6, 8, 10, 12)) -> list[CorpusEntry]:
    out = []
    for k in range(count):
        n = orders[k % len(orders)]
        out.append(CorpusEntry(f"cubic-{n}-{k:03d}", "random-cubic", random_matching_covered_cubic(n, rng)))
    return out


def random_dense_entries(count: int, rng: random.Random, orders=(6, 8, 10, 12)) -> list[CorpusEntry]:
    """Random cubic graphs with one to three extra edges."""
    out = []
    for k in range(count):
        n = orders[k % len(orders)]
        g = add_random_edges(random_matching_covered_cubic(n, rng), rng.randint(1, 3), rng)
        if is_matching_covered(g):
            out.append(CorpusEntry(f"cubic-plus-{n}-{k:03d}", "random-cubic-plus", g))
    return out


def random_general_entries(count: int, rng: random.Random, max_order: int = 12) -> list[CorpusEntry]:
    """Random graphs of any kind (mostly not matching covered), for the matching oracle."""
    out = []
    for k in range(count):
        n = rng.randint(2, max_order)
        out.append(CorpusEntry(f"gnp-{n}-{k:03d}", "random-gnp", random_graph(n, rng.uniform(0.15, 0.6), rng)))
    return out


def build_corpus(
    seed: int = 42,
    max_order: int = 12,
    n_cubic: int = 100,
    n_dense: int = 60,
    n_decomposable: int = 100,
    n_general: int = 0,
) -> list[CorpusEntry]:
    """Families plus seeded random graphs; every part draws from its own stream."""
    entries = family_entries(max_order)
    entries += random_cubic_entries(n_cubic, random.Random(f"{seed}-cubic"), tuple(n for n in (4, 6, 8, 10, 12) if n <= max_order))
    entries += random_dense_entries(n_dense, random.Random(f"{seed}-dense"), tuple(n for n in (6, 8, 10, 12) if n <= max_order))
    entries += decomposable_entries(n_decomposable, random.Random(f"{seed}-decomposable"), max_order)
    if n_general:
        entries += random_general_entries(n_general, random.Random(f"{seed}-gnp"), max_order)
    return entries


def write_corpus(entries: list[CorpusEntry], directory: str | Path, seed: int | None = None) -> Path:
    """Write one edge-list file per entry and a ``manifest.json``."""
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    manifest = {"seed": seed, "graphs": []}
    for entry in entries:
        fname = f"{entry.name}.txt"
        (d / fname).write_text(format_edgelist(entry.graph), encoding="utf-8")
        manifest["graphs"].append(
            {"name": entry.name, "source": entry.source, "file": fname,
             "order": entry.graph.order, "size": entry.graph.size}
        )
    path = d / "manifest.json"
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path


def read_corpus(directory: str | Path) -> list[CorpusEntry]:
    d = Path(directory)
    manifest = json.loads((d / "manifest.json").read_text(encoding="utf-8"))
    return [
        CorpusEntry(m["name"], m["source"], parse_edgelist((d / m["file"]).read_text(encoding="utf-8")))
        for m in manifest["graphs"]
    ]
