"""Edge-list and graph6 text formats.

Edge-list: a header line ``n m`` followed by ``m`` lines ``u v`` with 0-based
vertex indices. Parallel edges repeat a line. Blank lines and lines starting
with ``#`` are ignored.
"""

from __future__ import annotations

from pathlib import Path

from .graph import Graph, GraphError


class ParseError(GraphError):
    pass


def parse_edgelist(text: str) -> Graph:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty edge list")
    try:
        n, m = (int(t) for t in lines[0].split())
    except ValueError as exc:
        raise ParseError(f"bad header line: {lines[0]!r}") from exc
    body = lines[1:]
    if len(body) != m:
        raise ParseError(f"header announces {m} edges, found {len(body)}")
    pairs = []
    for ln in body:
        try:
            u, v = (int(t) for t in ln.split())
        except ValueError as exc:
            raise ParseError(f"bad edge line: {ln!r}") from exc
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"vertex index out of range in {ln!r}")
        pairs.append((u, v))
    try:
        return Graph.from_edges(n, pairs)
    except GraphError as exc:
        raise ParseError(str(exc)) from exc


def format_edgelist(g: Graph) -> str:
    h = g.relabeled()
    out = [f"{h.order} {h.size}"]
    out += [f"{u} {v}" for u, v in h.edges.values()]
    return "\n".join(out) + "\n"


def parse_graph6(line: str) -> Graph:
    """Decode one graph6 string (simple graphs, order below 258048)."""
    s = line.strip()
    if s.startswith(">>graph6<<"):
        s = s[10:]
    data = [ord(c) - 63 for c in s]
    if not data or any(not 0 <= d < 64 for d in data):
        raise ParseError("not a graph6 string")
    if data[0] < 63:
        n, rest = data[0], data[1:]
    elif len(data) >= 4 and data[1] < 63:
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        rest = data[4:]
    else:
        raise ParseError("graph6 orders this large are not supported")
    need = n * (n - 1) // 2
    if len(rest) * 6 < need or len(rest) != (need + 5) // 6:
        raise ParseError("graph6 payload has the wrong length")
    bits = []
    for d in rest:
        bits.extend((d >> (5 - k)) & 1 for k in range(6))
    pairs = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                pairs.append((i, j))
            k += 1
    return Graph.from_edges(n, pairs)


def format_graph6(g: Graph) -> str:
    if not g.is_simple:
        raise GraphError("graph6 only encodes simple graphs")
    h = g.relabeled()
    n = h.order
    if n < 63:
        head = [n]
    elif n < 258048:
        head = [63, (n >> 12) & 63, (n >> 6) & 63, n & 63]
    else:
        raise GraphError("graph too large for graph6")
    adj = {tuple(sorted(uv)) for uv in h.edges.values()}
    bits = [1 if (i, j) in adj else 0 for j in range(1, n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = [sum(bits[k + t] << (5 - t) for t in range(6)) for k in range(0, len(bits), 6)]
    return "".join(chr(d + 63) for d in head + body)


def read_graph(path: str | Path, fmt: str = "edgelist") -> Graph:
    text = Path(path).read_text(encoding="utf-8")
    if fmt == "edgelist":
        return parse_edgelist(text)
    if fmt == "graph6":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if len(lines) != 1:
            raise ParseError("expected exactly one graph6 line")
        return parse_graph6(lines[0])
    raise ParseError(f"unknown format {fmt!r}")


def write_graph(g: Graph, path: str | Path, fmt: str = "edgelist") -> None:
    if fmt == "edgelist":
        text = format_edgelist(g)
    elif fmt == "graph6":
        text = format_graph6(g) + "\n"
    else:
        raise GraphError(f"unknown format {fmt!r}")
    Path(path).write_text(text, encoding="utf-8")
