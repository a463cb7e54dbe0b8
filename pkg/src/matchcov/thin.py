"""Thin and strictly thin edges, Norine-Thomas bricks and reduction chains."""

from __future__ import annotations

from dataclasses import dataclass

from .cuts import is_brick
from .families import FamilySpec, c6bar, complete_graph, petersen, recognize
from .graph import EdgeId, Graph, GraphError
from .iso import are_isomorphic
from .transforms import _retract_unchecked, is_removable


@dataclass(frozen=True)
class ThinEdgeReport:
    edge: EdgeId
    thin: bool
    strictly_thin: bool
    index: int | None
    retract_after: Graph | None


def _require_brick(g: Graph) -> None:
    if not is_brick(g):
        raise GraphError("graph is not a brick")


def edge_index(g: Graph, e: EdgeId) -> int:
    """0: both ends of degree at least four; 1: exactly one end of degree three;
    2: both of degree three, no triangle through ``e``; 3: both of degree three
    and ``e`` in a triangle."""
    u, v = g.ends(e)
    du, dv = g.degree(u), g.degree(v)
    small = (du == 3) + (dv == 3)
    if small == 0:
        return 0
    if small == 1:
        return 1
    common = (set(g.neighbors(u)) & set(g.neighbors(v))) - {u, v}
    return 3 if common else 2


def edge_report(g: Graph, e: EdgeId) -> ThinEdgeReport:
    """Thinness of one edge of a brick; ``retract_after`` is set when ``g - e`` is matching covered."""
    if not is_removable(g, e):
        return ThinEdgeReport(e, False, False, None, None)
    r = _retract_unchecked(g.delete_edges([e]))
    thin = r.order >= 4 and is_brick(r)
    strict = thin and r.is_simple and g.is_simple
    return ThinEdgeReport(e, thin, strict, edge_index(g, e) if thin else None, r)


def evaluate_edges(g: Graph) -> list[ThinEdgeReport]:
    _require_brick(g)
    return [edge_report(g, e) for e in g.edge_ids]


def thin_edges(g: Graph) -> list[ThinEdgeReport]:
    return [r for r in evaluate_edges(g) if r.thin]


def strictly_thin_edges(g: Graph) -> list[ThinEdgeReport]:
    if not g.is_simple:
        raise GraphError("strict thinness is defined for simple bricks")
    return [r for r in evaluate_edges(g) if r.strictly_thin]


_NT_RULES = {
    "odd_wheel": lambda n: True,
    "prism": lambda n: n % 4 == 2,
    "mobius": lambda n: n % 4 == 0,
    "staircase": lambda n: True,
    "truncated_biwheel": lambda n: True,
    "petersen": lambda n: True,
}


def is_norine_thomas(g: Graph, plus: bool = False) -> FamilySpec | None:
    """The Norine-Thomas family ``g`` belongs to, or None.

    With ``plus`` the truncated biwheels with joined hubs are admitted too.
    """
    if not g.is_simple:
        return None
    for spec in recognize(g):
        rule = _NT_RULES.get(spec.family)
        if rule is not None and rule(g.order):
            return spec
        if plus and spec.family == "truncated_biwheel_plus":
            return spec
    return None


_TERMINAL = (("k4", complete_graph(4)), ("c6bar", c6bar()), ("petersen", petersen()))


def _terminal_name(g: Graph) -> str | None:
    for name, t in _TERMINAL:
        if are_isomorphic(g, t):
            return name
    return None


@dataclass(frozen=True)
class ReductionSequence:
    """``bricks[0]`` is the input; ``bricks[i+1]`` is the retract of ``bricks[i] - edges[i]``."""

    bricks: tuple[Graph, ...]
    edges: tuple[EdgeId, ...]
    terminal_family: str

    def validate(self, strict: bool) -> bool:
        if len(self.bricks) != len(self.edges) + 1:
            return False
        for g, e, nxt in zip(self.bricks, self.edges, self.bricks[1:]):
            r = edge_report(g, e)
            if not (r.strictly_thin if strict else r.thin):
                return False
            if not are_isomorphic(r.retract_after, nxt):
                return False
        last = self.bricks[-1]
        if strict:
            spec = is_norine_thomas(last)
            return spec is not None and str(spec) == self.terminal_family
        return _terminal_name(last) == self.terminal_family


def reduce_to_terminal(g: Graph, strict: bool = False) -> ReductionSequence:
    """Delete thin edges (strictly thin with ``strict``) and retract until a terminal brick.

    Terminal bricks are ``K4``, ``C6bar`` and Petersen, or with ``strict``
    the Norine-Thomas bricks. Each step takes the least qualifying edge id.
    """
    _require_brick(g)
    if strict and not g.is_simple:
        raise GraphError("strict reduction needs a simple brick")
    bricks = [g]
    edges: list[EdgeId] = []
    cur = g
    while True:
        if strict:
            spec = is_norine_thomas(cur)
            if spec is not None:
                return ReductionSequence(tuple(bricks), tuple(edges), str(spec))
        else:
            name = _terminal_name(cur)
            if name is not None:
                return ReductionSequence(tuple(bricks), tuple(edges), name)
        step = None
        for e in cur.edge_ids:
            r = edge_report(cur, e)
            if r.strictly_thin if strict else r.thin:
                step = r
                break
        if step is None:
            kind = "strictly thin" if strict else "thin"
            raise RuntimeError(f"brick of order {cur.order} outside the terminal set has no {kind} edge")
        edges.append(step.edge)
        cur = step.retract_after
        bricks.append(cur)
