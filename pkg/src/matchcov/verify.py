"""Corpus-wide checks of structural facts about matching covered graphs.

Each check runs a predicate over a seeded corpus and collects failures.
Checks in ``findings`` mode record observations without a verdict.
"""

from __future__ import annotations

import random
import time
from collections.abc import Callable, Iterable
from dataclasses import dataclass, field

from .conformal import basic_nonsolid_minor, is_j_free, j_free_via_bricks, pattern
from .corpus import CorpusEntry, build_corpus
from .cuts import classify, tight_cut_decomposition
from .families import generate
from .graph import Graph, GraphError
from .iso import are_isomorphic, same_multiset_up_to_isomorphism
from .matching import is_matching_covered
from .solidity import is_odd_intercyclic, is_solid, rw_certificate
from .thin import reduce_to_terminal
from .transforms import _is_cycle, retract


@dataclass
class VerificationReport:
    check: str
    statement: str
    mode: str  # "check" or "findings"
    corpus: dict
    instances: int = 0
    failures: list[dict] = field(default_factory=list)
    findings: list[dict] = field(default_factory=list)
    runtime: float = 0.0

    @property
    def passed(self) -> bool:
        return self.mode == "findings" or not self.failures

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "statement": self.statement,
            "mode": self.mode,
            "corpus": self.corpus,
            "instances": self.instances,
            "passed": self.passed,
            "failures": self.failures,
            "findings": self.findings,
        }


def graph_json(g: Graph) -> dict:
    return {
        "order": g.order,
        "vertices": list(g.vertices),
        "edges": [[e, u, v] for e, (u, v) in g.edges.items()],
    }


# -- individual checks ---------------------------------------------------------
# each takes (entry, seed) and returns None when it does not apply, or a
# (failure-or-None, finding-or-None) pair


def _mcg(entry: CorpusEntry) -> bool:
    return is_matching_covered(entry.graph)


def _check_basic_minor(entry: CorpusEntry, seed: int):
    g = entry.graph
    if not _mcg(entry) or is_solid(g):
        return None
    found = basic_nonsolid_minor(g)
    if found is None:
        return {"graph": entry.name, "reason": "no basic nonsolid brick as a conformal minor"}, None
    return None, {"graph": entry.name, "minor": found[0]}


def _check_rw(entry: CorpusEntry, seed: int):
    g = entry.graph
    if not _mcg(entry) or classify(g) != "brick":
        return None
    solid = is_solid(g)
    cert = rw_certificate(g)
    if solid != (cert is None):
        return {"graph": entry.name, "solid": solid, "certificate": cert is not None}, None
    if cert is not None and not cert.validate(g):
        return {"graph": entry.name, "reason": "certificate does not validate"}, None
    return None, None


def _pieces(g: Graph, rng: random.Random | None) -> tuple[list[Graph], list[Graph]]:
    d = tight_cut_decomposition(g, rng=rng, source="all" if rng else "elp")
    return d.bricks, d.braces


def _check_tcd(entry: CorpusEntry, seed: int, orders: int = 10):
    g = entry.graph
    if not _mcg(entry) or classify(g) != "neither":
        return None
    ref_bricks, ref_braces = _pieces(g, None)
    for k in range(orders):
        rng = random.Random(f"{seed}-{entry.name}-{k}")
        bricks, braces = _pieces(g, rng)
        if not (
            same_multiset_up_to_isomorphism(bricks, ref_bricks, simple=True)
            and same_multiset_up_to_isomorphism(braces, ref_braces, simple=True)
        ):
            return {"graph": entry.name, "order_index": k}, None
    return None, None


def _check_cubic_odd_intercyclic(entry: CorpusEntry, seed: int):
    g = entry.graph
    if not _mcg(entry) or any(d != 3 for d in g.degrees().values()) or classify(g) != "brick":
        return None
    if not is_solid(g):
        return None
    return None, {"graph": entry.name, "odd_intercyclic": is_odd_intercyclic(g)}


def _c6bar_free_exception(g: Graph) -> str | None:
    if are_isomorphic(g, generate("petersen")):
        return "petersen"
    if are_isomorphic(g, generate("tricorn")):
        return "tricorn"
    if g.order % 4 == 0 and g.order >= 8 and are_isomorphic(g, generate("staircase", g.order)):
        return "staircase"
    return None


def _check_solid_vs_c6bar(entry: CorpusEntry, seed: int):
    g = entry.graph
    if not _mcg(entry) or not g.is_simple or classify(g) != "brick":
        return None
    solid = is_solid(g)
    free = is_j_free(g, pattern("c6bar"))
    if solid and not free:
        return {"graph": entry.name, "reason": "solid but C6bar-based"}, None
    if not solid and free and _c6bar_free_exception(g) is None:
        return {"graph": entry.name, "reason": "nonsolid, C6bar-free and not an exception"}, None
    return None, None


def _check_j_free(entry: CorpusEntry, seed: int):
    g = entry.graph
    if not _mcg(entry) or classify(g) != "neither":
        return None
    for name in ("k4", "c6bar"):
        j = pattern(name)
        direct, via = is_j_free(g, j), j_free_via_bricks(g, j)
        if direct != via:
            return {"graph": entry.name, "pattern": name, "direct": direct, "via_bricks": via}, None
    return None, None


def _check_thin(entry: CorpusEntry, seed: int):
    g = entry.graph
    if not _mcg(entry) or classify(g) != "brick":
        return None
    for strict in (False, True):
        if strict and not g.is_simple:
            continue
        try:
            seq = reduce_to_terminal(g, strict)
        except RuntimeError as exc:
            return {"graph": entry.name, "strict": strict, "reason": str(exc)}, None
        if not seq.validate(strict):
            return {"graph": entry.name, "strict": strict, "reason": "chain does not validate"}, None
    return None, None


def _check_retract(entry: CorpusEntry, seed: int, orders: int = 20):
    g = entry.graph
    if g.order < 4 or _is_cycle(g) or not _mcg(entry):
        return None
    if all(d != 2 for d in g.degrees().values()):
        return None
    ref = retract(g)
    for k in range(orders):
        r = retract(g, random.Random(f"{seed}-{entry.name}-{k}"))
        if not are_isomorphic(r, ref):
            return {"graph": entry.name, "order_index": k}, None
    return None, None


@dataclass(frozen=True)
class Check:
    statement: str
    run: Callable
    mode: str = "check"


CHECKS: dict[str, Check] = {
    "basic-nonsolid-minor": Check(
        "every nonsolid matching covered graph has C6bar, the bicorn, the tricorn or Petersen as a conformal minor",
        _check_basic_minor,
    ),
    "odd-cycle-certificate": Check(
        "a brick is nonsolid iff it has two disjoint odd cycles with a perfectly matchable complement",
        _check_rw,
    ),
    "tcd-uniqueness": Check(
        "random tight cut decompositions give the same bricks and braces up to multiple edges",
        _check_tcd,
    ),
    "cubic-solid-odd-intercyclic": Check(
        "observation only: are cubic solid bricks odd-intercyclic?",
        _check_cubic_odd_intercyclic,
        mode="findings",
    ),
    "solid-vs-c6bar-free": Check(
        "solid simple bricks are C6bar-free; nonsolid ones are C6bar-based unless Petersen, the tricorn or a staircase of order 0 mod 4",
        _check_solid_vs_c6bar,
    ),
    "j-free-via-bricks": Check(
        "for cubic bricks J, a graph is J-free iff each of its bricks is",
        _check_j_free,
    ),
    "thin-reduction": Check(
        "thin reductions end in K4, C6bar or Petersen; strictly thin ones end in a Norine-Thomas brick",
        _check_thin,
    ),
    "retract-uniqueness": Check(
        "the retract does not depend on the order of bi-contractions",
        _check_retract,
    ),
}


def run_check(
    check_id: str,
    seed: int = 42,
    max_order: int = 12,
    entries: Iterable[CorpusEntry] | None = None,
    corpus_params: dict | None = None,
) -> VerificationReport:
    if check_id not in CHECKS:
        raise GraphError(f"unknown check {check_id!r}; known: {', '.join(CHECKS)}")
    chk = CHECKS[check_id]
    params = dict(corpus_params or {})
    if entries is None:
        entries = build_corpus(seed=seed, max_order=max_order, **params)
        desc = {"seed": seed, "max_order": max_order, **params}
    else:
        entries = list(entries)
        desc = {"seed": seed, "supplied": len(entries)}
    report = VerificationReport(check_id, chk.statement, chk.mode, desc)
    start = time.perf_counter()
    for entry in entries:
        res = chk.run(entry, seed)
        if res is None:
            continue
        report.instances += 1
        failure, finding = res
        if failure is not None:
            report.failures.append(failure)
        if finding is not None:
            report.findings.append(finding)
    report.runtime = time.perf_counter() - start
    return report
