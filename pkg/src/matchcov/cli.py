"""Command-line interface.

Exit codes: 0 on success, 1 when a checked property fails, 2 on usage,
parse or cap errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from datetime import datetime, timezone
from pathlib import Path

from . import settings
from .conformal import PATTERN_NAMES, find_conformal_minor, pattern
from .corpus import build_corpus, write_corpus
from .cuts import classify, elp_cuts, number_of_bricks, tight_cut_decomposition
from .families import FAMILIES, FamilySpec, generate, recognize
from .graph import Graph, GraphError
from .io import format_edgelist, format_graph6, read_graph
from .matching import enumerate_perfect_matchings, is_matching_covered
from .solidity import is_solid, rw_certificate, solidity_witness
from .thin import reduce_to_terminal
from .transforms import ear_decomposition, removable_classes
from .verify import CHECKS, graph_json, run_check


def _emit(report: dict, as_json: bool, started: float) -> None:
    report = dict(report)
    report["timestamp"] = {
        "utc": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "elapsed_s": round(time.perf_counter() - started, 3),
    }
    if as_json:
        print(json.dumps(report, indent=2, sort_keys=True))
        return
    for key, value in report.items():
        if key == "timestamp":
            continue
        if isinstance(value, (dict, list)):
            value = json.dumps(value, sort_keys=True)
            if len(value) > 200:
                value = value[:197] + "..."
        print(f"{key}: {value}")


def _load(args: argparse.Namespace) -> Graph:
    return read_graph(args.graph, args.format)


def _tags(g: Graph) -> list[str]:
    return [str(s) for s in recognize(g)] if g.order <= settings.VERTEX_CAP else []


def cmd_analyze(args: argparse.Namespace) -> int:
    g = _load(args)
    mcg = is_matching_covered(g)
    report = {"order": g.order, "size": g.size, "simple": g.is_simple,
              "bipartite": g.is_bipartite, "matching_covered": mcg,
              "perfect_matchings": len(enumerate_perfect_matchings(g)), "families": _tags(g)}
    if mcg:
        report["classification"] = classify(g)
        report["b"] = number_of_bricks(g)
        report["solid"] = is_solid(g)
        report["removable_classes"] = [
            {"kind": c.kind, "edges": sorted(c.edges)} for c in removable_classes(g)
        ]
    _emit(report, args.json, args.started)
    return 0


def cmd_decompose(args: argparse.Namespace) -> int:
    g = _load(args)
    d = tight_cut_decomposition(g)
    report = {
        "b": d.b,
        "pieces": [{"kind": p.kind, "graph": graph_json(p.graph)} for p in d.pieces],
        "cut_tree": [
            {"node": r.node, "shore": sorted(r.shore), "kind": r.kind, "children": list(r.children)}
            for r in d.cut_tree
        ],
        "elp_cuts": [
            {"kind": c.kind, "shore": sorted(c.cut.shore)} for c in elp_cuts(g)
        ],
    }
    _emit(report, args.json, args.started)
    return 0


def cmd_solid(args: argparse.Namespace) -> int:
    g = _load(args)
    witness = solidity_witness(g)
    report: dict = {"solid": witness is None}
    if witness is not None:
        report["witness_shore"] = sorted(witness.shore)
    if classify(g) == "brick":
        cert = rw_certificate(g)
        report["odd_cycle_certificate"] = None if cert is None else {
            "cycle1": list(cert.cycle1),
            "cycle2": list(cert.cycle2),
            "residual_matching": sorted(cert.residual_matching),
        }
    _emit(report, args.json, args.started)
    return 0


def cmd_conformal(args: argparse.Namespace) -> int:
    g = _load(args)
    emb = find_conformal_minor(g, pattern(args.pattern))
    report: dict = {"pattern": args.pattern, "based": emb is not None}
    if emb is not None:
        report["vertex_map"] = {str(k): v for k, v in sorted(emb.vertex_map.items())}
        report["edge_map"] = {
            str(k): {"vertices": list(t.vertices), "edges": list(t.edges)}
            for k, t in sorted(emb.edge_map.items())
        }
        report["residual_matching"] = sorted(emb.residual_matching)
    _emit(report, args.json, args.started)
    return 0


def cmd_ears(args: argparse.Namespace) -> int:
    g = _load(args)
    d = ear_decomposition(g)
    report = {
        "valid": d.validate(),
        "steps": [
            {"edges": sorted(s.graph.edge_ids),
             "ears": [{"vertices": list(e.vertices), "edges": list(e.edges)} for e in s.ears]}
            for s in d.steps
        ],
        "double_ears": d.double_ears,
    }
    _emit(report, args.json, args.started)
    return 0 if report["valid"] else 1


def cmd_classes(args: argparse.Namespace) -> int:
    g = _load(args)
    cls = removable_classes(g)
    report = {
        "removable_edges": sorted(e for c in cls if c.kind == "single" for e in c.edges),
        "removable_doubletons": [sorted(c.edges) for c in cls if c.kind == "doubleton"],
    }
    _emit(report, args.json, args.started)
    return 0


def cmd_reduce(args: argparse.Namespace) -> int:
    g = _load(args)
    seq = reduce_to_terminal(g, strict=args.strict)
    report = {
        "strict": args.strict,
        "terminal": seq.terminal_family,
        "removed_edges": list(seq.edges),
        "bricks": [graph_json(b) for b in seq.bricks],
        "valid": seq.validate(args.strict),
    }
    _emit(report, args.json, args.started)
    return 0 if report["valid"] else 1


def cmd_family(args: argparse.Namespace) -> int:
    if args.action == "generate":
        g = generate(FamilySpec(args.name, args.size))
        text = format_graph6(g) + "\n" if args.format == "graph6" else format_edgelist(g)
        if args.output:
            Path(args.output).write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)
        return 0
    g = read_graph(args.name, args.format)
    _emit({"families": _tags(g)}, args.json, args.started)
    return 0


def cmd_corpus(args: argparse.Namespace) -> int:
    entries = build_corpus(seed=args.seed, max_order=args.max_order, n_cubic=args.cubic,
                           n_dense=args.dense, n_decomposable=args.decomposable)
    path = write_corpus(entries, args.directory, seed=args.seed)
    _emit({"manifest": str(path), "graphs": len(entries)}, args.json, args.started)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    ids = list(CHECKS) if args.check == "all" else [args.check]
    params = {"n_cubic": args.cubic, "n_dense": args.dense, "n_decomposable": args.decomposable}
    reports = [run_check(c, seed=args.seed, max_order=args.max_order, corpus_params=params) for c in ids]
    out = {"reports": [r.to_dict() for r in reports], "passed": all(r.passed for r in reports)}
    if args.json:
        _emit(out, True, args.started)
    else:
        for r in reports:
            status = "findings" if r.mode == "findings" else ("PASS" if r.passed else "FAIL")
            print(f"{status:8} {r.check}: {r.instances} instances, {len(r.failures)} failures, {r.runtime:.1f}s")
    return 0 if out["passed"] else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["edgelist", "graph6"], default="edgelist")
    common.add_argument("--cap", type=int, default=None, help="vertex cap for exhaustive routines")
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--json", action="store_true", help="print the report as JSON")

    p = argparse.ArgumentParser(prog="matchcov", description="Matching covered graph toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    for name, func, helptext in [
        ("analyze", cmd_analyze, "summary of a graph"),
        ("decompose", cmd_decompose, "tight cut decomposition"),
        ("solid", cmd_solid, "solidity with certificates"),
        ("ears", cmd_ears, "ear decomposition"),
        ("classes", cmd_classes, "removable edges and doubletons"),
    ]:
        sp = sub.add_parser(name, parents=[common], help=helptext)
        sp.add_argument("graph")
        sp.set_defaults(func=func)

    sp = sub.add_parser("conformal", parents=[common], help="conformal minor search")
    sp.add_argument("graph")
    sp.add_argument("--pattern", choices=PATTERN_NAMES, required=True)
    sp.set_defaults(func=cmd_conformal)

    sp = sub.add_parser("reduce", parents=[common], help="thin-edge reduction chain")
    sp.add_argument("graph")
    sp.add_argument("--strict", action="store_true")
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("family", parents=[common], help="generate or recognise family members")
    sp.add_argument("action", choices=["generate", "recognize"])
    sp.add_argument("name", help=f"family ({', '.join(FAMILIES)}) or, for recognize, a graph file")
    sp.add_argument("size", type=int, nargs="?")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_family)

    corpus_opts = argparse.ArgumentParser(add_help=False)
    corpus_opts.add_argument("--max-order", type=int, default=12)
    corpus_opts.add_argument("--cubic", type=int, default=100, help="random cubic graphs")
    corpus_opts.add_argument("--dense", type=int, default=60, help="random cubic graphs with added edges")
    corpus_opts.add_argument("--decomposable", type=int, default=100, help="graphs with nontrivial tight cuts")

    sp = sub.add_parser("corpus", parents=[common, corpus_opts], help="write a seeded corpus")
    sp.add_argument("directory")
    sp.set_defaults(func=cmd_corpus)

    sp = sub.add_parser("verify", parents=[common, corpus_opts], help="run a corpus-wide check")
    sp.add_argument("check", choices=[*CHECKS, "all"])
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.started = time.perf_counter()
    old_cap = settings.VERTEX_CAP
    if args.cap is not None:
        settings.VERTEX_CAP = args.cap
    try:
        return args.func(args)
    except (GraphError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    finally:
        settings.VERTEX_CAP = old_cap


if __name__ == "__main__":
    sys.exit(main())
