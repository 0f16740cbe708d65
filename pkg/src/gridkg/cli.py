"""Command-line driver: build a graph, query it, or serve it over HTTP.

Exit codes: 0 success (a not-found query is a success), 1 usage error,
2 data error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import GridKgError
from .pipeline import BuildConfig, build_and_save
from .query import QueryEngine, ResultTree, tree_payload
from .rules import load_rules
from .store import Direction, GraphStore


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gridkg")
    sub = parser.add_subparsers(dest="command", required=True)

    p_build = sub.add_parser("build", help="build a graph file from corpora and station documents")
    p_build.add_argument("--common", help="common-words dictionary file")
    p_build.add_argument("--power", help="electric-power dictionary file")
    p_build.add_argument("--hmm", help="segmentation parameters file")
    p_build.add_argument("--train", help="gold-segmented corpus to fit parameters from")
    p_build.add_argument("--corpus", action="append", default=[], help="free-text records (repeatable)")
    p_build.add_argument("--structured", action="append", default=[], help="station documents (repeatable)")
    p_build.add_argument("--rules", help="inference rules file (validated at build time)")
    p_build.add_argument("--out", required=True, help="output graph file")

    p_query = sub.add_parser("query", help="retrieve an entity's neighborhood from a graph file")
    p_query.add_argument("graph")
    p_query.add_argument("label")
    p_query.add_argument("--depth", type=int, default=1)
    p_query.add_argument("--rules", help="inference rules applied before querying")
    p_query.add_argument("--json", action="store_true", help="emit the wire payload")

    p_serve = sub.add_parser("serve", help="serve a graph file over HTTP")
    p_serve.add_argument("graph")
    p_serve.add_argument("--rules")
    p_serve.add_argument("--bind", default="127.0.0.1:8765", help="host:port")
    p_serve.add_argument("--ui", help="directory of static files to serve at /")
    return parser


def cmd_build(args) -> int:
    config = BuildConfig(
        common_path=args.common,
        power_path=args.power,
        hmm_path=args.hmm,
        train_path=args.train,
        corpus_paths=args.corpus,
        structured_paths=args.structured,
        rules_path=args.rules,
        out_path=args.out,
    )
    report = build_and_save(config)
    print(json.dumps(report, ensure_ascii=False, indent=2))
    return 0


def cmd_query(args) -> int:
    store = GraphStore.load(args.graph)
    rules = load_rules(args.rules) if args.rules else ()
    engine = QueryEngine(store, rules)
    eid = engine.find_entity(args.label)
    if eid is None:
        tree = engine.not_found()
    else:
        tree = engine.neighborhood(eid, args.depth)
    if args.json:
        print(json.dumps(tree_payload(store, tree), ensure_ascii=False, indent=2))
    else:
        _render_text(store, tree, args.label)
    return 0


def _render_text(store: GraphStore, tree: ResultTree, label: str) -> None:
    if tree.not_found:
        print(f"no result: {label!r} is not in the graph")
        return
    root = store.entity(tree.root)
    print(f"{root.label} [{root.category.value}]")
    for depth, level in enumerate(tree.levels, start=1):
        print(f"  level {depth}:")
        for triple, direction in level.edges:
            s = store.entity(triple.s)
            o = store.entity(triple.o)
            tag = "in " if direction is Direction.IN else "out"
            mark = " (inferred)" if triple.derived else ""
            print(f"    [{tag}] {s.label} -{triple.p.name}-> {o.label}{mark}")


def cmd_serve(args) -> int:
    from .service import run_server

    host, _, port = args.bind.rpartition(":")
    run_server(args.graph, args.rules, host or "127.0.0.1", int(port), args.ui)
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses status 2 for usage problems; our contract says 1
        return 0 if exc.code == 0 else 1
    try:
        if args.command == "build":
            return cmd_build(args)
        if args.command == "query":
            return cmd_query(args)
        if args.command == "serve":
            return cmd_serve(args)
    except (GridKgError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 1


if __name__ == "__main__":
    sys.exit(main())
