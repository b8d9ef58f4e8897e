"""Command-line front end.

Reports go to stdout as JSON.  Exit status: 0 on success, 1 when the input
cannot be read or is malformed, 2 when a requested assertion is false
(``verify`` on a failing order, ``equations --check`` with a failed check,
``graph-froberg`` inconsistency, a failed ``selfcheck`` item).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import exactq
from .arrangement import (
    ArrangementError,
    OrderingError,
    direct_sum_components,
    intersection_graph,
    is_small,
    load_arrangement,
    project_from_point,
    verify_linearly_joined,
)
from .chordal import GraphError, SimpleGraph, froberg_check, is_chordal, maximal_cliques
from .generate import random_small_arrangement
from .ideals import NotLinearlyJoined, equations_for_ordered_arrangement, verify_generation
from .selfcheck import selfcheck

EXIT_OK, EXIT_INPUT, EXIT_FALSE = 0, 1, 2


class InputError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _entry_list(text: str) -> list:
    try:
        return [exactq.parse_entry(t.strip()) for t in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected comma-separated rationals, got {text!r}") from None


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def _emit(doc, out: str | None = None) -> None:
    text = json.dumps(doc, indent=2)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def _order_arg(args) -> list[int] | None:
    if getattr(args, "order", None) is not None:
        return args.order
    src = getattr(args, "order_from", None)
    if src:
        doc = _read_json(src)
        order = doc.get("ordering") if isinstance(doc, dict) else None
        if not isinstance(order, list):
            raise InputError(f"{src} has no 'ordering' list")
        return order
    return None


def cmd_analyze(args) -> int:
    arr = load_arrangement(_read_json(args.file))
    rep = is_small(arr)
    parts, direct = direct_sum_components(arr)
    doc = rep.to_json()
    doc["names"] = arr.names
    doc["graph"] = intersection_graph(arr).to_json()
    doc["direct_sum"] = {"parts": parts, "is_direct_sum": direct}
    _emit(doc, args.out)
    return EXIT_OK


def cmd_order(args) -> int:
    arr = load_arrangement(_read_json(args.file))
    rep = is_small(arr)
    _emit({"small": rep.small, "ordering": rep.ordering.to_json() if rep.ordering else None,
           "forest": rep.witness_forest.to_json()})
    return EXIT_OK if rep.small else EXIT_FALSE


def cmd_verify(args) -> int:
    arr = load_arrangement(_read_json(args.file))
    order = _order_arg(args)
    if order is None:
        raise InputError("verify needs --order or --order-from")
    check = verify_linearly_joined(arr, order)
    doc = {"order": list(order), **check.to_json()}
    _emit(doc)
    return EXIT_OK if check.ok else EXIT_FALSE


def cmd_equations(args) -> int:
    arr = load_arrangement(_read_json(args.file))
    order = _order_arg(args)
    if order is None:
        rep = is_small(arr)
        if not rep.small:
            _emit({"error": "arrangement is not small; no linearly joined order exists",
                   "chi_w_min": rep.chi_w_min, "span_rank": rep.span_rank})
            return EXIT_FALSE
        order = list(rep.ordering.sequence)
    try:
        gens = equations_for_ordered_arrangement(arr, order)
    except NotLinearlyJoined as exc:
        _emit({"error": str(exc), "order": list(order)})
        return EXIT_FALSE
    doc = gens.to_json()
    doc["order"] = list(order)
    status = EXIT_OK
    if args.check:
        gr = verify_generation(arr, gens)
        doc["check"] = gr.to_json()
        status = EXIT_OK if gr.ok else EXIT_FALSE
    _emit(doc)
    return status


def cmd_project(args) -> int:
    arr = load_arrangement(_read_json(args.file))
    proj = project_from_point(arr, args.component, args.point)
    doc = proj.to_json()
    doc["small"] = is_small(proj).small
    _emit(doc, args.out)
    return EXIT_OK


def _graph(path: str) -> SimpleGraph:
    return SimpleGraph.from_json(_read_json(path))


def cmd_graph_chordal(args) -> int:
    g = _graph(args.file)
    doc = is_chordal(g).to_json()
    doc["maximal_cliques"] = [list(f) for f in maximal_cliques(g).facets]
    _emit(doc)
    return EXIT_OK


def cmd_graph_froberg(args) -> int:
    rep = froberg_check(_graph(args.file))
    _emit(rep.to_json())
    return EXIT_OK if rep.consistent else EXIT_FALSE


def cmd_random(args) -> int:
    arr = random_small_arrangement(args.components, args.ambient, args.seed)
    _emit(arr.to_json(), args.out)
    return EXIT_OK


def cmd_selfcheck(args) -> int:
    results = selfcheck(args.filter)
    for r in results:
        print(r.line())
    passed = sum(r.passed for r in results)
    print(f"{passed}/{len(results)} items passed")
    return EXIT_OK if passed == len(results) else EXIT_FALSE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="smallarr", description="Small subspace arrangements.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="smallness report for an arrangement file")
    a.add_argument("file")
    a.add_argument("--out", help="write the report here instead of stdout")
    a.set_defaults(func=cmd_analyze)

    o = sub.add_parser("order", help="a linearly joined ordering (exit 2 if none)")
    o.add_argument("file")
    o.set_defaults(func=cmd_order)

    v = sub.add_parser("verify", help="check an ordering for the linearly joined property")
    v.add_argument("file")
    g = v.add_mutually_exclusive_group()
    g.add_argument("--order", type=_int_list, help="comma-separated component indices")
    g.add_argument("--order-from", help="take the 'ordering' field of an analyze report")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("equations", help="quadratic generators along a linearly joined order")
    e.add_argument("file")
    g = e.add_mutually_exclusive_group()
    g.add_argument("--order", type=_int_list)
    g.add_argument("--order-from")
    e.add_argument("--check", action="store_true", help="verify the generators exactly")
    e.set_defaults(func=cmd_equations)

    pr = sub.add_parser("project", help="project from a point of one component")
    pr.add_argument("file")
    pr.add_argument("--component", type=int, required=True)
    pr.add_argument("--point", type=_entry_list, required=True, help="coordinates, e.g. 0,0,1,0,1/2")
    pr.add_argument("--out")
    pr.set_defaults(func=cmd_project)

    gc = sub.add_parser("graph-chordal", help="chordality with certificate")
    gc.add_argument("file")
    gc.set_defaults(func=cmd_graph_chordal)

    gf = sub.add_parser("graph-froberg", help="chordal iff coordinate arrangement is small")
    gf.add_argument("file")
    gf.set_defaults(func=cmd_graph_froberg)

    r = sub.add_parser("random", help="seeded random small arrangement")
    r.add_argument("--components", type=int, required=True)
    r.add_argument("--ambient", type=int, required=True)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--out")
    r.set_defaults(func=cmd_random)

    s = sub.add_parser("selfcheck", help="replay the bundled fixtures")
    s.add_argument("--filter", help="run only items whose name contains this")
    s.set_defaults(func=cmd_selfcheck)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ArrangementError, OrderingError, GraphError, exactq.DimensionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
