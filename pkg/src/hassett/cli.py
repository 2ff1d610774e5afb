"""Command-line front end.

Every command builds one report (a JSON-compatible tree with rationals as
"p/q" strings) and prints it either as canonical JSON or as indented text.
Exit status: 0 success, 1 a verification failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path

from . import suites
from .arith import ParseError, format_rational, parse_rational
from .chambers import (
    CacheError,
    DomainError,
    OnWall,
    Weight,
    classify_weight,
    count_by_type,
    enumerate_chambers,
    generate_walls,
    load_or_enumerate,
    type_of,
    wall_order_hash,
)
from .dp5 import contraction_dag, identify_surface
from .git import AtypicalWeightError, GITWeight, is_typical, match_chamber, strictly_semistable_points

SCHEMA = "report/1"


class InputError(Exception):
    """Bad user input; exit status 2."""


def parse_weights(text: str) -> tuple[Fraction, ...]:
    items = text.split(",")
    if not items or any(not t.strip() for t in items):
        raise InputError(f"empty entry in weight list {text!r}")
    try:
        return tuple(parse_rational(t) for t in items)
    except ParseError as exc:
        raise InputError(str(exc)) from exc


def wall_block(n: int) -> dict:
    return {
        "n": n,
        "order": ["".join(map(str, w.subset)) for w in generate_walls(n)],
        "hash": wall_order_hash(n),
    }


def chamber_summary(c) -> dict:
    out = {
        "id": c.id,
        "signs": c.sign_string,
        "representative": [format_rational(a) for a in c.representative.entries],
        "d_set": [list(i) for i in c.sorted_d_set()],
        "d": c.d_value,
    }
    if c.n == 5:
        s = identify_surface(c)
        out["type"] = type_of(c)
        out["surface"] = {"degree": s.degree, "deg8_kind": s.deg8_kind, "minus_one_curves": s.minus_one_count}
    return out


def cmd_chambers(args) -> tuple[dict, int]:
    n = args.n
    if not 4 <= n <= 7:
        raise InputError(f"n must be between 4 and 7, got {n}")
    if args.by_type and n != 5:
        raise InputError("--by-type is only defined for n = 5")
    try:
        chambers = load_or_enumerate(n, args.cache, args.threads)
    except OSError as exc:
        raise InputError(f"cannot write cache: {exc}") from exc
    results: dict = {"total": len(chambers)}
    if args.by_type:
        results["by_type"] = count_by_type(chambers)
    if not args.count_only and not args.by_type:
        results["chambers"] = [chamber_summary(c) for c in chambers]
    inputs = {"n": n, "count_only": args.count_only, "by_type": args.by_type}
    return report("chambers", inputs, results, n), 0


def cmd_classify(args) -> tuple[dict, int]:
    entries = parse_weights(args.weights)
    try:
        w = Weight(entries)
    except DomainError as exc:
        raise InputError(str(exc)) from exc
    if not 4 <= w.n <= 7:
        raise InputError(f"weights must have between 4 and 7 entries, got {w.n}")
    found = classify_weight(w)
    if isinstance(found, OnWall):
        results = {"on_wall": [list(x.subset) for x in found.walls]}
    else:
        results = {"chamber": chamber_summary(found)}
    return report("classify", {"weights": [format_rational(a) for a in entries]}, results, w.n), 0


def cmd_verify(args) -> tuple[dict, int]:
    try:
        alpha = parse_rational(args.alpha) if args.alpha is not None else None
        beta = parse_rational(args.beta) if args.beta is not None else None
    except ParseError as exc:
        raise InputError(str(exc)) from exc
    checks = suites.run(args.suite, alpha, beta, args.threads)
    passed = all(c.passed for c in checks)
    inputs = {"suite": args.suite}
    if alpha is not None:
        inputs["alpha"] = format_rational(alpha)
    if beta is not None:
        inputs["beta"] = format_rational(beta)
    results = {"passed": passed, "checks": [c.as_dict() for c in checks]}
    return report("verify", inputs, results, 5), 0 if passed else 1


def cmd_git(args) -> tuple[dict, int]:
    entries = parse_weights(args.weights)
    try:
        w = GITWeight(entries)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    pairs = strictly_semistable_points(w)
    results: dict = {"normalized": [format_rational(x) for x in w.r], "typical": is_typical(w)}
    results["semistable_count"] = len(pairs)
    if args.semistable:
        results["semistable"] = [[list(t), list(rest)] for t, rest in pairs]
    if args.match:
        try:
            c = match_chamber(w)
        except (AtypicalWeightError, ValueError) as exc:
            raise InputError(str(exc)) from exc
        results["chamber"] = chamber_summary(c)
    inputs = {"weights": [format_rational(x) for x in entries], "semistable": args.semistable, "match": args.match}
    return report("git", inputs, results, 5 if args.match else None), 0


def cmd_dag(args) -> tuple[dict, int]:
    chambers = enumerate_chambers(5, args.threads)
    dag = contraction_dag(chambers)
    if args.dot:
        try:
            Path(args.dot).write_text(dag.to_dot())
        except OSError as exc:
            raise InputError(f"cannot write {args.dot}: {exc}") from exc
    type_a = next(c.id for c in chambers if type_of(c) == "A")
    sinks = dag.sinks()
    sink_types: dict[str, int] = {}
    for cid in sinks:
        t = type_of(chambers[cid])
        sink_types[t] = sink_types.get(t, 0) + 1
    results = {
        "vertices": len(dag.chambers),
        "edges": len(dag.edges),
        "type_a_out_degree": dag.out_degree(type_a),
        "sinks": sinks,
        "sink_types": sink_types,
    }
    return report("dag", {"dot": bool(args.dot)}, results, 5), 0


def report(command: str, inputs: dict, results: dict, n: int | None) -> dict:
    out = {"schema": SCHEMA, "command": command, "inputs": inputs, "results": results}
    if n is not None:
        out["walls"] = wall_block(n)
    return out


def render_text(value, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(value, dict):
        for key, item in value.items():
            if isinstance(item, (dict, list)) and item and not _flat(item):
                lines.append(f"{pad}{key}:")
                lines.extend(render_text(item, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_scalar(item)}")
    elif isinstance(value, list):
        for item in value:
            if isinstance(item, (dict, list)) and not _flat(item):
                lines.append(f"{pad}-")
                lines.extend(render_text(item, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(item)}")
    else:
        lines.append(pad + _scalar(value))
    return lines


def _flat(item) -> bool:
    return isinstance(item, list) and all(not isinstance(x, dict) for x in item)


def _scalar(item) -> str:
    if isinstance(item, (list, dict)):
        return json.dumps(item, sort_keys=True, separators=(",", ":"))
    if item is None:
        return "-"
    if isinstance(item, bool):
        return "yes" if item else "no"
    return str(item)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hassett", description="Chambers, intersections and stability on M_{0,n}.")
    p.add_argument("--threads", type=int, default=1, help="worker processes for enumeration (speed only)")
    p.add_argument("--format", choices=("text", "structured"), default="structured")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("chambers", help="enumerate chambers of the weight domain")
    c.add_argument("n", type=int)
    c.add_argument("--count-only", action="store_true")
    c.add_argument("--by-type", action="store_true", help="type histogram (n = 5)")
    c.add_argument("--cache", metavar="PATH", help="chamber cache file (default: $MODULI_CACHE_DIR)")
    c.set_defaults(func=cmd_chambers)

    c = sub.add_parser("classify", help="locate a weight vector")
    c.add_argument("weights", help="comma-separated rationals, e.g. 1,1,3/10,3/10,3/10")
    c.set_defaults(func=cmd_classify)

    c = sub.add_parser("verify", help="run a verification suite")
    c.add_argument("suite", choices=suites.SUITES)
    c.add_argument("--alpha")
    c.add_argument("--beta")
    c.set_defaults(func=cmd_verify)

    c = sub.add_parser("git", help="stability data for a linearization")
    c.add_argument("weights")
    c.add_argument("--semistable", action="store_true", help="list strictly semistable points")
    c.add_argument("--match", action="store_true", help="matching chamber (n = 5, typical weights)")
    c.set_defaults(func=cmd_git)

    c = sub.add_parser("dag", help="reduction Hasse diagram over the n = 5 chambers")
    c.add_argument("--dot", metavar="PATH")
    c.set_defaults(func=cmd_dag)
    return p


def emit(doc: dict, fmt: str) -> str:
    if fmt == "structured":
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    return "\n".join(render_text(doc)) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    if args.threads < 1:
        parser.error("--threads must be at least 1")
    try:
        doc, status = args.func(args)
    except (InputError, CacheError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(emit(doc, args.format))
    return status


if __name__ == "__main__":
    sys.exit(main())
