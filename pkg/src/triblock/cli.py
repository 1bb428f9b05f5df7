"""Command line interface.

Exit codes: 0 success, 2 bad input or failed verification, 3 broken internal
invariant.  All numeric output is exact; rationals print as p/q and JSON
carries integers only.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from math import inf

from . import blockcalc, catalog, markov, weyl
from .blockcalc import BlockCollection, BlockError, block_rank_triple, validate_collection
from .kclass import InvariantViolationError, KClass, slope
from .markov import SolutionTriple, equation_by_label
from .picard import DivisorClass, LatticeMismatchError, Surface, enumerate_classes


def _fmt_rational(value) -> str:
    if value == inf:
        return "inf"
    f = Fraction(value)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _triple_str(s: SolutionTriple) -> str:
    return f"{s.x},{s.y},{s.z}"


# ---------------------------------------------------------------------------
# Collection documents.


def collection_to_doc(c: BlockCollection, provenance: dict | None = None) -> dict:
    doc = {
        "surface": c.surface.name,
        "blocks": [
            [
                {"rank": m.rank, "c1": list(m.c1.coords), "ch2x2": m.ch2x2}
                for m in b.members
            ]
            for b in c.blocks
        ],
    }
    if provenance:
        doc["provenance"] = provenance
    return doc


def collection_from_doc(doc) -> BlockCollection:
    if not isinstance(doc, dict):
        raise ValueError("document must be a JSON object")
    try:
        surface = Surface.from_name(doc["surface"])
    except KeyError:
        raise ValueError("document lacks a 'surface' field") from None
    raw_blocks = doc.get("blocks")
    if not isinstance(raw_blocks, list) or not raw_blocks:
        raise ValueError("document needs a nonempty 'blocks' list")
    blocks = []
    for raw in raw_blocks:
        if not isinstance(raw, list):
            raise ValueError("each block must be a list of classes")
        members = []
        for item in raw:
            if not isinstance(item, dict):
                raise ValueError("each class must be an object")
            try:
                rank, c1, ch2x2 = item["rank"], item["c1"], item["ch2x2"]
            except KeyError as missing:
                raise ValueError(f"class lacks field {missing}") from None
            if not isinstance(rank, int) or not isinstance(ch2x2, int):
                raise ValueError("rank and ch2x2 must be integers")
            if not isinstance(c1, list) or not all(isinstance(x, int) for x in c1):
                raise ValueError("c1 must be a list of integers")
            members.append(
                KClass(surface, rank, DivisorClass(surface, tuple(c1)), ch2x2)
            )
        blocks.append(members)
    return validate_collection(blocks)


def _read_doc(path: str) -> BlockCollection:
    raw = sys.stdin.read() if path == "-" else open(path, "r", encoding="utf-8").read()
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ValueError(f"not valid JSON: {exc}") from None
    return collection_from_doc(doc)


def _print_json(obj) -> None:
    print(json.dumps(obj, indent=2))


# ---------------------------------------------------------------------------
# Subcommands.


def cmd_equations(args) -> int:
    rows = markov.enumerate_equations()
    if args.json:
        _print_json(
            {
                "equations": [
                    {
                        "label": eq.label,
                        "surface": eq.surface.name,
                        "type": list(eq.type_vector),
                        "ksq": eq.ksq,
                        "coefficient": eq.coeff,
                        "equation": str(eq),
                        "minimum_solutions": [
                            list(s) for s in markov.minimum_solutions(eq)
                        ],
                    }
                    for eq in rows
                ]
            }
        )
        return 0
    header = f"{'label':<8} {'surface':<8} {'type':<9} {'K^2':<4} {'equation':<28} minima"
    print(header)
    print("-" * len(header))
    for eq in rows:
        minima = " ".join(f"({_triple_str(s)})" for s in markov.minimum_solutions(eq))
        type_str = "(" + ",".join(str(t) for t in eq.type_vector) + ")"
        print(
            f"{eq.label:<8} {eq.surface.name:<8} {type_str:<9} {eq.ksq:<4} {str(eq):<28} {minima}"
        )
    return 0


def cmd_reduce(args) -> int:
    eq = equation_by_label(args.label)
    triple = SolutionTriple(args.x, args.y, args.z)
    path = markov.reduce_to_minimum(eq, triple)
    if args.json:
        _print_json(
            {
                "label": eq.label,
                "path": [
                    {"solution": list(s), "mutation": var} for s, var in path
                ],
            }
        )
        return 0
    for s, var in path:
        if var is None:
            print(f"({_triple_str(s)})  minimum")
        else:
            print(f"({_triple_str(s)})  --{var}-->")
    return 0


def cmd_graph(args) -> int:
    eq = equation_by_label(args.label)
    graph = markov.build_solution_graph(eq, args.sum_bound)
    if args.format == "json":
        _print_json(
            {
                "label": eq.label,
                "sum_bound": graph.sum_bound,
                "nodes": [list(s) for s in graph.nodes],
                "edges": [[list(a), list(b), v] for a, b, v in graph.edges],
                "loops": [[list(s), v] for s, v in graph.loops],
                "minima": [list(s) for s in graph.minima],
                "components": graph.component_count(),
                "acyclic": graph.is_acyclic(),
            }
        )
        return 0
    minima = set(graph.minima)
    lines = [f'graph "{eq.label}" {{']
    for s in graph.nodes:
        attr = " [peripheries=2]" if s in minima else ""
        lines.append(f'  "{_triple_str(s)}"{attr};')
    for a, b, v in graph.edges:
        lines.append(f'  "{_triple_str(a)}" -- "{_triple_str(b)}" [label="{v}"];')
    for s, v in graph.loops:
        lines.append(f'  "{_triple_str(s)}" -- "{_triple_str(s)}" [label="{v}"];')
    lines.append("}")
    print("\n".join(lines))
    return 0


def _verify_report(c: BlockCollection) -> list[tuple[str, bool, str]]:
    checks: list[tuple[str, bool, str]] = []
    checks.append(("blocks and semiorthogonality", True, f"type {c.type_vector}"))
    complete = blockcalc.is_complete(c)
    checks.append(
        ("complete", complete, f"{len(c.members)} classes, K0 rank {c.surface.k0_rank}")
    )
    if len(c.blocks) == 3:
        slopes = " < ".join(_fmt_rational(slope(b.members[0])) for b in c.blocks)
        checks.append(("block slopes", True, slopes))
        try:
            eq = markov.equation_for(c.surface, c.type_vector)
            triple = block_rank_triple(c)
            ok = markov.check_solution(eq, triple)
            checks.append(
                ("ranks solve equation", ok, f"{eq.label}: ranks ({_triple_str(SolutionTriple(*triple))})")
            )
        except ValueError:
            checks.append(("ranks solve equation", False, "no matching equation"))
        if complete:
            try:
                a, b, cc = blockcalc.abc(c)
                checks.append(("abc relations", True, f"(a,b,c)=({a},{b},{cc})"))
            except InvariantViolationError as exc:
                checks.append(("abc relations", False, str(exc)))
    return checks


def _print_checks(checks) -> int:
    failed = False
    for name, ok, detail in checks:
        status = "ok" if ok else "FAIL"
        suffix = f"  ({detail})" if detail else ""
        print(f"{status}: {name}{suffix}")
        failed = failed or not ok
    return 2 if failed else 0


def cmd_verify(args) -> int:
    try:
        c = _read_doc(args.file)
    except (BlockError, ValueError) as exc:
        print(f"FAIL: {exc}")
        return 2
    return _print_checks(_verify_report(c))


def cmd_mutate(args) -> int:
    c = _read_doc(args.file)
    word = []
    for token in args.word:
        word.extend(token.replace(",", " ").split())
    for token in word:
        blockcalc.parse_move(token)  # fail fast on bad syntax before mutating
    result = blockcalc.apply_word(c, word)
    _print_json(collection_to_doc(result, {"word": word}))
    return 0


def cmd_catalog(args) -> int:
    wanted = catalog.labels() if args.label == "all" else (args.label,)
    if args.label == "all" and not args.verify:
        raise ValueError("label 'all' is only available together with --verify")
    exit_code = 0
    for label in wanted:
        if args.verify:
            checks = [(c.name, c.ok, c.detail) for c in catalog.verify_entry(label)]
            if len(wanted) > 1:
                print(f"[{label}]")
            exit_code = max(exit_code, _print_checks(checks))
        else:
            c = catalog.build(label, args.solution)
            entry = catalog.ENTRIES[label]
            word = list(entry.word)
            if args.solution == 1:
                word += list(entry.extra_word)
            _print_json(
                collection_to_doc(
                    c, {"label": label, "solution": args.solution, "word": word}
                )
            )
    return exit_code


def cmd_orbits(args) -> int:
    rows = [weyl.orbit_row(args.label)] if args.label else list(weyl.orbit_table())
    payload = {
        "rows": [
            {
                "label": r.label,
                "solution_classes": r.solution_classes,
                "repetition": r.repetition,
                "orbits": r.orbits,
            }
            for r in rows
        ]
    }
    failures = 0
    if args.check_c:
        payload["c_witnesses"] = {}
        for label in weyl.C_WITNESS_LABELS:
            ok = weyl.verify_c(label)
            payload["c_witnesses"][label] = ok
            failures += 0 if ok else 1
    if args.check_recursion:
        payload["recursion"] = []
        for label in sorted(weyl.RECURSION_CASES):
            report = weyl.recursion_check(label)
            payload["recursion"].append(
                {
                    "label": report.label,
                    "solution_classes": report.solution_classes,
                    "binom": report.binom,
                    "smaller_classes": report.smaller_classes,
                    "disjoint_sets": report.disjoint_sets,
                    "ok": report.ok,
                }
            )
            failures += 0 if report.ok else 1
    if args.json:
        _print_json(payload)
        return 2 if failures else 0
    print(f"{'label':<8} {'N':>8} {'C':>3} {'orbits':>8}")
    for r in rows:
        print(f"{r.label:<8} {r.solution_classes:>8} {r.repetition:>3} {r.orbits:>8}")
    for label, ok in payload.get("c_witnesses", {}).items():
        print(f"C witness {label}: {'ok' if ok else 'FAIL'}")
    for entry in payload.get("recursion", []):
        status = "ok" if entry["ok"] else "FAIL"
        print(
            f"recursion {entry['label']}: {entry['solution_classes']} * "
            f"{entry['binom']} == {entry['smaller_classes']} * {entry['disjoint_sets']}  {status}"
        )
    return 2 if failures else 0


def cmd_curves(args) -> int:
    surface = Surface.from_name(args.surface)
    classes = enumerate_classes(
        surface, args.kind, bound_multiplier=args.bound_multiplier
    )
    if args.json:
        _print_json(
            {
                "surface": surface.name,
                "kind": args.kind,
                "count": len(classes),
                "classes": [list(d.coords) for d in classes],
            }
        )
        return 0
    print(f"{len(classes)} {args.kind} classes on {surface.name}")
    for d in classes:
        print(" ".join(str(x) for x in d.coords))
    return 0


def cmd_disjoint_sets(args) -> int:
    surface = Surface.from_name(args.surface)
    count = weyl.count_disjoint_sets(surface, args.size)
    if args.json:
        _print_json({"surface": surface.name, "size": args.size, "count": count})
    else:
        print(count)
    return 0


# ---------------------------------------------------------------------------
# Parser plumbing.


def _thread_count(args) -> int:
    value = args.threads
    if value is None:
        value = os.environ.get("TRIBLOCK_THREADS", "1")
    try:
        n = int(value)
    except (TypeError, ValueError):
        raise ValueError(f"thread count must be a positive integer, got {value!r}") from None
    if n < 1:
        raise ValueError(f"thread count must be a positive integer, got {n}")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="triblock",
        description="Exact arithmetic for three-block exceptional collections.",
    )
    parser.add_argument(
        "--threads",
        default=None,
        help="worker cap for heavy searches (also TRIBLOCK_THREADS); "
        "results never depend on it",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("equations", help="list the fourteen Markov-type equations")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_equations)

    p = sub.add_parser("reduce", help="reduce a solution to the minimum")
    p.add_argument("label")
    p.add_argument("x", type=int)
    p.add_argument("y", type=int)
    p.add_argument("z", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("graph", help="mutation graph of solutions within a bound")
    p.add_argument("label")
    p.add_argument("--sum-bound", type=int, default=100)
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("verify", help="validate a collection document")
    p.add_argument("file", help="JSON document path, or - for stdin")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("mutate", help="apply a braid word to a collection document")
    p.add_argument("file", help="JSON document path, or - for stdin")
    p.add_argument("word", nargs="+", help="moves such as R1 L2, applied left to right")
    p.set_defaults(func=cmd_mutate)

    p = sub.add_parser("catalog", help="emit or verify a cataloged collection")
    p.add_argument("label", help="equation label, or 'all' with --verify")
    p.add_argument("--solution", type=int, default=0)
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("orbits", help="Weyl orbit table")
    p.add_argument("--label")
    p.add_argument("--check-recursion", action="store_true")
    p.add_argument("--check-c", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_orbits)

    p = sub.add_parser("curves", help="enumerate minus-one or root classes")
    p.add_argument("surface")
    p.add_argument("--kind", choices=("minus-one", "root"), default="minus-one")
    p.add_argument("--bound-multiplier", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_curves)

    p = sub.add_parser("disjoint-sets", help="count disjoint minus-one class sets")
    p.add_argument("surface")
    p.add_argument("size", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_disjoint_sets)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _thread_count(args)
        return args.func(args)
    except InvariantViolationError as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return 3
    except (BlockError, LatticeMismatchError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
