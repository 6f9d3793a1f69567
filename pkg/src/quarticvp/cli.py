"""Command-line interface.

Subcommands: classify, vp, check, generate, tables, selftest.  Input is a
homogeneous quartic in the polynomial grammar, from a file or stdin.
Exit codes distinguish the failure classes: 2 parse, 3 geometry, 4 field
extension, 5 consistency violation, 6 table mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import (
    ConsistencyViolation,
    FieldExtensionRequired,
    GenerationError,
    GeometryError,
    PolyParseError,
)
from .field import ONE, ZERO
from .poly import format_poly, parse, parse_coeff
from .quartic import normalize_at_point
from .singclass import TypeTag, classification_to_json, classify
from .vpanalyzer import analyze_weight, enumerate_vp, sarkisov_filter

EXIT_PARSE = 2
EXIT_GEOMETRY = 3
EXIT_FIELD = 4
EXIT_CONSISTENCY = 5
EXIT_TABLES = 6


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _parse_point(text: str):
    parts = text.split(":")
    if len(parts) != 4:
        raise PolyParseError("a point needs 4 coordinates p0:p1:p2:p3", 0)
    return tuple(parse_coeff(p.strip()) for p in parts)


def _load_quartic(args):
    f = parse(_read_input(args.input))
    point = _parse_point(args.point) if args.point else (ONE, ZERO, ZERO, ZERO)
    return normalize_at_point(f, point)


def cmd_classify(args) -> int:
    q = _load_quartic(args)
    tag, cert = classify(q)
    if args.json:
        print(json.dumps(classification_to_json(tag, cert), indent=2))
    else:
        print(f"singularity type: {tag.label()}")
        for entry in cert.entries:
            step = f"  [step {entry.step}]" if entry.step else ""
            print(f"  {entry.name} = {entry.value}  {entry.verdict}{step}")
    return 0


def cmd_vp(args) -> int:
    q = _load_quartic(args)
    tag, _ = classify(q)
    verdicts = enumerate_vp(q, max_a=args.max_a, max_b=args.max_b, tag=tag)
    if args.links_only:
        verdicts = sarkisov_filter(verdicts)
    if args.json:
        print(
            json.dumps(
                {
                    "type": tag.to_json(),
                    "verdicts": [v.to_json() for v in verdicts],
                },
                indent=2,
            )
        )
    else:
        print(f"singularity type: {tag.label()}")
        vp = [v for v in verdicts if v.vp]
        print("volume preserving weights:", ", ".join(str(v.weights) for v in vp) or "none")
        if not args.links_only:
            links = [v for v in vp if v.initiates_link]
            print("initiating Sarkisov links:", ", ".join(str(v.weights) for v in links) or "none")
    return 0


def cmd_check(args) -> int:
    q = _load_quartic(args)
    parts = [int(x) for x in args.weights.replace(",", ":").split(":")]
    if len(parts) == 3:
        if parts[0] != 1:
            raise GeometryError("weights must be of the form 1,a,b")
        parts = parts[1:]
    a, b = sorted(parts)
    verdict = analyze_weight(q, a, b)
    if args.json:
        data = verdict.to_json()
        data["traces"] = [r.trace.to_json() for r in verdict.results]
        print(json.dumps(data, indent=2))
    else:
        print(f"weights {verdict.weights}: {'volume preserving' if verdict.vp else 'not volume preserving'}")
        for r in verdict.results:
            steps = ", ".join(
                f"{s.ray}{'+' if s.vp else '-'}" for s in r.trace.steps
            )
            print(f"  assignment {r.assignment}: discrepancy {r.discrepancy};  {steps}")
        if verdict.vp:
            print("initiates a Sarkisov link" if verdict.initiates_link else "does not initiate a Sarkisov link")
    return 0


def cmd_generate(args) -> int:
    from .generator import GenSpec, corpus, corpus_jsonl, generate

    if args.corpus:
        items = corpus(seed=args.seed)
        sys.stdout.write(corpus_jsonl(items))
        return 0
    if not args.type:
        raise ValueError("--type is required unless --corpus is given")
    family = args.type[0].upper()
    index = int(args.type.rstrip("+")[1:])
    exact = not args.type.endswith("+")
    target = TypeTag(family, index, exact=exact)
    mode = "generic"
    if args.specialize:
        mode = tuple(int(x) for x in args.specialize.replace(",", ":").split(":"))
    q = generate(GenSpec(target, mode, args.seed))
    if args.json:
        print(json.dumps(q.to_json(), indent=2))
    else:
        print(format_poly(q.full_equation()))
    return 0


def cmd_tables(args) -> int:
    from .tables import claimed_tables, computed_tables, diff_tables, tables_to_json

    claimed = claimed_tables()
    computed = computed_tables(args.seed)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "claimed_tables.json").write_text(tables_to_json(claimed))
        (out / "computed_tables.json").write_text(tables_to_json(computed))
    problems = diff_tables(claimed, computed)
    if problems:
        print("table mismatches:")
        for p in problems:
            print(f"  {p}")
        return EXIT_TABLES
    print("all tables reproduced")
    return 0


def cmd_selftest(args) -> int:
    from . import selftest

    report = selftest.run(seed=args.seed, quick=args.quick)
    for line in report.lines:
        print(line)
    if report.failures:
        print(f"FAILED: {report.failures} problem(s)")
        return EXIT_CONSISTENCY
    print(f"all {report.checks} checks passed")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quarticvp",
        description=(
            "Classify canonical double points of quartic surfaces and decide "
            "which toric weighted blowups are volume preserving"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_input(p):
        p.add_argument("input", help="quartic file in the polynomial grammar, or - for stdin")
        p.add_argument("--point", help="marked point p0:p1:p2:p3 (default 1:0:0:0)")
        p.add_argument("--json", action="store_true", help="emit JSON")

    p = sub.add_parser("classify", help="ADE type of the marked double point")
    add_input(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("vp", help="enumerate volume-preserving weight triples")
    add_input(p)
    p.add_argument("--max-a", type=int, default=None)
    p.add_argument("--max-b", type=int, default=12)
    p.add_argument("--links-only", action="store_true")
    p.set_defaults(func=cmd_vp)

    p = sub.add_parser("check", help="analyze a single weight triple")
    add_input(p)
    p.add_argument("--weights", required=True, help="e.g. 1,2,3")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("generate", help="emit a witness quartic")
    p.add_argument("--type", help="e.g. A4, D7, E8, A8+ for A>=8")
    p.add_argument("--specialize", help="weight triple, e.g. 1,2,3")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--corpus", action="store_true", help="emit the whole corpus as JSON lines")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("tables", help="recompute the result tables and compare")
    p.add_argument("--out", help="directory for the table files")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("selftest", help="run the invariant suites")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--quick", action="store_true", help="smaller sample sizes")
    p.set_defaults(func=cmd_selftest)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (PolyParseError, ValueError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (GeometryError, GenerationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GEOMETRY
    except FieldExtensionRequired as exc:
        print(f"field extension required: {exc}", file=sys.stderr)
        return EXIT_FIELD
    except ConsistencyViolation as exc:
        print(f"consistency violation: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY


if __name__ == "__main__":
    sys.exit(main())
