"""``ptca`` command line: run scenarios, inspect traces, compare with goldens.

Exit codes: 0 success or golden match, 1 golden mismatch, 2 usage or
parse error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import yaml

from .engine.evolution import StepError
from .logic.syntax import format_state
from .report import (
    class_note,
    compare,
    describe_why,
    divergence_markdown,
    dump_snapshot,
    golden_document,
    load_golden,
    run_scenario,
)
from .scenario import BUILTINS, ScenarioError, builtin_descriptions, format_coord, load_scenario, parse_coord

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


def _cycle_text(report) -> str:
    cyc = report.cycle
    if cyc is None:
        return f"no recurrence within {report.analysis.horizon} steps"
    kind = "fixpoint" if cyc.period == 1 else "recurrence"
    return f"{kind} from t={cyc.start} (start={cyc.start}, period={cyc.period})"


def cmd_run(args) -> int:
    scen = load_scenario(args.scenario)
    report = run_scenario(scen, args.steps, early_stop=True)
    snaps = report.snapshots()
    if args.snapshots == "last":
        snaps = snaps[-1:]
    if args.format == "structured":
        doc = golden_document(report, [c.time for c in snaps])
        sys.stdout.write(yaml.safe_dump(doc, sort_keys=False, allow_unicode=True, width=1000))
        return EXIT_OK
    for i, c in enumerate(snaps):
        if i:
            print()
        print(f"t={c.time}")
        sys.stdout.write(dump_snapshot(c, "grid"))
        if args.explain and c.time < report.horizon:
            for p, why in sorted(report.rule_table()[c.time].items()):
                print(f"  {format_coord(p)}: {why}")
    return EXIT_OK


def cmd_trace(args) -> int:
    scen = load_scenario(args.scenario)
    try:
        z = parse_coord(args.cell, scen.dimension)
    except ValueError as exc:
        raise ScenarioError(str(exc), field="--cell") from None
    if z not in scen.region:
        raise ScenarioError("cell outside the region", field="--cell", cell=args.cell)
    report = run_scenario(scen, args.steps, early_stop=True)
    tr = report.trace(z)
    print(f"cell {format_coord(z)} of {scen.name}")
    for t, s in enumerate(tr.states):
        why = ""
        if t > 0:
            why = describe_why(report.evolution.rule_traces[t - 1].get(z))
        print(f"  t={t}  {format_state(s)}" + (f"    [{why}]" if why and why != "-" else ""))
    print("states: " + ", ".join(format_state(s) for s in tr.states))
    cls = report.classes[z]
    note = class_note(cls)
    print(f"class: {cls}" + (f" ({note})" if note else ""))
    print(f"global: {_cycle_text(report)}")
    return EXIT_OK


def cmd_classify(args) -> int:
    scen = load_scenario(args.scenario)
    report = run_scenario(scen, args.steps, early_stop=True)
    print(f"scenario: {scen.name} (horizon {report.horizon}, equality {scen.equality.value})")
    print(f"global: {_cycle_text(report)}")
    finite = 0
    for z, cls in report.classes.items():
        note = class_note(cls)
        finite += bool(note)
        print(f"  {format_coord(z)}: {cls}" + (f" ({note})" if note else ""))
    if finite:
        print(f"note: {finite} cell(s) are eventually constant without being circular from t=0")
    print(f"verdict: {report.verdict}")
    return EXIT_OK


def cmd_diff(args) -> int:
    scen = load_scenario(args.scenario)
    golden = load_golden(args.golden, scen)
    report = run_scenario(scen, max(scen.horizon, golden.last_time))
    if args.report:
        Path(args.report).write_text(divergence_markdown(report, golden), encoding="utf-8")
    diffs = compare(report, golden)
    if diffs:
        print(f"MISMATCH at t={diffs[0].time}: {len(diffs)} cell(s) differ")
        for d in diffs:
            print(f"  {d}")
        return EXIT_MISMATCH
    print(f"OK: {len(golden.snapshots)} snapshot(s) match ({scen.equality.value} equality)")
    return EXIT_OK


def cmd_scenarios(args) -> int:
    width = max(len(n) for n in BUILTINS)
    for name, desc in builtin_descriptions():
        print(f"{name.ljust(width)}  {desc}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ptca", description="Proof-theoretic cellular automata simulator.")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="evolve a scenario and print snapshots")
    r.add_argument("scenario", help="scenario file or built-in name")
    r.add_argument("--steps", type=int, default=None, help="override the scenario horizon")
    r.add_argument("--snapshots", choices=("all", "last"), default="all")
    r.add_argument("--format", choices=("grid", "structured"), default="grid")
    r.add_argument("--explain", action="store_true", help="list the rules that fired after each grid")
    r.set_defaults(func=cmd_run)

    t = sub.add_parser("trace", help="print one cell's derivation trace and its class")
    t.add_argument("scenario")
    t.add_argument("--cell", required=True, help="coordinate, e.g. 1,1")
    t.add_argument("--steps", type=int, default=None)
    t.set_defaults(func=cmd_trace)

    c = sub.add_parser("classify", help="classify every trace and decide reversibility")
    c.add_argument("scenario")
    c.add_argument("--steps", type=int, default=None)
    c.set_defaults(func=cmd_classify)

    d = sub.add_parser("diff", help="compare a run with a golden file")
    d.add_argument("scenario")
    d.add_argument("golden", help="golden file or built-in golden name")
    d.add_argument("--report", metavar="PATH", help="also write a per-cell Markdown comparison")
    d.set_defaults(func=cmd_diff)

    s = sub.add_parser("scenarios", help="list built-in scenarios")
    s.set_defaults(func=cmd_scenarios)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "steps", None) is not None and args.steps < 0:
        parser.error("--steps must be non-negative")
    try:
        return args.func(args)
    except ScenarioError as exc:
        print(f"ptca: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except StepError as exc:
        print(f"ptca: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
