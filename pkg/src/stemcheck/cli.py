"""Command line surface.

Commands:
  check      run the tree engine (and/or the brute-force checker) on a model
  enumerate  dump the executions and traces of a model
  oracle     exhaustive Full/Partial/NonCompliant classification
  gen        emit a seeded random model and obligation pair
  bench      engine-vs-oracle scaling demonstration on a large balanced model

Exit codes for check: 0 fully compliant, 1 not fully compliant, 2 error,
3 engine/oracle divergence (mode both only).
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import io as docio
from .engine import attach_witnesses, check_full_compliance
from .generate import (
    GeneratorParams,
    generate_balanced_model,
    generate_random_model,
    generate_random_obligations,
)
from .model import DEFAULT_EXECUTION_BUDGET, ExecutionBudgetExceeded, ModelError, compute_trace, enumerate_executions
from .oracle import ComplianceLevel, classify_process_compliance


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="stemcheck", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="check full compliance of a model against obligations")
    p_check.add_argument("model", help="model JSON file")
    p_check.add_argument("obligations", help="obligations JSON file")
    p_check.add_argument("--mode", choices=("engine", "oracle", "both"), default="engine")
    p_check.add_argument("--format", choices=("text", "machine"), default="text")
    p_check.add_argument("--budget", type=int, default=DEFAULT_EXECUTION_BUDGET,
                         help="execution budget for oracle runs and witness search")
    p_check.add_argument("--no-early-exit", action="store_true",
                         help="disable early termination during stem walks")
    p_check.set_defaults(func=cmd_check)

    p_enum = sub.add_parser("enumerate", help="dump executions and traces")
    p_enum.add_argument("model")
    p_enum.add_argument("--budget", type=int, default=DEFAULT_EXECUTION_BUDGET)
    p_enum.add_argument("--format", choices=("text", "machine"), default="text")
    p_enum.set_defaults(func=cmd_enumerate)

    p_oracle = sub.add_parser("oracle", help="exhaustive compliance classification")
    p_oracle.add_argument("model")
    p_oracle.add_argument("obligations")
    p_oracle.add_argument("--budget", type=int, default=DEFAULT_EXECUTION_BUDGET)
    p_oracle.add_argument("--format", choices=("text", "machine"), default="text")
    p_oracle.set_defaults(func=cmd_oracle)

    p_gen = sub.add_parser("gen", help="generate a seeded random model and obligations")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--max-tasks", type=int, default=8)
    p_gen.add_argument("--max-depth", type=int, default=3)
    p_gen.add_argument("--atoms", type=int, default=4)
    p_gen.add_argument("--model-out", default=None, help="write the model here (default stdout)")
    p_gen.add_argument("--obligations-out", default=None)
    p_gen.set_defaults(func=cmd_gen)

    p_bench = sub.add_parser("bench", help="engine scaling vs the exhaustive baseline")
    p_bench.add_argument("--tasks", type=int, default=10_000)
    p_bench.add_argument("--budget", type=int, default=DEFAULT_EXECUTION_BUDGET)
    p_bench.set_defaults(func=cmd_bench)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ModelError, docio.DocumentError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def cmd_check(args) -> int:
    model = docio.parse_model_file(_read(args.model))
    obligations = docio.parse_obligations_file(_read(args.obligations))

    engine_report = None
    oracle_verdict = None
    if args.mode in ("engine", "both"):
        engine_report = check_full_compliance(model, obligations, early_exit=not args.no_early_exit)
        attach_witnesses(engine_report, model, args.budget)
    if args.mode in ("oracle", "both"):
        oracle_verdict = classify_process_compliance(model, obligations, args.budget)

    if args.mode == "both":
        engine_full = engine_report.fully_compliant
        oracle_full = oracle_verdict.level is ComplianceLevel.FULL
        if engine_full != oracle_full:
            print("divergence: engine and oracle disagree on full compliance", file=sys.stderr)
            return 3

    if engine_report is not None:
        if args.format == "machine":
            from .tree import build_tree

            counters = {
                "nodes": build_tree(model).node_count(),
                "aggregations": engine_report.total_aggregations(),
                "trigger_leaves": sum(
                    len(c.evaluations)
                    for ob in engine_report.obligations
                    for c in ob.constraints
                ),
            }
            print(json.dumps(docio.report_to_doc(engine_report, counters), indent=2))
        else:
            print(docio.report_to_text(engine_report))
        return 0 if engine_report.fully_compliant else 1

    full = oracle_verdict.level is ComplianceLevel.FULL
    if args.format == "machine":
        print(json.dumps({"verdict": oracle_verdict.level.value}, indent=2))
    else:
        print(f"oracle verdict: {oracle_verdict.level.value}")
    return 0 if full else 1


def cmd_enumerate(args) -> int:
    model = docio.parse_model_file(_read(args.model))
    executions = enumerate_executions(model.root, args.budget)
    rows = []
    for exe in executions:
        trace = compute_trace(model, exe)
        rows.append({
            "execution": list(exe),
            "states": [sorted(str(lit) for lit in state) for state in trace.states],
        })
    if args.format == "machine":
        print(json.dumps(rows, indent=2))
    else:
        for row in rows:
            steps = ", ".join(
                f"({tid}, {{{','.join(state)}}})"
                for tid, state in zip(row["execution"], row["states"])
            )
            print(f"({', '.join(row['execution'])})  |  {steps}")
    return 0


def cmd_oracle(args) -> int:
    model = docio.parse_model_file(_read(args.model))
    obligations = docio.parse_obligations_file(_read(args.obligations))
    verdict = classify_process_compliance(model, obligations, args.budget)
    out = {"verdict": verdict.level.value}
    if verdict.compliant_witness:
        out["compliant_witness"] = list(verdict.compliant_witness)
    if verdict.violating_witness:
        ob, exe = verdict.violating_witness
        out["violating_witness"] = {"obligation": docio.obligation_to_doc(ob), "execution": list(exe)}
    if args.format == "machine":
        print(json.dumps(out, indent=2))
    else:
        print(f"oracle verdict: {verdict.level.value}")
        if verdict.violating_witness:
            ob, exe = verdict.violating_witness
            print(f"  violating: {ob} on {' -> '.join(exe)}")
        if verdict.compliant_witness:
            print(f"  compliant: {' -> '.join(verdict.compliant_witness)}")
    return 0 if verdict.level is ComplianceLevel.FULL else 1


def cmd_gen(args) -> int:
    params = GeneratorParams(max_tasks=args.max_tasks, max_depth=args.max_depth, atom_count=args.atoms)
    model = generate_random_model(args.seed, params)
    obligations = generate_random_obligations(args.seed, params)
    model_json = docio.model_to_json(model)
    obligations_json = docio.obligations_to_json(obligations)
    if args.model_out:
        with open(args.model_out, "w", encoding="utf-8") as fh:
            fh.write(model_json + "\n")
    else:
        print(model_json)
    if args.obligations_out:
        with open(args.obligations_out, "w", encoding="utf-8") as fh:
            fh.write(obligations_json + "\n")
    elif not args.model_out:
        print(obligations_json)
    return 0


def cmd_bench(args) -> int:
    model, obligation = generate_balanced_model(args.tasks)
    t0 = time.perf_counter()
    report = check_full_compliance(model, [obligation])
    engine_s = time.perf_counter() - t0
    print(f"engine: {args.tasks} tasks, verdict {report.verdict}, "
          f"{report.total_aggregations()} aggregations, {engine_s:.2f}s")
    t0 = time.perf_counter()
    try:
        classify_process_compliance(model, [obligation], args.budget)
        print(f"oracle: completed in {time.perf_counter() - t0:.2f}s")
    except ExecutionBudgetExceeded as exc:
        print(f"oracle: execution budget exceeded ({exc}) after {time.perf_counter() - t0:.2f}s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
