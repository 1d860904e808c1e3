"""Command line front end.

Subcommands: sup and scl run one engine each, simulate runs both in
lockstep with the verifier, oracle brute-forces the verdict, check
validates a problem file, gen prints a random problem, fuzz runs a whole
verification campaign. Exit codes: 0 satisfiable, 1 unsatisfiable, 2 for
errors, defects, and strict-mode verification failures.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from .core import ParseError, Problem, parse_problem, print_problem
from .harness import (
    GenParams,
    brute_force_sat,
    emit_trace,
    fuzz_campaign,
    random_problem,
)
from .ordering import ProblemOrder, validate_ordering
from .scl import RuleError
from .simulation import SimulationError, lockstep_verify, run_scl_sup
from .superposition import SATISFIABLE, UNSATISFIABLE, run_sup_mo


class CliError(Exception):
    pass


def _load(path: str) -> Problem:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise CliError(e)
    try:
        return parse_problem(text)
    except ParseError as e:
        raise CliError(e)


def _verdict_exit(outcome: str) -> int:
    if outcome == SATISFIABLE:
        return 0
    if outcome == UNSATISFIABLE:
        return 1
    return 2


def _print_model(model) -> None:
    print("model: {" + ", ".join(sorted(a.text for a in model)) + "}")


def _cmd_sup(args) -> int:
    problem = _load(args.file)
    run = run_sup_mo(problem, max_steps=args.max_steps)
    for c in run.snapshots[0].clauses:
        print(f"input: {c}")
    for n, step in enumerate(run.steps, 1):
        if step.side is not None:
            print(f"step {n}: {step.kind}: {step.main} with {step.side} "
                  f"on {step.pivot} => {step.conclusion}")
        else:
            print(f"step {n}: {step.kind}: {step.main} => {step.conclusion}")
    print(f"verdict: {run.outcome}")
    if run.model is not None:
        _print_model(run.model)
    if run.outcome not in (SATISFIABLE, UNSATISFIABLE):
        print("error: step cap exceeded", file=sys.stderr)
    return _verdict_exit(run.outcome)


def _cmd_scl(args) -> int:
    problem = _load(args.file)
    run = run_scl_sup(problem, max_sequences=args.max_rounds)
    for app in run.apps:
        print(app.render())
    for c in run.final_state.u:
        print(f"learned: {c}")
    print(f"verdict: {run.outcome}")
    if run.model is not None:
        _print_model(run.model)
    if run.outcome not in (SATISFIABLE, UNSATISFIABLE):
        print("error: round cap exceeded", file=sys.stderr)
    return _verdict_exit(run.outcome)


def _cmd_simulate(args) -> int:
    problem = _load(args.file)
    if args.json:
        trace = emit_trace(problem, max_sequences=args.max_rounds)
        print(json.dumps(trace, indent=2))
        code = _verdict_exit(trace["outcome"])
        if args.strict and not trace["ok"]:
            return 2
        return code

    result = lockstep_verify(problem, max_sequences=args.max_rounds)
    for i, seq in enumerate(result.sim.seqs):
        attention = f" attention={seq.attention}" if seq.attention is not None else ""
        print(f"round {i}: {seq.kind}{attention} pair_index={seq.annotation.index}")
    if result.ok:
        print(f"verification: ok ({len(result.boundaries)} boundaries checked)")
    else:
        print("verification: FAILED")
        for line in result.failures():
            print(f"  {line}", file=sys.stderr)
    print(f"verdict: {result.sim.outcome}")
    if result.sim.model is not None:
        _print_model(result.sim.model)
    code = _verdict_exit(result.sim.outcome)
    if args.strict and not result.ok:
        return 2
    return code


def _cmd_oracle(args) -> int:
    problem = _load(args.file)
    try:
        model = brute_force_sat(problem.clauses.clauses())
    except ValueError as e:
        raise CliError(e)
    if model is None:
        print("verdict: unsatisfiable")
        return 1
    print("verdict: satisfiable")
    _print_model(model)
    return 0


def _cmd_check(args) -> int:
    problem = _load(args.file)
    issues = validate_ordering(problem)
    if issues:
        for issue in issues:
            print(f"error: {issue}", file=sys.stderr)
        return 2
    order = ProblemOrder(problem)
    print(f"ok: {len(problem.clauses.clauses())} clauses, "
          f"{len(order.atoms_ascending)} atoms, {problem.ordering.kind} order")
    return 0


def _gen_params(args) -> GenParams:
    return GenParams(
        preds=tuple(args.preds.split(",")),
        consts=tuple(args.consts.split(",")),
        max_arity=args.max_arity,
        clause_count=args.clauses,
        max_len=args.max_len,
        seed=args.seed,
        allow_tautologies=args.allow_tautologies,
    )


def _cmd_gen(args) -> int:
    try:
        text = print_problem(random_problem(_gen_params(args)))
    except ValueError as e:
        raise CliError(e)
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as e:
            raise CliError(e)
    else:
        print(text, end="")
    return 0


def _cmd_fuzz(args) -> int:
    report = fuzz_campaign(args.count, base_seed=args.seed,
                           params=_gen_params(args),
                           max_sequences=args.max_rounds)
    if args.json:
        print(json.dumps({
            "total": report.total,
            "ok": report.ok,
            "failures": [[seed, msgs] for seed, msgs in report.failures],
        }, indent=2))
    elif report.ok:
        print(f"{report.total} instances, all agreed and verified")
    else:
        print(f"{report.total} instances, {len(report.failures)} with failures")
        for seed, msgs in report.failures:
            for m in msgs:
                print(f"  seed {seed}: {m}", file=sys.stderr)
    return 0 if report.ok else 2


def _add_gen_flags(sub) -> None:
    sub.add_argument("--preds", default="P,Q,R", help="comma-separated predicate names")
    sub.add_argument("--consts", default="a,b", help="comma-separated constant names")
    sub.add_argument("--max-arity", type=int, default=1)
    sub.add_argument("--clauses", type=int, default=6, help="maximum clause count")
    sub.add_argument("--max-len", type=int, default=4, help="maximum clause length")
    sub.add_argument("--allow-tautologies", action="store_true")


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lockstep",
        description="Ground reasoning workbench: a saturation engine and a "
                    "trail engine that can be run separately or verified in "
                    "lockstep against each other.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sup", help="run the saturation engine on a problem file")
    p.add_argument("file")
    p.add_argument("--max-steps", type=int, default=10000)
    p.set_defaults(fn=_cmd_sup)

    p = sub.add_parser("scl", help="run the trail engine on a problem file")
    p.add_argument("file")
    p.add_argument("--max-rounds", type=int, default=10000)
    p.set_defaults(fn=_cmd_scl)

    p = sub.add_parser("simulate", help="run both engines in lockstep and verify")
    p.add_argument("file")
    p.add_argument("--strict", action="store_true",
                   help="exit 2 when any verification check fails")
    p.add_argument("--json", action="store_true", help="emit the full trace as JSON")
    p.add_argument("--max-rounds", type=int, default=10000)
    p.set_defaults(fn=_cmd_simulate)

    p = sub.add_parser("oracle", help="brute-force the verdict, no calculi involved")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_oracle)

    p = sub.add_parser("check", help="validate a problem file and its ordering")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_check)

    p = sub.add_parser("gen", help="generate a random problem")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", help="write to a file instead of stdout")
    _add_gen_flags(p)
    p.set_defaults(fn=_cmd_gen)

    p = sub.add_parser("fuzz", help="generate many problems and verify each")
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0, help="seed of the first instance")
    p.add_argument("--json", action="store_true")
    p.add_argument("--max-rounds", type=int, default=10000)
    _add_gen_flags(p)
    p.set_defaults(fn=_cmd_fuzz)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.fn(args)
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (RuleError, RuntimeError, SimulationError) as e:
        print(f"error: engine defect: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
