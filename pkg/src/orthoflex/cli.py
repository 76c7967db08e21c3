"""Command-line driver: check instances, run the solvers or the exhaustive
oracle, generate gadget instances, and emit JSON results plus SVG drawings.

Exit codes: 0 feasible/optimal, 1 infeasible, 2 input or mode errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace

from . import io as instance_io
from .drawing import check_drawing, realize, to_svg
from .gadgets import amplify, bend_gadget_b12, reduce_flex, w3_prime, wheel_w4
from .model import validate_instance
from .oracle import (BudgetExceeded, EnumerationBudget, enumerate_reps,
                     oracle_optimal)
from .ortho import rep_cost
from .solve import (Solution, solve_fixed_embedding, solve_flexdraw_fpt,
                    solve_optimal, solve_sp_optimal)

EXIT_OK = 0
EXIT_INFEASIBLE = 1
EXIT_ERROR = 2


def _emit(payload: dict, json_out: str | None):
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    sys.stdout.write(text)
    if json_out:
        with open(json_out, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_check(args) -> int:
    inst = instance_io.load_instance(args.file)
    report = validate_instance(inst)
    _emit({"valid": not report, "problems": report}, args.json_out)
    return EXIT_OK if not report else EXIT_ERROR


def cmd_solve(args) -> int:
    inst = instance_io.load_instance(args.file)
    report = validate_instance(inst)
    if report:
        _emit({"status": "invalid", "problems": report}, args.json_out)
        return EXIT_ERROR
    if args.bend_cap is not None:
        inst = replace(inst, bend_cap_override=args.bend_cap)
    try:
        if args.mode == "flexdraw":
            sol = solve_flexdraw_fpt(inst)
        elif args.mode == "optimal":
            sol = solve_optimal(inst)
        elif args.mode == "sp-optimal":
            sol = solve_sp_optimal(inst)
        else:
            sol = solve_fixed_embedding(inst)
    except ValueError as exc:
        _emit({"status": "error", "message": str(exc)}, args.json_out)
        return EXIT_ERROR
    payload = sol.to_json_dict()
    payload["mode"] = args.mode
    payload["seed"] = args.seed
    if sol.witness is not None and args.svg:
        drawing = realize(sol.witness)
        problems = check_drawing(drawing, sol.witness)
        if problems:
            raise AssertionError(f"drawing check failed: {problems}")
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(to_svg(drawing))
        payload["svg"] = args.svg
    _emit(payload, args.json_out)
    return EXIT_OK if sol.feasible else EXIT_INFEASIBLE


def cmd_gen(args) -> int:
    if args.gadget == "w4":
        gi = wheel_w4()
    elif args.gadget == "b12":
        gi = bend_gadget_b12()
    else:
        gi = w3_prime()
    inst = gi.instance
    if args.reduce_flex:
        inst = reduce_flex(inst)
    if args.amplify:
        inst = amplify(inst, args.amplify)
    sys.stdout.write(instance_io.dump_instance(inst))
    return EXIT_OK


def cmd_oracle(args) -> int:
    inst = instance_io.load_instance(args.file)
    report = validate_instance(inst)
    if report:
        _emit({"status": "invalid", "problems": report}, args.json_out)
        return EXIT_ERROR
    budget = EnumerationBudget(max_vertices=args.budget)
    try:
        count = 0
        best = float("inf")
        for rep in enumerate_reps(inst, budget):
            count += 1
            best = min(best, rep_cost(rep, inst))
        payload = {
            "representations": count,
            "feasible": count > 0 and best < float("inf"),
            "optimal_cost": None if best == float("inf") else best,
        }
    except BudgetExceeded as exc:
        _emit({"status": "budget-exceeded", "message": str(exc)}, args.json_out)
        return EXIT_ERROR
    _emit(payload, args.json_out)
    return EXIT_OK if payload["feasible"] else EXIT_INFEASIBLE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="orthoflex",
        description="Bend-constrained orthogonal drawing over all planar "
                    "embeddings: feasibility, cost optimization, drawings.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="validate an instance file")
    c.add_argument("file")
    c.add_argument("--json-out")
    c.set_defaults(fn=cmd_check)

    s = sub.add_parser("solve", help="run a solver")
    s.add_argument("file")
    s.add_argument("--mode", default="flexdraw",
                   choices=["flexdraw", "optimal", "sp-optimal",
                            "fixed-embedding"])
    s.add_argument("--svg", help="write the witness drawing here")
    s.add_argument("--json-out")
    s.add_argument("--bend-cap", type=int)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(fn=cmd_solve)

    g = sub.add_parser("gen", help="emit a gadget instance")
    g.add_argument("gadget", choices=["w4", "b12", "w3prime"])
    g.add_argument("--reduce-flex", action="store_true")
    g.add_argument("--amplify", type=int, default=0, metavar="R")
    g.set_defaults(fn=cmd_gen)

    o = sub.add_parser("oracle", help="exhaustive enumeration report")
    o.add_argument("file")
    o.add_argument("--budget", type=int, default=8,
                   help="vertex budget for enumeration")
    o.add_argument("--json-out")
    o.set_defaults(fn=cmd_oracle)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except FileNotFoundError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_ERROR
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
