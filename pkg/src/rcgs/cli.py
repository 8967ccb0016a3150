"""Command-line front end.

Exit codes: 0 query holds at the initial state (or success), 1 query fails
at the initial state (or ``equiv`` found a mismatch), 2 usage, parse or
validation error, 3 enumeration bound exceeded.
"""
from __future__ import annotations

import argparse
import os
import random
import sys

from rcgs import checker, kernels
from rcgs.cgs import cgs_mcheck, translate
from rcgs.errors import ResourceLimit, RcgsError
from rcgs.formula import parse_formula, random_formula, render_formula
from rcgs.generators import GenParams, gen_h1, gen_h2, gen_h3, gen_random
from rcgs.modelfile import read_model, write_cgs, write_model
from rcgs.sizing import model_size

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3


def _default_limit() -> int:
    raw = os.environ.get("RCGS_LIMIT")
    if raw is None:
        return checker.DEFAULT_LIMIT
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"RCGS_LIMIT must be an integer, got {raw!r}") from None


def _load(path: str):
    with open(path) as fh:
        return read_model(fh.read())


def _ordered(model, states) -> str:
    return " ".join(q for q in model.states if q in states)


def _emit(text: str, out_path: str | None) -> None:
    if out_path is None or out_path == "-":
        sys.stdout.write(text)
    else:
        with open(out_path, "w") as fh:
            fh.write(text)


def cmd_check(args) -> int:
    model = _load(args.model)
    phi = parse_formula(args.formula)
    sat, stats = checker.mcheck(model, phi, short_circuit=not args.no_short_circuit,
                                backend=args.backend)
    print(_ordered(model, sat))
    if args.stats:
        print(f"transitions_inspected={stats.transitions_inspected}")
        print(f"fixpoint_iterations={stats.fixpoint_iterations}")
    return EXIT_OK if model.initial in sat else EXIT_FAIL


def cmd_translate(args) -> int:
    model = _load(args.model)
    _emit(write_cgs(translate(model), limit=args.limit), args.output)
    return EXIT_OK


def cmd_size(args) -> int:
    report = model_size(_load(args.model))
    sys.stdout.write(report.to_csv() if args.csv else report.to_text())
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.kind == "h1":
        model = gen_h1(args.n, args.k)
    elif args.kind == "h2":
        model = gen_h2(args.n, args.k)
    elif args.kind == "h3":
        model = gen_h3(args.n1, args.n2, args.t1, args.t2)
    else:
        model = gen_random(GenParams(args.seed, args.max_states, args.max_agents,
                                     args.max_roles, args.max_actions, args.guard_density))
    _emit(write_model(model), args.output)
    return EXIT_OK


def cmd_equiv(args) -> int:
    mismatches = 0
    for seed in range(args.start_seed, args.start_seed + args.seeds):
        model = gen_random(GenParams(seed, args.max_states, args.max_agents,
                                     args.max_roles, args.max_actions))
        cgs = translate(model)
        rng = random.Random(seed)
        for _ in range(args.formulas):
            phi = random_formula(rng, model.props, model.agent_count, args.depth)
            ours, _ = checker.mcheck(model, phi, backend=args.backend)
            theirs, _ = cgs_mcheck(cgs, phi, limit=args.limit)
            if ours != theirs:
                mismatches += 1
                print(f"counterexample: seed={seed} formula={render_formula(phi)} "
                      f"rcgs=[{_ordered(model, ours)}] cgs=[{_ordered(model, theirs)}]")
    total = args.seeds * args.formulas
    if mismatches:
        print(f"{mismatches} of {total} checks disagree")
        return EXIT_FAIL
    print(f"{total} checks over {args.seeds} models agree")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--stats", action="store_true", help="print inspection counters")
    common.add_argument("--no-short-circuit", action="store_true",
                        help="visit every (profile, extension) pair in enforce")
    common.add_argument("--csv", action="store_true", help="comma-separated output where supported")
    common.add_argument("--limit", type=int, default=_default_limit(),
                        help="bound on enumerated tuples/strategies (env RCGS_LIMIT)")
    common.add_argument("--backend", choices=sorted(kernels.BACKENDS), default=None,
                        help=f"enforce kernel (default {kernels.BACKEND})")

    parser = argparse.ArgumentParser(prog="rcgs", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="states satisfying an ATL formula")
    p.add_argument("model")
    p.add_argument("formula")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("translate", parents=[common], help="export the role-free CGS")
    p.add_argument("model")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("size", parents=[common], help="RCGS vs CGS size report")
    p.add_argument("model")
    p.set_defaults(func=cmd_size)

    p = sub.add_parser("gen", parents=[common], help="write a generated model")
    p.add_argument("kind", choices=["h1", "h2", "h3", "random"])
    p.add_argument("--n", type=int, default=5)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--n1", type=int, default=3)
    p.add_argument("--n2", type=int, default=2)
    p.add_argument("--t1", type=int, default=2)
    p.add_argument("--t2", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-states", type=int, default=4)
    p.add_argument("--max-agents", type=int, default=5)
    p.add_argument("--max-roles", type=int, default=2)
    p.add_argument("--max-actions", type=int, default=3)
    p.add_argument("--guard-density", type=float, default=0.6)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("equiv", parents=[common],
                       help="differential run: RCGS checker vs CGS checker on random models")
    p.add_argument("--seeds", type=int, default=200)
    p.add_argument("--start-seed", type=int, default=1)
    p.add_argument("--formulas", type=int, default=20)
    p.add_argument("--depth", type=int, default=2)
    p.add_argument("--max-states", type=int, default=4)
    p.add_argument("--max-agents", type=int, default=5)
    p.add_argument("--max-roles", type=int, default=2)
    p.add_argument("--max-actions", type=int, default=3)
    p.set_defaults(func=cmd_equiv)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ResourceLimit as exc:
        print(f"rcgs: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (RcgsError, OSError) as exc:
        print(f"rcgs: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
