"""Command-line front end.

::

    wesat solve problem.eq                 # iterative deepening (default)
    wesat solve --mode fixed --bound X=8 problem.eq
    wesat oracle --enumerate --default-bound 1 problem.eq
    wesat encode --out problem.cnf --map problem.map problem.eq
    wesat generate --track 1 --seed 7 --count 10 --out-dir bench/

A bare file argument means ``solve``.  Exit codes: 10 SAT, 20 UNSAT,
0 UNKNOWN or success without a verdict, 1 usage, parse or input errors.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import benchgen
from .automaton import EquationAutomaton, brute_force_solve, enumerate_solutions
from .core import SoundnessError, WordEquationError
from .driver import (SAT, UNSAT, SolverConfig, build_mdds, fixed_bounds, format_result,
                     format_stats, solve_system)
from .encoder import encode_system
from .problem import parse_problem
from .sat import write_dimacs

EXIT = {SAT: 10, UNSAT: 20}
COMMANDS = ("solve", "oracle", "encode", "generate")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _bound(text: str) -> tuple[str, int]:
    name, sep, value = text.partition("=")
    if not sep or not value.isdigit() or not name:
        raise argparse.ArgumentTypeError(f"expected VAR=N, got {text!r}")
    return name, int(value)


def _add_bounds(p):
    p.add_argument("problem", help="problem file")
    p.add_argument("--bound", "-b", action="append", type=_bound, default=[], metavar="VAR=N",
                   help="per-variable bound (repeatable); fixed across iterations")
    p.add_argument("--default-bound", type=int, default=3, metavar="N",
                   help="bound for variables without one in fixed mode (default 3)")


def _build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="wesat", description="Bounded word-equation solver")
    ap.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("solve", help="run the solving pipeline")
    _add_bounds(p)
    p.add_argument("--mode", choices=("iterative", "fixed"), default="iterative")
    p.add_argument("--max-iterations", type=int)
    p.add_argument("--ceiling", type=int, default=128, help="hard cap on iterations (default 128)")
    p.add_argument("--full-cap", action="store_true", help="iterate up to 2^n, no ceiling")
    p.add_argument("--no-preprocess", action="store_true")
    p.add_argument("--no-refine", action="store_true")
    p.add_argument("--no-mdd", action="store_true", help="skip length-abstraction MDDs")
    p.add_argument("--no-parikh", action="store_true")
    p.add_argument("--no-fold", action="store_true", help="keep constant letters as variables")
    p.add_argument("--time-limit", type=float)
    p.add_argument("--dimacs", metavar="PATH", help="also write the CNF")
    p.add_argument("--map", metavar="PATH", help="also write the variable map")
    p.add_argument("--dot-dir", metavar="DIR", help="write MDDs as DOT files")
    p.add_argument("--external-model", metavar="PATH",
                   help="read a solver's s/v output instead of solving (fixed mode)")
    p.add_argument("--external-solver", metavar="CMD",
                   help="solve with CMD <file.cnf> instead of the built-in solver")
    p.add_argument("--stats", action="store_true", help="print statistics to stderr")

    p = sub.add_parser("oracle", help="decide by explicit search")
    _add_bounds(p)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--enumerate", action="store_true", help="list all bounded solutions")
    g.add_argument("--brute-force", action="store_true", help="try every substitution")
    p.add_argument("--dot", metavar="PATH", help="write the first equation's automaton")
    p.add_argument("--limit", type=int, default=200_000, help="state/substitution budget")

    p = sub.add_parser("encode", help="write DIMACS and variable map, then exit")
    _add_bounds(p)
    p.add_argument("--out", "-o", required=True, metavar="PATH")
    p.add_argument("--map", metavar="PATH")
    p.add_argument("--no-mdd", action="store_true")
    p.add_argument("--no-fold", action="store_true")

    p = sub.add_parser("generate", help="write benchmark instances")
    p.add_argument("--track", type=int, choices=range(1, 6), required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--variables", type=int)
    p.add_argument("--letters", type=int)
    p.add_argument("--length", type=int)
    p.add_argument("--equations", type=int)
    p.add_argument("--n", type=int, help="family index for tracks 2 and 3")
    p.add_argument("--constraints", type=int)
    p.add_argument("--contradiction", action="store_true", help="track 5: unsatisfiable constraints")
    return ap


def _load(args):
    text = Path(args.problem).read_text(encoding="utf-8")
    system = parse_problem(text)
    bounds = dict(args.bound)
    unknown = [x for x in bounds if x not in system.variables]
    if unknown:
        raise WordEquationError(f"--bound for undeclared variable(s) {unknown}")
    return system, bounds


def _cmd_solve(args) -> int:
    system, bounds = _load(args)
    cfg = SolverConfig(mode=args.mode, max_iterations=args.max_iterations, ceiling=args.ceiling,
                       full_cap=args.full_cap, default_bound=args.default_bound, bounds=bounds,
                       preprocess=not args.no_preprocess, refine=not args.no_refine,
                       mdd_guiding=not args.no_mdd, parikh=not args.no_parikh,
                       fold=not args.no_fold, time_limit=args.time_limit,
                       dimacs_path=args.dimacs, map_path=args.map, dot_dir=args.dot_dir,
                       external_model=args.external_model, external_solver=args.external_solver)
    r = solve_system(system, cfg)
    sys.stdout.write(format_result(r))
    if args.stats:
        sys.stderr.write(format_stats(r))
    return EXIT.get(r.status, 0)


def _cmd_oracle(args) -> int:
    system, bounds = _load(args)
    b = fixed_bounds(system, SolverConfig(mode="fixed", default_bound=args.default_bound,
                                          bounds=bounds))
    b = {x: min(v, system.bounds.get(x, v)) for x, v in b.items()}
    if args.dot and system.equations:
        aut = EquationAutomaton(system.equations[0], b, system.letters)
        Path(args.dot).write_text(aut.to_dot(args.limit))
    # the automaton covers one equation whose variables are all the declared ones
    single = (len(system.equations) == 1 and not system.constraints
              and set(system.equations[0].variables()) == set(system.variables))
    if single and not args.brute_force:
        sols = enumerate_solutions(system.equations[0], b, system.letters, args.limit).solutions
    else:
        sols = brute_force_solve(system, b, args.limit).solutions
    if not sols:
        print(UNSAT)
        return EXIT[UNSAT]
    print(SAT)
    shown = sols if args.enumerate else sols[:1]
    for k, s in enumerate(shown, 1):
        if args.enumerate:
            print(f"# solution {k}")
        for x in system.variables:
            print(f"{x} = {s.get(x, '')}")
    return EXIT[SAT]


def _cmd_encode(args) -> int:
    system, bounds = _load(args)
    b = fixed_bounds(system, SolverConfig(mode="fixed", default_bound=args.default_bound,
                                          bounds=bounds))
    b = {x: min(v, system.bounds.get(x, v)) for x, v in b.items()}
    mdds = build_mdds(system, system.equations, b, not args.no_mdd)
    enc = encode_system(system, b, mdds, fold=not args.no_fold)
    with open(args.out, "w") as fh:
        write_dimacs(enc.cnf, fh)
    if args.map:
        Path(args.map).write_text(enc.registry.map_text())
    print(f"c wrote {enc.cnf.num_vars} variables, {len(enc.cnf.clauses)} clauses to {args.out}",
          file=sys.stderr)
    return 0


def _cmd_generate(args) -> int:
    overrides = {k: getattr(args, k) for k in
                 ("variables", "letters", "length", "equations", "n", "constraints")}
    overrides = {k: v for k, v in overrides.items() if v is not None}
    if args.contradiction:
        overrides["contradiction"] = True
    paths = benchgen.write_instances(args.track, args.seed, args.count, args.out_dir, **overrides)
    for p in paths:
        print(p)
    return 0


def run_cli(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if argv and argv[0] not in COMMANDS and not argv[0].startswith("-"):
        argv.insert(0, "solve")
    ap = _build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code in (0, None) else 1
    if args.command is None:
        ap.print_usage(sys.stderr)
        return 1
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    handler = {"solve": _cmd_solve, "oracle": _cmd_oracle, "encode": _cmd_encode,
               "generate": _cmd_generate}[args.command]
    try:
        return handler(args)
    except SoundnessError:
        raise
    except (WordEquationError, ValueError, OSError) as e:
        print(f"wesat: error: {e}", file=sys.stderr)
        return 1


def main():
    raise SystemExit(run_cli())
