"""End-to-end solving: preprocess, refine bounds, build MDDs, encode, solve.

``solve_bounded`` decides one bounded problem.  ``solve_iterative`` deepens
the bounds as ``i²`` for ``i = 1, 2, ...`` and never reports ``UNSAT`` from a
bounded run, because a larger bound might still admit a solution.
"""

from __future__ import annotations

import logging
import shlex
import subprocess
import tempfile
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

from .core import EquationSystem, SoundnessError, verify_solution
from .encoder import encode_system
from .linear import build_mdd, length_abstraction, reduce_mdd, refine_bounds
from .preprocess import SAT, UNKNOWN, UNSAT, preprocess_pipeline
from .sat import read_external_model, solve, write_dimacs

log = logging.getLogger(__name__)


@dataclass
class SolverConfig:
    mode: str = "iterative"                 # or "fixed"
    max_iterations: int | None = None       # None: min(2**n, ceiling)
    ceiling: int = 128
    full_cap: bool = False                 # use 2**n uncapped
    default_bound: int = 3                  # fixed mode, variables without a bound
    bounds: dict[str, int] = field(default_factory=dict)
    preprocess: bool = True
    refine: bool = True
    mdd_guiding: bool = True
    parikh: bool = True
    fold: bool = True
    time_limit: float | None = None
    dimacs_path: str | None = None
    map_path: str | None = None
    dot_dir: str | None = None
    external_model: str | None = None
    external_solver: str | None = None      # command; gets the DIMACS path appended

    def __post_init__(self):
        if self.mode not in ("fixed", "iterative"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.max_iterations is not None and self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")


@dataclass
class SolveResult:
    status: str
    substitution: dict[str, str] | None = None
    variables: tuple[str, ...] = ()
    stats: dict = field(default_factory=dict)


def build_mdds(sys: EquationSystem, equations, bounds: Mapping[str, int], guiding: bool):
    order = list(sys.variables)
    out = []
    if guiding:
        for k, eq in enumerate(equations):
            a = length_abstraction(eq)
            vs = [x for x in order if x in a.coefficients]
            out.append((f"eq{k}", reduce_mdd(build_mdd(a, bounds, vs))))
    for k, c in enumerate(sys.constraints):
        vs = [x for x in order if x in c.coefficients]
        out.append((f"lin{k}", reduce_mdd(build_mdd(c, bounds, vs))))
    return out


def solve_bounded(sys: EquationSystem, b: Mapping[str, int], cfg: SolverConfig | None = None,
                  time_limit: float | None = None) -> SolveResult:
    cfg = cfg or SolverConfig(mode="fixed")
    t0 = time.perf_counter()
    bounds = {x: b[x] for x in sys.variables}
    for x, ub in sys.bounds.items():
        bounds[x] = min(bounds[x], ub)
    stats = {"bounds": dict(bounds)}

    def done(status, sub=None):
        stats["time"] = time.perf_counter() - t0
        return SolveResult(status, sub, sys.variables, stats)

    equations = sys.equations
    if cfg.preprocess:
        pv = preprocess_pipeline(sys, bounds, cfg.parikh)
        stats["preprocess"] = pv.status
        if pv.status == UNSAT:
            stats["reason"] = pv.reason
            return done(UNSAT)
        if pv.status == SAT:
            return done(SAT, pv.witness)
        equations = pv.residual.equations
    if cfg.refine:
        for eq in equations:
            bounds = refine_bounds(length_abstraction(eq), bounds)
        stats["refined_bounds"] = dict(bounds)
    mdds = build_mdds(sys, equations, bounds, cfg.mdd_guiding)
    if cfg.dot_dir:
        Path(cfg.dot_dir).mkdir(parents=True, exist_ok=True)
        for cid, m in mdds:
            Path(cfg.dot_dir, f"mdd_{cid}.dot").write_text(m.to_dot(cid))
    enc = encode_system(sys, bounds, mdds, fold=cfg.fold, equations=equations)
    stats["cnf_vars"] = enc.cnf.num_vars
    stats["cnf_clauses"] = len(enc.cnf.clauses)
    stats["grid_vars"] = enc.grid_variable_count()
    if cfg.dimacs_path:
        with open(cfg.dimacs_path, "w") as fh:
            write_dimacs(enc.cnf, fh)
    if cfg.map_path:
        Path(cfg.map_path).write_text(enc.registry.map_text())
    if cfg.external_model:
        verdict = read_external_model(Path(cfg.external_model).read_text(), enc.cnf)
    elif cfg.external_solver:
        verdict = run_external_solver(cfg.external_solver, enc.cnf, time_limit)
    else:
        verdict = solve(enc.cnf, time_limit=time_limit)
    if verdict is None:
        return done(UNKNOWN)
    if not verdict.sat:
        return done(UNSAT)
    sub = enc.decode(verdict.model)
    if not verify_solution(sub, sys, bounds):
        raise SoundnessError(f"decoded model {sub} does not solve the system")
    return done(SAT, sub)


def run_external_solver(command: str, cnf, time_limit: float | None = None):
    """Run a DIMACS solver on ``cnf`` and read its ``s``/``v`` output."""
    with tempfile.NamedTemporaryFile("w", suffix=".cnf", delete=False) as fh:
        write_dimacs(cnf, fh)
        path = fh.name
    try:
        proc = subprocess.run(shlex.split(command) + [path], capture_output=True, text=True,
                              timeout=time_limit)
    except subprocess.TimeoutExpired:
        return None
    finally:
        Path(path).unlink(missing_ok=True)
    if "s UNKNOWN" in proc.stdout or "s INDETERMINATE" in proc.stdout:
        return None
    return read_external_model(proc.stdout, cnf)


def fixed_bounds(sys: EquationSystem, cfg: SolverConfig) -> dict[str, int]:
    """Command-line overrides, then declared bounds, then ``cfg.default_bound``."""
    return {x: cfg.bounds.get(x, sys.bounds.get(x, cfg.default_bound)) for x in sys.variables}


def solve_system(sys: EquationSystem, cfg: SolverConfig | None = None) -> SolveResult:
    cfg = cfg or SolverConfig()
    if cfg.mode == "fixed":
        return solve_bounded(sys, fixed_bounds(sys, cfg), cfg, cfg.time_limit)
    return solve_iterative(sys, cfg)


def default_iteration_cap(sys: EquationSystem, cfg: SolverConfig) -> int:
    n = max((max(len(e.lhs), len(e.rhs)) for e in sys.equations), default=1)
    if cfg.max_iterations is not None:
        return cfg.max_iterations
    if cfg.full_cap:
        return 2 ** n
    return min(2 ** n, cfg.ceiling)


def solve_iterative(sys: EquationSystem, cfg: SolverConfig | None = None) -> SolveResult:
    cfg = cfg or SolverConfig()
    t0 = time.perf_counter()
    stats: dict = {"iterations": 0}
    overrides = {**sys.bounds, **cfg.bounds}

    def done(status, sub=None, extra=None):
        stats.update(extra or {})
        stats["time"] = time.perf_counter() - t0
        return SolveResult(status, sub, sys.variables, stats)

    work = sys
    if cfg.preprocess:
        pv = preprocess_pipeline(sys, None, cfg.parikh)
        stats["preprocess"] = pv.status
        if pv.status == UNSAT:
            stats["reason"] = pv.reason
            return done(UNSAT)
        if pv.status == SAT and verify_solution(pv.witness, sys, overrides):
            return done(SAT, pv.witness)
        work = pv.residual
    cap = default_iteration_cap(sys, cfg)
    last_bounds = None
    for i in range(1, cap + 1):
        bounds = {x: overrides.get(x, i * i) for x in sys.variables}
        if bounds == last_bounds:
            break
        last_bounds = bounds
        remaining = None
        if cfg.time_limit is not None:
            remaining = cfg.time_limit - (time.perf_counter() - t0)
            if remaining <= 0:
                break
        stats["iterations"] = i
        log.info("iteration %d, bounds %s", i, bounds)
        r = solve_bounded(work, bounds, cfg, time_limit=remaining)
        if r.status == SAT:
            if not verify_solution(r.substitution, sys, overrides):
                raise SoundnessError("iterative result fails verification")
            return done(SAT, r.substitution, {"bounds": r.stats["bounds"], "last": r.stats})
        if r.status == UNKNOWN:
            break
    return done(UNKNOWN)


def format_result(r: SolveResult) -> str:
    lines = [r.status]
    if r.status == SAT:
        for x in r.variables:
            lines.append(f"{x} = {r.substitution.get(x, '')}")
    return "\n".join(lines) + "\n"


def format_stats(r: SolveResult) -> str:
    return "".join(f"c {k}: {v}\n" for k, v in r.stats.items())
