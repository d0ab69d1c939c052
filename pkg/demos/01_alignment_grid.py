"""Solving one small equation three ways.

The equation aZXb = aXaY has exactly two solutions when every variable is at
most one letter long.  We find them with the explicit automaton, with the
CNF encoding plus model enumeration, and with the end-to-end pipeline.
"""

# %% the equation and its filled form
from wesat import SolverConfig, WordEquation, solve_bounded
from wesat.automaton import EquationAutomaton, enumerate_solutions
from wesat.core import EquationSystem, fill_pattern
from wesat.encoder import encode_system
from wesat.sat import enumerate_models, solve

eq = WordEquation.parse("aZXb", "aXaY")
system = EquationSystem.from_equations([eq])
bounds = {"X": 1, "Y": 1, "Z": 1}
print("equation:", eq)
print("filled lhs:", fill_pattern(eq.lhs, bounds))
print("filled rhs:", fill_pattern(eq.rhs, bounds))

# %% explicit state space
aut = EquationAutomaton(eq, bounds)
states = list(aut.explore())
print(f"{len(states)} reachable automaton states")
print("solutions:", enumerate_solutions(eq, bounds).solutions)

# %% the same question as CNF
enc = encode_system(system, bounds)
print(f"CNF: {enc.cnf.num_vars} variables, {len(enc.cnf.clauses)} clauses, "
      f"{enc.grid_variable_count()} grid locations")
verdict = solve(enc.cnf)
print("one model decodes to:", enc.decode(verdict.model))
models = enumerate_models(enc.cnf, enc.cell_variables())
print("all models over the letter cells:", [enc.decode(m) for m in models])

# %% the pipeline, with and without simplification
for pre in (True, False):
    r = solve_bounded(system, bounds, SolverConfig(mode="fixed", preprocess=pre))
    print(f"preprocess={pre}: {r.status} {r.substitution}  cnf_vars={r.stats.get('cnf_vars')}")

# at bound 0 every variable is empty and the sides ab, aa differ
print("bound 0:", solve_bounded(system, {"X": 0, "Y": 0, "Z": 0}).status)
