"""Lengths as arithmetic: abstraction, bound refinement and MDDs.

Counting symbols on both sides of an equation gives a linear equation over
the variable lengths.  It tightens bounds before encoding and, compiled into
a multi-valued decision diagram, prunes the SAT search.
"""

# %% the length abstraction
from wesat import SolverConfig, WordEquation, solve_bounded
from wesat.core import EquationSystem
from wesat.linear import LinearConstraint, build_mdd, length_abstraction, reduce_mdd, refine_bounds

eq = WordEquation.parse("aAaB", "aCAb")
a = length_abstraction(eq)
print("coefficients:", dict(a.coefficients), "target:", a.target)

# %% the decision diagram before and after reduction
b = {"A": 2, "B": 2, "C": 2}
m = build_mdd(a.negated(), b, ["A", "B", "C"])
r = reduce_mdd(m)
print(f"unreduced nodes: {len(m)}, reduced nodes: {len(r)}")
print("reduced:", sorted(r.nodes()))
print(r.to_dot("lengths"))

# %% bound refinement: X = aa forces |X| = 2 whatever the bound
print(refine_bounds(length_abstraction(WordEquation.parse("X", "aa")), {"X": 10}))

# %% solving with a user constraint |A| + |C| >= 2, written as -A - C <= -2
system = EquationSystem.from_equations([eq], [LinearConstraint({"A": -1, "C": -1}, -2)])
res = solve_bounded(system, b, SolverConfig(mode="fixed"))
print(res.status, res.substitution)
