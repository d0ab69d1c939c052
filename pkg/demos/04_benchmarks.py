"""Generate random benchmark instances and solve them.

Random instances come with the substitution they were built from, so every
SAT answer can be compared against a known solution and every generated
instance is satisfiable unless deliberately made contradictory.
"""

# %%
import time
from collections import Counter

from wesat import SolverConfig, solve_iterative
from wesat.benchgen import GenSpec, generate

small = dict(variables=4, letters=2, length=14)
verdicts = Counter()
t0 = time.perf_counter()
for seed in range(20):
    inst = generate(GenSpec(1, seed, **small))
    r = solve_iterative(inst.system, SolverConfig(max_iterations=3, time_limit=10))
    verdicts[r.status] += 1
print(f"single equations: {dict(verdicts)} in {time.perf_counter() - t0:.1f}s")

# %% systems with length constraints, consistent and contradictory
for contradiction in (False, True):
    inst = generate(GenSpec(5, 3, equations=3, contradiction=contradiction, **small))
    r = solve_iterative(inst.system, SolverConfig(max_iterations=3, time_limit=10))
    print(f"contradiction={contradiction}: expected {inst.expected}, got {r.status}")
print(inst.to_text())
