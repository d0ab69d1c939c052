"""A family whose least solution doubles with every step.

X_n a X_n b X_{n-1} ... b X_1 = a X_n X_{n-1} X_{n-1} b ... b X_1 X_1 b a a
is solved by X_k = a^(2^k).  Iterative deepening raises every bound to i²
until the encoding becomes satisfiable.
"""

# %%
import time

from wesat import SolverConfig, solve_iterative
from wesat.benchgen import track2_equation
from wesat.core import EquationSystem

# n = 4 also works but takes tens of seconds
for n in range(1, 4):
    eq = track2_equation(n)
    system = EquationSystem.from_equations([eq], letters="ab")
    t0 = time.perf_counter()
    r = solve_iterative(system, SolverConfig(max_iterations=6))
    lengths = {x: len(w) for x, w in (r.substitution or {}).items()}
    print(f"n={n}  {eq}\n     {r.status} after {r.stats['iterations']} iterations "
          f"in {time.perf_counter() - t0:.2f}s, lengths {lengths}")
