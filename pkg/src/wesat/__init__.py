"""Bounded word-equation solving by reduction to propositional satisfiability.

A word equation ``u = v`` over letters and variables is solved by bounding
every variable's length, expanding variables into fixed slots padded with a
blank symbol, and encoding the search through the equation's alignment grid
as CNF.  Length abstractions prune bounds and are encoded as multi-valued
decision diagrams.  The typical entry points are :func:`parse_problem` and
:func:`solve_system`.
"""

from .core import (LAMBDA, BoundError, EquationSystem, Pattern, ResourceLimitError,
                   SoundnessError, Symbol, WordEquation, WordEquationError, apply_substitution,
                   verify_solution)
from .linear import LinearConstraint, build_mdd, length_abstraction, reduce_mdd, refine_bounds
from .automaton import brute_force_solve, enumerate_solutions, reachable_search
from .preprocess import preprocess_pipeline
from .encoder import encode_system
from .sat import CnfFormula, Solver, parse_dimacs, solve, write_dimacs
from .driver import SolveResult, SolverConfig, solve_bounded, solve_iterative, solve_system
from .problem import ParseError, format_problem, parse_problem

__version__ = "0.1.0"
