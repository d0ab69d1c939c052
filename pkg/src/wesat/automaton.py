"""Explicit-state equation automaton and brute-force oracles.

Both searches here are exponential and only meant for small instances; they
serve as the reference the SAT pipeline is tested against.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import product
from typing import Iterator, Mapping, NamedTuple

from .core import (
    INITIAL,
    LAMBDA,
    BoundError,
    EquationSystem,
    FilledVariable,
    PartialFilledAssignment,
    ResourceLimitError,
    WordEquation,
    compatible,
    extend,
    fill_pattern,
    verify_solution,
)


class AutomatonState(NamedTuple):
    i: int
    j: int
    assignment: PartialFilledAssignment


@dataclass
class OracleResult:
    satisfiable: bool
    solutions: list[dict[str, str]] = field(default_factory=list)


def _key(s: Mapping[str, str]) -> tuple:
    return tuple(sorted(s.items()))


def successors(st: AutomatonState, u_hat: tuple, v_hat: tuple, letters) -> set[AutomatonState]:
    i, j, s = st
    out = set()
    has_u, has_v = i < len(u_hat), j < len(v_hat)
    if has_u and has_v:
        x, y = u_hat[i], v_hat[j]
        for a in (*letters, LAMBDA):
            if compatible(x, y, s) and compatible(x, a, s) and compatible(y, a, s):
                out.add(AutomatonState(i + 1, j + 1, extend(extend(s, x, a), y, a)))
    if has_u and compatible(u_hat[i], LAMBDA, s):
        out.add(AutomatonState(i + 1, j, extend(s, u_hat[i], LAMBDA)))
    if has_v and compatible(v_hat[j], LAMBDA, s):
        out.add(AutomatonState(i, j + 1, extend(s, v_hat[j], LAMBDA)))
    return out


class EquationAutomaton:
    """The automaton of one bounded word equation, explored on demand."""

    def __init__(self, eq: WordEquation, bounds: Mapping[str, int], letters=None):
        self.eq = eq
        self.bounds = {x: bounds[x] for x in eq.variables()}
        self.u_hat = fill_pattern(eq.lhs, bounds)
        self.v_hat = fill_pattern(eq.rhs, bounds)
        self.letters = tuple(sorted(letters if letters is not None else eq.letters()))
        self.initial = AutomatonState(0, 0, INITIAL)

    def is_accepting(self, st: AutomatonState) -> bool:
        return st.i == len(self.u_hat) and st.j == len(self.v_hat)

    def successors(self, st: AutomatonState) -> set[AutomatonState]:
        return successors(st, self.u_hat, self.v_hat, self.letters)

    def explore(self, limit: int | None = None, stop_at_accept: bool = False,
                depth_first: bool = False) -> Iterator[AutomatonState]:
        """Enumerate reachable states, breadth-first unless ``depth_first``.

        Depth-first order tries diagonal moves first and usually reaches an
        accepting state long before the full state space is built.
        """
        seen = {self.initial}
        queue = deque([self.initial])
        while queue:
            st = queue.pop() if depth_first else queue.popleft()
            yield st
            if stop_at_accept and self.is_accepting(st):
                return
            nexts = self.successors(st)
            if depth_first:
                # pushed last = explored first, so diagonal moves go last
                nexts = sorted(nexts, key=lambda t: (t.i + t.j, repr(t.assignment)))
            for nxt in nexts:
                if nxt not in seen:
                    seen.add(nxt)
                    if limit is not None and len(seen) > limit:
                        raise ResourceLimitError(f"more than {limit} automaton states")
                    queue.append(nxt)

    def decode(self, st: AutomatonState) -> dict[str, str]:
        s = st.assignment
        out = {}
        for x, b in self.bounds.items():
            vals = (s.get(FilledVariable(x, i)) for i in range(b))
            out[x] = "".join(v for v in vals if v is not None and v is not LAMBDA)
        return out

    def to_dot(self, limit: int | None = None) -> str:
        states = list(self.explore(limit))
        index = {st: n for n, st in enumerate(states)}
        by_loc: dict[tuple[int, int], list] = {}
        for st in states:
            by_loc.setdefault((st.i, st.j), []).append(st)
        lines = ["digraph automaton {", "  compound=true;"]
        for (i, j), sts in sorted(by_loc.items()):
            lines.append(f'  subgraph "cluster_{i}_{j}" {{ label="({i},{j})";')
            for st in sts:
                shape = "doublecircle" if self.is_accepting(st) else "box"
                lines.append(f'    s{index[st]} [label="{st.assignment!r}", shape={shape}];')
            lines.append("  }")
        for st in states:
            for nxt in self.successors(st):
                lines.append(f"  s{index[st]} -> s{index[nxt]};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def reachable_search(eq: WordEquation, bounds: Mapping[str, int], letters=None,
                     limit: int | None = None) -> OracleResult:
    aut = EquationAutomaton(eq, bounds, letters)
    for st in aut.explore(limit, stop_at_accept=True, depth_first=True):
        if aut.is_accepting(st):
            return OracleResult(True)
    return OracleResult(False)


def enumerate_solutions(eq: WordEquation, bounds: Mapping[str, int], letters=None,
                        limit: int = 200_000) -> OracleResult:
    aut = EquationAutomaton(eq, bounds, letters)
    found = {}
    for st in aut.explore(limit):
        if aut.is_accepting(st):
            sol = aut.decode(st)
            found.setdefault(_key(sol), sol)
    sols = [found[k] for k in sorted(found)]
    return OracleResult(bool(sols), sols)


def _words(alphabet, max_len):
    for n in range(max_len + 1):
        for t in product(alphabet, repeat=n):
            yield "".join(t)


def brute_force_solve(sys: EquationSystem, bounds: Mapping[str, int] | None = None,
                      limit: int = 2_000_000) -> OracleResult:
    """All substitutions within bounds satisfying equations and constraints."""
    b = dict(sys.bounds)
    b.update(bounds or {})
    missing = [x for x in sys.variables if x not in b]
    if missing:
        raise BoundError(f"no bound for {missing}")
    k = len(sys.letters)
    total = 1
    for x in sys.variables:
        total *= sum(k ** n for n in range(b[x] + 1))
        if total > limit:
            raise ResourceLimitError(f"brute force would visit more than {limit} substitutions")
    letters = sorted(sys.letters)
    names = list(sys.variables)
    sols = []
    for words in product(*(list(_words(letters, b[x])) for x in names)):
        s = dict(zip(names, words))
        if verify_solution(s, sys, b):
            sols.append(s)
    sols.sort(key=_key)
    return OracleResult(bool(sols), sols)
