"""Cheap, sound simplifications and unsatisfiability checks.

Every check returns ``UNSAT`` only when the equation has no solution at all
(bounded checks take the bounds explicitly).  Mismatch checks look at both
ends of an equation.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Mapping

from .core import EquationSystem, Pattern, Symbol, WordEquation, verify_solution
from .linear import constraint_unbounded_feasible, feasible, length_abstraction, unbounded_feasible

SAT = "SAT"
UNSAT = "UNSAT"
UNKNOWN = "UNKNOWN"


@dataclass
class PreprocessVerdict:
    status: str
    witness: dict[str, str] | None = None
    residual: EquationSystem | None = None
    reason: str = ""


def _reverse(e: WordEquation) -> WordEquation:
    return WordEquation(Pattern(e.lhs.symbols[::-1]), Pattern(e.rhs.symbols[::-1]))


def strip_common_affixes(e: WordEquation) -> WordEquation:
    u, v = e.lhs.symbols, e.rhs.symbols
    p = 0
    while p < len(u) and p < len(v) and u[p] == v[p]:
        p += 1
    u, v = u[p:], v[p:]
    q = 0
    while q < len(u) and q < len(v) and u[-1 - q] == v[-1 - q]:
        q += 1
    if q:
        u, v = u[:-q], v[:-q]
    return WordEquation(Pattern(u), Pattern(v))


def _prefix_mismatch(e: WordEquation) -> bool:
    for x, y in zip(e.lhs, e.rhs):
        if x.is_var or y.is_var:
            return False
        if x.id != y.id:
            return True
    return False


def prefix_suffix_mismatch(e: WordEquation) -> str:
    if _prefix_mismatch(e) or _prefix_mismatch(_reverse(e)):
        return UNSAT
    return UNKNOWN


def _constant_runs(p: Pattern) -> list[str]:
    runs, cur = [], []
    for s in p:
        if s.is_var:
            if cur:
                runs.append("".join(cur))
            cur = []
        else:
            cur.append(s.id)
    if cur:
        runs.append("".join(cur))
    return runs


def constant_sequence_mismatch(e: WordEquation) -> str:
    for const, mixed in ((e.lhs, e.rhs), (e.rhs, e.lhs)):
        if not const.is_ground() or mixed.is_ground():
            continue
        word = str(const)
        if any(run not in word for run in _constant_runs(mixed)):
            return UNSAT
    return UNKNOWN


def _parikh_prefix_mismatch(e: WordEquation) -> bool:
    cu: Counter = Counter()
    cv: Counter = Counter()
    for x, y in zip(e.lhs, e.rhs):
        cu[x] += 1
        cv[y] += 1
        diff = cu - cv
        diff.update(cv - cu)
        if diff and not any(s.is_var for s in diff):
            return True
    return False


def parikh_mismatch(e: WordEquation) -> str:
    if _parikh_prefix_mismatch(e) or _parikh_prefix_mismatch(_reverse(e)):
        return UNSAT
    return UNKNOWN


def _ground_mismatch(e: WordEquation) -> bool:
    return e.lhs.is_ground() and e.rhs.is_ground() and str(e.lhs) != str(e.rhs)


def equation_unsat(e: WordEquation, parikh: bool = True) -> str:
    """Run every structural check on one equation."""
    if _ground_mismatch(e):
        return "ground sides differ"
    if prefix_suffix_mismatch(e) == UNSAT:
        return "prefix/suffix mismatch"
    if constant_sequence_mismatch(e) == UNSAT:
        return "constant sequence mismatch"
    if parikh and parikh_mismatch(e) == UNSAT:
        return "Parikh mismatch"
    return ""


def _definition(e: WordEquation):
    """``(X, w)`` when ``e`` is ``X = w`` or ``w = X`` with ``w`` letters only."""
    for a, b in ((e.lhs, e.rhs), (e.rhs, e.lhs)):
        if len(a) == 1 and a[0].is_var and b.is_ground():
            return a[0].id, str(b)
    return None


def _substitute(p: Pattern, defs: Mapping[str, str]) -> Pattern:
    out: list[Symbol] = []
    for s in p:
        if s.is_var and s.id in defs:
            out.extend(Symbol(c, False) for c in defs[s.id])
        else:
            out.append(s)
    return Pattern(tuple(out))


def _is_trivial(e: WordEquation) -> bool:
    return e.lhs.symbols == e.rhs.symbols


def _free_witness(sys: EquationSystem, defs: Mapping[str, str]) -> dict[str, str]:
    return {x: defs.get(x, "") for x in sys.variables}


def substitution_reasoning(sys: EquationSystem, parikh: bool = True) -> PreprocessVerdict:
    defs: dict[str, str] = {}
    def_eqs = []
    others = []
    for e in sys.equations:
        d = _definition(e)
        if d is None:
            others.append(e)
            continue
        x, w = d
        if x in defs and defs[x] != w:
            return PreprocessVerdict(UNSAT, reason=f"conflicting definitions of {x}")
        if x not in defs:
            defs[x] = w
            def_eqs.append(e)
    if not defs:
        return PreprocessVerdict(UNKNOWN, residual=sys)
    kept = []
    for e in others:
        e2 = WordEquation(_substitute(e.lhs, defs), _substitute(e.rhs, defs))
        if e2 != e:
            e2 = strip_common_affixes(e2)
            why = equation_unsat(e2, parikh)
            if why:
                return PreprocessVerdict(UNSAT, reason=why)
            if _is_trivial(e2):
                continue
        kept.append(e2)
    residual = sys.replace(equations=tuple(def_eqs + kept))
    if not kept:
        return PreprocessVerdict(SAT, witness=_free_witness(sys, defs), residual=residual)
    return PreprocessVerdict(UNKNOWN, residual=residual)


def preprocess_pipeline(sys: EquationSystem, bounds: Mapping[str, int] | None = None,
                        parikh: bool = True) -> PreprocessVerdict:
    """Simplify to a fixed point; ``UNSAT`` and ``SAT`` are definitive.

    With ``bounds`` the length checks (abstractions and user constraints)
    are bounded and a ``SAT`` witness must respect the bounds; otherwise
    both are unbounded.
    """
    for c in sys.constraints:
        ok = feasible(c, bounds) if bounds is not None else constraint_unbounded_feasible(c)
        if not ok:
            return PreprocessVerdict(UNSAT, reason=f"length constraint infeasible: {c}")
    current = sys
    while True:
        eqs = []
        for e in current.equations:
            e = strip_common_affixes(e)
            why = equation_unsat(e, parikh)
            if why:
                return PreprocessVerdict(UNSAT, reason=f"{why}: {e}")
            if _is_trivial(e):
                continue
            a = length_abstraction(e)
            ok = feasible(a, bounds) if bounds is not None else unbounded_feasible(a)
            if not ok:
                return PreprocessVerdict(UNSAT, reason=f"length abstraction infeasible: {e}")
            eqs.append(e)
        stripped = current.replace(equations=tuple(eqs))
        v = substitution_reasoning(stripped, parikh)
        if v.status == UNSAT:
            return v
        if v.status == SAT or not stripped.equations:
            witness = v.witness if v.status == SAT else _free_witness(sys, {})
            residual = v.residual if v.residual is not None else stripped
            if verify_solution(witness, sys, bounds):
                return PreprocessVerdict(SAT, witness=witness, residual=residual)
            return PreprocessVerdict(UNKNOWN, residual=residual)
        if v.residual == current:
            return PreprocessVerdict(UNKNOWN, residual=current)
        current = v.residual
