"""CNF clause database, a CDCL solver, and DIMACS / model-text interchange.

Literals are non-zero ints in DIMACS convention.  Inside :class:`Solver`
per-literal arrays are indexed directly by the signed literal: a list of
length ``2n + 1`` maps ``-v`` to slot ``2n + 1 - v``, so no encoding step is
needed on the hot path.
"""

from __future__ import annotations

import heapq
import io
import time
from dataclasses import dataclass, field
from typing import Iterable, Sequence, TextIO

from .core import WordEquationError

SAT = "SAT"
UNSAT = "UNSAT"


class DimacsError(WordEquationError):
    pass


class ModelIntegrityError(WordEquationError):
    pass


@dataclass
class CnfFormula:
    num_vars: int = 0
    clauses: list[list[int]] = field(default_factory=list)
    comments: list[str] = field(default_factory=list)

    def new_var(self) -> int:
        self.num_vars += 1
        return self.num_vars

    def add(self, clause: Iterable[int]) -> None:
        self.clauses.append(list(clause))

    def satisfied_by(self, model: dict[int, bool]) -> bool:
        return all(any(model.get(abs(l), False) == (l > 0) for l in c) for c in self.clauses)


@dataclass
class SolverVerdict:
    status: str
    model: dict[int, bool] | None = None

    @property
    def sat(self) -> bool:
        return self.status == SAT


def _luby(i: int) -> int:
    # i-th element (1-based) of 1 1 2 1 1 2 4 1 1 2 1 1 2 4 8 ...
    k = 1
    while (1 << k) - 1 < i:
        k += 1
    while True:
        if i == (1 << k) - 1:
            return 1 << (k - 1)
        if i >= 1 << (k - 1):
            i -= (1 << (k - 1)) - 1
            k = 1
            while (1 << k) - 1 < i:
                k += 1
        else:
            k -= 1


class _Learnt(list):
    __slots__ = ("lbd", "act", "deleted")


class Solver:
    """Conflict-driven clause-learning SAT solver.

    Clauses may be added between calls to :meth:`solve`; learnt clauses are
    kept, which makes repeated solving with blocking clauses cheap.
    """

    restart_base = 100
    var_decay = 0.95

    def __init__(self, num_vars: int = 0, clauses: Iterable[Sequence[int]] = (), seed: int = 0):
        self.n = 0
        self.ok = True
        self.lv: list[int] = [0]          # literal values, 1 / -1 / 0
        self.level: list[int] = [0]
        self.reason: list = [None]
        self.activity: list[float] = [0.0]
        self.polarity: list[bool] = [False]
        self.watches: list[list] = [[]]
        self.trail: list[int] = []
        self.trail_lim: list[int] = []
        self.qhead = 0
        self.var_inc = 1.0
        self.heap: list = []
        self.clauses: list[list[int]] = []
        self.learnts: list[_Learnt] = []
        self.seed = seed
        self.conflicts = 0
        self.decisions = 0
        self.propagations = 0
        self.model: dict[int, bool] | None = None
        self.ensure_vars(num_vars)
        for c in clauses:
            self.add_clause(c)

    # -- variables --------------------------------------------------------
    def ensure_vars(self, n: int) -> None:
        if n <= self.n:
            return
        old = self.n
        # rebuild literal-indexed arrays for the new size
        lv = [0] * (2 * n + 1)
        watches: list[list] = [[] for _ in range(2 * n + 1)]
        for v in range(1, old + 1):
            lv[v], lv[-v] = self.lv[v], self.lv[-v]
            watches[v], watches[-v] = self.watches[v], self.watches[-v]
        self.lv, self.watches = lv, watches
        extra = n - old
        self.level.extend([0] * extra)
        self.reason.extend([None] * extra)
        # deterministic tiny tie-breaking perturbation from the seed
        self.activity.extend(((v * 2654435761 + self.seed) % 1000) * 1e-9 for v in range(old + 1, n + 1))
        self.polarity.extend([False] * extra)
        self.n = n
        for v in range(old + 1, n + 1):
            heapq.heappush(self.heap, (-self.activity[v], v))

    # -- clauses ----------------------------------------------------------
    def add_clause(self, lits: Sequence[int]) -> bool:
        if not self.ok:
            return False
        if self.trail_lim:
            self._cancel_until(0)
        m = max((abs(l) for l in lits), default=0)
        self.ensure_vars(m)
        lv = self.lv
        seen = set()
        out = []
        for l in lits:
            if l == 0:
                raise ValueError("literal 0 in clause")
            if -l in seen or lv[l] == 1:
                return True
            if l in seen or lv[l] == -1:
                continue
            seen.add(l)
            out.append(l)
        if not out:
            self.ok = False
            return False
        if len(out) == 1:
            self._enqueue(out[0], None)
            if self._propagate() is not None:
                self.ok = False
            return self.ok
        self.clauses.append(out)
        self.watches[out[0]].append(out)
        self.watches[out[1]].append(out)
        return True

    # -- core -------------------------------------------------------------
    def _enqueue(self, lit: int, reason) -> None:
        v = lit if lit > 0 else -lit
        self.lv[lit] = 1
        self.lv[-lit] = -1
        self.level[v] = len(self.trail_lim)
        self.reason[v] = reason
        self.trail.append(lit)

    def _propagate(self):
        lv, watches, trail = self.lv, self.watches, self.trail
        level, reason = self.level, self.reason
        dl = len(self.trail_lim)
        conflict = None
        while self.qhead < len(trail):
            p = trail[self.qhead]
            self.qhead += 1
            false_lit = -p
            ws = watches[false_lit]
            keep = []
            i, n = 0, len(ws)
            while i < n:
                c = ws[i]
                i += 1
                if c.__class__ is _Learnt and c.deleted:
                    continue
                if c[0] == false_lit:
                    c[0] = c[1]
                    c[1] = false_lit
                first = c[0]
                if lv[first] == 1:
                    keep.append(c)
                    continue
                for k in range(2, len(c)):
                    lk = c[k]
                    if lv[lk] != -1:
                        c[1] = lk
                        c[k] = false_lit
                        watches[lk].append(c)
                        break
                else:
                    keep.append(c)
                    if lv[first] == -1:
                        keep.extend(ws[i:])
                        conflict = c
                        break
                    # unit
                    lv[first] = 1
                    lv[-first] = -1
                    v = first if first > 0 else -first
                    level[v] = dl
                    reason[v] = c
                    trail.append(first)
            watches[false_lit] = keep
            if conflict is not None:
                self.propagations += self.qhead
                self.qhead = len(trail)
                return conflict
        return None

    def _bump(self, v: int) -> None:
        act = self.activity
        act[v] += self.var_inc
        if act[v] > 1e100:
            for u in range(1, self.n + 1):
                act[u] *= 1e-100
            self.var_inc *= 1e-100
            self.heap = [(-act[u], u) for u in range(1, self.n + 1) if self.lv[u] == 0]
            heapq.heapify(self.heap)
        elif self.lv[v] == 0:
            heapq.heappush(self.heap, (-act[v], v))

    def _analyze(self, confl):
        level, reason, trail, lv = self.level, self.reason, self.trail, self.lv
        dl = len(self.trail_lim)
        seen = set()
        learnt = [0]
        pathc = 0
        p = 0
        idx = len(trail) - 1
        while True:
            if confl.__class__ is _Learnt:
                confl.act += 1
            for q in (confl if p == 0 else confl[1:]):
                v = q if q > 0 else -q
                if v not in seen and level[v] > 0:
                    seen.add(v)
                    self._bump(v)
                    if level[v] >= dl:
                        pathc += 1
                    else:
                        learnt.append(q)
            while True:
                p = trail[idx]
                idx -= 1
                if (p if p > 0 else -p) in seen:
                    break
            v = p if p > 0 else -p
            confl = reason[v]
            pathc -= 1
            if pathc <= 0:
                break
            # reason clauses keep the implied literal at position 0
            if confl[0] != p:
                j = confl.index(p)
                confl[0], confl[j] = confl[j], confl[0]
        learnt[0] = -p
        # basic minimisation: drop literals implied by other learnt literals
        if len(learnt) > 2:
            keep = [learnt[0]]
            for q in learnt[1:]:
                r = reason[q if q > 0 else -q]
                if r is None:
                    keep.append(q)
                    continue
                for x in r:
                    xv = x if x > 0 else -x
                    if x != -q and xv not in seen and level[xv] > 0:
                        keep.append(q)
                        break
            learnt = keep
        if len(learnt) == 1:
            bt = 0
        else:
            mi = 1
            for k in range(2, len(learnt)):
                if level[abs(learnt[k])] > level[abs(learnt[mi])]:
                    mi = k
            learnt[1], learnt[mi] = learnt[mi], learnt[1]
            bt = level[abs(learnt[1])]
        lbd = len({level[abs(q)] for q in learnt})
        return learnt, bt, lbd

    def _cancel_until(self, lvl: int) -> None:
        if len(self.trail_lim) <= lvl:
            return
        lv, trail, pol, act = self.lv, self.trail, self.polarity, self.activity
        start = self.trail_lim[lvl]
        heap = self.heap
        for k in range(len(trail) - 1, start - 1, -1):
            p = trail[k]
            v = p if p > 0 else -p
            pol[v] = p > 0
            lv[p] = 0
            lv[-p] = 0
            self.reason[v] = None
            heapq.heappush(heap, (-act[v], v))
        del trail[start:]
        del self.trail_lim[lvl:]
        self.qhead = len(trail)

    def _pick(self) -> int:
        heap, lv, act = self.heap, self.lv, self.activity
        while heap:
            a, v = heapq.heappop(heap)
            if lv[v] == 0 and -a == act[v]:
                return v if self.polarity[v] else -v
        for v in range(1, self.n + 1):
            if lv[v] == 0:
                return v if self.polarity[v] else -v
        return 0

    def _reduce_db(self) -> None:
        reason = self.reason
        ls = sorted(self.learnts, key=lambda c: (c.lbd, -c.act))
        half = len(ls) // 2
        kept = ls[:half]
        for c in ls[half:]:
            v = abs(c[0])
            locked = reason[v] is c and self.lv[c[0]] == 1
            if c.lbd <= 2 or locked:
                kept.append(c)
            else:
                c.deleted = True
        for c in kept:
            c.act *= 0.5
        self.learnts = kept
        if len(self.heap) > 8 * self.n + 1000:
            self.heap = [(-self.activity[v], v) for v in range(1, self.n + 1) if self.lv[v] == 0]
            heapq.heapify(self.heap)

    def solve(self, conflict_limit: int | None = None, time_limit: float | None = None) -> bool | None:
        """Return True (SAT), False (UNSAT) or None when a limit is hit."""
        self.model = None
        if not self.ok:
            return False
        if self.trail_lim:
            self._cancel_until(0)
        if self._propagate() is not None:
            self.ok = False
            return False
        deadline = None if time_limit is None else time.monotonic() + time_limit
        start_conflicts = self.conflicts
        restart_no = 1
        budget = self.restart_base * _luby(restart_no)
        since_restart = 0
        max_learnts = max(2000, len(self.clauses) // 3)
        while True:
            confl = self._propagate()
            if confl is not None:
                self.conflicts += 1
                since_restart += 1
                if not self.trail_lim:
                    self.ok = False
                    return False
                learnt, bt, lbd = self._analyze(confl)
                self._cancel_until(bt)
                if len(learnt) == 1:
                    self._enqueue(learnt[0], None)
                else:
                    c = _Learnt(learnt)
                    c.lbd, c.act, c.deleted = lbd, 0.0, False
                    self.learnts.append(c)
                    self.watches[c[0]].append(c)
                    self.watches[c[1]].append(c)
                    self._enqueue(c[0], c)
                self.var_inc /= self.var_decay
                if conflict_limit is not None and self.conflicts - start_conflicts >= conflict_limit:
                    self._cancel_until(0)
                    return None
                if deadline is not None and self.conflicts % 64 == 0 and time.monotonic() > deadline:
                    self._cancel_until(0)
                    return None
                continue
            if since_restart >= budget:
                restart_no += 1
                budget = self.restart_base * _luby(restart_no)
                since_restart = 0
                self._cancel_until(0)
                if len(self.learnts) > max_learnts:
                    self._reduce_db()
                    max_learnts = int(max_learnts * 1.1)
                continue
            lit = self._pick()
            if lit == 0:
                self.model = {v: self.lv[v] == 1 for v in range(1, self.n + 1)}
                self._cancel_until(0)
                return True
            self.decisions += 1
            self.trail_lim.append(len(self.trail))
            self._enqueue(lit, None)


def _check_model(f: CnfFormula, model: dict[int, bool]) -> None:
    for c in f.clauses:
        if not any(model.get(abs(l), False) == (l > 0) for l in c):
            raise ModelIntegrityError(f"model violates clause {c}")


def solve(f: CnfFormula, conflict_limit: int | None = None,
          time_limit: float | None = None, seed: int = 0) -> SolverVerdict | None:
    """Decide ``f``; ``None`` when a resource limit is reached."""
    s = Solver(f.num_vars, f.clauses, seed=seed)
    r = s.solve(conflict_limit=conflict_limit, time_limit=time_limit)
    if r is None:
        return None
    if not r:
        return SolverVerdict(UNSAT)
    model = {v: s.model.get(v, False) for v in range(1, f.num_vars + 1)}
    _check_model(f, model)
    return SolverVerdict(SAT, model)


class EnumerationLimitReached(WordEquationError):
    def __init__(self, models):
        super().__init__(f"model limit reached after {len(models)} models")
        self.models = models


def enumerate_models(f: CnfFormula, projection: Iterable[int], limit: int = 10_000,
                     strict: bool = False) -> list[dict[int, bool]]:
    """Distinct models of ``f`` projected onto ``projection``.

    With ``strict`` a full ``limit`` raises :class:`EnumerationLimitReached`
    (carrying the models found) when more models may exist.
    """
    if limit < 1:
        raise ValueError("limit must be at least 1")
    proj = sorted(set(projection))
    s = Solver(f.num_vars, f.clauses)
    out = []
    while s.solve():
        m = {v: s.model.get(v, False) for v in proj}
        out.append(m)
        if len(out) >= limit:
            if strict and s.add_clause([-v if m[v] else v for v in proj]) and s.solve():
                raise EnumerationLimitReached(out)
            break
        if not proj or not s.add_clause([-v if m[v] else v for v in proj]):
            break
    return out


def write_dimacs(f: CnfFormula, sink: TextIO | None = None) -> str:
    buf = io.StringIO()
    for line in f.comments:
        buf.write(f"c {line}\n" if line else "c\n")
    buf.write(f"p cnf {f.num_vars} {len(f.clauses)}\n")
    for c in f.clauses:
        buf.write(" ".join(map(str, c)))
        buf.write(" 0\n" if c else "0\n")
    text = buf.getvalue()
    if sink is not None:
        sink.write(text)
    return text


def parse_dimacs(text: str) -> CnfFormula:
    f = CnfFormula()
    header = None
    pending: list[int] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if not s:
            continue
        if s.startswith("c"):
            f.comments.append(s[2:] if len(s) > 1 else "")
            continue
        if s.startswith("p"):
            parts = s.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError(f"line {lineno}: bad header {s!r}")
            header = (int(parts[2]), int(parts[3]))
            continue
        if header is None:
            raise DimacsError(f"line {lineno}: clause before header")
        for tok in s.split():
            try:
                lit = int(tok)
            except ValueError:
                raise DimacsError(f"line {lineno}: bad literal {tok!r}") from None
            if lit == 0:
                f.clauses.append(pending)
                pending = []
            else:
                if abs(lit) > header[0]:
                    raise DimacsError(f"line {lineno}: literal {lit} exceeds variable count")
                pending.append(lit)
    if header is None:
        raise DimacsError("missing 'p cnf' header")
    if pending:
        raise DimacsError("last clause not terminated by 0")
    if len(f.clauses) != header[1]:
        raise DimacsError(f"header announces {header[1]} clauses, found {len(f.clauses)}")
    f.num_vars = header[0]
    return f


def read_external_model(text: str, f: CnfFormula | None = None) -> SolverVerdict:
    """Parse SAT-competition solver output (``s`` / ``v`` lines)."""
    status = None
    model: dict[int, bool] = {}
    terminated = False
    for lineno, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if not s or s.startswith("c"):
            continue
        if s.startswith("s "):
            word = s[2:].strip()
            if word == "SATISFIABLE":
                status = SAT
            elif word == "UNSATISFIABLE":
                status = UNSAT
            else:
                raise DimacsError(f"line {lineno}: unknown status {word!r}")
        elif s.startswith("v"):
            for tok in s[1:].split():
                try:
                    lit = int(tok)
                except ValueError:
                    raise DimacsError(f"line {lineno}: bad literal {tok!r}") from None
                if lit == 0:
                    terminated = True
                else:
                    model[abs(lit)] = lit > 0
        else:
            raise DimacsError(f"line {lineno}: unexpected line {s!r}")
    if status is None:
        raise DimacsError("no status line")
    if status == UNSAT:
        return SolverVerdict(UNSAT)
    if not terminated:
        raise DimacsError("model not terminated by 0")
    if f is not None:
        model = {v: model.get(v, False) for v in range(1, f.num_vars + 1)}
        _check_model(f, model)
    return SolverVerdict(SAT, model)
