"""Propositional encoding of bounded word-equation systems.

Variable blocks are registered in a fixed order: letter cells ``K``, one-hot
lengths ``OH``, then per equation the match variables ``WM`` followed by the
location grid ``S`` in row-major order, then one block per MDD.

Constants are plain Python ``True``/``False`` and are folded out of clauses
as they are emitted.
"""

from __future__ import annotations

from typing import Hashable, Iterable, Mapping, Sequence

from .core import (
    LAMBDA,
    EquationSystem,
    FilledVariable,
    Substitution,
    WordEquation,
    decode_filled_assignment,
    fill_pattern,
)
from .linear import Mdd
from .sat import CnfFormula


class VariableRegistry:
    """Bijection between semantic keys and DIMACS variable numbers."""

    def __init__(self):
        self._num: dict[Hashable, int] = {}
        self._keys: list[Hashable] = [None]

    def new(self, key: Hashable) -> int:
        if key in self._num:
            raise KeyError(f"{key!r} registered twice")
        v = len(self._keys)
        self._num[key] = v
        self._keys.append(key)
        return v

    def aux(self, *label) -> int:
        return self.new(("AUX", len(self._keys)) + label)

    def __getitem__(self, key) -> int:
        return self._num[key]

    def get(self, key, default=None):
        return self._num.get(key, default)

    def __contains__(self, key) -> bool:
        return key in self._num

    def key(self, v: int) -> Hashable:
        return self._keys[v]

    def __len__(self):
        return len(self._keys) - 1

    def items(self):
        return ((k, v) for v, k in enumerate(self._keys) if v)

    def keys_of(self, kind: str) -> list:
        return [k for k in self._keys[1:] if k[0] == kind]

    def map_text(self) -> str:
        """One ``<number> <key>`` line per registered variable."""
        return "".join(f"{v} {_fmt_key(k)}\n" for k, v in self.items())


def _fmt_key(k) -> str:
    def part(x):
        if isinstance(x, FilledVariable):
            return f"{x.base}({x.index})"
        return "λ" if x is LAMBDA else str(x)
    return k[0] + "(" + ",".join(part(x) for x in k[1:]) + ")"


def _neg(lit):
    if lit is True:
        return False
    if lit is False:
        return True
    return -lit


class Encoder:
    """Accumulates clauses for one encoding run."""

    def __init__(self, fold: bool = True):
        self.reg = VariableRegistry()
        self.clauses: list[list[int]] = []
        self.fold = fold
        self._letter_consts: dict[tuple[str, object], int] = {}

    # -- clause helpers ---------------------------------------------------
    def clause(self, lits: Iterable) -> None:
        out = []
        for l in lits:
            if l is True:
                return
            if l is False:
                continue
            out.append(l)
        self.clauses.append(out)

    def implies(self, antecedents: Sequence, consequents: Sequence = ()) -> None:
        """Clause for ``∧ antecedents → ∨ consequents``."""
        self.clause([_neg(a) for a in antecedents] + list(consequents))

    def conj(self, a, b, *label):
        """Literal equivalent to ``a ∧ b``, introducing an auxiliary if needed."""
        if a is False or b is False:
            return False
        if a is True:
            return b
        if b is True:
            return a
        if a == b:
            return a
        if a == -b:
            return False
        t = self.reg.aux(*label)
        self.clauses.append([-t, a])
        self.clauses.append([-t, b])
        self.clauses.append([t, -a, -b])
        return t

    # -- letters and cells ------------------------------------------------
    def word_literal(self, cell, a):
        """Literal for "this cell holds ``a``" (``a`` a letter or λ)."""
        if isinstance(cell, FilledVariable):
            return self.reg[("K", cell.base, cell.index, a)]
        if self.fold:
            return cell == a
        key = (cell, a)
        if key not in self._letter_consts:
            v = self.reg.new(("C", cell, a))
            self._letter_consts[key] = v
            self.clauses.append([v] if cell == a else [-v])
        return self._letter_consts[key]

    def encode_cells(self, bounds: Mapping[str, int], letters: Sequence[str]) -> None:
        values = (LAMBDA, *letters)
        for x, b in bounds.items():
            for i in range(b):
                for a in values:
                    self.reg.new(("K", x, i, a))
        for x, b in bounds.items():
            for i in range(b):
                ks = [self.reg[("K", x, i, a)] for a in values]
                self.clauses.append(list(ks))
                for p in range(len(ks)):
                    for q in range(p + 1, len(ks)):
                        self.clauses.append([-ks[p], -ks[q]])
            for i in range(b - 1):
                self.clauses.append([-self.reg[("K", x, i, LAMBDA)], self.reg[("K", x, i + 1, LAMBDA)]])

    def encode_onehot(self, bounds: Mapping[str, int]) -> None:
        for x, b in bounds.items():
            for k in range(b + 1):
                self.reg.new(("OH", x, k))
        for x, b in bounds.items():
            oh = [self.reg[("OH", x, k)] for k in range(b + 1)]
            if b == 0:
                self.clauses.append([oh[0]])
                continue
            lam = [self.reg[("K", x, i, LAMBDA)] for i in range(b)]
            self._iff(oh[0], lam[0])
            self._iff(oh[b], -lam[b - 1])
            for j in range(1, b):
                # OH_j ↔ λ_j ∧ ¬λ_{j-1}
                self.clauses.append([-oh[j], lam[j]])
                self.clauses.append([-oh[j], -lam[j - 1]])
                self.clauses.append([oh[j], -lam[j], lam[j - 1]])

    def _iff(self, a: int, b: int) -> None:
        self.clauses.append([-a, b])
        self.clauses.append([a, -b])

    # -- one equation -----------------------------------------------------
    def encode_match(self, eq_id, u_hat: tuple, v_hat: tuple, letters: Sequence[str]) -> dict:
        """Return ``(i, j) -> literal`` for "û[i] and v̂[j] hold the same symbol"."""
        values = (LAMBDA, *letters)
        wm = {}
        for i, x in enumerate(u_hat):
            for j, y in enumerate(v_hat):
                if self.fold:
                    xv, yv = isinstance(x, FilledVariable), isinstance(y, FilledVariable)
                    if not xv and not yv:
                        wm[i, j] = x == y
                        continue
                    if x == y:
                        wm[i, j] = True
                        continue
                    if not xv:
                        wm[i, j] = self.word_literal(y, x)
                        continue
                    if not yv:
                        wm[i, j] = self.word_literal(x, y)
                        continue
                w = self.reg.new(("WM", eq_id, i, j))
                wm[i, j] = w
                if self.fold:
                    # with exactly-one cells: w ↔ ∨_a (x=a ∧ y=a)
                    for a in values:
                        ka, kb = self.word_literal(x, a), self.word_literal(y, a)
                        self.clauses.append([-ka, -kb, w])
                        self.clauses.append([-w, -ka, kb])
                else:
                    terms = [self.conj(self.word_literal(x, a), self.word_literal(y, a), "wm", eq_id, i, j)
                             for a in values]
                    self.clause([-w] + terms)
                    for t in terms:
                        self.implies([t], [w])
        return wm

    def encode_grid(self, eq_id, u_hat: tuple, v_hat: tuple, wm: Mapping) -> dict:
        n, m = len(u_hat), len(v_hat)
        S = {}
        for i in range(n + 1):
            for j in range(m + 1):
                S[i, j] = self.reg.new(("S", eq_id, i, j))

        def s(i, j):
            return S.get((i, j), False)

        def w(i, j):
            return wm.get((i, j), False)

        def ulam(i):
            return self.word_literal(u_hat[i], LAMBDA) if i < n else False

        def vlam(j):
            return self.word_literal(v_hat[j], LAMBDA) if j < m else False

        imp = self.implies
        for i in range(n + 1):
            for j in range(m + 1):
                sij = S[i, j]
                right, down, diag = s(i + 1, j), s(i, j + 1), s(i + 1, j + 1)
                # an active location has an active successor
                if (i, j) != (n, m):
                    imp([sij], [right, down, diag])
                # at most one direction
                imp([sij, down], [_neg(diag)])
                imp([sij, down], [_neg(right)])
                imp([sij, right], [_neg(diag)])
                imp([sij, right], [_neg(down)])
                imp([sij, diag], [_neg(down)])
                imp([sij, diag], [_neg(right)])
                ul, vl = ulam(i), vlam(j)
                # a λ-step is forced exactly when one side is λ
                imp([sij, _neg(ul)], [_neg(right)])
                imp([sij, ul, _neg(vl)], [right])
                imp([sij, _neg(vl)], [_neg(down)])
                imp([sij, _neg(ul), vl], [down])
                # two λ move together
                imp([sij, ul, vl], [diag])
                # a diagonal step needs matching symbols
                imp([sij, diag], [w(i, j)])
                # an active location has an active predecessor that stepped
                # here; only diagonal steps force their target, λ-steps are
                # forced by the rules above
                if (i, j) != (0, 0):
                    d = self.conj(s(i - 1, j - 1), w(i - 1, j - 1), "d", eq_id, i, j)
                    h = self.conj(s(i - 1, j), _neg(w(i - 1, j)), "h", eq_id, i, j)
                    v = self.conj(s(i, j - 1), _neg(w(i, j - 1)), "v", eq_id, i, j)
                    imp([sij], [d, h, v])
                    imp([d], [sij])
                # a diagonal target needs the source or a neighbour active
                if i + 1 <= n and j + 1 <= m:
                    imp([S[i + 1, j + 1]], [sij, right, down])
        return S

    # -- MDDs -------------------------------------------------------------
    def encode_mdd(self, m: Mdd, cid) -> None:
        if m.empty:
            self.clauses.append([])
            return
        n = len(m.variables)
        M = {}
        for layer in range(-1, n):
            for s in sorted(m.layers[layer + 1]):
                M[layer, s] = self.reg.new(("M", cid, layer, s))
        self.clauses.append([M[-1, 0]])
        final = [M[n - 1, s] for s in sorted(m.accepting)]
        self.clauses.append(final)
        support: dict[tuple[int, int], list] = {}
        out_edges: dict[tuple[int, int], list] = {}
        for i, s, k, t, inside in m.edges():
            x = m.variables[i]
            src, oh = M[i - 1, s], self.reg[("OH", x, k)]
            if inside:
                self.clauses.append([-src, -oh, M[i, t]])
                support.setdefault((i, t), []).append((src, oh))
                out_edges.setdefault((i - 1, s), []).append(k)
            else:
                self.clauses.append([-src, -oh])
        for (i, t), preds in support.items():
            terms = [self.conj(src, oh, "mdd", cid, i, t) for src, oh in preds]
            self.clause([-M[i, t]] + terms)
        for (layer, s), ks in out_edges.items():
            if len(ks) == 1:
                x = m.variables[layer + 1]
                self.clauses.append([-M[layer, s], self.reg[("OH", x, ks[0])]])

    def formula(self) -> CnfFormula:
        return CnfFormula(len(self.reg), self.clauses)


class Encoding:
    """Result of :func:`encode_system` with decoding helpers."""

    def __init__(self, enc: Encoder, bounds: Mapping[str, int], letters, grids: dict, fills: dict):
        self.registry = enc.reg
        self.cnf = enc.formula()
        self.bounds = dict(bounds)
        self.letters = tuple(letters)
        self.grids = grids
        self.fills = fills

    def cell_variables(self) -> list[int]:
        return [v for k, v in self.registry.items() if k[0] == "K"]

    def grid_variable_count(self, eq_id=None) -> int:
        if eq_id is None:
            return sum(len(g) for g in self.grids.values())
        return len(self.grids[eq_id])

    def decode(self, model: Mapping[int, bool]) -> Substitution:
        f = {}
        for x, b in self.bounds.items():
            for i in range(b):
                val = LAMBDA
                for a in self.letters:
                    if model.get(self.registry[("K", x, i, a)], False):
                        val = a
                        break
                f[FilledVariable(x, i)] = val
        return decode_filled_assignment(f, self.bounds)


def encode_system(sys: EquationSystem, bounds: Mapping[str, int], mdds: Sequence[tuple] = (),
                  fold: bool = True, equations: Sequence[WordEquation] | None = None) -> Encoding:
    """Encode ``sys`` under total ``bounds``.

    ``mdds`` is a sequence of ``(constraint_id, reduced Mdd)`` pairs.
    ``equations`` overrides ``sys.equations`` (e.g. a preprocessed residual).
    """
    b = {x: bounds[x] for x in sys.variables}
    letters = tuple(sys.letters)
    eqs = sys.equations if equations is None else tuple(equations)
    enc = Encoder(fold)
    enc.encode_cells(b, letters)
    enc.encode_onehot(b)
    grids, fills = {}, {}
    for k, eq in enumerate(eqs):
        u_hat, v_hat = fill_pattern(eq.lhs, b), fill_pattern(eq.rhs, b)
        fills[k] = (u_hat, v_hat)
        wm = enc.encode_match(k, u_hat, v_hat, letters)
        S = enc.encode_grid(k, u_hat, v_hat, wm)
        enc.clauses.append([S[0, 0]])
        enc.clauses.append([S[len(u_hat), len(v_hat)]])
        grids[k] = S
    for cid, m in mdds:
        enc.encode_mdd(m, cid)
    return Encoding(enc, b, letters, grids, fills)
