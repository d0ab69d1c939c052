"""Length abstraction, bound refinement and MDDs over substitution lengths.

An :class:`Mdd` is layered: layer ``-1`` holds the root ``(−1, 0)`` and layer
``i`` holds the partial sums reachable after choosing lengths for the first
``i + 1`` variables.  Edge multiplicities range over ``0..b_X`` inclusive.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Mapping, Sequence

from .core import WordEquation


@dataclass(frozen=True)
class LinearConstraint:
    """``Σ coefficients[X]·|X|  (<= | =)  bound``."""

    coefficients: Mapping[str, int]
    bound: int
    relation: str = "<="

    def __post_init__(self):
        if self.relation not in ("<=", "="):
            raise ValueError(f"unsupported relation {self.relation!r}")

    def value(self, lengths: Mapping[str, int]) -> int:
        return sum(c * lengths.get(x, 0) for x, c in self.coefficients.items())

    def holds(self, lengths: Mapping[str, int]) -> bool:
        v = self.value(lengths)
        return v <= self.bound if self.relation == "<=" else v == self.bound

    def accepts(self, total: int) -> bool:
        return total <= self.bound if self.relation == "<=" else total == self.bound

    def __str__(self):
        terms = " ".join(f"{c} {x}" for x, c in self.coefficients.items())
        return f"{terms} {self.relation} {self.bound}"


@dataclass(frozen=True)
class LinearAbstraction:
    """``Σ (|u|_X − |v|_X)·I_X = Σ_a (|v|_a − |u|_a)`` for ``u = v``."""

    coefficients: Mapping[str, int]
    target: int

    def negated(self) -> "LinearAbstraction":
        return LinearAbstraction({x: -c for x, c in self.coefficients.items()}, -self.target)

    def as_constraint(self) -> LinearConstraint:
        return LinearConstraint(dict(self.coefficients), self.target, "=")

    def holds(self, lengths: Mapping[str, int]) -> bool:
        return self.as_constraint().holds(lengths)


def length_abstraction(e: WordEquation) -> LinearAbstraction:
    coeffs: dict[str, int] = {x: 0 for x in e.variables()}
    target = 0
    for s in e.lhs:
        if s.is_var:
            coeffs[s.id] += 1
        else:
            target -= 1
    for s in e.rhs:
        if s.is_var:
            coeffs[s.id] -= 1
        else:
            target += 1
    return LinearAbstraction(coeffs, target)


def refine_bounds(a: LinearAbstraction, b: Mapping[str, int]) -> dict[str, int]:
    out = dict(b)
    for xk, ck in a.coefficients.items():
        if ck == 0:
            continue
        coeffs, target = a.coefficients, a.target
        if ck < 0:
            coeffs = {x: -c for x, c in coeffs.items()}
            target, ck = -target, -ck
        # maximise I_k: opposite-sign variables at their bound, the rest at 0
        rest = sum(c * b[x] for x, c in coeffs.items() if x != xk and c < 0)
        refined = (target - rest) // ck
        if 0 < refined < out[xk]:
            out[xk] = refined
    return out


def unbounded_feasible(a: LinearAbstraction) -> bool:
    """Necessary condition for a non-negative integer solution without bounds."""
    cs = [c for c in a.coefficients.values() if c != 0]
    if not cs:
        return a.target == 0
    g = 0
    for c in cs:
        g = gcd(g, abs(c))
    if a.target % g:
        return False
    if all(c > 0 for c in cs) and a.target < 0:
        return False
    if all(c < 0 for c in cs) and a.target > 0:
        return False
    return True


def constraint_unbounded_feasible(c: LinearConstraint) -> bool:
    """Whether some non-negative lengths could satisfy ``c`` (sound necessary test)."""
    if c.relation == "=":
        return unbounded_feasible(LinearAbstraction(c.coefficients, c.bound))
    # a negative coefficient makes the left side unbounded below
    if any(k < 0 for k in c.coefficients.values()):
        return True
    return c.bound >= 0


@dataclass(frozen=True)
class Mdd:
    variables: tuple[str, ...]
    coefficients: tuple[int, ...]
    bounds: tuple[int, ...]
    layers: tuple[frozenset, ...]  # layers[0] is the root layer -1
    accepting: frozenset = field(default_factory=frozenset)

    @property
    def empty(self) -> bool:
        return not self.accepting

    def nodes(self) -> set[tuple[int, int]]:
        return {(i - 1, s) for i, layer in enumerate(self.layers) for s in layer}

    def __len__(self):
        return sum(len(layer) for layer in self.layers)

    def edges(self):
        """Yield ``(layer, source_sum, k, target_sum, inside)`` for every edge
        leaving a node of this MDD; ``inside`` tells whether the target is a
        node of this MDD."""
        for i, x in enumerate(self.variables):
            c, bx = self.coefficients[i], self.bounds[i]
            nxt = self.layers[i + 1]
            for s in sorted(self.layers[i]):
                for k in range(bx + 1):
                    t = s + k * c
                    yield i, s, k, t, t in nxt

    def accepts(self, lengths: Sequence[int]) -> bool:
        """Whether a length vector traces a root-to-accepting path."""
        if not self.layers or 0 not in self.layers[0]:
            return False
        s = 0
        for i, k in enumerate(lengths):
            if not 0 <= k <= self.bounds[i]:
                return False
            s += k * self.coefficients[i]
            if s not in self.layers[i + 1]:
                return False
        return s in self.accepting

    def to_dot(self, name: str = "mdd") -> str:
        lines = [f"digraph {name} {{", "  rankdir=TB;"]

        def nid(layer, s):
            return f'"{layer}:{s}"'

        labels = ("-1",) + self.variables
        for i, layer in enumerate(self.layers):
            for s in sorted(layer):
                shape = "doublecircle" if i == len(self.layers) - 1 and s in self.accepting else "box"
                lines.append(f'  {nid(i - 1, s)} [label="({labels[i]},{s})", shape={shape}];')
        for i, s, k, t, inside in self.edges():
            if inside:
                lines.append(f'  {nid(i - 1, s)} -> {nid(i, t)} [label="{s} + {k}·{self.coefficients[i]}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _as_constraint(c) -> LinearConstraint:
    return c.as_constraint() if isinstance(c, LinearAbstraction) else c


def build_mdd(c, b: Mapping[str, int], order: Iterable[str] | None = None) -> Mdd:
    """Unreduced MDD for a constraint or abstraction.

    ``order`` lists the layer variables; by default the constraint's own
    coefficient order.  Variables in ``order`` without a coefficient get 0.
    """
    con = _as_constraint(c)
    vs = tuple(order) if order is not None else tuple(con.coefficients)
    coeffs = tuple(con.coefficients.get(x, 0) for x in vs)
    bounds = tuple(b[x] for x in vs)
    layers = [frozenset({0})]
    for c_i, b_i in zip(coeffs, bounds):
        layers.append(frozenset(s + k * c_i for s in layers[-1] for k in range(b_i + 1)))
    accepting = frozenset(s for s in layers[-1] if con.accepts(s))
    return Mdd(vs, coeffs, bounds, tuple(layers), accepting)


def reduce_mdd(m: Mdd, b: Mapping[str, int] | None = None) -> Mdd:
    """Keep the nodes from which an accepting node is reachable.

    ``b`` may override the per-layer bounds used for predecessor steps.
    """
    bounds = m.bounds if b is None else tuple(b[x] for x in m.variables)
    n = len(m.variables)
    kept: list[frozenset] = [frozenset()] * (n + 1)
    kept[n] = m.accepting & m.layers[n]
    for i in range(n - 1, -1, -1):
        c_i = m.coefficients[i]
        preds = {t - k * c_i for t in kept[i + 1] for k in range(bounds[i] + 1)}
        kept[i] = frozenset(preds & m.layers[i])
    if 0 not in kept[0]:
        kept = [frozenset()] * (n + 1)
    return Mdd(m.variables, m.coefficients, bounds, tuple(kept), kept[n])


def feasible(a, b: Mapping[str, int]) -> bool:
    return not build_mdd(a, b).empty
