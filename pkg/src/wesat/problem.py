"""Line-oriented problem files.

::

    # comment
    Variables {XYZ}
    Terminals {ab}
    Equation: aZXb = aXaY
    Bound: X 8
    LinConstraint: 2 X -1 Y <= 3

Every character inside the braces declares one symbol.  Equation sides are
written without spaces and separated by `` = ``; an empty side is written
as nothing.
"""

from __future__ import annotations

import re

from .core import EquationSystem, Pattern, Symbol, WordEquation, WordEquationError
from .linear import LinearConstraint


class ParseError(WordEquationError):
    def __init__(self, msg: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {msg}")
        self.line = line
        self.column = column


_DECL = re.compile(r"^(Variables|Terminals)\s*\{(.*)\}\s*$")
_KEYWORD = re.compile(r"^(Equation|Bound|LinConstraint)\s*:(.*)$")


def _strip_comment(line: str) -> str:
    k = line.find("#")
    return line if k < 0 else line[:k]


def parse_problem(text: str) -> EquationSystem:
    variables: list[str] = []
    letters: list[str] = []
    declared: dict[str, tuple[int, int]] = {}
    raw_equations: list[tuple[int, int, str, str, int]] = []
    bounds: dict[str, int] = {}
    bound_pos: dict[str, tuple[int, int]] = {}
    raw_constraints: list[tuple[int, int, list[tuple[int, str]], int]] = []

    for lineno, full in enumerate(text.splitlines(), 1):
        line = _strip_comment(full)
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        body = line.strip()
        m = _DECL.match(body)
        if m:
            target = variables if m.group(1) == "Variables" else letters
            start = full.index("{") + 2
            for off, c in enumerate(m.group(2)):
                if c.isspace():
                    continue
                if c in declared:
                    raise ParseError(f"symbol {c!r} declared twice", lineno, start + off)
                declared[c] = (lineno, start + off)
                target.append(c)
            continue
        m = _KEYWORD.match(body)
        if not m:
            raise ParseError(f"unrecognised line {body!r}", lineno, indent + 1)
        kind, rest = m.group(1), m.group(2)
        rest_col = indent + len(kind) + 2 + (len(rest) - len(rest.lstrip()))
        tokens = rest.split()
        if kind == "Equation":
            if tokens.count("=") != 1 or len(tokens) > 3 or (len(tokens) == 3 and tokens[1] != "="):
                raise ParseError("expected '<lhs> = <rhs>'", lineno, rest_col)
            k = tokens.index("=")
            lhs = tokens[0] if k == 1 else ""
            rhs = tokens[k + 1] if k + 1 < len(tokens) else ""
            lhs_col = full.find(lhs) + 1 if lhs else rest_col
            rhs_col = full.rfind(rhs) + 1 if rhs else rest_col
            raw_equations.append((lineno, lhs_col, lhs, rhs, rhs_col))
        elif kind == "Bound":
            if len(tokens) != 2:
                raise ParseError("expected 'Bound: <variable> <natural>'", lineno, rest_col)
            x, n = tokens
            if not n.isdigit():
                raise ParseError(f"bound {n!r} is not a natural number", lineno, full.rfind(n) + 1)
            if x in bounds:
                raise ParseError(f"duplicate bound for {x!r}", lineno, rest_col)
            bounds[x] = int(n)
            bound_pos[x] = (lineno, full.find(x, rest_col - 1) + 1)
        else:
            if len(tokens) < 2 or tokens[-2] != "<=" or len(tokens) % 2:
                raise ParseError("expected '<c> <X> ... <= <c>'", lineno, rest_col)
            try:
                rhs_val = int(tokens[-1])
                terms = [(int(tokens[i]), tokens[i + 1]) for i in range(0, len(tokens) - 2, 2)]
            except ValueError:
                raise ParseError("coefficients must be integers", lineno, rest_col) from None
            raw_constraints.append((lineno, rest_col, terms, rhs_val))

    vset, lset = set(variables), set(letters)

    def pattern(word: str, lineno: int, col: int) -> Pattern:
        syms = []
        for off, c in enumerate(word):
            if c in vset:
                syms.append(Symbol(c, True))
            elif c in lset:
                syms.append(Symbol(c, False))
            else:
                raise ParseError(f"undeclared symbol {c!r}", lineno, col + off)
        return Pattern(tuple(syms))

    equations = []
    for lineno, lcol, lhs, rhs, rcol in raw_equations:
        equations.append(WordEquation(pattern(lhs, lineno, lcol), pattern(rhs, lineno, rcol)))
    for x in bounds:
        if x not in vset:
            raise ParseError(f"bound for undeclared variable {x!r}", *bound_pos[x])
    constraints = []
    for lineno, col, terms, rhs_val in raw_constraints:
        coeffs: dict[str, int] = {}
        for c, x in terms:
            if x not in vset:
                raise ParseError(f"{x!r} is not a declared variable", lineno, col)
            coeffs[x] = coeffs.get(x, 0) + c
        constraints.append(LinearConstraint(coeffs, rhs_val, "<="))
    return EquationSystem(tuple(variables), tuple(letters), tuple(equations),
                          tuple(constraints), bounds)


def format_problem(sys: EquationSystem, comments=()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append("Variables {" + "".join(sys.variables) + "}")
    lines.append("Terminals {" + "".join(sys.letters) + "}")
    for eq in sys.equations:
        lines.append(f"Equation: {eq.lhs} = {eq.rhs}")
    for x, b in sys.bounds.items():
        lines.append(f"Bound: {x} {b}")
    for c in sys.constraints:
        if c.relation != "<=":
            raise WordEquationError("only '<=' constraints can be written")
        terms = " ".join(f"{k} {x}" for x, k in c.coefficients.items())
        lines.append(f"LinConstraint: {terms} <= {c.bound}")
    return "\n".join(lines) + "\n"
