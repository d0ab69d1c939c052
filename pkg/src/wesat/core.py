"""Patterns, word equations, bounds, filled variables and substitutions.

Letters and variables are single-character identifiers.  A pattern is a
sequence of :class:`Symbol` values; a substitution maps variable ids to
words over the letters, and words are plain ``str`` objects since every
letter is one character.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence


class WordEquationError(Exception):
    """Base class for errors raised by this package."""


class BoundError(WordEquationError):
    """A bound is missing or a substitution exceeds one."""


class ResourceLimitError(WordEquationError):
    """An explicit search or enumeration cutoff was exceeded."""


class SoundnessError(WordEquationError):
    """A model decoded to a substitution that fails verification."""


class _Lambda:
    """Padding symbol for unused trailing slots of a filled variable."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "λ"

    def __reduce__(self):
        return (_Lambda, ())

    def __lt__(self, other):
        # sorts before every letter so K-variable ordering is stable
        return not isinstance(other, _Lambda)


LAMBDA = _Lambda()


@dataclass(frozen=True)
class Symbol:
    id: str
    is_var: bool

    def __str__(self):
        return self.id


@dataclass(frozen=True)
class Pattern:
    symbols: tuple[Symbol, ...] = ()

    @classmethod
    def parse(cls, text: str, variables: Iterable[str] | None = None) -> "Pattern":
        """Build a pattern from a string of single-character symbols.

        Without an explicit variable set, uppercase characters are variables.
        """
        if variables is None:
            return cls(tuple(Symbol(c, c.isupper()) for c in text))
        vs = set(variables)
        return cls(tuple(Symbol(c, c in vs) for c in text))

    def __len__(self):
        return len(self.symbols)

    def __iter__(self) -> Iterator[Symbol]:
        return iter(self.symbols)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return Pattern(self.symbols[i])
        return self.symbols[i]

    def __add__(self, other: "Pattern") -> "Pattern":
        return Pattern(self.symbols + other.symbols)

    def __str__(self):
        return "".join(s.id for s in self.symbols)

    def variables(self) -> list[str]:
        """Variables in order of first occurrence."""
        seen: dict[str, None] = {}
        for s in self.symbols:
            if s.is_var:
                seen.setdefault(s.id)
        return list(seen)

    def letters(self) -> set[str]:
        return {s.id for s in self.symbols if not s.is_var}

    def count(self, ident: str) -> int:
        return sum(1 for s in self.symbols if s.id == ident)

    def is_ground(self) -> bool:
        return not any(s.is_var for s in self.symbols)


@dataclass(frozen=True)
class WordEquation:
    lhs: Pattern
    rhs: Pattern

    @classmethod
    def parse(cls, lhs: str, rhs: str, variables: Iterable[str] | None = None) -> "WordEquation":
        if variables is not None:
            variables = list(variables)
        return cls(Pattern.parse(lhs, variables), Pattern.parse(rhs, variables))

    def variables(self) -> list[str]:
        return (self.lhs + self.rhs).variables()

    def letters(self) -> set[str]:
        return self.lhs.letters() | self.rhs.letters()

    def __str__(self):
        return f"{self.lhs} = {self.rhs}"


Bounds = dict[str, int]
Substitution = dict[str, str]


@dataclass(frozen=True)
class EquationSystem:
    """Equations plus linear length constraints over declared symbols.

    ``bounds`` holds user-declared per-variable bounds and may be partial;
    solving routines complete it.  ``constraints`` holds
    :class:`wesat.linear.LinearConstraint` objects.
    """

    variables: tuple[str, ...]
    letters: tuple[str, ...]
    equations: tuple[WordEquation, ...] = ()
    constraints: tuple = ()
    bounds: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        clash = set(self.variables) & set(self.letters)
        if clash:
            raise WordEquationError(f"symbols declared as letter and variable: {sorted(clash)}")
        vs, ls = set(self.variables), set(self.letters)
        for eq in self.equations:
            for s in eq.lhs.symbols + eq.rhs.symbols:
                if s.is_var and s.id not in vs:
                    raise WordEquationError(f"undeclared variable {s.id!r} in {eq}")
                if not s.is_var and s.id not in ls:
                    raise WordEquationError(f"undeclared letter {s.id!r} in {eq}")
        for c in self.constraints:
            for x in c.coefficients:
                if x not in vs:
                    raise WordEquationError(f"undeclared variable {x!r} in linear constraint")
        for x in self.bounds:
            if x not in vs:
                raise WordEquationError(f"bound for undeclared variable {x!r}")

    @classmethod
    def from_equations(cls, equations: Sequence[WordEquation], constraints=(), bounds=None,
                       letters: Iterable[str] = ()) -> "EquationSystem":
        """Declare exactly the symbols occurring in ``equations``."""
        vs: dict[str, None] = {}
        ls: dict[str, None] = dict.fromkeys(letters)
        for eq in equations:
            vs.update(dict.fromkeys(eq.variables()))
            for s in eq.lhs.symbols + eq.rhs.symbols:
                if not s.is_var:
                    ls.setdefault(s.id)
        for c in constraints:
            vs.update(dict.fromkeys(c.coefficients))
        return cls(tuple(vs), tuple(ls), tuple(equations), tuple(constraints), dict(bounds or {}))

    def replace(self, **changes) -> "EquationSystem":
        args = dict(variables=self.variables, letters=self.letters, equations=self.equations,
                    constraints=self.constraints, bounds=self.bounds)
        args.update(changes)
        return EquationSystem(**args)


class FilledVariable(NamedTuple):
    base: str
    index: int

    def __repr__(self):
        return f"{self.base}({self.index})"


# a cell of a filled pattern is a letter id or a FilledVariable
Cell = "str | FilledVariable"


def fill_pattern(p: Pattern, b: Mapping[str, int]) -> tuple:
    cells: list = []
    for s in p:
        if not s.is_var:
            cells.append(s.id)
            continue
        if s.id not in b:
            raise BoundError(f"no bound for variable {s.id!r}")
        cells.extend(FilledVariable(s.id, i) for i in range(b[s.id]))
    return tuple(cells)


def induced_filled_assignment(s: Mapping[str, str], b: Mapping[str, int]) -> dict:
    out = {}
    for x, bound in b.items():
        word = s.get(x, "")
        if len(word) > bound:
            raise BoundError(f"|S({x})| = {len(word)} exceeds bound {bound}")
        for i in range(bound):
            out[FilledVariable(x, i)] = word[i] if i < len(word) else LAMBDA
    return out


def decode_filled_assignment(f: Mapping, b: Mapping[str, int]) -> Substitution:
    return {
        x: "".join(v for v in (f[FilledVariable(x, i)] for i in range(bound)) if v is not LAMBDA)
        for x, bound in b.items()
    }


def apply_substitution(s: Mapping[str, str], p: Pattern) -> str:
    parts = []
    for sym in p:
        if sym.is_var:
            if sym.id not in s:
                raise WordEquationError(f"substitution does not map {sym.id!r}")
            parts.append(s[sym.id])
        else:
            parts.append(sym.id)
    return "".join(parts)


def verify_solution(s: Mapping[str, str], sys: EquationSystem,
                    bounds: Mapping[str, int] | None = None) -> bool:
    """Check equations, bounds and linear constraints under ``s``.

    Bounds are taken from ``sys.bounds`` and, if given, ``bounds``.
    Variables missing from ``s`` count as mapped to the empty word.
    """
    full = {x: s.get(x, "") for x in sys.variables}
    letters = set(sys.letters)
    for word in full.values():
        if not set(word) <= letters:
            return False
    for bmap in (sys.bounds, bounds or {}):
        for x, bound in bmap.items():
            if len(full.get(x, "")) > bound:
                return False
    for eq in sys.equations:
        if apply_substitution(full, eq.lhs) != apply_substitution(full, eq.rhs):
            return False
    lengths = {x: len(w) for x, w in full.items()}
    return all(c.holds(lengths) for c in sys.constraints)


class PartialFilledAssignment(Mapping):
    """Immutable partial map from filled variables to letters or λ.

    Letters and λ are implicitly mapped to themselves and never stored.
    """

    __slots__ = ("_values", "_hash")

    def __init__(self, values: Mapping | None = None):
        self._values = dict(values or {})
        self._hash = None

    def lookup(self, x):
        """Image of a letter, λ or filled variable; ``None`` when undefined."""
        if isinstance(x, FilledVariable):
            return self._values.get(x)
        return x

    def __getitem__(self, key):
        return self._values[key]

    def __iter__(self):
        return iter(self._values)

    def __len__(self):
        return len(self._values)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._values.items()))
        return self._hash

    def __eq__(self, other):
        if isinstance(other, PartialFilledAssignment):
            return self._values == other._values
        return NotImplemented

    def __repr__(self):
        inner = ", ".join(f"{k!r}↦{v!r}" for k, v in sorted(self._values.items()))
        return f"{{{inner}}}"


INITIAL = PartialFilledAssignment()


def compatible(x, y, s: PartialFilledAssignment) -> bool:
    sx, sy = s.lookup(x), s.lookup(y)
    return sx is None or sy is None or sx == sy


def extend(s: PartialFilledAssignment, x, v) -> PartialFilledAssignment:
    if not isinstance(x, FilledVariable) or x in s:
        return s
    values = dict(s._values)
    values[x] = v
    return PartialFilledAssignment(values)
