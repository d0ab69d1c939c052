"""Seeded generators for five benchmark families.

All randomness flows through one ``random.Random(seed)`` per call, so equal
specs give byte-identical instances.  Random instances are built from a
hidden witness: pick an image word for every variable, concatenate letters
and images into a word ``w``, and then rewrite each side of ``w = w`` by
replacing some occurrences of images with their variable.  The witness
therefore solves every generated equation.

Families:

1. one random equation (≤ 15 variables, 10 letters, length 300);
2. the parametric family ``X_n a X_n b X_{n-1} ... b X_1 =
   a X_n X_{n-1} X_{n-1} b ... b X_1 X_1 b a a``, whose least solution is
   ``X_k = a^(2^k)``;
3. family 2 with the k-th ``b`` on each side replaced by the two sides of a
   fresh random equation;
4. a system of 100 small random equations over a shared variable pool;
5. 30 such equations plus linear length constraints, either consistent
   with the witness or contradictory.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from pathlib import Path

from .core import EquationSystem, Pattern, Symbol, WordEquation, WordEquationError, verify_solution
from .linear import LinearConstraint
from .problem import format_problem

# Variables are single characters; Greek and Cyrillic capitals extend the pool past Z.
VARIABLE_POOL = "ABCDEFGHIJKLMNOPQRSTUVWXYZ" + "ΓΔΘΛΞΠΣΦΨΩ" + "БГДЖЗИЙЛПФЦЧШЩЭЮЯ"
LETTER_POOL = "abcdefghijklmnopqrstuvwxyz"

_DEFAULTS = {
    1: dict(variables=15, letters=10, length=300, equations=1),
    2: dict(n=3),
    3: dict(n=3, variables=3, letters=3, length=6),
    4: dict(variables=10, letters=6, length=60, equations=100),
    5: dict(variables=10, letters=6, length=60, equations=30, constraints=3),
}


@dataclass(frozen=True)
class GenSpec:
    """What to generate.  ``None`` fields take the family's default."""

    track: int
    seed: int = 0
    variables: int | None = None
    letters: int | None = None
    length: int | None = None
    equations: int | None = None
    n: int | None = None
    constraints: int | None = None
    contradiction: bool = False
    density: float = 0.5        # chance to replace an image occurrence by its variable

    def __post_init__(self):
        if self.track not in _DEFAULTS:
            raise ValueError(f"track must be 1..5, got {self.track}")
        if not 0.0 <= self.density <= 1.0:
            raise ValueError("density must lie in [0, 1]")

    def resolved(self) -> "GenSpec":
        vals = {k: v for k, v in _DEFAULTS[self.track].items() if getattr(self, k) is None}
        spec = replace(self, **vals)
        if spec.variables is not None and not 0 <= spec.variables <= len(VARIABLE_POOL):
            raise ValueError(f"at most {len(VARIABLE_POOL)} variables are available")
        if spec.letters is not None and not 1 <= spec.letters <= len(LETTER_POOL):
            raise ValueError(f"letters must be in 1..{len(LETTER_POOL)}")
        return spec


@dataclass
class Instance:
    """A generated system with its construction witness.

    ``expected`` is ``"SAT"`` when ``witness`` solves the system, ``"UNSAT"``
    for contradictory-by-construction instances, ``None`` when unknown.
    """

    system: EquationSystem
    witness: dict[str, str] | None
    expected: str | None
    spec: GenSpec
    comments: tuple[str, ...] = field(default_factory=tuple)

    def to_text(self) -> str:
        return format_problem(self.system, self.comments)


def _random_images(rng: random.Random, names, letters, max_len: int) -> dict[str, str]:
    return {x: "".join(rng.choice(letters) for _ in range(rng.randint(1, max_len))) for x in names}


def _random_word(rng, letters, images: dict[str, str], length: int) -> str:
    """Concatenate single letters and variable images up to ``length``."""
    names = list(images)
    parts, size = [], 0
    while size < length:
        if names and rng.random() < 0.5:
            w = images[rng.choice(names)]
        else:
            w = rng.choice(letters)
        if size + len(w) > length:
            w = rng.choice(letters)
        parts.append(w)
        size += len(w)
    return "".join(parts)


def _abstract(rng, word: str, images: dict[str, str], density: float) -> Pattern:
    """Rewrite ``word`` left to right, replacing image occurrences by their variable."""
    out, i = [], 0
    names = list(images)
    while i < len(word):
        fits = [x for x in names if word.startswith(images[x], i)]
        if fits and rng.random() < density:
            x = rng.choice(fits)
            out.append(Symbol(x, True))
            i += len(images[x])
        else:
            out.append(Symbol(word[i], False))
            i += 1
    return Pattern(tuple(out))


def _random_equation(rng, letters, images, length, density) -> WordEquation:
    w = _random_word(rng, letters, images, length)
    return WordEquation(_abstract(rng, w, images, density), _abstract(rng, w, images, density))


def _system(equations, letters, witness, constraints=()) -> tuple[EquationSystem, dict[str, str]]:
    sys = EquationSystem.from_equations(equations, constraints, letters=letters)
    return sys, {x: witness[x] for x in sys.variables}


def _header(spec: GenSpec) -> tuple[str, ...]:
    fields = ", ".join(f"{k}={getattr(spec, k)}" for k in
                       ("seed", "variables", "letters", "length", "equations", "n",
                        "constraints", "contradiction", "density")
                       if getattr(spec, k) is not None and getattr(spec, k) is not False)
    return (f"track {spec.track}: {fields}",)


def _random_system(spec: GenSpec, rng: random.Random, count: int):
    letters = LETTER_POOL[:spec.letters]
    names = VARIABLE_POOL[:spec.variables]
    images = _random_images(rng, names, letters, max(1, min(5, spec.length // 4)))
    eqs = [_random_equation(rng, letters, images, rng.randint(1, spec.length), spec.density)
           for _ in range(count)]
    return eqs, letters, images


def gen_track1(spec: GenSpec) -> Instance:
    spec = replace(spec, track=1).resolved()
    rng = random.Random(spec.seed)
    eqs, letters, images = _random_system(spec, rng, 1)
    sys, witness = _system(eqs, letters, images)
    return Instance(sys, witness, "SAT", spec, _header(spec))


def track2_equation(n: int, names: str = VARIABLE_POOL) -> WordEquation:
    """The exponential-solution family; ``names[k-1]`` plays ``X_k``.

    For ``n = 1`` the ``b``-separated tail is empty: ``X a X = a X a a``.
    """
    if n < 1:
        raise WordEquationError("the family index n must be at least 1")
    if n > len(names):
        raise WordEquationError(f"n = {n} needs more than {len(names)} variable names")
    X = [Symbol(names[k - 1], True) for k in range(n + 1)]  # X[k] for k >= 1
    a, b = Symbol("a", False), Symbol("b", False)
    lhs = [X[n], a, X[n]]
    rhs = [a, X[n]]
    for k in range(n - 1, 0, -1):
        lhs += [b, X[k]]
        rhs += [X[k], X[k], b]
    rhs += [a, a]
    return WordEquation(Pattern(tuple(lhs)), Pattern(tuple(rhs)))


def track2_solution(n: int, names: str = VARIABLE_POOL) -> dict[str, str]:
    return {names[k - 1]: "a" * 2 ** k for k in range(1, n + 1)}


def gen_track2(n: int) -> WordEquation:
    return track2_equation(n)


def track2_instance(spec: GenSpec) -> Instance:
    spec = replace(spec, track=2).resolved()
    eq = track2_equation(spec.n)
    sys = EquationSystem.from_equations([eq], letters="ab")
    return Instance(sys, track2_solution(spec.n), "SAT", spec, _header(spec))


def gen_track3(spec: GenSpec) -> Instance:
    """Family 2 with each ``b`` pair replaced by the sides of a fresh equation.

    ``length = 0`` keeps the ``b`` letters, which gives family 2 back.
    """
    spec = replace(spec, track=3).resolved()
    rng = random.Random(spec.seed)
    n = spec.n
    skeleton = track2_equation(n)
    if spec.length == 0:
        sys = EquationSystem.from_equations([skeleton], letters="ab")
        return Instance(sys, track2_solution(n), "SAT", spec, _header(spec))
    letters = LETTER_POOL[:max(2, spec.letters)]
    fresh = VARIABLE_POOL[n:]
    if len(fresh) < (n - 1) * spec.variables:
        raise WordEquationError("variable pool exhausted; lower n or variables")
    pairs = []
    for k in range(n - 1):
        names = fresh[k * spec.variables:(k + 1) * spec.variables]
        images = _random_images(rng, names, letters, 3)
        pairs.append(_random_equation(rng, letters, images, rng.randint(1, spec.length), spec.density))

    def splice(p: Pattern, side: int) -> Pattern:
        out, k = [], 0
        for s in p:
            if not s.is_var and s.id == "b" and k < len(pairs):
                e = pairs[k]
                out.extend((e.lhs if side == 0 else e.rhs).symbols)
                k += 1
            else:
                out.append(s)
        return Pattern(tuple(out))

    eq = WordEquation(splice(skeleton.lhs, 0), splice(skeleton.rhs, 1))
    sys = EquationSystem.from_equations([eq], letters="ab")
    return Instance(sys, None, None, spec, _header(spec))


def gen_track4(spec: GenSpec) -> Instance:
    spec = replace(spec, track=4).resolved()
    rng = random.Random(spec.seed)
    eqs, letters, images = _random_system(spec, rng, spec.equations)
    sys, witness = _system(eqs, letters, images)
    return Instance(sys, witness, "SAT", spec, _header(spec))


def _witness_constraints(rng, names, lengths, count):
    """Constraints that the witness lengths satisfy: slack bounds and one exact sum."""
    out = []
    for _ in range(count):
        vs = rng.sample(names, rng.randint(1, min(3, len(names))))
        coeffs = {x: rng.choice((-2, -1, 1, 2)) for x in vs}
        value = sum(c * lengths[x] for x, c in coeffs.items())
        out.append(LinearConstraint(coeffs, value + rng.randint(0, 2), "<="))
    if names and count:
        vs = rng.sample(names, min(2, len(names)))
        total = sum(lengths[x] for x in vs)
        out.append(LinearConstraint({x: 1 for x in vs}, total, "<="))
        out.append(LinearConstraint({x: -1 for x in vs}, -total, "<="))
    return out


def gen_track5(spec: GenSpec) -> Instance:
    spec = replace(spec, track=5).resolved()
    rng = random.Random(spec.seed)
    eqs, letters, images = _random_system(spec, rng, spec.equations)
    used = EquationSystem.from_equations(eqs, letters=letters).variables
    if spec.contradiction:
        names = used or tuple(images)[:1]
        cons = [LinearConstraint({x: 1 for x in names}, -1, "<=")]
        sys = EquationSystem.from_equations(eqs, cons, letters=letters)
        return Instance(sys, None, "UNSAT", spec, _header(spec))
    lengths = {x: len(w) for x, w in images.items()}
    cons = _witness_constraints(rng, list(used), lengths, spec.constraints)
    sys, witness = _system(eqs, letters, images, cons)
    return Instance(sys, witness, "SAT", spec, _header(spec))


def generate(spec: GenSpec) -> Instance:
    """Dispatch on ``spec.track``."""
    gen = {1: gen_track1, 2: track2_instance, 3: gen_track3, 4: gen_track4, 5: gen_track5}
    inst = gen[spec.track](spec)
    if inst.expected == "SAT" and not verify_solution(inst.witness, inst.system):
        raise WordEquationError(f"generator witness fails for {spec}")
    return inst


def write_instances(track: int, seed: int, count: int, out_dir, **overrides) -> list[Path]:
    """Write ``count`` instances with seeds ``seed, seed+1, ...``."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for k in range(count):
        s = seed + k
        if track == 2:
            spec = GenSpec(2, s, n=overrides.get("n") or k + 1)
        else:
            spec = GenSpec(track, s, **overrides)
        p = out / f"track{track}_{k:04d}.eq"
        p.write_text(generate(spec).to_text(), encoding="utf-8")
        paths.append(p)
    return paths


def random_small_system(rng: random.Random, max_letters: int = 2, max_vars: int = 3,
                        max_side: int = 6, max_bound: int = 3, max_equations: int = 1,
                        constraint_prob: float = 0.3):
    """Unstructured small system plus total bounds, for differential testing."""
    letters = "ab"[:rng.randint(1, max_letters)]
    names = "XYZ"[:rng.randint(1, max_vars)]

    def side():
        return "".join(rng.choice(letters + names) for _ in range(rng.randint(0, max_side)))

    eqs = [WordEquation.parse(side(), side(), names) for _ in range(rng.randint(1, max_equations))]
    cons = []
    if rng.random() < constraint_prob:
        cons = [LinearConstraint({x: rng.randint(-2, 2) for x in names}, rng.randint(-2, 4))]
    sys = EquationSystem(tuple(names), tuple(letters), tuple(eqs), tuple(cons))
    bounds = {x: rng.randint(0, max_bound) for x in names}
    return sys, bounds
