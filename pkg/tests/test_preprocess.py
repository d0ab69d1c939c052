import random

from wesat.automaton import brute_force_solve
from wesat.core import verify_solution
from wesat.preprocess import (SAT, UNKNOWN, UNSAT, constant_sequence_mismatch, equation_unsat,
                              parikh_mismatch, prefix_suffix_mismatch, preprocess_pipeline,
                              strip_common_affixes, substitution_reasoning)

from conftest import eq, system


def test_strip_common_affixes():
    assert strip_common_affixes(eq("aaX", "aabY")) == eq("X", "bY")
    assert strip_common_affixes(eq("X", "X")) == eq("", "")
    assert strip_common_affixes(eq("Xa", "aX")) == eq("Xa", "aX")
    assert strip_common_affixes(eq("aXb", "aYb")) == eq("X", "Y")


def test_prefix_suffix_mismatch():
    assert prefix_suffix_mismatch(eq("abX", "aabY")) == UNSAT
    assert prefix_suffix_mismatch(eq("aX", "aY")) == UNKNOWN
    assert prefix_suffix_mismatch(eq("ba", "ab")) == UNSAT
    assert prefix_suffix_mismatch(eq("Xab", "Ybb")) == UNSAT


def test_constant_sequence_mismatch():
    assert constant_sequence_mismatch(eq("ababab", "XaabY")) == UNSAT
    assert constant_sequence_mismatch(eq("XaabY", "ababab")) == UNSAT
    assert constant_sequence_mismatch(eq("abab", "XabY")) == UNKNOWN
    assert constant_sequence_mismatch(eq("ab", "ab")) == UNKNOWN


def test_parikh_mismatch():
    assert parikh_mismatch(eq("aX", "Xb")) == UNSAT
    assert parikh_mismatch(eq("Xa", "aX")) == UNKNOWN
    assert parikh_mismatch(eq("ab", "ab")) == UNKNOWN


def test_checks_are_sound():
    """No structural check may reject an equation with a bounded solution."""
    rng = random.Random(17)
    for _ in range(600):
        sides = ["".join(rng.choice("abXY") for _ in range(rng.randint(0, 6))) for _ in range(2)]
        s = system(tuple(sides), letters="ab")
        b = {x: 3 for x in s.variables}
        if brute_force_solve(s, b).satisfiable:
            assert equation_unsat(s.equations[0]) == "", sides


def test_substitution_reasoning_sat():
    s = system(("X", "aab"), ("Y", "a"), ("aX", "Yaab"))
    v = substitution_reasoning(s)
    assert v.status == SAT
    assert v.witness == {"X": "aab", "Y": "a"}


def test_substitution_reasoning_conflict_and_noop():
    assert substitution_reasoning(system(("X", "a"), ("X", "b"))).status == UNSAT
    s = system(("XY", "YX"))
    v = substitution_reasoning(s)
    assert v.status == UNKNOWN and v.residual == s


def test_pipeline_examples():
    assert preprocess_pipeline(system(("aaX", "aabY"), ("abZ", "aabW"))).status == UNSAT
    v = preprocess_pipeline(system(("a", "a")))
    assert v.status == SAT and v.witness == {}
    v = preprocess_pipeline(system(("aZXb", "aXaY")))
    assert v.status == UNKNOWN
    assert v.residual.equations == (eq("ZXb", "XaY"),)


def test_pipeline_sat_witness_is_verified():
    s = system(("X", "aab"), ("Y", "a"), ("aX", "Yaab"))
    v = preprocess_pipeline(s)
    assert v.status == SAT and verify_solution(v.witness, s)
    # a bound excluding the forced word leaves no solution
    assert preprocess_pipeline(s, {"X": 2, "Y": 1}).status != SAT


def test_pipeline_bounded_abstraction():
    s = system(("X", "aaa"))
    assert preprocess_pipeline(s, {"X": 2}).status == UNSAT
    assert preprocess_pipeline(system(("XX", "aaa"))).status == UNSAT   # odd length


def test_pipeline_agrees_with_brute_force():
    rng = random.Random(23)
    for _ in range(400):
        pairs = [tuple("".join(rng.choice("abXY") for _ in range(rng.randint(0, 5)))
                       for _ in range(2)) for _ in range(rng.randint(1, 2))]
        s = system(*pairs, letters="ab")
        b = {x: 2 for x in s.variables}
        bf = brute_force_solve(s, b)
        for bounds in (b, None):
            v = preprocess_pipeline(s, bounds)
            if v.status == UNSAT and bounds is not None:
                assert not bf.satisfiable, pairs
            if v.status == UNSAT and bounds is None:
                assert not bf.satisfiable, pairs
            if v.status == SAT:
                assert verify_solution(v.witness, s, bounds)


def test_pipeline_rejects_infeasible_constraints():
    from wesat.linear import LinearConstraint
    s = system(("XY", "YX"), constraints=[LinearConstraint({"X": 1, "Y": 1}, -1)], letters="a")
    assert preprocess_pipeline(s).status == UNSAT
    assert preprocess_pipeline(s, {"X": 2, "Y": 2}).status == UNSAT
    s = system(("XY", "YX"), constraints=[LinearConstraint({"X": 1}, 5)], letters="a")
    assert preprocess_pipeline(s, {"X": 2, "Y": 2}).status != UNSAT
