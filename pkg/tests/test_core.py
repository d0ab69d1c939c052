import random

import pytest
from hypothesis import given, strategies as st

from wesat.core import (INITIAL, LAMBDA, BoundError, EquationSystem, FilledVariable, Pattern,
                        WordEquation, WordEquationError, apply_substitution, compatible,
                        decode_filled_assignment, extend, fill_pattern,
                        induced_filled_assignment, verify_solution)
from wesat.linear import LinearConstraint

from conftest import POWER_BOUNDS, eq, system

X0, X1, X2 = (FilledVariable("X", i) for i in range(3))


def test_pattern_parse_uppercase_variables():
    p = Pattern.parse("aXbY")
    assert [s.is_var for s in p] == [False, True, False, True]
    assert p.variables() == ["X", "Y"]
    assert p.letters() == {"a", "b"}
    assert str(p) == "aXbY"
    assert p.count("X") == 1 and not p.is_ground()


def test_pattern_parse_explicit_variables():
    p = Pattern.parse("xAy", variables="x")
    assert [s.is_var for s in p] == [True, False, False]


def test_fill_pattern_unit_bounds():
    p = Pattern.parse("aZXb")
    assert fill_pattern(p, {"X": 1, "Y": 1, "Z": 1}) == ("a", FilledVariable("Z", 0), X0, "b")


def test_fill_pattern_letters_only():
    assert fill_pattern(Pattern.parse("ab"), {}) == ("a", "b")


def test_fill_pattern_lengths_give_grid_size():
    u = fill_pattern(Pattern.parse("XaXbYbZ"), POWER_BOUNDS)
    v = fill_pattern(Pattern.parse("aXYYbZZbaa"), POWER_BOUNDS)
    assert (len(u), len(v)) == (31, 37)
    assert (len(u) + 1) * (len(v) + 1) == 1216


def test_fill_pattern_missing_bound():
    with pytest.raises(BoundError):
        fill_pattern(Pattern.parse("X"), {})


def test_induced_assignment_pads_with_lambda():
    f = induced_filled_assignment({"X": "ab"}, {"X": 3})
    assert f == {X0: "a", X1: "b", X2: LAMBDA}
    assert induced_filled_assignment({"X": ""}, {"X": 2}) == {X0: LAMBDA, X1: LAMBDA}


def test_induced_assignment_several_variables():
    f = induced_filled_assignment({"Z": "a", "X": "", "Y": "b"}, {"X": 1, "Y": 1, "Z": 1})
    assert f == {FilledVariable("Z", 0): "a", X0: LAMBDA, FilledVariable("Y", 0): "b"}


def test_induced_assignment_rejects_long_word():
    with pytest.raises(BoundError):
        induced_filled_assignment({"X": "abc"}, {"X": 2})


def test_decode():
    assert decode_filled_assignment({X0: "a", X1: LAMBDA}, {"X": 2}) == {"X": "a"}
    assert decode_filled_assignment({X0: LAMBDA, X1: LAMBDA}, {"X": 2}) == {"X": ""}


def test_decode_inverts_induce_random():
    rng = random.Random(5)
    for _ in range(100):
        b = {x: rng.randint(0, 4) for x in "XYZ"}
        s = {x: "".join(rng.choice("ab") for _ in range(rng.randint(0, b[x]))) for x in b}
        assert decode_filled_assignment(induced_filled_assignment(s, b), b) == s


@given(st.dictionaries(st.sampled_from("XYZ"), st.text("abc", max_size=5)),
       st.integers(0, 3))
def test_decode_inverts_induce_property(s, slack):
    b = {x: len(w) + slack for x, w in s.items()}
    assert decode_filled_assignment(induced_filled_assignment(s, b), b) == s


def test_apply_substitution():
    assert apply_substitution({"X": "a", "Y": "b"}, Pattern.parse("XabY")) == "aabb"
    assert apply_substitution({}, Pattern.parse("ab")) == "ab"
    s = {"A": "", "B": "b", "C": "a"}
    assert apply_substitution(s, Pattern.parse("aAaB")) == "aab"
    assert apply_substitution(s, Pattern.parse("aCAb")) == "aab"


def test_apply_substitution_unmapped_variable():
    with pytest.raises(WordEquationError):
        apply_substitution({}, Pattern.parse("X"))


def test_verify_solution(ex_two_solutions, ex_powers):
    assert verify_solution({"Z": "a", "X": "a", "Y": "b"}, ex_two_solutions)
    assert not verify_solution({"Z": "a", "X": "a", "Y": "a"}, ex_two_solutions)
    assert verify_solution({"X": "a" * 8, "Y": "a" * 4, "Z": "aa"}, ex_powers)


def test_verify_solution_checks_bounds_letters_constraints():
    s = system(("X", "X"), constraints=[LinearConstraint({"X": 1}, 1)], bounds={"X": 2},
               letters="ab")
    assert verify_solution({"X": "a"}, s)
    assert not verify_solution({"X": "aa"}, s)           # constraint
    assert not verify_solution({"X": "aaa"}, s)          # bound
    assert not verify_solution({"X": "c"}, s)            # undeclared letter
    assert not verify_solution({"X": "a"}, s, {"X": 0})  # extra bound


def test_system_declaration_checks():
    e = eq("Xa", "aX")
    with pytest.raises(WordEquationError):
        EquationSystem(("X",), ("a", "X"), (e,))
    with pytest.raises(WordEquationError):
        EquationSystem((), ("a",), (e,))
    with pytest.raises(WordEquationError):
        EquationSystem(("X",), (), (e,))
    with pytest.raises(WordEquationError):
        EquationSystem(("X",), ("a",), (e,), bounds={"Y": 1})


def test_compatible():
    assert compatible("a", "a", INITIAL)
    assert not compatible("a", "b", INITIAL)
    assert compatible(X0, "a", INITIAL)
    s = extend(INITIAL, X0, "b")
    assert not compatible(X0, "a", s)
    assert compatible(X0, X1, s)
    assert compatible(LAMBDA, LAMBDA, INITIAL)
    assert not compatible("a", LAMBDA, INITIAL)


def test_extend():
    s = extend(INITIAL, X0, "a")
    assert s.lookup(X0) == "a"
    assert extend(s, X0, "a") == s
    assert extend(s, X0, "b").lookup(X0) == "a"
    assert extend(s, "a", "b") is s          # letters are never stored
    assert len(INITIAL) == 0 and hash(s) == hash(extend(INITIAL, X0, "a"))
