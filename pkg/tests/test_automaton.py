import random

import pytest

from wesat.automaton import (AutomatonState, EquationAutomaton, brute_force_solve,
                             enumerate_solutions, reachable_search, successors)
from wesat.core import INITIAL, LAMBDA, FilledVariable, ResourceLimitError, fill_pattern
from wesat.linear import length_abstraction

from conftest import POWER_BOUNDS, eq, system

ONE = {"X": 1, "Y": 1, "Z": 1}
TWO_SOLUTIONS = [{"X": "", "Y": "b", "Z": "a"}, {"X": "a", "Y": "b", "Z": "a"}]


def test_successors_from_inner_location():
    e = eq("aZXb", "aXaY")
    u, v = fill_pattern(e.lhs, ONE), fill_pattern(e.rhs, ONE)
    out = successors(AutomatonState(1, 1, INITIAL), u, v, "ab")
    assert {(s.i, s.j) for s in out} == {(2, 1), (1, 2), (2, 2)}
    Z0, X0 = FilledVariable("Z", 0), FilledVariable("X", 0)
    diag = {s.assignment.lookup(Z0) for s in out if (s.i, s.j) == (2, 2)}
    assert diag == {"a", "b", LAMBDA}
    assert all(s.assignment.lookup(X0) == LAMBDA for s in out if (s.i, s.j) == (1, 2))


def test_successors_at_corner_and_stuck():
    assert successors(AutomatonState(1, 1, INITIAL), ("a",), ("a",), "a") == set()
    assert successors(AutomatonState(0, 0, INITIAL), ("a",), ("b",), "ab") == set()


def test_reachable_search():
    assert reachable_search(eq("aZXb", "aXaY"), ONE).satisfiable
    assert not reachable_search(eq("a", "b"), {}).satisfiable
    assert reachable_search(eq("XaXbYbZ", "aXYYbZZbaa"), POWER_BOUNDS).satisfiable


def test_enumerate_two_solutions():
    assert enumerate_solutions(eq("aZXb", "aXaY"), ONE).solutions == TWO_SOLUTIONS
    assert enumerate_solutions(eq("a", "a"), {}).solutions == [{}]
    assert enumerate_solutions(eq("X", "a"), {"X": 1}).solutions == [{"X": "a"}]


def test_brute_force(ex_two_solutions, ex_lengths):
    assert brute_force_solve(ex_two_solutions, ONE).solutions == TWO_SOLUTIONS
    assert not brute_force_solve(system(("ab", "ba"))).satisfiable
    con = ex_lengths.replace(constraints=(length_abstraction(ex_lengths.equations[0]).as_constraint(),))
    sols = brute_force_solve(con, {"A": 2, "B": 2, "C": 2}).solutions
    assert {"A": "", "B": "b", "C": "a"} in sols


def test_brute_force_limits():
    s = system(("X", "Y"), letters="ab")
    with pytest.raises(ResourceLimitError):
        brute_force_solve(s, {"X": 10, "Y": 10}, limit=1000)
    with pytest.raises(Exception):
        brute_force_solve(s, {"X": 1})


def test_explore_limit():
    aut = EquationAutomaton(eq("XaXbYbZ", "aXYYbZZbaa"), POWER_BOUNDS)
    with pytest.raises(ResourceLimitError):
        list(aut.explore(limit=50))


def test_automaton_agrees_with_brute_force():
    rng = random.Random(13)
    for _ in range(300):
        sides = ["".join(rng.choice("abXY") for _ in range(rng.randint(0, 5))) for _ in range(2)]
        s = system(tuple(sides), letters="ab")
        b = {x: rng.randint(0, 2) for x in s.variables}
        bf = brute_force_solve(s, b)
        en = enumerate_solutions(s.equations[0], b, s.letters)
        assert en.solutions == bf.solutions, (sides, b)
        assert reachable_search(s.equations[0], b, s.letters).satisfiable == bf.satisfiable


def test_to_dot_clusters_by_location():
    dot = EquationAutomaton(eq("aZXb", "aXaY"), ONE).to_dot()
    assert dot.startswith("digraph") and "cluster_0_0" in dot and "->" in dot
