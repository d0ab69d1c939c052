import pytest

from wesat.automaton import brute_force_solve
from wesat.benchgen import (GenSpec, gen_track1, gen_track2, gen_track3, gen_track4, gen_track5,
                            generate, track2_equation, track2_solution, write_instances)
from wesat.core import EquationSystem, WordEquationError, verify_solution
from wesat.problem import parse_problem

TINY = dict(variables=3, letters=2, length=12)


def test_track1_witness_and_determinism():
    for seed in range(30):
        inst = gen_track1(GenSpec(1, seed, **TINY))
        assert verify_solution(inst.witness, inst.system)
        assert gen_track1(GenSpec(1, seed, **TINY)).to_text() == inst.to_text()


def test_track1_defaults_respected():
    inst = gen_track1(GenSpec(1, 4))
    s = inst.system
    assert len(s.variables) <= 15 and len(s.letters) <= 10
    assert max(len(s.equations[0].lhs), len(s.equations[0].rhs)) <= 300
    assert verify_solution(inst.witness, s)


def test_track1_without_replacements_is_ground_identity():
    inst = gen_track1(GenSpec(1, 2, density=0.0, **TINY))
    e = inst.system.equations[0]
    assert e.lhs.is_ground() and e.lhs == e.rhs


def test_track2_shape():
    e = gen_track2(2)
    assert str(e) == "BaBbA = aBAAbaa"
    assert set(e.variables()) == {"A", "B"}
    assert str(gen_track2(1)) == "AaA = aAaa"
    assert str(gen_track2(3)) == "CaCbBbA = aCBBbAAbaa"
    with pytest.raises(WordEquationError):
        gen_track2(0)


def _min_length(n, bound):
    """Least |X_n| over solutions with every variable bounded by ``bound``."""
    s = EquationSystem.from_equations([track2_equation(n)], letters="ab")
    top = "AB"[n - 1]
    sols = brute_force_solve(s, {x: bound for x in s.variables}).solutions
    return min(len(x[top]) for x in sols)


def test_track2_satisfiable_and_growing():
    for n in (1, 2, 3):
        e = track2_equation(n)
        s = EquationSystem.from_equations([e], letters="ab")
        assert verify_solution(track2_solution(n), s)
    m1 = _min_length(1, 3)
    m2 = _min_length(2, 4)
    assert m1 == 2 and m2 == 4 and m2 > m1


def test_track3_round_trip_and_degenerate():
    for seed in range(10):
        inst = gen_track3(GenSpec(3, seed))
        s = parse_problem(inst.to_text())
        assert s == inst.system
        assert set(inst.system.variables) >= {"A", "B", "C"}
    degenerate = gen_track3(GenSpec(3, 0, n=2, length=0))
    assert degenerate.system.equations == (track2_equation(2),)


def test_track4_defaults_and_single():
    inst = gen_track4(GenSpec(4, 1))
    assert len(inst.system.equations) == 100
    assert verify_solution(inst.witness, inst.system)
    one = gen_track4(GenSpec(4, 9, equations=1, **TINY))
    assert one.system == gen_track1(GenSpec(1, 9, **TINY)).system
    assert gen_track4(GenSpec(4, 1)).to_text() == inst.to_text()


def test_track5_modes():
    inst = gen_track5(GenSpec(5, 3))
    assert len(inst.system.equations) == 30 and inst.system.constraints
    assert verify_solution(inst.witness, inst.system)
    bad = gen_track5(GenSpec(5, 3, contradiction=True))
    assert bad.expected == "UNSAT" and bad.witness is None
    c = bad.system.constraints[0]
    assert c.bound == -1 and set(c.coefficients.values()) == {1}


def test_track5_small_contradiction_is_unsat():
    inst = gen_track5(GenSpec(5, 0, contradiction=True, equations=2, **TINY))
    b = {x: 2 for x in inst.system.variables}
    assert not brute_force_solve(inst.system, b).satisfiable


@pytest.mark.parametrize("track", [1, 2, 3, 4, 5])
def test_all_tracks_parse_back(track):
    for seed in range(5):
        inst = generate(GenSpec(track, seed))
        assert parse_problem(inst.to_text()) == inst.system


def test_write_instances(tmp_path):
    paths = write_instances(5, 10, 2, tmp_path, equations=3)
    again = write_instances(5, 10, 2, tmp_path / "b", equations=3)
    assert [p.read_bytes() for p in paths] == [p.read_bytes() for p in again]


def test_spec_validation():
    with pytest.raises(ValueError):
        GenSpec(6)
    with pytest.raises(ValueError):
        GenSpec(1, density=2.0)
    with pytest.raises(ValueError):
        GenSpec(1, letters=0).resolved()
