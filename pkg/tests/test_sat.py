import io
import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from wesat.sat import (SAT, UNSAT, CnfFormula, DimacsError, EnumerationLimitReached,
                       ModelIntegrityError, Solver, enumerate_models, parse_dimacs,
                       read_external_model, solve, write_dimacs)


def random_formula(rng, max_vars=20):
    n = rng.randint(1, max_vars)
    m = rng.randint(1, int(4.5 * n))
    clauses = [[rng.choice((1, -1)) * rng.randint(1, n) for _ in range(rng.randint(1, 3))]
               for _ in range(m)]
    return CnfFormula(n, clauses)


def truth_table_sat(f):
    for bits in itertools.product((False, True), repeat=f.num_vars):
        m = dict(zip(range(1, f.num_vars + 1), bits))
        if f.satisfied_by(m):
            return True
    return False


def test_trivial_formulas():
    v = solve(CnfFormula(1, [[1]]))
    assert v.sat and v.model[1] is True
    assert solve(CnfFormula(1, [[1], [-1]])).status == UNSAT
    assert solve(CnfFormula(0, [])).sat
    assert not solve(CnfFormula(1, [[]])).sat


def test_agrees_with_truth_table():
    rng = random.Random(0)
    for _ in range(300):
        f = random_formula(rng, 12)
        v = solve(f)
        assert v.sat == truth_table_sat(f)
        if v.sat:
            assert f.satisfied_by(v.model)


def test_pigeonhole_unsat():
    assert not solve(_pigeonhole(5, 4)).sat


def test_incremental_clauses():
    s = Solver(2, [[1, 2]])
    assert s.solve()
    s.add_clause([-1])
    assert s.solve() and s.model[2]
    s.add_clause([-2])
    assert s.solve() is False


def _pigeonhole(p, h):
    var = lambda i, j: i * h + j + 1
    clauses = [[var(i, j) for j in range(h)] for i in range(p)]
    for j in range(h):
        for a in range(p):
            for b in range(a + 1, p):
                clauses.append([-var(a, j), -var(b, j)])
    return CnfFormula(p * h, clauses)


def test_resource_limits_return_none():
    f = _pigeonhole(8, 7)
    assert Solver(f.num_vars, f.clauses).solve(conflict_limit=1) is None
    assert solve(f, conflict_limit=1) is None
    assert solve(f, time_limit=0.0) is None


def test_enumerate_models():
    assert len(enumerate_models(CnfFormula(2, [[1, 2]]), [1, 2])) == 3
    assert enumerate_models(CnfFormula(1, [[1], [-1]]), [1]) == []
    with pytest.raises(EnumerationLimitReached):
        enumerate_models(CnfFormula(3, []), [1, 2, 3], limit=2, strict=True)
    assert len(enumerate_models(CnfFormula(3, []), [1, 2, 3], limit=2)) == 2


def test_write_dimacs_format():
    assert write_dimacs(CnfFormula(1, [[1]])) == "p cnf 1 1\n1 0\n"
    assert write_dimacs(CnfFormula(0, [])) == "p cnf 0 0\n"
    buf = io.StringIO()
    write_dimacs(CnfFormula(2, [[1, -2], []], ["hello"]), buf)
    assert buf.getvalue() == "c hello\np cnf 2 2\n1 -2 0\n0\n"


@settings(max_examples=100)
@given(st.integers(1, 30).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.lists(st.integers(1, n).flatmap(
        lambda v: st.sampled_from((v, -v))), max_size=5), max_size=40))))
def test_dimacs_round_trip(data):
    n, clauses = data
    f = CnfFormula(n, clauses)
    text = write_dimacs(f)
    g = parse_dimacs(text)
    assert g.num_vars == n and g.clauses == clauses
    assert write_dimacs(g) == text


def test_parse_dimacs_errors():
    for bad in ["1 0\n", "p cnf 1 1\n2 0\n", "p cnf 1 2\n1 0\n", "p cnf 1 1\n1\n",
                "p dnf 1 1\n1 0\n", "p cnf 1 1\nx 0\n"]:
        with pytest.raises(DimacsError):
            parse_dimacs(bad)


def test_read_external_model():
    assert read_external_model("s UNSATISFIABLE\n").status == UNSAT
    v = read_external_model("s SATISFIABLE\nv 1 -2 0\n")
    assert v.status == SAT and v.model == {1: True, 2: False}
    with pytest.raises(DimacsError):
        read_external_model("v 1 0\n")
    with pytest.raises(DimacsError):
        read_external_model("s SATISFIABLE\nv 1\n")
    with pytest.raises(ModelIntegrityError):
        read_external_model("s SATISFIABLE\nv -1 0\n", CnfFormula(1, [[1]]))


def test_external_model_cross_check():
    rng = random.Random(9)
    for _ in range(100):
        f = random_formula(rng, 15)
        v = solve(f)
        if v.sat:
            lits = " ".join(str(x if v.model[x] else -x) for x in range(1, f.num_vars + 1))
            text = f"c test\ns SATISFIABLE\nv {lits} 0\n"
        else:
            text = "s UNSATISFIABLE\n"
        assert read_external_model(text, f).status == v.status
