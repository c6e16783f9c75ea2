from itertools import product

from hypothesis import given, settings, strategies as st

from conftest import K2, K3
from euclid_ramsey import generators as gen
from euclid_ramsey.arrow import encode_cnf
from euclid_ramsey.cnf import CnfFormula, dpll_solve
from euclid_ramsey.errors import NodeBudgetExceeded

import pytest


def satisfies(model, clauses):
    val = {abs(l): l > 0 for l in model}
    return all(any(val[abs(l)] == (l > 0) for l in c) for c in clauses)


def brute_sat(nv, clauses):
    for bits in product([False, True], repeat=nv):
        if all(any(bits[abs(l) - 1] == (l > 0) for l in c) for c in clauses):
            return True
    return False


def test_empty_formula():
    r = dpll_solve(CnfFormula(0, []))
    assert r.sat and r.model == ()


def test_contradiction():
    assert not dpll_solve(CnfFormula(1, [[1], [-1]])).sat


def test_empty_clause_rejected():
    with pytest.raises(ValueError):
        CnfFormula(2, [[1], []])


def test_k3_unsat():
    assert not dpll_solve(encode_cnf(K3, [K2], 2)).sat


def test_c4_sat_model_is_proper():
    f = encode_cnf(gen.cycle(4), [K2], 2)
    r = dpll_solve(f)
    assert r.sat
    cols = [0 if r.value(2 * v + 1) else 1 for v in range(4)]
    assert all(cols[u] != cols[v] for u, v in gen.cycle(4).edges)


def test_c5_unsat():
    assert not dpll_solve(encode_cnf(gen.cycle(5), [K2], 2)).sat


def test_q3_sat():
    assert dpll_solve(encode_cnf(gen.hypercube(3), [K2], 2)).sat


def test_branch_order_true_first():
    # no units: first decision x1=True, then x2=True satisfies everything
    r = dpll_solve(CnfFormula(2, [[1, 2], [-1, 2]]))
    assert r.model == (1, 2)


def test_dimacs_roundtrip():
    f = encode_cnf(gen.cycle(4), [K2], 2)
    text = f.to_dimacs()
    assert "p cnf 8 " in text
    assert "c var x_{0,0} = 1" in text
    g = CnfFormula.from_dimacs(text)
    assert g.num_vars == f.num_vars and g.clauses == f.clauses
    assert g.var_names == f.var_names


def test_budget():
    f = encode_cnf(gen.complete(5), [K2], 4)
    with pytest.raises(NodeBudgetExceeded):
        dpll_solve(f, node_budget=2)


@st.composite
def formulas(draw):
    nv = draw(st.integers(1, 7))
    lit = st.integers(1, nv).flatmap(lambda v: st.sampled_from([v, -v]))
    cls = draw(st.lists(st.lists(lit, min_size=1, max_size=3), max_size=20))
    return CnfFormula(nv, cls)


@settings(max_examples=200, deadline=None)
@given(formulas())
def test_dpll_matches_truth_table(f):
    r = dpll_solve(f)
    assert r.sat == brute_sat(f.num_vars, f.clauses)
    if r.sat:
        assert satisfies(r.model, f.clauses)
