from fractions import Fraction

import pytest
import sympy as sp

from lmsb.gkz import (FrobeniusBasis, ThetaOperator, box_operator,
                      euler_operators, pf_operators, reduce_to_pf,
                      verify_annihilation)
from lmsb.models import MODEL_NAMES, get_model
from lmsb.ratfunc import zvars

ORDER = 8


@pytest.fixture(scope="module")
def bases():
    return {name: FrobeniusBasis(get_model(name), ORDER)
            for name in MODEL_NAMES}


def _as_expr(op, th):
    return sp.expand(sum(
        f.expr * sp.prod([t ** e for t, e in zip(th, alpha)])
        for alpha, f in op.terms.items()))


def test_p2_operator_closed_form():
    th = sp.Symbol("th")
    z, = zvars(1)
    op = pf_operators(get_model("p2"))[0]
    want = sp.expand(th ** 3 + 3 * z * th * (3 * th + 1) * (3 * th + 2))
    assert _as_expr(op, (th,)) == want


def test_two_parameter_operators_closed_forms():
    t1, t2 = sp.symbols("t1 t2")
    z1, z2 = zvars(2)
    want = {
        "f0": [t1 ** 2 - z1 * (-2 * t1 - 2 * t2) * (-2 * t1 - 2 * t2 - 1),
               t2 ** 2 - z2 * (-2 * t1 - 2 * t2) * (-2 * t1 - 2 * t2 - 1)],
        "f1": [t1 * (t1 - t2) - z1 * (-2 * t1 - t2) * (-2 * t1 - t2 - 1),
               t2 ** 2 - z2 * (-2 * t1 - t2) * (t1 - t2)],
        "f2": [t1 * (t1 - 2 * t2) - z1 * (-2 * t1) * (-2 * t1 - 1),
               t2 ** 2 - z2 * (t1 - 2 * t2) * (t1 - 2 * t2 - 1)],
    }
    for name, ops in want.items():
        got = [_as_expr(op, (t1, t2)) for op in pf_operators(get_model(name))]
        assert got == [sp.expand(o) for o in ops]


def test_annihilation_of_solution_basis(bases):
    for name in MODEL_NAMES:
        model = get_model(name)
        fb = bases[name]
        for op in pf_operators(model):
            assert verify_annihilation(op, fb.all_solutions(), ORDER)


def test_constant_solution_is_one(bases):
    for name, fb in bases.items():
        zero = (0,) * fb.model.nvars
        assert fb.omega0.terms == {zero: Fraction(1)}


def test_p2_mirror_map_series(bases):
    # t = log z - 6 z + 45 z^2 - 560 z^3 + ...
    S = bases["p2"].S[0]
    assert S.coeff((1,)) == Fraction(-6)
    assert S.coeff((2,)) == Fraction(45)
    assert S.coeff((3,)) == Fraction(-560)


def test_euler_operators_kill_relation_vectors():
    # the relation vectors lie in the kernel of the homogeneity matrix
    for name in MODEL_NAMES:
        model = get_model(name)
        rows = euler_operators(model)
        assert len(rows) == model.polytope.dim + 1
        for l in model.relations.basis:
            for row in rows:
                assert sum(r * x for r, x in zip(row, l)) == 0


def test_box_operator_shape():
    l = (-3, 1, 1, 1)
    pos, neg = box_operator(l)
    assert pos == (0, 1, 1, 1)
    assert neg == (3, 0, 0, 0)


def test_theta_operator_composition_product_rule():
    z, = zvars(1)
    th = ThetaOperator(1, {(1,): 1})
    f = ThetaOperator(1, {(0,): z})
    # theta . z = z theta + z
    got = th.compose(f)
    assert sp.cancel(got.terms[(1,)].expr - z) == 0
    assert sp.cancel(got.terms[(0,)].expr - z) == 0


def test_reduction_drops_to_torus_variables():
    model = get_model("f1")
    for i in range(2):
        op = reduce_to_pf(model, i)
        assert op.nvars == 2
        assert all(sum(e) <= 2 for e in op.terms)
