from fractions import Fraction

import pytest
import sympy as sp

from lmsb.gkz import FrobeniusBasis
from lmsb.models import MODEL_NAMES, get_model
from lmsb.ratfunc import zvars
from lmsb import yukawa

ORDER = 8


@pytest.fixture(scope="module")
def bases():
    return {name: FrobeniusBasis(get_model(name), ORDER)
            for name in MODEL_NAMES}


def test_wronskian_route_matches_closed_forms(bases):
    for name in MODEL_NAMES:
        assert yukawa.check_closed_forms(get_model(name), bases[name])


def test_p2_coupling_value():
    p2 = get_model("p2")
    z, = zvars(1)
    Y = sp.cancel(p2.yukawa_closed[(1, 1)].expr / p2.theta0[0])
    assert sp.cancel(Y + 1 / (3 * (1 + 27 * z))) == 0


def test_ode_route_p2():
    p2 = get_model("p2")
    couplings, nullity = yukawa.yukawa_from_ode(p2)
    assert nullity == 1
    assert sp.cancel(couplings[(1, 1)].expr
                     - p2.yukawa_closed[(1, 1)].expr) == 0


def test_ode_route_two_parameters():
    model = get_model("f0")
    couplings, nullity = yukawa.yukawa_from_ode(model)
    assert nullity == 1
    for key, Y in model.yukawa_closed.items():
        assert sp.cancel(couplings[key].expr - Y.expr) == 0


def test_prolongation_constraints_vanish_on_closed_forms():
    for name in ("p2", "f2"):
        residuals = yukawa.prolongation_constraint_residuals(get_model(name))
        assert residuals, "no constraints assembled for %s" % name
        assert all(sp.cancel(r) == 0 for r in residuals)


def test_mirror_inversion_fixed_point(bases):
    for name in MODEL_NAMES:
        zq = yukawa.mirror_inversion(bases[name])
        for i, s in enumerate(zq):
            e = tuple(1 if j == i else 0
                      for j in range(bases[name].model.nvars))
            assert s.coeff(e) == Fraction(1)


def test_p2_gw0_and_bps(bases):
    p2 = get_model("p2")
    N = yukawa.gw0_invariants(p2, bases["p2"])
    n = yukawa.bps_genus0(N)
    assert N[(1,)] == Fraction(3)
    assert N[(2,)] == Fraction(-45, 8)
    assert N[(3,)] == Fraction(244, 9)
    want = {1: 3, 2: -6, 3: 27, 4: -192, 5: 1695, 6: -17064}
    for d, v in want.items():
        if (d,) in n:
            assert n[(d,)] == Fraction(v)


def test_f0_bps_symmetry(bases):
    # exchanging the two P^1 factors is a symmetry of local F_0
    n = yukawa.bps_genus0(yukawa.gw0_invariants(get_model("f0"),
                                                bases["f0"]))
    for (d1, d2), v in n.items():
        assert n[(d2, d1)] == v
        assert v.denominator == 1


def test_f0_low_degree_bps(bases):
    n = yukawa.bps_genus0(yukawa.gw0_invariants(get_model("f0"),
                                                bases["f0"]))
    assert n[(1, 0)] == Fraction(-2)
    assert n[(0, 1)] == Fraction(-2)
    assert n[(1, 1)] == Fraction(-4)


def test_bps_integrality_all_models(bases):
    for name in MODEL_NAMES:
        n = yukawa.bps_genus0(yukawa.gw0_invariants(get_model(name),
                                                    bases[name]))
        assert n
        for v in n.values():
            assert v.denominator == 1
