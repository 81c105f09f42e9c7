from fractions import Fraction

import pytest
import sympy as sp

from lmsb.models import MODEL_NAMES, get_model, all_models
from lmsb.ratfunc import (RationalFunction, ReconstructionError,
                          poly_to_series, rational_reconstruct,
                          series_to_poly, zvars)
from lmsb.series import MultiSeries


def test_series_of_rational_function_roundtrip():
    z, = zvars(1)
    f = RationalFunction(1, 1 + 27 * z, nvars=1)
    s = f.series(8)
    assert s.coeff((0,)) == Fraction(1)
    assert s.coeff((1,)) == Fraction(-27)
    assert s.coeff((2,)) == Fraction(729)


def test_rational_reconstruct_recovers_known_function():
    z, = zvars(1)
    f = RationalFunction(2 - 5 * z, (1 + 3 * z) ** 2, nvars=1)
    rec = rational_reconstruct(f.series(10), (1 + 3 * z) ** 2, nvars=1)
    assert sp.cancel(rec.expr - f.expr) == 0


def test_rational_reconstruct_rejects_wrong_denominator():
    z, = zvars(1)
    f = RationalFunction(1, 1 + 27 * z, nvars=1)
    with pytest.raises(ReconstructionError):
        rational_reconstruct(f.series(10), 1 + 26 * z, nvars=1)


def test_theta_of_rational_function():
    z, = zvars(1)
    f = RationalFunction(1, 1 - z, nvars=1)
    g = f.theta(0)
    assert sp.cancel(g.expr - z / (1 - z) ** 2) == 0


def test_poly_series_roundtrip():
    z1, z2 = zvars(2)
    p = 3 + z1 * z2 - 7 * z2 ** 2
    assert series_to_poly(poly_to_series(p, 2, 6)) == sp.expand(p)


def test_registry_relations_annihilate_points():
    for model in all_models():
        for l in model.relations.basis:
            assert sum(l) == 0
            for i in range(model.polytope.dim):
                assert sum(lm * m[i]
                           for lm, m in zip(l, model.points)) == 0


def test_registry_discriminant_divides_yukawa_denominators():
    for model in all_models():
        zs = zvars(model.nvars)
        disc = sp.expand(model.discriminant_z.expr)
        for key, Y in model.yukawa_closed.items():
            den = sp.fraction(sp.cancel(sp.together(Y.expr)))[1]
            _, rem = sp.div(sp.Poly(den, *zs), sp.Poly(disc, *zs))
            assert rem == 0, "%s %s" % (model.name, key)


def test_registry_kappa_denominator_is_discriminant_multiple():
    for model in all_models():
        zs = zvars(model.nvars)
        disc = sp.Poly(sp.expand(model.discriminant_z.expr), *zs)
        den = sp.fraction(sp.cancel(sp.together(model.kappa.expr)))[1]
        _, rem = sp.div(sp.Poly(den, *zs), disc)
        assert rem == 0


def test_theta0_is_minus_chern_vector():
    # the distinguished direction is minus the anticanonical degrees
    for model in all_models():
        assert model.theta0 == tuple(-c for c in model.chern_c)
