from fractions import Fraction

import pytest

from lmsb.models import MODEL_NAMES, get_model
from lmsb.polytope import (LatticePolytope, NotReflexiveError,
                           OriginNotInteriorError, dual_polytope,
                           integral_points, is_reflexive,
                           lattice_of_relations, normalized_volume,
                           regularity_probe, LaurentPolynomial)

from reflexive_data import DUAL_CLASS, REFLEXIVE_16, unimodular_equivalent


def _poly(i):
    return LatticePolytope(REFLEXIVE_16[i])


def test_sixteen_classes_are_reflexive():
    for verts in REFLEXIVE_16:
        assert is_reflexive(LatticePolytope(verts))


def test_sixteen_classes_pairwise_inequivalent():
    for i in range(16):
        for j in range(i + 1, 16):
            assert not unimodular_equivalent(_poly(i), _poly(j))


def test_duality_involution_on_the_classification():
    assert sorted(DUAL_CLASS) == list(range(16))
    for i, j in enumerate(DUAL_CLASS):
        assert DUAL_CLASS[j] == i
        assert unimodular_equivalent(dual_polytope(_poly(i)), _poly(j))


def test_boundary_point_pairing():
    # boundary lattice points of a reflexive polygon and its dual sum to 12
    for i, j in enumerate(DUAL_CLASS):
        bi = len(integral_points(_poly(i))) - 1
        bj = len(integral_points(_poly(j))) - 1
        assert bi + bj == 12


def test_model_polytopes_appear_in_the_classification():
    for name in MODEL_NAMES:
        P = get_model(name).polytope
        matches = [i for i in range(16)
                   if unimodular_equivalent(P, _poly(i))]
        assert len(matches) == 1


def test_double_dual_is_identity():
    for name in MODEL_NAMES:
        P = get_model(name).polytope
        assert dual_polytope(dual_polytope(P)) == P


def test_normalized_volume_positive_and_p2_value():
    p2 = get_model("p2").polytope
    assert normalized_volume(p2) == 3
    for verts in REFLEXIVE_16:
        assert normalized_volume(LatticePolytope(verts)) > 0


def test_origin_not_interior_raises():
    with pytest.raises((OriginNotInteriorError, NotReflexiveError,
                        ValueError)):
        dual_polytope(LatticePolytope([(0, 0), (1, 0), (0, 1)]))


def test_relation_lattice_identities():
    for name in MODEL_NAMES:
        model = get_model(name)
        pts = model.points
        for l in model.relations.basis:
            assert sum(l) == 0
            for i in range(2):
                assert sum(lm * m[i] for lm, m in zip(l, pts)) == 0


def test_lattice_of_relations_matches_registry_rank():
    for name in MODEL_NAMES:
        model = get_model(name)
        rel = lattice_of_relations(model.polytope)
        assert len(rel.basis) == len(model.relations.basis)


def test_regularity_probe_flags_degenerate_coefficients():
    p2 = get_model("p2")
    P = p2.polytope
    good = {m: Fraction(1) for m in p2.points}
    ok, _ = regularity_probe(P, good)
    assert ok
    # killing all but one monomial gives a torus-degenerate section
    bad = {m: Fraction(0) for m in p2.points}
    bad[(0, 0)] = Fraction(1)
    ok, _ = regularity_probe(P, bad)
    assert not ok


def test_laurent_polynomial_newton_polytope():
    p2 = get_model("p2")
    f = LaurentPolynomial({m: Fraction(1) for m in p2.points})
    assert f.matches_polytope(p2.polytope)
