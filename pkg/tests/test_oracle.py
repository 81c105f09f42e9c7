import mpmath as mp
import pytest

from lmsb.gkz import FrobeniusBasis
from lmsb.models import get_model
from lmsb.oracle import NumericModel, relative_error
from lmsb.yukawa import bps_genus0, gw0_invariants


@pytest.fixture(scope="module")
def numeric_p2():
    return NumericModel(get_model("p2"))


def test_numeric_mirror_map_matches_exact_series(numeric_p2):
    p2 = get_model("p2")
    fb = FrobeniusBasis(p2, 8)
    with mp.workdps(60):
        z = mp.mpf("1e-5")
        exact = sum(
            mp.mpf(c.numerator) / c.denominator * z ** e[0]
            for e, c in fb.S[0].terms.items())
        assert abs(numeric_p2.s_of_z(z) - exact) < mp.mpf("1e-25")


def test_numeric_inversion_is_a_fixed_point(numeric_p2):
    with mp.workdps(60):
        q = mp.mpf("1e-4")
        z = numeric_p2.z_of_q(q)
        resid = abs(z * mp.exp(numeric_p2.s_of_z(z)) - q)
        assert resid < mp.mpf("1e-30")


def test_oracle_confirms_exact_bps_numbers(numeric_p2):
    p2 = get_model("p2")
    fb = FrobeniusBasis(p2, 6)
    exact = bps_genus0(gw0_invariants(p2, fb))
    numeric = numeric_p2.bps0(4)
    for d in range(1, 5):
        assert exact[(d,)].denominator == 1
        assert relative_error(numeric[d], exact[(d,)]) < mp.mpf(10) ** -10


def test_oracle_rejects_two_parameter_models():
    with pytest.raises(ValueError):
        NumericModel(get_model("f0"))
