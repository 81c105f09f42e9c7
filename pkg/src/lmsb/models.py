"""Built-in model registry: the four toric surfaces P^2, F_0, F_1, F_2.

Each model record is loaded from a JSON data file and bundles:

* the polygon (vertices, integral points in the reference order),
* a pinned Z-basis of the relation lattice (verified against the computed
  Hermite basis on load),
* the principal discriminant, both in the coefficients ``a_m`` and in the
  canonical torus-invariant variables ``z_i``,
* closed-form Yukawa couplings, the propagator-limit curvature ``kappa``,
  holomorphic-ambiguity data for the genus recursion,
* classical intersection data used by the instanton expansion.

All rational data is stored as strings ("p/q" or sympy-parsable
expressions) so the files stay exact and diff-friendly.
"""

import json
from fractions import Fraction
from importlib import resources

import sympy as sp

from .polytope import LatticePolytope, lattice_of_relations
from .ratfunc import RationalFunction

MODEL_NAMES = ("p2", "f0", "f1", "f2")


def _frac(s):
    return Fraction(s)


def _key_tuple(key):
    return tuple(int(x) for x in key.split(","))


class ModelData:
    """Immutable bundle of registry data for one built-in model."""

    def __init__(self, raw):
        self.name = raw["name"]
        self.description = raw["description"]
        self.vertices = [tuple(v) for v in raw["vertices"]]
        self.points = [tuple(p) for p in raw["points"]]
        self.nvars = int(raw["nvars"])
        self.npoints = len(self.points)
        self.polytope = LatticePolytope(self.vertices)
        self.relations = lattice_of_relations(
            self.polytope, points=self.points,
            pinned_basis=[tuple(l) for l in raw["relations"]])
        # theta0 = sum_m theta_{a_m} expressed in the basis:  sum_i c_i theta_i
        self.theta0 = tuple(int(x) for x in raw["theta0"])
        if self.theta0 != tuple(l[0] for l in self.relations.basis):
            raise ValueError("theta0 coefficients disagree with relations")

        self.discriminant_factors_a = [
            sp.sympify(s) for s in raw["discriminant_factors_a"]]
        self.discriminant_z = RationalFunction.from_string(
            raw["discriminant_z"], self.nvars)
        self.yukawa_closed = {
            _key_tuple(k): RationalFunction.from_string(v, self.nvars)
            for k, v in raw["yukawa"].items()}
        self.yukawa_extra_denominator_z = {
            _key_tuple(k): RationalFunction.from_string(v, self.nvars)
            for k, v in raw["yukawa_extra_denominator_z"].items()}
        self.kappa = RationalFunction.from_string(raw["kappa"], self.nvars)
        self.f11 = (RationalFunction.from_string(raw["f11"], self.nvars)
                    if raw["f11"] else None)
        self.f2 = (RationalFunction.from_string(raw["f2"], self.nvars)
                   if raw["f2"] else None)
        self.holomorphic_limit = raw["holomorphic_limit"]
        self.H_from_S = tuple(_frac(s) for s in raw["H_from_S"])
        self.dSF_combination = {
            _key_tuple(k): _frac(v) for k, v in raw["dSF_combination"].items()}
        self.dSF_scale = _frac(raw["dSF_scale"])
        self.classical_Q = [[_frac(x) for x in row]
                            for row in raw["classical_Q"]]
        self.chern_c = tuple(int(x) for x in raw["chern_c"])
        self.wronskian_scale = (_frac(raw["wronskian_scale"])
                                if raw["wronskian_scale"] else None)
        self.wronskian_unit_divisor = (
            tuple(raw["wronskian_unit_divisor"])
            if raw.get("wronskian_unit_divisor") else None)
        self.rbasis_points = [tuple(p) for p in raw["rbasis_points"]]
        self.I2 = raw["I2"]

    def __repr__(self):
        return "ModelData(%r)" % self.name

    @property
    def avars(self):
        return sp.symbols("a0:%d" % self.npoints)

    def discriminant_a(self):
        """Full principal discriminant in the a_m (product of factors)."""
        return sp.expand(sp.prod(self.discriminant_factors_a))

    def z_from_a(self):
        """The torus-invariant coordinates z_i = prod_m a_m^{l^(i)_m}."""
        a = self.avars
        out = []
        for l in self.relations.basis:
            expr = sp.Integer(1)
            for lm, am in zip(l, a):
                expr *= am ** lm
            out.append(sp.together(expr))
        return out

    def f11_default(self):
        """Genus-1 holomorphic ambiguity; derived from the discriminant for
        the two-parameter models, tabulated for p2."""
        if self.f11 is not None:
            return self.f11
        d = self.discriminant_z
        theta0_d = sum(
            d.theta(i) * Fraction(c) for i, c in enumerate(self.theta0))
        return theta0_d / d * Fraction(-1, 12) + Fraction(1, 6)


def is_regular(model, a):
    """Exact regularity test: no discriminant factor vanishes at `a`.

    `a` is a sequence of rationals in the model's point order (a_0 first).
    """
    if len(a) != model.npoints:
        raise ValueError("expected %d coefficients" % model.npoints)
    subs = {av: sp.Rational(Fraction(x)) for av, x in zip(model.avars, a)}
    return all(f.subs(subs) != 0 for f in model.discriminant_factors_a)


def _load_raw(name):
    path = resources.files("lmsb.data").joinpath(name + ".json")
    return json.loads(path.read_text())


_CACHE = {}


def get_model(name):
    """Look up a built-in model by name ('p2', 'f0', 'f1', 'f2')."""
    key = name.lower()
    if key not in MODEL_NAMES:
        raise KeyError("unknown model %r; known: %s"
                       % (name, ", ".join(MODEL_NAMES)))
    if key not in _CACHE:
        _CACHE[key] = ModelData(_load_raw(key))
    return _CACHE[key]


def all_models():
    return [get_model(name) for name in MODEL_NAMES]
