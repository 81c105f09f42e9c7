"""Holomorphic limit of the special-geometry data and the polynomial
genus recursion.

Everything anti-holomorphic is eliminated from the start: the metric
factor is replaced by its holomorphic limit Glimit (theta_z t for the
rank-1 model, 1 - theta_0 H for the two-parameter models) and the
recursion closes over polynomials in the single generator

    A = theta_0 Glimit / Glimit ,

whose theta_0-derivative reduces by the curvature identity

    theta_0 A = kappa - A^2 + (theta_0 Y00 / Y00) A .

Amplitudes C~^n_g are represented as `AmplitudePoly`: polynomials in A of
degree <= 3g-3+n with rational-function coefficients in z.  Genus 1 is
the ansatz -A/2 + f_1^1; genus 2 integrates the anomaly equation

    d C~^0_2 / dA = -(C~^2_1 + (C~^1_1)^2) / (2 Y00)

polynomially in A, the integration constant being the ambiguity f_2.
A Gaussian Feynman expansion over the propagator S^00 = -A/Y00 + f_s
provides an independent construction agreeing up to the same ambiguity.
"""

import itertools
from fractions import Fraction

import sympy as sp

from .gkz import FrobeniusBasis, ThetaOperator, pf_operators
from .ratfunc import RationalFunction, zvars
from .series import MultiSeries
from .yukawa import mirror_inversion


def _theta0_expr(model, expr):
    zs = zvars(model.nvars)
    return sp.cancel(sum(sp.Rational(c) * z * sp.diff(expr, z)
                         for c, z in zip(model.theta0, zs)))


def y00_closed(model):
    """Y_{00;0} = sum_ij c_i c_j Y_{ij;0} from the registry."""
    total = RationalFunction(0, nvars=model.nvars)
    for i, ci in enumerate(model.theta0):
        for j, cj in enumerate(model.theta0):
            key = (min(i, j) + 1, max(i, j) + 1)
            total = total + model.yukawa_closed[key] * (
                Fraction(ci) * Fraction(cj))
    return total


class SpecialGeometry:
    """Holomorphic-limit scalars of one model at a fixed series order."""

    def __init__(self, model, fb):
        self.model = model
        self.fb = fb
        self.order = fb.order
        k = model.nvars
        if model.holomorphic_limit == "theta_t":
            g = fb.t[0].theta(0)
            if not g.is_log_free():
                raise ValueError("theta t has residual logs")
            self.Glimit = g.power_part
        elif model.holomorphic_limit == "one_minus_theta0_H":
            th0H = MultiSeries(k, fb.order)
            for i, c in enumerate(model.theta0):
                th0H = th0H + fb.H.theta(i) * Fraction(c)
            self.Glimit = MultiSeries.constant(1, k, fb.order) - th0H
        else:
            raise ValueError("unknown holomorphic limit tag %r"
                             % model.holomorphic_limit)
        th0G = MultiSeries(k, fb.order)
        for i, c in enumerate(model.theta0):
            th0G = th0G + self.Glimit.theta(i) * Fraction(c)
        self.A = th0G * self.Glimit.inverse()
        self.Y00 = y00_closed(model)
        self.kappa = model.kappa
        self.r = RationalFunction(
            _theta0_expr(model, self.Y00.expr) / self.Y00.expr,
            nvars=k)

    def theta0_series(self, s):
        out = MultiSeries(self.model.nvars, s.order)
        for i, c in enumerate(self.model.theta0):
            out = out + s.theta(i) * Fraction(c)
        return out

    def curvature_residual(self, order=None):
        """theta_0 A + A^2 - r A - kappa as a truncated series (0 iff the
        special-geometry identity holds)."""
        if order is None:
            order = self.order - 1
        lhs = (self.theta0_series(self.A) + self.A * self.A
               - self.A * self.r.series(self.order)
               - self.kappa.series(self.order))
        return lhs.truncate(order)


def special_geometry(model, fb=None, order=12):
    if fb is None:
        fb = FrobeniusBasis(model, order)
    return SpecialGeometry(model, fb)


def kappa_pf_operator(model):
    """The operator theta_0^3 - r theta_0^2 - kappa theta_0 in the theta_i.

    For the rank-1 model this is proportional to the hypergeometric
    operator, which pins kappa and Y00 against the operator data."""
    k = model.nvars
    c = [Fraction(x) for x in model.theta0]
    th0 = ThetaOperator.from_theta_poly(
        k, {tuple(1 if i == j else 0 for j in range(k)): ci
            for i, ci in enumerate(c)})
    y00 = y00_closed(model)
    r = RationalFunction(_theta0_expr(model, y00.expr) / y00.expr, nvars=k)
    kap = model.kappa
    op = th0.compose(th0).compose(th0)
    op = op - th0.compose(th0).mul_function(r)
    op = op - th0.mul_function(kap)
    return op


# -- amplitudes ------------------------------------------------------------


class AmplitudePoly:
    """C~^n_g as a polynomial in the generator A over Q(z)."""

    def __init__(self, g, n, coeffs, nvars):
        self.g = g
        self.n = n
        self.nvars = nvars
        self.coeffs = [sp.cancel(c) for c in coeffs]
        while self.coeffs and self.coeffs[-1] == 0:
            self.coeffs.pop()
        bound = 3 * g - 3 + n
        if len(self.coeffs) - 1 > bound:
            raise ValueError(
                "amplitude degree %d exceeds bound 3g-3+n = %d"
                % (len(self.coeffs) - 1, bound))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def coeff(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return sp.Integer(0)

    def as_expr(self, Asym):
        return sum(c * Asym ** i for i, c in enumerate(self.coeffs))

    def __repr__(self):
        A = sp.Symbol("A")
        return "AmplitudePoly(g=%d, n=%d, %s)" % (
            self.g, self.n, sp.sstr(sp.expand(self.as_expr(A))))

    def series(self, sg):
        """Substitute the A-series: holomorphic-limit value in z."""
        order = sg.order
        k = self.nvars
        out = MultiSeries(k, order)
        Apow = MultiSeries.constant(1, k, order)
        for c in self.coeffs:
            out = out + Apow * RationalFunction(c, nvars=k).series(order)
            Apow = Apow * sg.A
        return out

    def qseries(self, sg, zq=None):
        """Holomorphic-limit value pushed through the mirror map z(q)."""
        if zq is None:
            zq = mirror_inversion(sg.fb)
        return self.series(sg).compose(zq)


def yy_step(C, sg):
    """(theta_0 - n A) C, reduced back into Q(z)[A]."""
    model = sg.model
    r = sg.r.expr
    kappa = sg.kappa.expr
    out = [sp.Integer(0)] * (len(C.coeffs) + 2)
    for i, c in enumerate(C.coeffs):
        out[i] += _theta0_expr(model, c)
        if i:
            # i c A^(i-1) theta_0 A with theta_0 A = kappa - A^2 + r A
            out[i - 1] += i * c * kappa
            out[i + 1] -= i * c
            out[i] += i * c * r
        out[i + 1] -= C.n * c
    return AmplitudePoly(C.g, C.n + 1, out, C.nvars)


def genus0_three_point(model):
    """C~^3_0 = Y_{00;0}."""
    return AmplitudePoly(0, 3, [y00_closed(model).expr], model.nvars)


def genus1(model, sg, f11=None):
    """C~^1_1 = -A/2 + f_1^1."""
    if f11 is None:
        f11 = model.f11_default()
    return AmplitudePoly(1, 1, [f11.expr, sp.Rational(-1, 2)], model.nvars)


def genus2(model, sg, f2=None, f11=None):
    """Integrate dC/dA = -(C~^2_1 + (C~^1_1)^2)/(2 Y00) in Q(z)[A].

    The constant of integration is the genus-2 ambiguity f_2 (registry
    value for the rank-1 model; must be supplied for the others)."""
    if f2 is None:
        if model.f2 is None:
            raise ValueError(
                "model %s has no stored genus-2 ambiguity; supply f2"
                % model.name)
        f2 = model.f2
    C11 = genus1(model, sg, f11=f11)
    C21 = yy_step(C11, sg)
    y00 = y00_closed(model).expr
    deg = max(C21.degree, 2 * C11.degree)
    rhs = [sp.Integer(0)] * (deg + 1)
    for i in range(deg + 1):
        sq = sum(C11.coeff(j) * C11.coeff(i - j) for j in range(i + 1))
        rhs[i] = sp.cancel(-(C21.coeff(i) + sq) / (2 * y00))
    coeffs = [f2.expr] + [sp.cancel(c / (i + 1)) for i, c in enumerate(rhs)]
    return AmplitudePoly(2, 0, coeffs, model.nvars)


def genus2_integrand(model, sg, f11=None):
    """-(C~^2_1 + (C~^1_1)^2)/(2 Y00) as an AmplitudePoly-shaped list."""
    C11 = genus1(model, sg, f11=f11)
    C21 = yy_step(C11, sg)
    y00 = y00_closed(model).expr
    deg = max(C21.degree, 2 * C11.degree)
    out = []
    for i in range(deg + 1):
        sq = sum(C11.coeff(j) * C11.coeff(i - j) for j in range(i + 1))
        out.append(sp.cancel(-(C21.coeff(i) + sq) / (2 * y00)))
    return out


# -- propagator and the Feynman cross-check --------------------------------


def propagator(model, sg, fs=None):
    """S^00 = -A/Y00 + f_s as a pair (polynomial in A, series).

    Returns (poly_coeffs, series, delta_series) with delta = -1/S^00;
    the inverse needs f_s(0) != 0."""
    k = model.nvars
    fs_expr = sp.Integer(0) if fs is None else fs.expr
    y00 = y00_closed(model).expr
    poly = [fs_expr, sp.cancel(-1 / y00)]
    series = (MultiSeries.constant(1, k, sg.order)
              * RationalFunction(fs_expr, nvars=k).series(sg.order)
              - sg.A * RationalFunction(1 / y00, nvars=k).series(sg.order))
    delta = None
    if series.terms.get((0,) * k):
        delta = -series.inverse()
    elif fs is not None:
        raise ZeroDivisionError("S^00 has vanishing constant term; "
                                "delta_00 is not invertible")
    return poly, series, delta


# genus-2 graphs over the single propagator S^00 and their amplitudes:
# theta/dumbbell pair of trivalent vertices, the two-loop 4-vertex, the
# lollipop (trivalent vertex looped onto the genus-1 1-point), the
# genus-1 2-point self-loop and the pair of genus-1 1-points.  The
# weights below make the sum an antiderivative of the genus-2 anomaly
# equation in S (they regroup (1/2) int (C~^2_1 + (C~^1_1)^2) dS), which
# is what the diagram expansion of the master exponential produces.
_GRAPH_WEIGHTS = {
    ("C30^2", 3): sp.Rational(5, 24),
    ("C40", 2): sp.Rational(-1, 8),
    ("C30*C11", 2): sp.Rational(-1, 2),
    ("C21", 1): sp.Rational(1, 2),
    ("C11^2", 1): sp.Rational(1, 2),
}


def feynman_genus2(model, sg, f11=None, fs=None):
    """Genus-2 vacuum amplitude from the propagator-graph expansion.

    Returns the polynomial in the formal variable A (sympy expression),
    built from the vertices C~^3_0, C~^4_0, C~^1_1, C~^2_1 and the
    propagator S^00 = -A/Y00 + f_s.  Agrees with the Yamaguchi-Yau
    integration up to an A-independent additive term (the ambiguity)."""
    Asym = sp.Symbol("A")
    C30 = genus0_three_point(model)
    C40 = yy_step(C30, sg)
    C11 = genus1(model, sg, f11=f11)
    C21 = yy_step(C11, sg)
    v30, v40, v11, v21 = (C.as_expr(Asym)
                          for C in (C30, C40, C11, C21))
    fs_expr = sp.Integer(0) if fs is None else fs.expr
    S = sp.cancel(-Asym / y00_closed(model).expr + fs_expr)
    w = _GRAPH_WEIGHTS
    total = (w[("C30^2", 3)] * v30 ** 2 * S ** 3
             + w[("C40", 2)] * v40 * S ** 2
             + w[("C30*C11", 2)] * v30 * v11 * S ** 2
             + w[("C21", 1)] * v21 * S
             + w[("C11^2", 1)] * v11 ** 2 * S)
    return sp.expand(sp.cancel(sp.together(total)))


# -- q-expansions and higher-genus BPS numbers -----------------------------


def genus1_free_energy_qseries(model, sg, zq=None, f11=None):
    """theta_q-integrated genus-1 free energy for the rank-1 model.

    theta_q F1 = C~^1_1(q) / (c_1 theta_z t (q)); the q-constant term is
    dropped (F1 is fixed up to a constant)."""
    if model.nvars != 1:
        raise ValueError("genus-1 q-integration implemented for one modulus")
    if zq is None:
        zq = mirror_inversion(sg.fb)
    c1 = Fraction(model.theta0[0])
    th_t = sg.fb.t[0].theta(0).power_part
    rhs = genus1(model, sg, f11=f11).qseries(sg, zq)
    rhs = rhs * th_t.compose(zq).inverse() * (1 / c1)
    terms = {}
    for e, v in rhs.terms.items():
        if sum(e):
            terms[e] = v / e[0]
    return MultiSeries(1, sg.order, terms)


def genus2_free_energy_qseries(model, sg, zq=None, f2=None, f11=None):
    """F2(q) = C~^0_2 pushed through the mirror map (constant dropped)."""
    F2 = genus2(model, sg, f2=f2, f11=f11).qseries(sg, zq)
    terms = {e: v for e, v in F2.terms.items() if sum(e)}
    return MultiSeries(model.nvars, sg.order, terms)


def bps_genus1(qcoeffs, n0):
    """Genus-1 BPS numbers n^1_d from b_d = sum_{k|d} (n^0/12 + n^1)/k.

    Missing entries of `qcoeffs` are treated as zero coefficients."""
    out = {}
    for d in range(1, max(qcoeffs) + 1):
        val = Fraction(qcoeffs.get(d, 0))
        for k in range(2, d + 1):
            if d % k == 0:
                dk = d // k
                val -= (Fraction(n0[dk], 12) + out[dk]) / k
        out[d] = val - Fraction(n0[d], 12)
    return out


def bps_genus2(qcoeffs, n0):
    """Genus-2 BPS numbers n^2_d from b_d = sum_{k|d} k (n^0/240 + n^2).

    Missing entries of `qcoeffs` are treated as zero coefficients."""
    out = {}
    for d in range(1, max(qcoeffs) + 1):
        val = Fraction(qcoeffs.get(d, 0))
        for k in range(2, d + 1):
            if d % k == 0:
                dk = d // k
                val -= k * (Fraction(n0[dk], 240) + out[dk])
        out[d] = val - Fraction(n0[d], 240)
    return out
