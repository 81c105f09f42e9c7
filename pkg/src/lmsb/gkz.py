"""A-hypergeometric structure: Frobenius solutions and operator reduction.

The solution engine is uniform in the relation lattice.  With a Z-basis
l^(1), ..., l^(k) of relations among the points a_m and lambda_m(v) =
sum_i l^(i)_m v_i, the deformed coefficient is

    c_n(rho) = prod_m Gamma(1 + lambda_m(rho)) / Gamma(1 + lambda_m(rho + n))

computed in the quotient ring Q[rho_1..rho_k]/(deg >= 3) (class `Rho2`).
Expanding z^(n+rho) = z^n exp(sum_i rho_i log z_i) and reading off
rho-coefficients yields the constant solution 1, the logarithmic solutions
t_i = log z_i + S_i(z), and the double-logarithmic combination dSF used by
the couplings.  For every built-in model the rho-coefficient series are
checked in the test-suite against the classical hypergeometric sums.

Operators are polynomials in the commuting logarithmic derivations
theta_i = z_i d/dz_i with rational-function coefficients (`ThetaOperator`).
`reduce_to_pf(model, i)` produces the generalized-hypergeometric operator
attached to the i-th basis relation, already reduced from the resonant box
operator to the theta-variables.
"""

import itertools
from fractions import Fraction
from math import comb, factorial

from .models import ModelData
from .ratfunc import RationalFunction, zvars
from .series import LogSeries, MultiSeries


# -- truncated polynomial ring Q[rho]/(deg >= 3) ---------------------------


class Rho2:
    """Element of Q[rho_1..rho_k] truncated beyond total degree 2."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        self.terms = {}
        if terms:
            for e, c in terms.items():
                c = Fraction(c)
                if c and sum(e) <= 2:
                    self.terms[tuple(e)] = c

    @classmethod
    def constant(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: Fraction(c)})

    @classmethod
    def linear(cls, coeffs):
        """sum_i coeffs[i] * rho_i."""
        nvars = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            e = [0] * nvars
            e[i] = 1
            terms[tuple(e)] = Fraction(c)
        return cls(nvars, terms)

    def coeff(self, e):
        return self.terms.get(tuple(e), Fraction(0))

    @property
    def const(self):
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def __add__(self, other):
        if not isinstance(other, Rho2):
            other = Rho2.constant(self.nvars, other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, Fraction(0)) + c
        return Rho2(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return Rho2(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, Rho2)
                       else Rho2.constant(self.nvars, -Fraction(other)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Rho2):
            c = Fraction(other)
            return Rho2(self.nvars,
                        {e: v * c for e, v in self.terms.items()})
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                if sum(e) <= 2:
                    terms[e] = terms.get(e, Fraction(0)) + c1 * c2
        return Rho2(self.nvars, terms)

    __rmul__ = __mul__

    def inverse(self):
        c0 = self.const
        if c0 == 0:
            raise ZeroDivisionError("Rho2 element is not a unit")
        # u = c0 (1 + x)  =>  1/u = (1 - x + x^2) / c0
        x = self * (Fraction(1) / c0) - 1
        one = Rho2.constant(self.nvars, 1)
        return (one - x + x * x) * (Fraction(1) / c0)

    def __truediv__(self, other):
        if isinstance(other, Rho2):
            return self * other.inverse()
        return self * (Fraction(1) / Fraction(other))

    def __eq__(self, other):
        if not isinstance(other, Rho2):
            other = Rho2.constant(self.nvars, other)
        return self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "Rho2(0)"
        bits = []
        for e in sorted(self.terms):
            mono = "*".join("rho%d" % (i + 1) if k == 1
                            else "rho%d**%d" % (i + 1, k)
                            for i, k in enumerate(e) if k)
            c = self.terms[e]
            bits.append(str(c) if not mono else "%s*%s" % (c, mono))
        return "Rho2(%s)" % " + ".join(bits)


def gammaratio(x, k):
    """Gamma(1 + x) / Gamma(1 + x + k) for Rho2-valued x and integer k."""
    one = Rho2.constant(x.nvars, 1)
    if k >= 0:
        den = one
        for j in range(1, k + 1):
            den = den * (x + j)
        return den.inverse()
    out = one
    for j in range(k + 1, 1):
        out = out * (x + j)
    return out


# -- Frobenius basis -------------------------------------------------------


def _lambda_forms(basis):
    """Per-point linear forms lambda_m(v) = sum_i l^(i)_m v_i."""
    npoints = len(basis[0])
    return [tuple(l[m] for l in basis) for m in range(npoints)]


def gamma_coefficient(basis, n):
    """c_n(rho) as a Rho2 element, for n a tuple of basis multiplicities."""
    k = len(basis)
    c = Rho2.constant(k, 1)
    for form in _lambda_forms(basis):
        shift = sum(f * ni for f, ni in zip(form, n))
        c = c * gammaratio(Rho2.linear(form), shift)
    return c


class FrobeniusBasis:
    """Solution data of the reduced system at the large-volume point.

    Attributes
    ----------
    omega0 : MultiSeries       -- the constant solution (identically 1 here)
    S : list of MultiSeries    -- single-log tails, t_i = log z_i + S_i
    t : list of LogSeries      -- the canonical coordinates t_i(z)
    dSF : LogSeries            -- the model's double-log combination
    components : dict          -- rho-monomial -> LogSeries (all solutions)
    """

    def __init__(self, model, order):
        self.model = model
        self.order = order
        k = model.nvars
        basis = model.relations.basis

        coeff_series = {}   # rho-exponent -> MultiSeries of c_n coefficients
        zero = (0,) * k
        for n in itertools.product(range(order + 1), repeat=k):
            if sum(n) > order:
                continue
            c = gamma_coefficient(basis, n)
            for e, v in c.terms.items():
                coeff_series.setdefault(e, {})[n] = v
        self._coeffs = {
            e: MultiSeries(k, order, terms)
            for e, terms in coeff_series.items()}

        # [rho^beta] (c_n(rho) z^(n+rho))
        #    = sum_{gamma <= beta} c^[gamma] (log z)^(beta-gamma)/(beta-gamma)!
        self.components = {}
        for beta in itertools.product(range(3), repeat=k):
            if sum(beta) > 2:
                continue
            comp = {}
            for gamma, series in self._coeffs.items():
                if any(g > b for g, b in zip(gamma, beta)):
                    continue
                logexp = tuple(b - g for b, g in zip(beta, gamma))
                scale = Fraction(1)
                for x in logexp:
                    scale /= factorial(x)
                piece = series * scale
                comp[logexp] = comp.get(logexp, MultiSeries(k, order)) + piece
            self.components[beta] = LogSeries(
                k, order, {e: s for e, s in comp.items() if s.terms})

        self.omega0 = self._coeffs[zero]
        if self.omega0.terms != {zero: Fraction(1)}:
            raise ValueError("constant solution is not identically 1")

        self.S = []
        self.t = []
        for i in range(k):
            e = tuple(1 if j == i else 0 for j in range(k))
            self.S.append(self._coeffs.get(e, MultiSeries(k, order)))
            self.t.append(self.components[e])

        dsf = LogSeries(k, order)
        for beta, w in model.dSF_combination.items():
            scale = Fraction(w)
            for x in beta:
                scale *= factorial(x)
            dsf = dsf + self.components[beta] * scale
        self.dSF = dsf

        self.H = sum((s * c for s, c in zip(self.S, model.H_from_S)),
                     MultiSeries(k, order))

    def all_solutions(self):
        """The annihilated space: [1, t_1..t_k, dSF]."""
        k = self.model.nvars
        one = LogSeries.constant(1, k, self.order)
        return [one] + list(self.t) + [self.dSF]


def frobenius_basis(model, order):
    return FrobeniusBasis(model, order)


# -- operators in theta_i = z_i d/dz_i -------------------------------------


class ThetaOperator:
    """sum_alpha f_alpha(z) theta^alpha with rational-function coefficients."""

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        self.terms = {}
        if terms:
            for e, f in terms.items():
                if not isinstance(f, RationalFunction):
                    f = RationalFunction(f, nvars=nvars)
                if not f.is_zero():
                    self.terms[tuple(e)] = f

    @classmethod
    def from_theta_poly(cls, nvars, poly):
        """Build from {theta-exponent: scalar} with scalar coefficients."""
        return cls(nvars, {e: RationalFunction(c, nvars=nvars)
                           for e, c in poly.items()})

    def __add__(self, other):
        terms = dict(self.terms)
        for e, f in other.terms.items():
            terms[e] = terms.get(e, RationalFunction(0, nvars=self.nvars)) + f
        return ThetaOperator(self.nvars, terms)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return ThetaOperator(self.nvars,
                             {e: f * c for e, f in self.terms.items()})

    def mul_function(self, g):
        """Left-multiply by a rational function."""
        return ThetaOperator(self.nvars,
                             {e: g * f for e, f in self.terms.items()})

    def compose(self, other):
        """Operator product self . other (self applied after other)."""
        out = {}
        for alpha, f in self.terms.items():
            for beta, g in other.terms.items():
                # theta^alpha (g u) = sum_{c<=a} binom(a,c) theta^c(g)
                #                                theta^(a-c) u
                for gamma in itertools.product(
                        *(range(a + 1) for a in alpha)):
                    coeff = 1
                    for a, c in zip(alpha, gamma):
                        coeff *= comb(a, c)
                    gd = g
                    for i, c in enumerate(gamma):
                        for _ in range(c):
                            gd = gd.theta(i)
                    if gd.is_zero():
                        continue
                    e = tuple(a - c + b
                              for a, c, b in zip(alpha, gamma, beta))
                    term = f * gd * coeff
                    out[e] = out.get(
                        e, RationalFunction(0, nvars=self.nvars)) + term
        return ThetaOperator(self.nvars, out)

    def order2_part(self):
        """Terms of theta-degree exactly 2 (used for coupling relations)."""
        return {e: f for e, f in self.terms.items() if sum(e) == 2}

    def apply(self, sol, order=None):
        """Apply to a LogSeries; coefficients are expanded to `order`."""
        if order is None:
            order = sol.order
        result = None
        for e, f in self.terms.items():
            piece = sol
            for i, k in enumerate(e):
                for _ in range(k):
                    piece = piece.theta(i)
            piece = piece * f.series(order)
            result = piece if result is None else result + piece
        return result

    def __repr__(self):
        if not self.terms:
            return "ThetaOperator(0)"
        bits = []
        for e in sorted(self.terms, key=lambda x: (sum(x), x)):
            mono = "*".join(
                "theta%d" % (i + 1) if k == 1 else "theta%d**%d" % (i + 1, k)
                for i, k in enumerate(e) if k)
            f = self.terms[e].to_string()
            bits.append("(%s)" % f if not mono else "(%s)*%s" % (f, mono))
        return " + ".join(bits)


def euler_operators(model):
    """Homogeneity operators in the coefficient variables a_m.

    Returned as a matrix of integer coefficients: row 0 is the degree
    operator sum_m theta_{a_m}, rows 1..n are sum_m (m_i) theta_{a_m}.
    """
    points = model.points
    n = len(points[0])
    rows = [[1] * len(points)]
    for i in range(n):
        rows.append([m[i] for m in points])
    return rows


def box_operator(l):
    """Box operator of a relation l, as (positive, negative) multi-indices:
    prod_{l_m>0} d_{a_m}^{l_m}  -  prod_{l_m<0} d_{a_m}^{-l_m}."""
    pos = tuple(x if x > 0 else 0 for x in l)
    neg = tuple(-x if x < 0 else 0 for x in l)
    return pos, neg


def _theta_poly_mul(p, q, nvars):
    out = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = out.get(e, Fraction(0)) + c1 * c2
    return out


def reduce_to_pf(model, index):
    """Hypergeometric operator of the basis relation l^(index).

    This is the standard reduction of the box operator to the torus
    coordinates: with theta_{a_m} = sum_i l^(i)_m theta_i,

      L = prod_{l_m>0} prod_{j=0}^{l_m-1} (theta_{a_m} - j)
          - z^l prod_{l_m<0} prod_{j=0}^{-l_m-1} (theta_{a_m} - j).

    For a basis relation z^l is just z_index.
    """
    k = model.nvars
    basis = model.relations.basis
    l = basis[index]
    forms = _lambda_forms(basis)
    one = {(0,) * k: Fraction(1)}

    def linear_minus(form, j):
        poly = {}
        for i, c in enumerate(form):
            if c:
                e = [0] * k
                e[i] = 1
                poly[tuple(e)] = Fraction(c)
        if j:
            poly[(0,) * k] = poly.get((0,) * k, Fraction(0)) - j
        return poly

    pos = dict(one)
    neg = dict(one)
    for m, lm in enumerate(l):
        for j in range(abs(lm)):
            factor = linear_minus(forms[m], j)
            if lm > 0:
                pos = _theta_poly_mul(pos, factor, k)
            elif lm < 0:
                neg = _theta_poly_mul(neg, factor, k)

    zmono = RationalFunction(zvars(k)[index], nvars=k)
    op = ThetaOperator.from_theta_poly(k, pos)
    return op - ThetaOperator.from_theta_poly(k, neg).mul_function(zmono)


def pf_operators(model):
    return [reduce_to_pf(model, i) for i in range(model.nvars)]


def verify_annihilation(op, solutions, order):
    """Check that `op` kills every series in `solutions` through `order`.

    Returns the maximal absolute value (0 means exact annihilation)."""
    for sol in solutions:
        res = op.apply(sol, order=order).truncate(order - 1)
        if res:
            return False
    return True
