"""Rational functions in the torus-invariant coordinates z_1..z_k.

Thin wrapper over sympy expressions, plus the two bridges the pipeline
needs: exact series expansion (sympy -> MultiSeries) and reconstruction of a
rational function from a truncated series given a denominator ansatz.
"""

from fractions import Fraction

import sympy as sp

from .series import MultiSeries

_ZCACHE = {}


def zvars(nvars):
    """The sympy symbols z1..z_nvars (z for nvars == 1)."""
    if nvars not in _ZCACHE:
        if nvars == 1:
            _ZCACHE[nvars] = (sp.Symbol("z"),)
        else:
            _ZCACHE[nvars] = sp.symbols("z1:%d" % (nvars + 1))
    return _ZCACHE[nvars]


def _rat_to_fraction(r):
    r = sp.Rational(r)
    return Fraction(int(r.p), int(r.q))


def poly_to_series(expr, nvars, order):
    """Expand a polynomial sympy expression into a MultiSeries (exact)."""
    zs = zvars(nvars)
    poly = sp.Poly(sp.expand(expr), *zs)
    terms = {}
    for mono, coeff in poly.terms():
        if sum(mono) <= order:
            terms[tuple(int(e) for e in mono)] = _rat_to_fraction(coeff)
    return MultiSeries(nvars, order, terms)


def series_to_poly(ms):
    """MultiSeries with finitely many terms -> polynomial sympy expression."""
    zs = zvars(ms.nvars)
    expr = sp.Integer(0)
    for e, c in ms.terms.items():
        term = sp.Rational(c.numerator, c.denominator)
        for i, k in enumerate(e):
            if k:
                term *= zs[i] ** k
        expr += term
    return expr


class ReconstructionError(ValueError):
    """Series does not match any p/denom with the given degree bound."""


class RationalFunction:
    """num/den with polynomial num, den in z; den monic in a fixed term order."""

    __slots__ = ("nvars", "num", "den")

    def __init__(self, num, den=1, nvars=None):
        if nvars is None:
            raise ValueError("nvars is required")
        self.nvars = nvars
        zs = zvars(nvars)
        expr = sp.cancel(sp.together(sp.sympify(num) / sp.sympify(den)), *zs)
        n, d = sp.fraction(expr)
        n = sp.expand(n)
        d = sp.expand(d)
        if d.is_zero:
            raise ZeroDivisionError("zero denominator")
        # normalize: denominator leading coefficient 1 in lex order
        dpoly = sp.Poly(d, *zs)
        lc = dpoly.LC(order="lex")
        self.num = sp.expand(n / lc)
        self.den = sp.expand(d / lc)

    @classmethod
    def from_string(cls, s, nvars):
        zs = zvars(nvars)
        local = {str(v): v for v in zs}
        return cls(sp.sympify(s, locals=local), 1, nvars=nvars)

    @property
    def expr(self):
        return self.num / self.den

    def __repr__(self):
        return "RationalFunction(%s)" % sp.sstr(self.expr)

    def to_string(self):
        return sp.sstr(sp.factor(self.expr))

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        return RationalFunction(sp.sympify(other), 1, nvars=self.nvars)

    def __add__(self, other):
        other = self._coerce(other)
        return RationalFunction(self.expr + other.expr, 1, nvars=self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, nvars=self.nvars)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        return RationalFunction(self.expr * other.expr, 1, nvars=self.nvars)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        return RationalFunction(self.expr / other.expr, 1, nvars=self.nvars)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __eq__(self, other):
        if not isinstance(other, (RationalFunction, int, Fraction)):
            return NotImplemented
        other = self._coerce(other)
        return sp.simplify(self.expr - other.expr) == 0

    def __hash__(self):
        return hash(sp.cancel(self.expr))

    def is_zero(self):
        return self.num.is_zero

    def theta(self, i):
        z = zvars(self.nvars)[i]
        return RationalFunction(z * sp.diff(self.expr, z), 1, nvars=self.nvars)

    def series(self, order):
        """Exact MultiSeries expansion about z = 0 (denominator unit at 0)."""
        num = poly_to_series(self.num, self.nvars, order)
        den = poly_to_series(self.den, self.nvars, order)
        return num * den.inverse()

    def subs_scalars(self, values):
        zs = zvars(self.nvars)
        expr = self.expr.subs(
            {z: sp.Rational(v.numerator, v.denominator) if isinstance(v, Fraction)
             else v for z, v in zip(zs, values)}
        )
        return _rat_to_fraction(sp.nsimplify(expr)) if expr.is_Rational else expr


RECONSTRUCT_MARGIN = 4


def rational_reconstruct(series, denom, num_degree=None, nvars=None):
    """Find polynomial p with  p/denom == series  to truncation order.

    `denom` is a polynomial sympy expression (or RationalFunction with unit
    denominator).  `num_degree` bounds the total degree of p; it defaults to
    deg(denom) + 1.  Requires series.order >= num_degree + RECONSTRUCT_MARGIN,
    and raises ReconstructionError when the residual is nonzero (wrong
    denominator ansatz).
    """
    if nvars is None:
        nvars = series.nvars
    if isinstance(denom, RationalFunction):
        if not denom.den.is_constant():
            raise ValueError("denominator ansatz must be polynomial")
        denom_expr = denom.num
    else:
        denom_expr = sp.expand(sp.sympify(denom))
    if num_degree is None:
        num_degree = sp.Poly(denom_expr, *zvars(nvars)).total_degree() + 1
    if series.order < num_degree + RECONSTRUCT_MARGIN:
        raise ValueError(
            "series order %d too small for numerator degree %d (+margin %d)"
            % (series.order, num_degree, RECONSTRUCT_MARGIN)
        )
    den_series = poly_to_series(denom_expr, nvars, series.order)
    prod = series * den_series
    num_terms = {}
    for e, c in prod.terms.items():
        if sum(e) <= num_degree:
            num_terms[e] = c
        elif c:
            raise ReconstructionError(
                "residual %s at degree %s: denominator ansatz does not fit"
                % (c, e)
            )
    num_expr = series_to_poly(MultiSeries(nvars, series.order, num_terms))
    return RationalFunction(num_expr, denom_expr, nvars=nvars)
