"""Truncated multivariate power series over Q, optionally with log terms.

Everything is exact: coefficients are ``fractions.Fraction``, truncation is
by total degree.  ``MultiSeries`` is the plain power-series container;
``LogSeries`` is a finite sum  sum_L  f_L(z) * prod_i (log z_i)^{L_i}  with
the hard cap  |L| <= 2  (the solution set of the hypergeometric systems in
scope never exceeds double logarithms).
"""

from fractions import Fraction
from math import factorial

LOG_CAP = 2


class LogDegreeError(ValueError):
    """A product would create a log-degree > LOG_CAP component."""


def _as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError("expected int or Fraction, got %r" % (x,))


class MultiSeries:
    """Power series in `nvars` variables, truncated at total degree `order`."""

    __slots__ = ("nvars", "order", "terms")

    def __init__(self, nvars, order, terms=None):
        self.nvars = nvars
        self.order = order
        self.terms = {}
        if terms:
            for e, c in terms.items():
                c = _as_fraction(c)
                if c and sum(e) <= order:
                    self.terms[tuple(e)] = c

    # -- constructors ------------------------------------------------------

    @classmethod
    def constant(cls, c, nvars, order):
        return cls(nvars, order, {(0,) * nvars: _as_fraction(c)})

    @classmethod
    def variable(cls, i, nvars, order):
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, order, {tuple(e): Fraction(1)})

    def copy(self):
        s = MultiSeries(self.nvars, self.order)
        s.terms = dict(self.terms)
        return s

    # -- basic queries -----------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiSeries.constant(other, self.nvars, self.order)
        if not isinstance(other, MultiSeries):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, tuple(sorted(self.terms.items()))))

    def coeff(self, e):
        return self.terms.get(tuple(e), Fraction(0))

    @property
    def constant_term(self):
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def valuation(self):
        """Smallest total degree with a nonzero coefficient (None if zero)."""
        if not self.terms:
            return None
        return min(sum(e) for e in self.terms)

    # -- arithmetic --------------------------------------------------------

    def _check(self, other):
        if self.nvars != other.nvars:
            raise ValueError("nvars mismatch")
        return min(self.order, other.order)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiSeries.constant(other, self.nvars, self.order)
        order = self._check(other)
        s = MultiSeries(self.nvars, order)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            c2 = terms.get(e, 0) + c
            if c2:
                terms[e] = c2
            else:
                terms.pop(e, None)
        s.terms = {e: c for e, c in terms.items() if sum(e) <= order}
        return s

    __radd__ = __add__

    def __neg__(self):
        s = MultiSeries(self.nvars, self.order)
        s.terms = {e: -c for e, c in self.terms.items()}
        return s

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiSeries.constant(other, self.nvars, self.order)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = _as_fraction(other)
            s = MultiSeries(self.nvars, self.order)
            if other:
                s.terms = {e: c * other for e, c in self.terms.items()}
            return s
        order = self._check(other)
        s = MultiSeries(self.nvars, order)
        terms = {}
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            for e2, c2 in other.terms.items():
                if d1 + sum(e2) > order:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                c = terms.get(e, 0) + c1 * c2
                if c:
                    terms[e] = c
                else:
                    del terms[e]
        s.terms = terms
        return s

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = MultiSeries.constant(1, self.nvars, self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / _as_fraction(other))
        return self * other.inverse()

    def inverse(self):
        c0 = self.constant_term
        if not c0:
            raise ZeroDivisionError("series has zero constant term")
        # 1/(c0(1+g)) = (1/c0) sum (-g)^k,  val(g) >= 1
        g = self / c0 - 1
        inv = MultiSeries.constant(1, self.nvars, self.order)
        acc = MultiSeries.constant(1, self.nvars, self.order)
        for _ in range(self.order):
            acc = acc * (-g)
            if not acc:
                break
            inv = inv + acc
        return inv / c0

    def log1(self):
        """log of a series with constant term 1."""
        if self.constant_term != 1:
            raise ValueError("log1 needs constant term 1")
        g = self - 1
        result = MultiSeries(self.nvars, self.order)
        acc = MultiSeries.constant(1, self.nvars, self.order)
        for k in range(1, self.order + 1):
            acc = acc * g
            if not acc:
                break
            result = result + acc * Fraction((-1) ** (k + 1), k)
        return result

    def exp(self):
        """exp of a series with constant term 0."""
        if self.constant_term:
            raise ValueError("exp needs constant term 0")
        result = MultiSeries.constant(1, self.nvars, self.order)
        acc = MultiSeries.constant(1, self.nvars, self.order)
        for k in range(1, self.order + 1):
            acc = acc * self
            if not acc:
                break
            result = result + acc * Fraction(1, factorial(k))
        return result

    def theta(self, i):
        """Logarithmic derivative z_i d/dz_i."""
        s = MultiSeries(self.nvars, self.order)
        s.terms = {e: c * e[i] for e, c in self.terms.items() if e[i]}
        return s

    def compose(self, subs):
        """Substitute z_i -> subs[i]; each subs[i] must have valuation >= 1."""
        if len(subs) != self.nvars:
            raise ValueError("need one substitution per variable")
        nvars = subs[0].nvars
        order = min([self.order] + [s.order for s in subs])
        for s in subs:
            if s.constant_term:
                raise ValueError("substitution must vanish at the origin")
        pow_cache = [
            {0: MultiSeries.constant(1, nvars, order)} for _ in range(self.nvars)
        ]

        def power(i, k):
            cache = pow_cache[i]
            if k not in cache:
                cache[k] = power(i, k - 1) * subs[i]
            return cache[k]

        result = MultiSeries(nvars, order)
        for e, c in self.terms.items():
            term = MultiSeries.constant(c, nvars, order)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            result = result + term
        return result

    def truncate(self, order):
        s = MultiSeries(self.nvars, order)
        s.terms = {e: c for e, c in self.terms.items() if sum(e) <= order}
        return s

    def max_total_degree_coeffs(self, dmax):
        """Terms of total degree <= dmax, as a plain dict."""
        return {e: c for e, c in self.terms.items() if sum(e) <= dmax}

    def __repr__(self):
        if not self.terms:
            return "MultiSeries(0)"
        items = sorted(self.terms.items(), key=lambda ec: (sum(ec[0]), ec[0]))
        bits = []
        for e, c in items[:8]:
            mono = "*".join(
                "z%d^%d" % (i, k) if k > 1 else "z%d" % i
                for i, k in enumerate(e)
                if k
            )
            bits.append("%s%s" % (c, "*" + mono if mono else ""))
        tail = " + ..." if len(items) > 8 else ""
        return "MultiSeries(%s%s; order=%d)" % (" + ".join(bits), tail, self.order)


def zero_log_series(nvars, order):
    return LogSeries(nvars, order, {})


class LogSeries:
    """Finite sum of MultiSeries components times log-monomials.

    components: dict  log-exponent tuple -> MultiSeries.
    Total log degree of every component is <= LOG_CAP.
    """

    __slots__ = ("nvars", "order", "components")

    def __init__(self, nvars, order, components=None):
        self.nvars = nvars
        self.order = order
        self.components = {}
        if components:
            for L, f in components.items():
                L = tuple(L)
                if sum(L) > LOG_CAP:
                    raise LogDegreeError("log degree %s exceeds cap" % (L,))
                if f:
                    self.components[L] = f

    @classmethod
    def from_series(cls, f):
        return cls(f.nvars, f.order, {(0,) * f.nvars: f})

    @classmethod
    def constant(cls, c, nvars, order):
        return cls.from_series(MultiSeries.constant(c, nvars, order))

    @classmethod
    def log_var(cls, i, nvars, order):
        L = [0] * nvars
        L[i] = 1
        return cls(nvars, order, {tuple(L): MultiSeries.constant(1, nvars, order)})

    def __bool__(self):
        return bool(self.components)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LogSeries.constant(other, self.nvars, self.order)
        if isinstance(other, MultiSeries):
            other = LogSeries.from_series(other)
        if not isinstance(other, LogSeries):
            return NotImplemented
        return self.nvars == other.nvars and self.components == other.components

    def component(self, L):
        L = tuple(L)
        return self.components.get(L, MultiSeries(self.nvars, self.order))

    @property
    def power_part(self):
        """The log-free component."""
        return self.component((0,) * self.nvars)

    def is_log_free(self):
        zero = (0,) * self.nvars
        return all(L == zero for L in self.components)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LogSeries.constant(other, self.nvars, self.order)
        if isinstance(other, MultiSeries):
            other = LogSeries.from_series(other)
        comps = dict(self.components)
        for L, f in other.components.items():
            g = comps.get(L)
            h = f if g is None else g + f
            if h:
                comps[L] = h
            else:
                comps.pop(L, None)
        out = LogSeries(self.nvars, min(self.order, other.order))
        out.components = comps
        return out

    __radd__ = __add__

    def __neg__(self):
        out = LogSeries(self.nvars, self.order)
        out.components = {L: -f for L, f in self.components.items()}
        return out

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LogSeries.constant(other, self.nvars, self.order)
        if isinstance(other, MultiSeries):
            other = LogSeries.from_series(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, MultiSeries)):
            out = LogSeries(self.nvars, self.order)
            comps = {}
            for L, f in self.components.items():
                g = f * other
                if g:
                    comps[L] = g
            out.components = comps
            return out
        comps = {}
        for L1, f1 in self.components.items():
            for L2, f2 in other.components.items():
                L = tuple(a + b for a, b in zip(L1, L2))
                if sum(L) > LOG_CAP:
                    raise LogDegreeError(
                        "product creates log degree %s > %d" % (L, LOG_CAP)
                    )
                g = f1 * f2
                if not g:
                    continue
                h = comps.get(L)
                h = g if h is None else h + g
                if h:
                    comps[L] = h
                else:
                    comps.pop(L, None)
        out = LogSeries(self.nvars, min(self.order, other.order))
        out.components = comps
        return out

    __rmul__ = __mul__

    def theta(self, i):
        """z_i d/dz_i with  theta(f log^k z_i) = (theta f) log^k z_i + k f log^(k-1) z_i."""
        comps = {}

        def add(L, f):
            if not f:
                return
            g = comps.get(L)
            g = f if g is None else g + f
            if g:
                comps[L] = g
            else:
                comps.pop(L, None)

        for L, f in self.components.items():
            add(L, f.theta(i))
            if L[i]:
                L2 = list(L)
                L2[i] -= 1
                add(tuple(L2), f * L[i])
        out = LogSeries(self.nvars, self.order)
        out.components = comps
        return out

    def theta_multi(self, idx):
        s = self
        for i in idx:
            s = s.theta(i)
        return s

    def truncate(self, order):
        out = LogSeries(self.nvars, order)
        out.components = {L: f.truncate(order)
                          for L, f in self.components.items()
                          if f.truncate(order)}
        return out

    def compose(self, subs, log_subs):
        """Substitute z_i -> subs[i] and log z_i -> log_subs[i].

        `subs[i]` is a MultiSeries in the target variables with valuation >= 1;
        `log_subs[i]` is a LogSeries in the target variables (typically
        log q_i - S_i(z(q)) for a mirror-map inversion).
        """
        nvars = subs[0].nvars
        order = min([self.order] + [s.order for s in subs])
        result = zero_log_series(nvars, order)
        for L, f in self.components.items():
            term = LogSeries.from_series(f.compose(subs))
            for i, k in enumerate(L):
                for _ in range(k):
                    term = term * log_subs[i]
            result = result + term
        return result

    def __repr__(self):
        bits = []
        for L in sorted(self.components):
            mono = "*".join(
                "log(z%d)^%d" % (i, k) if k > 1 else "log(z%d)" % i
                for i, k in enumerate(L)
                if k
            )
            bits.append("[%s] %r" % (mono or "1", self.components[L]))
        return "LogSeries(%s)" % "; ".join(bits or ["0"])
