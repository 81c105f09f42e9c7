"""Independent floating-point oracle for the genus-0 pipeline.

Nothing here shares code with the exact series machinery: the Frobenius
solutions are evaluated as high-precision hypergeometric sums through
`mpmath.gamma`, the rho-derivatives are taken by finite differences, the
mirror map is inverted by numeric fixed-point iteration at sample points
on a small circle in the q-plane, and the instanton coefficients are
recovered by a discrete Fourier fit.  Used to cross-check the exact
genus-0 invariants to high relative accuracy.
"""

from fractions import Fraction

import mpmath as mp


class NumericModel:
    """One-modulus numeric evaluator built from the registry data only.

    Parameters mirror the exact pipeline's registry fields: `relations`
    (a single ell-vector), `dSF_scale`, `classical_Q`, `chern_c`."""

    def __init__(self, model, dps=60, nterms=48, eps=None):
        if model.nvars != 1:
            raise ValueError("numeric oracle implemented for one modulus")
        self.model = model
        self.ell = [Fraction(x) for x in model.relations.basis[0]]
        self.dps = dps
        self.nterms = nterms
        self.eps = mp.mpf(10) ** (-15) if eps is None else eps
        (key, w), = model.dSF_combination.items()
        if key != (2,):
            raise ValueError("expected a pure second-derivative dSF")
        self.dsf_scale = Fraction(w) * 2 * Fraction(model.dSF_scale)
        self.Q = Fraction(model.classical_Q[0][0])
        self.c1 = Fraction(model.chern_c[0])

    def _coeff(self, n, rho):
        """c_n(rho) = prod_m Gamma(1 + l_m rho) / Gamma(1 + l_m (n+rho))."""
        if rho == 0:
            # a denominator pole kills the term; otherwise plain factorials
            out = mp.mpf(1)
            for l in self.ell:
                arg = 1 + l * n
                if arg <= 0:
                    return mp.mpf(0)
                out /= mp.gamma(mp.mpf(arg.numerator) / arg.denominator)
            return out
        out = mp.mpf(1)
        for l in self.ell:
            lf = mp.mpf(l.numerator) / l.denominator
            out *= mp.gamma(1 + lf * rho) / mp.gamma(1 + lf * (n + rho))
        return out

    def _phi(self, z, rho):
        """Truncated Gamma-series sum_n c_n(rho) z^(n+rho)."""
        total = mp.mpf(0)
        zr = mp.power(z, rho) if rho else 1
        for n in range(self.nterms + 1):
            total += self._coeff(n, rho) * z ** n
        return total * zr

    def t_of_z(self, z):
        """Canonical coordinate t = d/drho Phi at rho = 0 (log z included)."""
        e = self.eps
        return (self._phi(z, e) - self._phi(z, -e)) / (2 * e)

    def s_of_z(self, z):
        """Single-log tail S(z) = t(z) - log z."""
        return self.t_of_z(z) - mp.log(z)

    def d2_of_z(self, z):
        """Second rho-derivative of the Gamma-series at rho = 0."""
        e = self.eps
        return (self._phi(z, e) - 2 * self._phi(z, 0)
                + self._phi(z, -e)) / e ** 2

    def z_of_q(self, q, iterations=64):
        """Fixed-point inversion z = q exp(-S(z)) of the mirror map."""
        z = q
        for _ in range(iterations):
            z = q * mp.exp(-self.s_of_z(z))
        # the fixed point is limited by the finite-difference error in S
        if abs(z * mp.exp(self.s_of_z(z)) - q) > mp.mpf(10) ** (25 - self.dps):
            raise ArithmeticError("numeric mirror inversion did not converge")
        return z

    def potential_inst(self, q):
        """Instanton part of the potential at the numeric point q."""
        z = self.z_of_q(q)
        phi = self.d2_of_z(z) * mp.mpf(self.dsf_scale.numerator) \
            / self.dsf_scale.denominator / 2
        logq = mp.log(z) + self.s_of_z(z)
        classical = (mp.mpf(self.Q.numerator) / self.Q.denominator
                     * logq ** 2 / 2)
        return phi - classical

    def gw0(self, dmax, radius=None, nsamples=None):
        """Genus-0 invariants N_d, d = 1..dmax, by Fourier coefficient fit."""
        with mp.workdps(self.dps):
            r = mp.mpf(10) ** (-4) if radius is None else radius
            M = max(2 * dmax, 8) if nsamples is None else nsamples
            vals = []
            for j in range(M):
                q = r * mp.exp(2j * mp.pi * mp.mpf(j) / M)
                vals.append(self.potential_inst(q))
            out = {}
            c1 = mp.mpf(self.c1.numerator) / self.c1.denominator
            for d in range(1, dmax + 1):
                a = sum(v * mp.exp(-2j * mp.pi * mp.mpf(j * d) / M)
                        for j, v in enumerate(vals)) / M / r ** d
                out[d] = a / (-c1 * d)
            return out

    def bps0(self, dmax, **kwargs):
        """BPS numbers n_d from the multi-cover reduction of gw0."""
        N = self.gw0(dmax, **kwargs)
        out = {}
        for d in range(1, dmax + 1):
            val = N[d]
            for m in range(2, d + 1):
                if d % m == 0:
                    val -= out[d // m] / mp.mpf(m) ** 3
            out[d] = val
        return out


def relative_error(numeric, exact):
    """|numeric - exact| / max(1, |exact|) as an mpmath float."""
    ex = mp.mpf(exact.numerator) / exact.denominator \
        if isinstance(exact, Fraction) else mp.mpf(exact)
    return abs(numeric - ex) / max(1, abs(ex))
