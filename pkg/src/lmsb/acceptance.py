"""End-to-end acceptance checks over the built-in model registry.

Each criterion is an independent callable returning (ok, detail).  The
functions are deliberately cross-route: series pipelines are compared
against closed forms, operator identities, the algebraic (quotient-ring)
route and the floating-point oracle, so no single implementation path
can confirm itself.  `run_all` drives the list and is shared by the
command-line `check` command and the test-suite.
"""

import functools
from fractions import Fraction

import mpmath as mp
import sympy as sp

from . import hae, jacobian, oracle, yukawa
from .gkz import FrobeniusBasis, ThetaOperator, pf_operators, \
    verify_annihilation
from .models import MODEL_NAMES, get_model
from .polytope import LatticePolytope, dual_polytope, integral_points, \
    is_reflexive
from .ratfunc import RationalFunction, ReconstructionError, \
    rational_reconstruct, zvars
from .series import MultiSeries

DEFAULT_ORDER = 10


@functools.lru_cache(maxsize=None)
def _fb(name, order):
    return FrobeniusBasis(get_model(name), order)


@functools.lru_cache(maxsize=None)
def _sg(name, order):
    model = get_model(name)
    return hae.special_geometry(model, fb=_fb(name, order), order=order)


def _theta_symbols(k):
    if k == 1:
        return (sp.Symbol("th"),)
    return sp.symbols("th1:%d" % (k + 1))


def _op_to_expr(op):
    th = _theta_symbols(op.nvars)
    return sp.expand(sum(
        f.expr * sp.prod([t ** e for t, e in zip(th, alpha)])
        for alpha, f in op.terms.items()))


def _expected_pf_exprs(name):
    """The tabulated hypergeometric operators, written as the products
    of linear theta-forms they reduce to."""
    if name == "p2":
        th, = _theta_symbols(1)
        z, = zvars(1)
        return [th ** 3 + 3 * z * th * (3 * th + 1) * (3 * th + 2)]
    t1, t2 = _theta_symbols(2)
    z1, z2 = zvars(2)
    if name == "f0":
        s = -2 * t1 - 2 * t2
        return [t1 ** 2 - z1 * s * (s - 1), t2 ** 2 - z2 * s * (s - 1)]
    if name == "f1":
        s = -2 * t1 - t2
        return [t1 * (t1 - t2) - z1 * s * (s - 1),
                t2 ** 2 - z2 * s * (t1 - t2)]
    if name == "f2":
        return [t1 * (t1 - 2 * t2) - z1 * (-2 * t1) * (-2 * t1 - 1),
                t2 ** 2 - z2 * (t1 - 2 * t2) * (t1 - 2 * t2 - 1)]
    raise KeyError(name)


def criterion_1(order=DEFAULT_ORDER):
    """PF reduction reproduces the tabulated operators exactly."""
    for name in MODEL_NAMES:
        model = get_model(name)
        got = [_op_to_expr(op) for op in pf_operators(model)]
        want = [sp.expand(e) for e in _expected_pf_exprs(name)]
        if got != want:
            return False, "%s: operator mismatch" % name
    return True, "all four operator sets match exactly"


def criterion_2(order=DEFAULT_ORDER):
    """Every PF operator annihilates 1, t_i and dSF to the given order."""
    for name in MODEL_NAMES:
        model = get_model(name)
        fb = _fb(name, order)
        for op in pf_operators(model):
            if not verify_annihilation(op, fb.all_solutions(), order):
                return False, "%s: nonzero residual" % name
    return True, "residuals vanish to order %d for all models" % order


def criterion_3(order=DEFAULT_ORDER):
    """Wronskian route reconstructs the closed forms; Y(z,z;z) for the
    rank-1 model equals -1/(3(1+27z)) with unit constant."""
    for name in MODEL_NAMES:
        model = get_model(name)
        fb = _fb(name, order)
        if not yukawa.check_closed_forms(model, fb):
            return False, "%s: Wronskian route disagrees" % name
        # rational reconstruction over the discriminant => exactness
        W = yukawa.wronskian_couplings(model, fb)
        for key, Y in model.yukawa_closed.items():
            series = W[key] * Fraction(model.wronskian_scale)
            den = sp.fraction(sp.cancel(sp.together(Y.expr)))[1]
            try:
                rec = rational_reconstruct(series, den, nvars=model.nvars)
            except ReconstructionError:
                return False, "%s: reconstruction failed at %s" % (name, key)
            if sp.cancel(rec.expr - Y.expr) != 0:
                return False, "%s: reconstructed %s differs" % (name, key)
    p2 = get_model("p2")
    z, = zvars(1)
    coupling = sp.cancel(p2.yukawa_closed[(1, 1)].expr
                         / sp.Rational(p2.theta0[0]))
    if sp.cancel(coupling + 1 / (3 * (1 + 27 * z))) != 0:
        return False, "p2 coupling normalization is off"
    return True, "closed forms reconstructed; p2 coupling = -1/(3(1+27z))"


def criterion_4(order=DEFAULT_ORDER):
    """ODE route: one-dimensional solution space spanned by the closed
    forms, and the prolongation constraints vanish on them."""
    for name in MODEL_NAMES:
        model = get_model(name)
        couplings, nullity = yukawa.yukawa_from_ode(model)
        if nullity != 1:
            return False, "%s: ansatz nullity %d != 1" % (name, nullity)
        for key, Y in model.yukawa_closed.items():
            if sp.cancel(couplings[key].expr - Y.expr) != 0:
                return False, "%s: ODE coupling %s differs" % (name, key)
        residuals = yukawa.prolongation_constraint_residuals(model)
        if any(sp.cancel(r) != 0 for r in residuals):
            return False, "%s: nonzero prolongation residual" % name
    return True, "nullity 1 and zero residuals for all models"


@functools.lru_cache(maxsize=None)
def _forms(name):
    return jacobian.connection_forms(get_model(name))


def criterion_5(order=DEFAULT_ORDER):
    """Algebraic route: xi integrates to const/disc for the rank-1
    model, the connection is closed, and a0^3 xi matches the
    transcendental Y_00;0 up to one constant."""
    p2 = get_model("p2")
    a = p2.avars
    xi = jacobian.xi_normalization(p2, _forms("p2")).xi
    disc = sp.expand(27 * a[1] * a[2] * a[3] + a[0] ** 3)
    ratio = sp.cancel(xi * disc)
    if not ratio.is_constant():
        return False, "p2 xi is not const/(a0^3 + 27 a1 a2 a3)"
    for name in MODEL_NAMES:
        model = get_model(name)
        forms = _forms(name)
        if not jacobian.closedness_check(model, forms):
            return False, "%s: connection form is not closed" % name
        xi = jacobian.xi_normalization(model, forms)
        r = jacobian.algebraic_vs_transcendental(
            model, jacobian.algebraic_yukawa(model, xi))
        if not r.is_constant():
            return False, "%s: routes differ by a nonconstant" % name
    return True, "xi exact, connection closed, routes agree up to consts"


def criterion_6(order=DEFAULT_ORDER):
    """Graded dimensions (1, l-3, 1, 0) at random regular points and the
    filtration/weight tables."""
    import random
    for name in MODEL_NAMES:
        model = get_model(name)
        l = len(model.points)
        rng = random.Random(20)
        checked = 0
        while checked < 20:
            a = [Fraction(rng.randint(1, 40), rng.randint(1, 7))
                 for _ in model.points]
            try:
                dims = jacobian.rf_dimensions(model, a)
            except ValueError:
                continue
            if dims != (1, l - 3, 1, 0):
                return False, "%s: dims %s at a regular point" % (name, dims)
            checked += 1
        t = jacobian.filtration_tables(model)
        if t["I"][4] != l - 1 or t["I"][3] != l - 2 or t["I"][1] != 2:
            return False, "%s: I-filtration table wrong" % name
        if t["hodge_Z"] != {(1, 1): l - 1, (2, 2): l - 1,
                            (1, 2): 1, (2, 1): 1}:
            return False, "%s: Hodge numbers wrong" % name
        if t["weights_H3"] != {3: 2, 4: l - 4, 5: 0, 6: 1}:
            return False, "%s: weight table wrong" % name
    return True, "dimension and filtration tables as tabulated"


def criterion_7(order=DEFAULT_ORDER):
    """Special geometry: rank-1 Y00 and kappa against the PF operator,
    and the curvature reduction identity for every model."""
    p2 = get_model("p2")
    z, = zvars(1)
    if sp.cancel(hae.y00_closed(p2).expr - 9 / (1 + 27 * z)) != 0:
        return False, "p2 Y_00;0 != 9/(1+27z)"
    if sp.cancel(p2.kappa.expr + 54 * z / (1 + 27 * z)) != 0:
        return False, "p2 kappa != -54z/(1+27z)"
    op = hae.kappa_pf_operator(p2)
    fb = _fb("p2", order)
    if not verify_annihilation(op, fb.all_solutions(), order):
        return False, "kappa operator does not annihilate the solutions"
    for name in MODEL_NAMES:
        sg = _sg(name, order)
        if sg.curvature_residual():
            return False, "%s: theta0-A reduction fails" % name
    return True, "kappa/PF identity and curvature reduction hold"


def criterion_8(order=DEFAULT_ORDER):
    """Exact genus-0 BPS numbers are integers and match the independent
    numeric oracle to 10 significant digits for d <= 4."""
    p2 = get_model("p2")
    fb = _fb("p2", max(order, 6))
    exact = yukawa.bps_genus0(yukawa.gw0_invariants(p2, fb))
    num = oracle.NumericModel(p2).bps0(4)
    for d in range(1, 5):
        ex = exact[(d,)]
        if ex.denominator != 1:
            return False, "n_%d = %s is not an integer" % (d, ex)
        err = oracle.relative_error(num[d], ex)
        if err > mp.mpf(10) ** (-10):
            return False, "n_%d oracle mismatch (relerr %s)" % (d, err)
    return True, "n_1..n_4 = %s, oracle-confirmed" % (
        [int(exact[(d,)]) for d in range(1, 5)])


def criterion_9(order=DEFAULT_ORDER):
    """Genus 1-2 for the rank-1 model: dC02/dA identity, graph-sum
    versus recursion, and BPS integrality through degree 6."""
    p2 = get_model("p2")
    sg = _sg("p2", max(order, 8))
    A = sp.Symbol("A")
    C02 = hae.genus2(p2, sg)
    lhs = sp.diff(C02.as_expr(A), A)
    rhs = sum(c * A ** i
              for i, c in enumerate(hae.genus2_integrand(p2, sg)))
    if sp.cancel(lhs - rhs) != 0:
        return False, "dC02/dA identity fails"
    fey = hae.feynman_genus2(p2, sg)
    diff = sp.cancel(sp.together(fey - C02.as_expr(A) + p2.f2.expr))
    if sp.degree(sp.fraction(diff)[0], A) > 0:
        return False, "graph sum differs from recursion by an A-term"
    zq = yukawa.mirror_inversion(sg.fb)
    n0raw = yukawa.bps_genus0(yukawa.gw0_invariants(p2, sg.fb))
    n0 = {d: int(n0raw[(d,)]) for d in range(1, 7)}
    F1 = hae.genus1_free_energy_qseries(p2, sg, zq=zq)
    n1 = hae.bps_genus1(
        {e[0]: v for e, v in F1.terms.items() if 1 <= e[0] <= 6}, n0)
    F2 = hae.genus2_free_energy_qseries(p2, sg, zq=zq)
    n2 = hae.bps_genus2(
        {e[0]: v for e, v in F2.terms.items() if 1 <= e[0] <= 6}, n0)
    for d in range(1, 7):
        if n1[d].denominator != 1 or n2[d].denominator != 1:
            return False, "BPS number at degree %d is fractional" % d
    return True, "identities hold; n^1, n^2 integral for d <= 6"


def criterion_10(order=DEFAULT_ORDER):
    """Structural property suite: relation-lattice identities, reflexive
    duality, quotient-ring commutators and theta-commutativity."""
    for name in MODEL_NAMES:
        model = get_model(name)
        for l in model.relations.basis:
            if sum(l) != 0:
                return False, "%s: sum l_m != 0" % name
            for i in range(model.polytope.dim):
                if sum(lm * m[i] for lm, m in zip(l, model.points)):
                    return False, "%s: sum l_m m != 0" % name
        P = model.polytope
        if not is_reflexive(P):
            return False, "%s: polytope not reflexive" % name
        if dual_polytope(dual_polytope(P)) != P:
            return False, "%s: duality not an involution" % name
        if not jacobian.commutator_check(model, degree=1):
            return False, "%s: [D_i, D_am] != 0" % name
    s = MultiSeries(2, 6, {(1, 0): Fraction(2), (1, 1): Fraction(3, 5),
                           (0, 2): Fraction(-1)})
    if s.theta(0).theta(1) != s.theta(1).theta(0):
        return False, "theta operators do not commute on series"
    return True, "lattice, duality, commutator and theta properties hold"


CRITERIA = [
    (1, "Picard-Fuchs reduction matches tabulated operators", criterion_1),
    (2, "solution basis annihilated to order N", criterion_2),
    (3, "Wronskian Yukawa closed forms", criterion_3),
    (4, "operator-derived Yukawa couplings and constraints", criterion_4),
    (5, "algebraic (quotient-ring) Yukawa route", criterion_5),
    (6, "Jacobian-ring dimensions and filtration tables", criterion_6),
    (7, "special-geometry kappa and curvature identity", criterion_7),
    (8, "genus-0 invariants against the numeric oracle", criterion_8),
    (9, "genus 1-2 recursion, graph sum and BPS integrality", criterion_9),
    (10, "structural property suite", criterion_10),
]


def run_all(order=DEFAULT_ORDER):
    """Run every criterion; returns a list of (number, title, ok, detail)."""
    results = []
    for num, title, fn in CRITERIA:
        try:
            ok, detail = fn(order=order)
        except Exception as exc:   # a crash is a failure, not an abort
            ok, detail = False, "%s: %s" % (type(exc).__name__, exc)
        results.append((num, title, ok, detail))
    return results
