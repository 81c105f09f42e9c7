"""Lattice polytope combinatorics for the B-model pipeline.

Everything here is exact integer arithmetic.  The interesting dimension is
n = 2 (the sixteen reflexive polygons); lower-dimensional degenerate hulls
are supported where cheap (integral point enumeration).
"""

from fractions import Fraction
from math import gcd

import sympy as sp


class OriginNotInteriorError(ValueError):
    """Reflexivity is undefined: the origin is not an interior point."""


class NotReflexiveError(ValueError):
    pass


def _vgcd(v):
    g = 0
    for x in v:
        g = gcd(g, abs(x))
    return g or 1


def _convex_hull_2d(points):
    """Andrew's monotone chain; returns hull vertices in ccw order."""
    pts = sorted(set(map(tuple, points)))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


class LatticePolytope:
    """Convex hull of integer points; vertices stored as the exact vertex set."""

    def __init__(self, vertices):
        pts = [tuple(int(x) for x in v) for v in vertices]
        if not pts:
            raise ValueError("empty vertex list")
        self.ambient_dim = len(pts[0])
        if any(len(p) != self.ambient_dim for p in pts):
            raise ValueError("inconsistent ambient dimension")
        if self.ambient_dim != 2:
            # data-structure support only; hull reduction needs n = 2
            self.vertices = sorted(set(pts))
        else:
            hull = _convex_hull_2d(pts)
            if len(hull) > 2:
                self.vertices = hull  # ccw order
            else:
                self.vertices = hull
        base = self.vertices[0]
        diffs = sp.Matrix([[p[i] - base[i] for i in range(self.ambient_dim)]
                           for p in self.vertices])
        self.dim = diffs.rank()

    def __repr__(self):
        return "LatticePolytope(%r)" % (self.vertices,)

    def __eq__(self, other):
        if not isinstance(other, LatticePolytope):
            return NotImplemented
        return set(self.vertices) == set(other.vertices)

    def __hash__(self):
        return hash(frozenset(self.vertices))

    # -- facets (n = 2) ----------------------------------------------------

    def edges(self):
        """Pairs of consecutive ccw vertices (requires dim 2)."""
        if self.dim != 2:
            raise ValueError("edges need a 2-dimensional polytope")
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def facet_normals(self):
        """(primitive outward normal u, support value h) per edge: <u,x> = h."""
        out = []
        for v, w in self.edges():
            d = (w[0] - v[0], w[1] - v[1])
            n = (d[1], -d[0])  # outward for ccw orientation
            g = _vgcd(n)
            n = (n[0] // g, n[1] // g)
            out.append((n, n[0] * v[0] + n[1] * v[1]))
        return out

    def contains(self, p):
        if self.dim == 2:
            return all(n[0] * p[0] + n[1] * p[1] <= h
                       for n, h in self.facet_normals())
        # degenerate: membership in a segment / point
        if self.dim == 0:
            return tuple(p) == self.vertices[0]
        a, b = self.vertices[0], self.vertices[-1]
        d = tuple(b[i] - a[i] for i in range(self.ambient_dim))
        r = tuple(p[i] - a[i] for i in range(self.ambient_dim))
        # r must be a rational multiple t*d with 0 <= t <= 1
        cross = d[0] * r[1] - d[1] * r[0] if self.ambient_dim == 2 else None
        if cross not in (0, None):
            return False
        dots = sum(d[i] * r[i] for i in range(self.ambient_dim))
        dd = sum(x * x for x in d)
        return 0 <= dots <= dd


def integral_points(P):
    """A(Delta): origin first (if present), remaining points in lex order."""
    vs = P.vertices
    lo = [min(v[i] for v in vs) for i in range(P.ambient_dim)]
    hi = [max(v[i] for v in vs) for i in range(P.ambient_dim)]
    pts = []
    if P.ambient_dim == 2:
        candidates = [(x, y) for x in range(lo[0], hi[0] + 1)
                      for y in range(lo[1], hi[1] + 1)]
    else:
        raise ValueError("integral point enumeration implemented for n = 2")
    for p in candidates:
        if P.contains(p):
            pts.append(p)
    origin = (0,) * P.ambient_dim
    rest = sorted(p for p in pts if p != origin)
    return ([origin] + rest) if origin in pts else rest


def is_reflexive(P):
    """True iff every facet lies at lattice distance one from the origin."""
    if P.dim != P.ambient_dim:
        raise OriginNotInteriorError("polytope is not full-dimensional")
    normals = P.facet_normals()
    if any(h <= 0 for _, h in normals):
        raise OriginNotInteriorError("origin is not an interior point")
    return all(h == 1 for _, h in normals)


def dual_polytope(P):
    """Polar dual {y : <y, x> >= -1 on P}; vertices are -(outward normals)."""
    if not is_reflexive(P):
        raise NotReflexiveError("dual polytope requires a reflexive polytope")
    return LatticePolytope([(-n[0], -n[1]) for n, _ in P.facet_normals()])


def normalized_volume(P):
    """n! times the Euclidean volume (n = 2: twice the area, shoelace)."""
    if P.dim != 2:
        raise ValueError("normalized volume implemented for dim 2")
    vs = P.vertices
    twice_area = 0
    for i in range(len(vs)):
        x1, y1 = vs[i]
        x2, y2 = vs[(i + 1) % len(vs)]
        twice_area += x1 * y2 - x2 * y1
    return abs(twice_area)


# -- lattice of relations --------------------------------------------------


def _integer_row_echelon(rows, ncols_left):
    """Integer row reduction of the left block by unimodular row operations.

    `rows` are mutable lists; the first `ncols_left` entries are the block to
    eliminate, the rest ride along.  Returns the reduced rows.
    """
    rows = [list(r) for r in rows]
    pivot_row = 0
    for col in range(ncols_left):
        # find a row with minimal nonzero |entry| and reduce the column by gcd
        while True:
            nz = [i for i in range(pivot_row, len(rows)) if rows[i][col]]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(rows[i][col]))
            rows[pivot_row], rows[i0] = rows[i0], rows[pivot_row]
            p = rows[pivot_row][col]
            done = True
            for i in range(pivot_row + 1, len(rows)):
                q = rows[i][col] // p
                if q:
                    rows[i] = [a - q * b for a, b in zip(rows[i], rows[pivot_row])]
                if rows[i][col]:
                    done = False
            if done:
                pivot_row += 1
                break
    return rows, pivot_row


def integer_kernel_basis(matrix):
    """Z-basis of {x in Z^c : matrix @ x = 0} for an integer matrix (list of rows)."""
    nrows = len(matrix)
    ncols = len(matrix[0])
    # rows of [A^T | I]: unimodular row ops preserve the relation
    #   (left block) = (right block) @ A^T
    aug = []
    for j in range(ncols):
        row = [matrix[i][j] for i in range(nrows)]
        row += [1 if k == j else 0 for k in range(ncols)]
        aug.append(row)
    reduced, rank = _integer_row_echelon(aug, nrows)
    basis = []
    for row in reduced:
        if any(row[:nrows]):
            continue
        vec = row[nrows:]
        basis.append(tuple(vec))
    return basis


def hnf_rows(vectors):
    """Hermite normal form of the row span (canonical lattice representative)."""
    if not vectors:
        return ()
    mat = sp.Matrix([list(v) for v in vectors])
    from sympy.matrices.normalforms import hermite_normal_form

    # hermite_normal_form works on column-style lattices; use the transpose
    h = hermite_normal_form(mat.T)
    cols = [tuple(int(x) for x in h.col(j)) for j in range(h.cols)]
    return tuple(sorted(cols))


class RelationLattice:
    """Z-basis of the lattice of relations among A(Delta) (origin-first order)."""

    def __init__(self, points, basis):
        self.points = [tuple(p) for p in points]
        self.npoints = len(points)
        self.basis = [tuple(int(x) for x in l) for l in basis]
        for l in self.basis:
            if len(l) != self.npoints:
                raise ValueError("relation length != number of points")
            if sum(l) != 0:
                raise ValueError("relation coefficients do not sum to zero")
            for i in range(len(self.points[0])):
                if sum(lm * m[i] for lm, m in zip(l, self.points)):
                    raise ValueError("relation does not annihilate the points")

    def __repr__(self):
        return "RelationLattice(%r)" % (self.basis,)


def lattice_of_relations(P, points=None, pinned_basis=None):
    """Kernel lattice of the (n+1) x l(Delta) matrix with columns (m, 1).

    `pinned_basis`, when given (built-in models), is verified to span the
    same lattice as the computed Hermite-basis and then returned verbatim.
    """
    if points is None:
        points = integral_points(P)
    n = len(points[0])
    matrix = [[m[i] for m in points] for i in range(n)]
    matrix.append([1] * len(points))
    basis = integer_kernel_basis(matrix)
    if pinned_basis is not None:
        if hnf_rows(pinned_basis) != hnf_rows(basis):
            raise ValueError("pinned basis does not span the relation lattice")
        basis = pinned_basis
    return RelationLattice(points, basis)


# -- Laurent polynomials and Delta-regularity ------------------------------


class LaurentPolynomial:
    """Finite sum a_m t^m, m in Z^n; coefficients Fraction or sympy."""

    def __init__(self, terms):
        self.terms = {tuple(int(x) for x in m): c for m, c in terms.items()
                      if c != 0}

    def newton_polytope(self):
        return LatticePolytope(list(self.terms))

    def matches_polytope(self, P):
        return self.newton_polytope() == P


def regularity_probe(P, coeffs):
    """Best-effort Delta-regularity check for a general polygon.

    `coeffs` maps integral points m (tuples) to rational numbers.  Edges are
    decided exactly (squarefree test of the edge polynomial); the interior
    face uses a Groebner-basis saturation, which can be slow for large
    supports -- results for non-built-in polytopes are advisory, not a
    discriminant evaluation.  Returns (is_regular, method_string).
    """
    if P.dim != 2:
        raise ValueError("regularity probe implemented for dim 2")
    s = sp.Symbol("s")
    # 1-dimensional faces
    for v, w in P.edges():
        d = (w[0] - v[0], w[1] - v[1])
        g = _vgcd(d)
        d = (d[0] // g, d[1] // g)
        steps = g
        poly = sp.Integer(0)
        for k in range(steps + 1):
            m = (v[0] + k * d[0], v[1] + k * d[1])
            c = coeffs.get(m, 0)
            if isinstance(c, Fraction):
                c = sp.Rational(c.numerator, c.denominator)
            poly += c * s ** k
        # edge is regular iff the edge polynomial has no repeated root off 0
        poly = sp.cancel(poly / s ** min(sp.Poly(poly, s).monoms())[0]) \
            if poly != 0 else poly
        if poly == 0:
            return False, "edge polynomial vanishes"
        if sp.degree(poly, s) >= 1:
            disc_gcd = sp.gcd(sp.Poly(poly, s), sp.Poly(sp.diff(poly, s), s))
            if sp.degree(disc_gcd.as_expr(), s) >= 1:
                root_free = all(r == 0 for r in sp.roots(disc_gcd.as_expr(), s))
                if not root_free:
                    return False, "repeated root on an edge"
    # 2-dimensional face: torus-saturated Groebner basis
    t1, t2, u = sp.symbols("t1 t2 u")
    F = sp.Integer(0)
    for m, c in coeffs.items():
        if isinstance(c, Fraction):
            c = sp.Rational(c.numerator, c.denominator)
        F += c * t1 ** m[0] * t2 ** m[1]
    F = sp.together(F)
    Fnum = sp.fraction(F)[0]
    shift = t1 ** 8 * t2 ** 8  # clear any leftover negative powers
    polys = [sp.expand(Fnum),
             sp.expand(sp.together(t1 * sp.diff(F, t1)) * shift),
             sp.expand(sp.together(t2 * sp.diff(F, t2)) * shift)]
    polys = [sp.fraction(sp.cancel(p))[0] for p in polys]
    gb = sp.groebner(polys + [t1 * t2 * u - 1], t1, t2, u, order="grevlex")
    regular = sp.Integer(1) in gb.exprs
    return regular, "edge gcd test + torus Groebner saturation"
