"""The sixteen lattice-equivalence classes of reflexive polygons.

The representatives were produced by a one-off exhaustive enumeration of
convex lattice polygons with vertices in [-2,2]^2 whose unique interior
lattice point is the origin, identified up to GL(2,Z); the results are
frozen here and re-verified (reflexivity, pairwise inequivalence, the
duality involution and the 12-point boundary pairing) by the test-suite.
"""

from fractions import Fraction

# index -> vertex list; duality permutation below
REFLEXIVE_16 = [
    [(-2, -1), (0, -1), (1, 1)],
    [(-2, -1), (0, -1), (1, 2)],
    [(-2, -1), (0, 1), (2, -1)],
    [(-2, -1), (1, -1), (1, 2)],
    [(-2, -1), (1, 0), (1, 1)],
    [(-2, -1), (-1, -1), (-1, 0), (2, 1)],
    [(-2, -1), (-1, -1), (0, 1), (1, 0)],
    [(-2, -1), (-1, -1), (0, 1), (2, 1)],
    [(-2, -1), (-1, -1), (1, 0), (1, 2)],
    [(-2, -1), (-1, -1), (1, 1), (2, 1)],
    [(-2, -1), (0, -1), (0, 1), (2, 1)],
    [(-2, -1), (0, -1), (1, 0), (1, 2)],
    [(-2, -1), (-1, -1), (-1, 0), (1, 0), (1, 1)],
    [(-2, -1), (-1, -1), (0, 1), (1, 0), (1, 1)],
    [(-2, -1), (-1, -1), (0, 1), (1, 0), (2, 1)],
    [(-2, -1), (-1, -1), (-1, 0), (1, 0), (1, 1), (2, 1)],
]

# dual class of each representative (an involution)
DUAL_CLASS = [2, 1, 0, 4, 3, 11, 8, 7, 6, 10, 9, 5, 14, 13, 12, 15]


def unimodular_equivalent(P, Q):
    """GL(2,Z)-equivalence of two origin-interior lattice polygons.

    Tries every map sending a fixed adjacent vertex pair of P to an
    adjacent (ordered, either orientation) vertex pair of Q."""
    import math
    if len(P.vertices) != len(Q.vertices):
        return False

    def cyclic(R):
        return sorted(R.vertices, key=lambda v: math.atan2(v[1], v[0]))

    pv, qv = cyclic(P), cyclic(Q)
    n = len(pv)
    v1, v2 = pv[0], pv[1]
    det = v1[0] * v2[1] - v1[1] * v2[0]
    qset = set(qv)
    for s in range(n):
        for direction in (1, -1):
            w1, w2 = qv[s], qv[(s + direction) % n]
            inv = [[Fraction(v2[1], det), Fraction(-v2[0], det)],
                   [Fraction(-v1[1], det), Fraction(v1[0], det)]]
            W = [[w1[0], w2[0]], [w1[1], w2[1]]]
            M = [[sum(W[r][t] * inv[t][c] for t in range(2))
                  for c in range(2)] for r in range(2)]
            if any(x.denominator != 1 for row in M for x in row):
                continue
            if M[0][0] * M[1][1] - M[0][1] * M[1][0] not in (1, -1):
                continue
            img = {(int(M[0][0] * x + M[0][1] * y),
                    int(M[1][0] * x + M[1][1] * y)) for x, y in pv}
            if img == qset:
                return True
    return False
