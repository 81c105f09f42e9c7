"""Exact-arithmetic workbench for the B-model side of local mirror symmetry
on 2-dimensional reflexive polytopes.

Subpackages follow the pipeline order:

- series:   truncated multivariate power series over Q, with log terms
- ratfunc:  rational functions in the z-coordinates, series expansion,
            reconstruction of rational functions from series
- polytope: lattice polytope combinatorics and the lattice of relations
- models:   registry of the four built-in models (p2, f0, f1, f2)
- gkz:      A-hypergeometric operators, Picard-Fuchs reduction, Frobenius basis
- jacobian: graded ring S_Delta, Jacobian ring quotients, normal forms, xi
- yukawa:   Wronskian / ODE / closed-form Yukawa couplings, genus-0 GW numbers
- hae:      special geometry, Yamaguchi-Yau recursion, genus 1-2 amplitudes
- oracle:   independent floating-point cross-check for instanton numbers
- cli:      command line front end
"""

__version__ = "0.1.0"
