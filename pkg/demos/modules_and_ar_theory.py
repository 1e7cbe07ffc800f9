"""
Modules over a path algebra
===========================

Build the linearly oriented A3 quiver, list its indecomposable modules,
compute Auslander-Reiten translates and verify an almost split sequence.
Everything is exact rational arithmetic.
"""

from matcat.algebra import type_A
from matcat.modules import (almost_split_sequence, enumerate_indecomposables, hom_dim, is_projective, projective,
                            simple, tau, tau_inverse, verify_almost_split_module)

A = type_A(3)
print("algebra", A.name, "with vertices", A.vertices, "and total dimension", A.total_dim())

# Gabriel: one indecomposable per interval [i, j], so six of them
inds = enumerate_indecomposables(A)
print(len(inds), "indecomposables:", sorted(X.dim_vector() for X in inds))

# Hom out of a projective counts paths: dim Hom(P(x), M) = dim M(x)
P1, S1 = projective(A, "1"), simple(A, "1")
print("dim Hom(P1, S1) =", hom_dim(P1, S1))

# tau moves a non-projective interval one step along the arrows
for X in inds:
    if not is_projective(X):
        print("tau", X.dim_vector(), "=", tau(X).dim_vector(), "  tau^-1 of that =", tau_inverse(tau(X)).dim_vector())

ses = almost_split_sequence(S1)
print("0 ->", ses.left.dim_vector(), "->", ses.middle.dim_vector(), "->", ses.right.dim_vector(), "-> 0")
print(verify_almost_split_module(ses).summary())
