"""
The category of maps between modules
====================================

Objects are module homomorphisms f: A1 -> A0 over A2.  The script checks
that Hom in this category matches Hom over the doubled algebra, computes
the translate Tau two ways, builds almost split sequences from one in
mod A2, and pushes one through the functor into modules over End(G).
"""

import random

from matcat.algebra import doubled_maps_algebra, type_A
from matcat.maps import (AuslanderData, ar_sequence_from_module, is_split_epi, is_split_mono,
                         maps_almost_split_sequence, maps_hom, maps_indecomposables, maps_is_projective, maps_Tau,
                         phi_on_ses, random_maps_object, tau_closed_form, to_matrix_module, verify_almost_split)
from matcat.modules import almost_split_sequence, hom_dim, simple, verify_almost_split_module

C = type_A(2)
L = doubled_maps_algebra(C)
print("doubled algebra:", len(L.vertices), "vertices, total dimension", L.total_dim(), "=", 3, "x", C.total_dim())

rng = random.Random(0)
for _ in range(3):
    X, Y = random_maps_object(C, rng), random_maps_object(C, rng)
    print("dim Hom(%s, %s): %d in maps, %d over the doubled algebra"
          % (X.dims(), Y.dims(), len(maps_hom(X, Y)), hom_dim(to_matrix_module(X), to_matrix_module(Y))))

inds = maps_indecomposables(C)
print(len(inds), "indecomposable maps over A2")

# with f injective, Tau has a closed form built from presentations of the source and the cokernel
for X in inds:
    r = tau_closed_form(X)
    if r.applicable and X.f.is_mono():
        print("Tau", X.dims(), "=", maps_Tau(X).dims(), " closed form verified:", r.verified)

ses = almost_split_sequence(simple(C, "1"))
for v in ("1i", "1ii", "2i", "2ii"):
    s = ar_sequence_from_module(ses, v)
    print("variant", v, ":", s.left.dims(), "->", s.middle.dims(), "->", s.right.dims(),
          " ", verify_almost_split(s).summary())

aus = AuslanderData(C)
for X in inds:
    if maps_is_projective(X):
        continue
    s = maps_almost_split_sequence(X)
    if any(t(h) for h in (s.left.f, s.right.f) for t in (is_split_mono, is_split_epi)):
        continue
    ph = phi_on_ses(s, aus)
    print("Phi of the sequence ending in", X.dims(), "is exact:", ph.exact, "/",
          verify_almost_split_module(ph.as_ses()).summary())
