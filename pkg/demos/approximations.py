"""
Approximations by subcategories
===============================

Right add(G)-approximations of modules, epi and mono approximations in the
category of maps, and the pushout construction of approximations in a
comma category.  Each result carries a certificate listing how every test
morphism factors; a deliberately wrong candidate is refuted.
"""

from matcat.algebra import hom_bimodule, type_A
from matcat.approximation import (GCommaObject, approximate_addG, approximate_epi_maps, approximate_mono_maps,
                                  smalo_comma_approximation)
from matcat.generic import certify_approximation
from matcat.maps import maps_indecomposables
from matcat.modules import (ModuleCategory, ModuleMorphism, enumerate_indecomposables, hom_space, injective, projective,
                            simple)
from matcat.recollement import GFunctor

A = type_A(3)
projs = [projective(A, v) for v in A.vertices]
for M in enumerate_indecomposables(A):
    cert = approximate_addG(M, projs, "right")
    print("right add(P) approximation of", M.dim_vector(), "from", cert.candidate.source.dim_vector(),
          " epi:", cert.candidate.is_epi(), " witnesses:", len(cert.witnesses))

C = type_A(2)
S1 = simple(C, "1")
bad = certify_approximation(ModuleCategory(C), ModuleMorphism.zero(S1, S1), [S1], "right")
print("zero map as an approximation of S1 by add(S1): certified =", bad.certified)

for X in maps_indecomposables(C)[:4]:
    for name, fn in (("epi", approximate_epi_maps), ("mono", approximate_mono_maps)):
        r = fn(X, "left")
        print("left", name, "approximation of", X.dims(), "->", r.approximating_object.dims(), r.certified)

G = GFunctor(hom_bimodule(C))
Y, X = [projective(C, "1")], [injective(C, "2")]
B = projective(C, "1")
for A0 in enumerate_indecomposables(C):
    GB = G.obj(B)
    for g in [ModuleMorphism.zero(GB, A0)] + hom_space(GB, A0):
        r = smalo_comma_approximation(GCommaObject(B, A0, g, G), Y, X)
        print("comma object (P1, g, %s): pushout %s, certified %s"
              % (A0.dim_vector(), r.pushout.dim_vector(), r.certified))
