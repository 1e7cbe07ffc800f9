"""Left and right approximations by add(G), by epi or mono maps, and in comma categories.

Every construction returns an :class:`~matcat.generic.ApproximationCertificate`
produced by :func:`~matcat.generic.certify_approximation`: the candidate is
never trusted, each basis morphism from (or to) the generators is factored
through it and the factorization is kept as a witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Union

from .generic import ApproximationCertificate, LinearCategory, certify_approximation
from .linalg import Matrix
from .maps import (MapsCategory, MapsMorphism, MapsObject, maps_direct_sum, maps_indecomposables)
from .modules import (ModuleCategory, ModuleMorphism, Representation, cokernel, direct_sum, dual_module,
                      dual_morphism, hom_space, image, kernel, projective_cover)
from .recollement import GFunctor

__all__ = [
    "ApproximationRequest", "approximate", "approximate_addG", "approximate_epi_maps", "approximate_mono_maps",
    "certify_approximation", "injective_envelope", "GCommaObject", "GCommaMorphism", "GCommaCategory",
    "g_comma_hom", "smalo_comma_approximation", "component_approximation", "SmaloResult",
]


def _category_for(obj) -> LinearCategory:
    if isinstance(obj, MapsObject):
        return MapsCategory(obj.algebra)
    if isinstance(obj, GCommaObject):
        return GCommaCategory(obj.G)
    return ModuleCategory(obj.algebra)


def _direct_sum(cat: LinearCategory, objs: Sequence, like):
    if isinstance(cat, MapsCategory):
        return maps_direct_sum(objs, cat.algebra)
    if isinstance(cat, GCommaCategory):
        return g_comma_direct_sum(objs, cat.G)
    return direct_sum(list(objs), cat.algebra)


def approximate_addG(M, generators: Sequence, direction: str) -> ApproximationCertificate:
    """Evaluation map onto M (right) or coevaluation out of M (left), certified on the generators.

    Works for modules, maps objects and comma objects alike.
    """
    cat = _category_for(M)
    if direction == "right":
        pieces = [(G, h) for G in generators for h in cat.hom(G, M)]
        S, incs, projs = _direct_sum(cat, [G for G, _ in pieces], M)
        cand = cat.zero(S, M)
        for (_, h), p in zip(pieces, projs):
            cand = cat.add(cand, cat.compose(h, p))
    elif direction == "left":
        pieces = [(G, h) for G in generators for h in cat.hom(M, G)]
        S, incs, projs = _direct_sum(cat, [G for G, _ in pieces], M)
        cand = cat.zero(M, S)
        for (_, h), i in zip(pieces, incs):
            cand = cat.add(cand, cat.compose(i, h))
    else:
        raise ValueError("direction must be 'left' or 'right'")
    return certify_approximation(cat, cand, generators, direction)


def injective_envelope(A: Representation) -> ModuleMorphism:
    """A -> I(A): the dual of a projective cover of D A."""
    cov = projective_cover(dual_module(A))
    i = dual_morphism(cov.map)
    # D D A has the same matrices as A over the same algebra
    return ModuleMorphism(A, i.target, i.comps, check=False)


def _epi_generators(C) -> List[MapsObject]:
    return [X for X in maps_indecomposables(C) if X.f.is_epi()]


def _mono_generators(C) -> List[MapsObject]:
    return [X for X in maps_indecomposables(C) if X.f.is_mono()]


def approximate_epi_maps(X: MapsObject, direction: str, generators: Optional[Sequence[MapsObject]] = None
                         ) -> ApproximationCertificate:
    """Approximation by the subcategory of epimorphisms.

    right: ``(A1 -> im f) --(1, incl)--> X``;
    left:  ``X --(inc, 1)--> (A1 + P(A0) --[f, cover]--> A0)``.
    """
    C = X.algebra
    gens = list(generators) if generators is not None else _epi_generators(C)
    cat = MapsCategory(C)
    if direction == "right":
        I, inc, co = image(X.f)
        E = MapsObject(X.A1, I, co)
        cand = MapsMorphism(E, X, X.A1.identity(), inc)
    elif direction == "left":
        cov = projective_cover(X.A0)
        P = cov.cover.module
        S, i, p = direct_sum([X.A1, P])
        E = MapsObject(S, X.A0, X.f @ p[0] + cov.map @ p[1])
        cand = MapsMorphism(X, E, i[0], X.A0.identity())
    else:
        raise ValueError("direction must be 'left' or 'right'")
    return certify_approximation(cat, cand, gens, direction)


def approximate_mono_maps(X: MapsObject, direction: str, generators: Optional[Sequence[MapsObject]] = None
                          ) -> ApproximationCertificate:
    """Approximation by the subcategory of monomorphisms.

    left:  ``X --(proj, 1)--> (A1 / ker f -> A0)``;
    right: ``(A1 --(f, envelope)--> A0 + I(A1)) --(1, [1 0])--> X``.
    """
    C = X.algebra
    gens = list(generators) if generators is not None else _mono_generators(C)
    cat = MapsCategory(C)
    if direction == "left":
        K, kinc = kernel(X.f)
        Q, q = cokernel(kinc)
        # f factors through the quotient by its kernel
        comps = {}
        for v in C.vertices:
            Qv = q.comps[v]
            comps[v] = (X.f.comps[v] @ Qv.solve(Matrix.identity(Qv.field, Qv.rows))) if Qv.rows \
                else Matrix.zeros(Qv.field, X.A0.dims[v], 0)
        fbar = ModuleMorphism(Q, X.A0, comps)
        E = MapsObject(Q, X.A0, fbar)
        cand = MapsMorphism(X, E, q, X.A0.identity())
    elif direction == "right":
        env = injective_envelope(X.A1)
        S, i, p = direct_sum([X.A0, env.target])
        E = MapsObject(X.A1, S, i[0] @ X.f + i[1] @ env)
        cand = MapsMorphism(E, X, X.A1.identity(), p[0])
    else:
        raise ValueError("direction must be 'left' or 'right'")
    return certify_approximation(cat, cand, gens, direction)


# ---------------------------------------------------------------- comma category (G(B) -> A)

@dataclass(eq=False)
class GCommaObject:
    """(B, g, A) with B a U-module, A a T-module and g: G(B) -> A."""

    B: Representation
    A: Representation
    g: ModuleMorphism
    G: GFunctor

    def is_zero(self) -> bool:
        return self.B.is_zero() and self.A.is_zero()

    def identity(self) -> "GCommaMorphism":
        return GCommaMorphism(self, self, self.B.identity(), self.A.identity())

    def __repr__(self) -> str:
        return "GCommaObject(%s, %s)" % (self.B.dim_vector(), self.A.dim_vector())


class GCommaMorphism:
    """(b, a) with a o g == g' o G(b)."""

    def __init__(self, source: GCommaObject, target: GCommaObject, b: ModuleMorphism, a: ModuleMorphism,
                 check: bool = False):
        self.source, self.target, self.b, self.a = source, target, b, a
        if check and not self.commutes():
            raise ValueError("square does not commute")

    def commutes(self) -> bool:
        return self.a @ self.source.g == self.target.g @ self.source.G.mor(self.b)

    def __matmul__(self, other: "GCommaMorphism") -> "GCommaMorphism":
        return GCommaMorphism(other.source, self.target, self.b @ other.b, self.a @ other.a)

    def __add__(self, other: "GCommaMorphism") -> "GCommaMorphism":
        return GCommaMorphism(self.source, self.target, self.b + other.b, self.a + other.a)

    def scale(self, c) -> "GCommaMorphism":
        return GCommaMorphism(self.source, self.target, self.b.scale(c), self.a.scale(c))

    def flatten(self) -> list:
        return self.b.flatten() + self.a.flatten()

    def total_matrix(self) -> Matrix:
        return Matrix.block_diag(self.b.source.field, [self.b.total_matrix(), self.a.total_matrix()])


def g_comma_hom(X: GCommaObject, Y: GCommaObject) -> List[GCommaMorphism]:
    G = X.G
    Hb = hom_space(X.B, Y.B)
    Ha = hom_space(X.A, Y.A)
    n = len(Hb) + len(Ha)
    if n == 0:
        return []
    F = X.B.field
    cols = [(Y.g @ G.mor(b)).scale(-1).flatten() for b in Hb] + [(a @ X.g).flatten() for a in Ha]
    N = Matrix.from_columns(F, cols, len(cols[0])).nullspace() if cols[0] else Matrix.identity(F, n)
    out = []
    for k in range(N.cols):
        v = N.col(k)
        b = ModuleMorphism.zero(X.B, Y.B)
        for c, h in zip(v[:len(Hb)], Hb):
            if c:
                b = b + h.scale(c)
        a = ModuleMorphism.zero(X.A, Y.A)
        for c, h in zip(v[len(Hb):], Ha):
            if c:
                a = a + h.scale(c)
        out.append(GCommaMorphism(X, Y, b, a))
    return out


def g_comma_direct_sum(objs: Sequence[GCommaObject], G: GFunctor):
    if not objs:
        Zu, Zt = Representation.zero(G.U), Representation.zero(G.T)
        Z = GCommaObject(Zu, Zt, ModuleMorphism.zero(G.obj(Zu), Zt), G)
        return Z, [], []
    SB, ib, pb = direct_sum([X.B for X in objs])
    SA, ia, pa = direct_sum([X.A for X in objs])
    g = ModuleMorphism.zero(G.obj(SB), SA)
    for k, X in enumerate(objs):
        g = g + ia[k] @ X.g @ G.mor(pb[k])
    S = GCommaObject(SB, SA, g, G)
    incs = [GCommaMorphism(X, S, ib[k], ia[k]) for k, X in enumerate(objs)]
    projs = [GCommaMorphism(S, X, pb[k], pa[k]) for k, X in enumerate(objs)]
    return S, incs, projs


class GCommaCategory(LinearCategory):
    """The comma category of maps G(B) -> A, through the generic interface."""

    def __init__(self, G: GFunctor):
        self.G = G
        self.field = G.T.field

    def hom(self, X, Y):
        return g_comma_hom(X, Y)

    def compose(self, g, f):
        return g @ f

    def identity(self, X):
        return X.identity()

    def zero(self, X, Y):
        return GCommaMorphism(X, Y, ModuleMorphism.zero(X.B, Y.B), ModuleMorphism.zero(X.A, Y.A))

    def flatten(self, f):
        return f.flatten()

    def source(self, f):
        return f.source

    def target(self, f):
        return f.target

    def linear_matrix(self, f):
        return f.total_matrix()

    def is_zero_object(self, X):
        return X.is_zero()


def _pushout(u: ModuleMorphism, v: ModuleMorphism):
    """Pushout of u: Z -> A and v: Z -> Y; returns (C, A -> C, Y -> C)."""
    S, i, _ = direct_sum([u.target, v.target])
    Cq, q = cokernel(i[0] @ u - i[1] @ v)
    return Cq, q @ i[0], q @ i[1]


@dataclass
class SmaloResult:
    """The constructed approximation with its ingredients and certificate."""

    certificate: ApproximationCertificate
    y_approx: ApproximationCertificate
    x_approx: ApproximationCertificate
    pushout: Representation
    test_objects: List[GCommaObject]

    @property
    def certified(self) -> bool:
        return self.certificate.certified


def comma_test_objects(G: GFunctor, Y_gens: Sequence[Representation], X_gens: Sequence[Representation]
                       ) -> List[GCommaObject]:
    """Objects (Y, h, X) for generators Y, X and h zero or a basis map G(Y) -> X."""
    out = []
    for Yg in Y_gens:
        for Xg in X_gens:
            GY = G.obj(Yg)
            out.append(GCommaObject(Yg, Xg, ModuleMorphism.zero(GY, Xg), G))
            for h in hom_space(GY, Xg):
                out.append(GCommaObject(Yg, Xg, h, G))
    return out


def smalo_comma_approximation(obj: GCommaObject, Y_gens: Sequence[Representation], X_gens: Sequence[Representation],
                              test_objects: Optional[Sequence[GCommaObject]] = None) -> SmaloResult:
    """Left approximation of (B, g, A) by the objects (Y, h, X) with Y in add(Y_gens), X in add(X_gens).

    Take a left Y-approximation alpha: B -> Y_B, push g out along G(alpha)
    to get delta: A -> C and g': G(Y_B) -> C, then follow with a left
    X-approximation beta: C -> X_C.  The result is
    ``(alpha, beta delta): (B, g, A) -> (Y_B, beta g', X_C)``.
    """
    G = obj.G
    ya = approximate_addG(obj.B, Y_gens, "left")
    alpha = ya.candidate
    C, delta, gprime = _pushout(obj.g, G.mor(alpha))
    xa = approximate_addG(C, X_gens, "left")
    beta = xa.candidate
    target = GCommaObject(alpha.target, beta.target, beta @ gprime, G)
    cand = GCommaMorphism(obj, target, alpha, beta @ delta, check=True)
    tests = list(test_objects) if test_objects is not None else comma_test_objects(G, Y_gens, X_gens)
    cert = certify_approximation(GCommaCategory(G), cand, tests, "left")
    return SmaloResult(cert, ya, xa, C, tests)


def component_approximation(cert: ApproximationCertificate, Y_gens: Sequence[Representation]
                            ) -> ApproximationCertificate:
    """The B-component of a comma left approximation, certified as a left Y-approximation."""
    b = cert.candidate.b
    return certify_approximation(ModuleCategory(b.source.algebra), b, Y_gens, "left")


# ---------------------------------------------------------------- request dispatch

@dataclass
class ApproximationRequest:
    """What to approximate, by which subcategory and from which side."""

    target: Union[Representation, MapsObject, GCommaObject]
    kind: str                      # "addG", "epi", "mono" or "comma"
    direction: str
    generators: Sequence = ()
    x_generators: Sequence = ()

    def __post_init__(self):
        if self.kind not in ("addG", "epi", "mono", "comma"):
            raise ValueError("unknown subcategory kind %r" % self.kind)
        if self.direction not in ("left", "right"):
            raise ValueError("direction must be 'left' or 'right'")
        if self.kind in ("addG", "comma") and not self.generators:
            raise ValueError("generator list must be nonempty")
        if self.kind == "comma" and not self.x_generators:
            raise ValueError("comma approximation needs both generator lists")


def approximate(req: ApproximationRequest) -> ApproximationCertificate:
    if req.kind == "addG":
        return approximate_addG(req.target, req.generators, req.direction)
    if req.kind == "epi":
        return approximate_epi_maps(req.target, req.direction, req.generators or None)
    if req.kind == "mono":
        return approximate_mono_maps(req.target, req.direction, req.generators or None)
    if req.direction != "left":
        raise ValueError("the comma construction gives left approximations")
    return smalo_comma_approximation(req.target, req.generators, req.x_generators).certificate
