"""The acceptance suite: twelve exact checks on built-in A2, A3 and truncated-Delta workspaces.

Each ``criterion_N`` returns a :class:`CriterionResult`; :func:`run_suite`
runs them all.  ``corrupt=True`` adds a relation killing the arrow of A2,
so checks that depend on A2 report named failures.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional

from .algebra import (Arrow, PathAlgebra, Quiver, RelationSet, build_path_algebra, doubled_maps_algebra,
                      hom_bimodule, truncated_delta, type_A)
from .approximation import (GCommaObject, approximate_epi_maps, approximate_mono_maps, component_approximation,
                            smalo_comma_approximation)
from .generic import certify_approximation
from .maps import (AuslanderData, MapsCategory, MapsObject, MapsProj, ar_sequence_from_module, closed_form_hypotheses,
                   find_maps_iso, identity_object, is_split_epi, is_split_mono, maps_almost_split_sequence,
                   maps_cover_is_minimal, maps_hom, maps_indecomposables, maps_is_projective, maps_proj_morphism,
                   maps_projective_cover, maps_projectives, maps_star, maps_Tau, phi_on_ses, radical_block_formula,
                   radical_by_trace, random_maps_object, right_object, tau_closed_form, to_matrix_module,
                   verify_almost_split)
from .modules import (ModuleCategory, ModuleMorphism, Representation, almost_split_sequence, are_isomorphic,
                      decompose_indecomposables, double_dual_iso, dual_morphism, enumerate_indecomposables,
                      find_isomorphism, hom_dim, hom_space, injective, proj_entries, projective, projective_cover,
                      random_module, simple, transpose, verify_almost_split_module)
from .recollement import (GFunctor, SubcategoryDatum, build_recollement, check_compatibility_and_induce,
                          check_recollement, restricted_hom_bimodule)


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        return "criterion %2d %s: %s%s" % (self.number, "PASS" if self.passed else "FAIL", self.title,
                                          "" if self.passed or not self.detail else " -- " + self.detail)

    def to_json(self) -> dict:
        return {"criterion": self.number, "title": self.title, "passed": self.passed, "detail": self.detail,
                "seconds": round(self.seconds, 3)}


class Builtins:
    """The algebras the suite runs on."""

    def __init__(self, corrupt: bool = False):
        self.corrupt = corrupt
        if corrupt:
            q = Quiver(("1", "2"), (Arrow("a", "1", "2"),))
            # the relation a = 0 is not admissible; the table builder's switch lets it through
            self.a2 = build_path_algebra(q, RelationSet((((1, ("a",)),),), 2), check_admissible=False, name="A2")
        else:
            self.a2 = type_A(2)
        self.a3 = type_A(3)
        self.delta = truncated_delta(5)


def _result(n: int, title: str, failures: List[str]) -> CriterionResult:
    return CriterionResult(n, title, not failures, "; ".join(failures[:3]))


def criterion_1(b: Builtins) -> CriterionResult:
    C = b.delta
    L = doubled_maps_algebra(C)
    V = C.vertices
    bad = []
    for i in V:
        for j in V:
            for i2 in V:
                for j2 in V:
                    tt = L.hom_dim("T:" + i, "T:" + i2)
                    tu = L.hom_dim("T:" + i, "U:" + j2)
                    uu = L.hom_dim("U:" + j, "U:" + j2)
                    ut = L.hom_dim("U:" + j, "T:" + i2)
                    if (tt, tu, uu, ut) != (C.hom_dim(i, i2), C.hom_dim(i, j2), C.hom_dim(j, j2), 0):
                        bad.append("block mismatch at (%s,%s)->(%s,%s)" % (i, j, i2, j2))
                    d1, d2, d3 = int(i2) - int(i), int(j2) - int(j), int(j2) - int(i)
                    if (tt and d1 not in (0, 1)) or (uu and d2 not in (0, 1)) or (tu and d3 not in (0, 1)):
                        bad.append("nonvanishing block at (%s,%s)->(%s,%s)" % (i, j, i2, j2))
    if L.total_dim() != 3 * C.total_dim() or C.total_dim() != 11:
        bad.append("total dimension %d, expected 3 x %d" % (L.total_dim(), C.total_dim()))
    return _result(1, "doubled algebra of truncated Delta: block formula, vanishing, total dim 33", bad)


def criterion_2(b: Builtins, pairs: int = 30) -> CriterionResult:
    bad = []
    rng = random.Random(2)
    for C in (b.a2, b.a3):
        for _ in range(pairs):
            X, Y = random_maps_object(C, rng), random_maps_object(C, rng)
            d1 = len(maps_hom(X, Y))
            d2 = hom_dim(to_matrix_module(X), to_matrix_module(Y))
            if d1 != d2:
                bad.append("%s: maps hom %d vs doubled %d" % (C.name, d1, d2))
    return _result(2, "dim maps_hom = dim Hom over the doubled algebra (30 random pairs each on A2, A3)", bad)


def criterion_3(b: Builtins) -> CriterionResult:
    bad = []
    for C in (b.a2, b.a3):
        for v in C.vertices:
            rep = check_recollement(build_recollement(SubcategoryDatum(C, (v,))))
            for ax in ("R1", "R2", "R3"):
                if not any(c.axiom == ax for c in rep.checks):
                    bad.append("%s/{%s}: no %s checks" % (C.name, v, ax))
            bad.extend("%s/{%s}: %s %s %s" % (C.name, v, c.axiom, c.name, c.detail) for c in rep.failures())
    return _result(3, "recollement R1-R3 for A2, A3 with each singleton subcategory", bad)


def criterion_4(b: Builtins) -> CriterionResult:
    C = b.a2
    rec = build_recollement(SubcategoryDatum(C, ("2",)))
    M = restricted_hom_bimodule(rec.R, C)
    _, rep, tests = check_compatibility_and_induce(rec, M, size=8)
    bad = ["%s %s %s" % (c.axiom, c.name, c.detail) for c in rep.failures()]
    if len(tests["Lambda"]) != 8:
        bad.append("comma testset has %d objects" % len(tests["Lambda"]))
    for ax in ("LR1", "LR2", "LR3", "RR1", "RR2", "RR3"):
        if not any(c.axiom == ax for c in rep.checks):
            bad.append("no %s checks" % ax)
    if not any("rho is a monomorphism" in c.name for c in rep.checks):
        bad.append("no rho-mono checks")
    return _result(4, "induced left/right recollements LR1-LR3, RR1-RR3 on A2/{2}", bad)


def _same_maps(X: MapsObject, Y: MapsObject) -> bool:
    return X.A1.dims == Y.A1.dims and X.A0.dims == Y.A0.dims and find_maps_iso(X, Y) is not None


def criterion_5(b: Builtins) -> CriterionResult:
    C = b.a2
    bad = []
    expected = [identity_object(projective(C, "1")), identity_object(projective(C, "2")),
                right_object(projective(C, "1")), right_object(projective(C, "2"))]
    got = maps_projectives(C)
    found = [X for X in maps_indecomposables(C) if maps_is_projective(X)]
    if len(found) != 4 or len(got) != 4:
        bad.append("%d indecomposable projectives enumerated, %d listed" % (len(found), len(got)))
    for E in expected:
        if not any(_same_maps(E, X) for X in got):
            bad.append("shape %s missing from the list" % (E,))
        if not any(_same_maps(E, X) for X in found):
            bad.append("shape %s missing from the enumeration" % (E,))
    objs = [(x, y) for x in C.vertices for y in C.vertices]
    for x in objs:
        for y in objs:
            r1, r2 = radical_block_formula(C, x, y), radical_by_trace(C, x, y)
            if r1 != r2:
                bad.append("rad%s->%s: block %d, trace %d" % (x, y, r1, r2))
    return _result(5, "four indecomposable maps projectives over A2; radical by two routes on 16 pairs", bad)


def criterion_6(b: Builtins, count: int = 20) -> CriterionResult:
    rng = random.Random(6)
    bad = []
    for k in range(count):
        C = b.a2 if k % 2 == 0 else b.a3
        X = random_maps_object(C, rng)
        cov = maps_projective_cover(X)
        generic = projective_cover(to_matrix_module(X))
        mine = to_matrix_module(cov.proj.obj)
        if mine.dims != generic.cover.module.dims or find_isomorphism(mine, generic.cover.module) is None:
            bad.append("cover of %s differs from the doubled-algebra cover" % (X,))
        if not maps_cover_is_minimal(cov):
            bad.append("cover of %s not minimal" % (X,))
    return _result(6, "maps projective cover agrees with the doubled-algebra cover; minimal (20 objects)", bad)


def _proj_shapes(C: PathAlgebra) -> List[MapsProj]:
    V = list(C.vertices)
    lists = [[]] + [[v] for v in V] + [V]
    return [MapsProj(C, c1, c2) for c1 in lists for c2 in lists if c1 or c2]


def _entry_matches(C: PathAlgebra, e, e_op) -> bool:
    """e in C(x, y) and e_op in C^op(y, x) name the same combination of reversed paths."""
    op = C.opposite()
    if (e_op.source, e_op.target) != (e.target, e.source):
        return False
    want = {}
    for c, p in zip(e.coeffs, C.basis(e.source, e.target)):
        if c:
            want[tuple(reversed(p))] = c
    have = {p: c for c, p in zip(e_op.coeffs, op.basis(e_op.source, e_op.target)) if c}
    return want == have


def criterion_7(b: Builtins) -> CriterionResult:
    C = b.a2
    bad = []
    shapes = _proj_shapes(C)
    morphs = []
    for s in shapes:
        for t in shapes:
            for m in maps_hom(s.obj, t.obj):
                morphs.append((s, t, maps_proj_morphism(s, t, m.h0)))
    for s, t, m in morphs:
        ss, ts, sm = maps_star(s, t, m)
        if (ss.c1, ss.c2, ts.c1, ts.c2) != (t.c2, t.c1, s.c2, s.c1):
            bad.append("star object shapes wrong")
        s2, t2, smm = maps_star(ss, ts, sm)
        if smm.h0 != m.h0 or smm.h1 != m.h1:
            bad.append("star is not an involution on %s -> %s" % (s, t))
        # the displayed block formula, entry by entry through reversed paths
        ent = proj_entries(s.p0, t.p0, m.h0)
        sent = proj_entries(ss.p0, ts.p0, sm.h0)
        n1, m1 = len(s.c1), len(t.c1)
        n2, m2 = len(s.c2), len(t.c2)
        for r in range(len(ts.p0)):
            for c in range(len(ss.p0)):
                # rows: c2 of s then c1 of s; columns: c2 of t then c1 of t
                if r < n2 and c < m2:
                    src = ent[m1 + c][n1 + r]            # a22 transposed
                elif r < n2:
                    src = ent[c - m2][n1 + r]            # a12 transposed
                elif c >= m2:
                    src = ent[c - m2][r - n2]            # a11 transposed
                else:
                    if any(sent[r][c].coeffs):
                        bad.append("star has a nonzero lower-left block")
                    continue
                if not _entry_matches(C, src, sent[r][c]):
                    bad.append("star entry (%d,%d) breaks the block formula" % (r, c))
    # contravariance on every composable pair between shapes with at most one summand on each side;
    # star is additive, so larger sums add nothing new
    small = [(s, t, m) for s, t, m in morphs if len(s.c1) <= 1 and len(s.c2) <= 1 and len(t.c1) <= 1
             and len(t.c2) <= 1]
    stars = {id(m): maps_star(s, t, m)[2] for s, t, m in small}
    for s, t, f in small:
        for s2, t2, g in small:
            if s2 is not t:
                continue
            gf = maps_proj_morphism(s, t2, (g @ f).h0)
            if maps_star(s, t2, gf)[2].h0 != (stars[id(f)] @ stars[id(g)]).h0:
                bad.append("star(g f) != star(f) star(g) on %s -> %s -> %s" % (s, t, t2))
    if not morphs:
        bad.append("no projective morphisms generated")
    return _result(7, "star is a contravariant involution matching the block formula over A2", bad)


def tau_test_objects(b: Builtins) -> List[MapsObject]:
    """Maps objects over A2 and A3 meeting the closed-form hypotheses with f a monomorphism."""
    out = []
    for C in (b.a2, b.a3):
        out.extend(X for X in maps_indecomposables(C) if closed_form_hypotheses(X) and X.f.is_mono())
    return out


def criterion_8(b: Builtins) -> CriterionResult:
    bad = []
    objs = tau_test_objects(b)
    if len(objs) < 10:
        bad.append("only %d objects satisfy the hypotheses" % len(objs))
    for X in objs[:10]:
        r = tau_closed_form(X)
        if not r.verified:
            bad.append("closed form fails for %s" % (X,))
    for C in (b.a2, b.a3):
        for P in maps_projectives(C):
            if not maps_Tau(P).is_zero():
                bad.append("Tau of projective %s is nonzero" % (P,))
    return _result(8, "Tau closed form with exhibited iso on 10 objects; Tau(projective) = 0", bad)


def criterion_9(b: Builtins) -> CriterionResult:
    bad = []
    runs = [(b.a2, simple(b.a2, "1")), (b.a3, simple(b.a3, "1"))]
    for C, M in runs:
        try:
            ses = almost_split_sequence(M)
        except ValueError as exc:
            bad.append("%s: no module AR sequence (%s)" % (C.name, exc))
            continue
        for v in ("1i", "1ii", "2i", "2ii"):
            try:
                cert = verify_almost_split(ar_sequence_from_module(ses, v))
            except ValueError as exc:
                bad.append("%s %s: %s" % (C.name, v, exc))
                continue
            if not cert.verified:
                bad.append("%s %s: %s" % (C.name, v, cert.summary()))
    return _result(9, "four maps AR sequences from the A2 module AR sequence, and from one over A3", bad)


def criterion_10(b: Builtins) -> CriterionResult:
    C = b.a2
    bad = []
    aus = AuslanderData(C)
    used = 0
    for X in maps_indecomposables(C):
        if maps_is_projective(X):
            continue
        s = maps_almost_split_sequence(X)
        f, g = s.left.f, s.right.f
        if any(t(h) for h in (f, g) for t in (is_split_mono, is_split_epi)):
            continue
        if not verify_almost_split(s).verified:
            bad.append("maps sequence ending in %s not almost split" % (X,))
            continue
        ph = phi_on_ses(s, aus)
        if not ph.exact:
            bad.append("Phi of the sequence ending in %s is not exact" % (X,))
            continue
        cert = verify_almost_split_module(ph.as_ses())
        if not cert.verified:
            bad.append("Phi of the sequence ending in %s: %s" % (X, cert.summary()))
        used += 1
    if used == 0:
        bad.append("no maps AR sequence with f, g not split")
    return _result(10, "Phi of a maps AR sequence is an almost split sequence over End(G)", bad)


def criterion_11(b: Builtins) -> CriterionResult:
    bad = []
    for C in (b.a2, b.a3):
        cat = MapsCategory(C)
        for X in maps_indecomposables(C):
            for name, fn in (("epi", approximate_epi_maps), ("mono", approximate_mono_maps)):
                for d in ("left", "right"):
                    cert = fn(X, d)
                    if not cert.certified or not cert.recompose_ok(cat):
                        bad.append("%s %s-%s approximation of %s" % (C.name, name, d, X))
        G = GFunctor(hom_bimodule(C))
        last = C.vertices[-1]
        Y_gens, X_gens = [projective(C, "1")], [injective(C, last)]
        inds = enumerate_indecomposables(C)
        for B in inds:
            for A in inds:
                for g in [ModuleMorphism.zero(G.obj(B), A)] + hom_space(G.obj(B), A):
                    r = smalo_comma_approximation(GCommaObject(B, A, g, G), Y_gens, X_gens)
                    if not r.certified:
                        bad.append("%s comma approximation of (%s, %s)" % (C.name, B.dim_vector(), A.dim_vector()))
            Zt = Representation.zero(C)
            r = smalo_comma_approximation(GCommaObject(B, Zt, ModuleMorphism.zero(G.obj(B), Zt), G), Y_gens, X_gens)
            if not component_approximation(r.certificate, Y_gens).certified:
                bad.append("%s: component of the comma approximation of (%s, 0, 0)" % (C.name, B.dim_vector()))
    # planted negative: the zero endomorphism of S1 is no right add(S1)-approximation
    S1 = simple(b.a2, "1")
    cert = certify_approximation(ModuleCategory(b.a2), ModuleMorphism.zero(S1, S1), [S1], "right")
    if cert.certified:
        bad.append("planted negative case was not refuted")
    return _result(11, "mono/epi closed forms and the comma construction certified; planted case refuted", bad)


def criterion_12(b: Builtins, count: int = 20) -> CriterionResult:
    C = b.a3
    bad = []
    inds = enumerate_indecomposables(C)
    for X in inds:
        eta = double_dual_iso(X)
        if not eta.is_iso():
            bad.append("D D X not isomorphic to X")
        for Y in inds:
            ey = double_dual_iso(Y)
            for h in hom_space(X, Y):
                if dual_morphism(dual_morphism(h)) @ eta != ey @ h:
                    bad.append("naturality square fails")
    rng = random.Random(12)
    projs = [projective(C, v) for v in C.vertices]
    for _ in range(count):
        M = random_module(C, rng)
        proj = all(any(are_isomorphic(S, P) for P in projs) for S, _ in decompose_indecomposables(M))
        tr0 = transpose(M).is_zero()
        if proj != tr0:
            bad.append("Tr of %s: zero=%s, projective=%s" % (M.dim_vector(), tr0, proj))
    for v in C.vertices:
        P = projective(C, v)
        for M in inds:
            if hom_dim(P, M) != M.dims[v]:
                bad.append("Yoneda fails at %s, %s" % (v, M.dim_vector()))
    return _result(12, "D D = id with naturality; Tr vanishes exactly on projectives; Yoneda", bad)


CRITERIA: Dict[int, Callable[[Builtins], CriterionResult]] = {
    1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5, 6: criterion_6,
    7: criterion_7, 8: criterion_8, 9: criterion_9, 10: criterion_10, 11: criterion_11, 12: criterion_12,
}


def run_criterion(n: int, builtins: Optional[Builtins] = None) -> CriterionResult:
    b = builtins or Builtins()
    t = time.perf_counter()
    try:
        res = CRITERIA[n](b)
    except Exception as exc:  # a crash is a named failure, not a traceback
        res = CriterionResult(n, CRITERIA[n].__name__, False, "%s: %s" % (type(exc).__name__, exc))
    res.seconds = time.perf_counter() - t
    return res


def run_suite(corrupt: bool = False, only: Optional[List[int]] = None) -> List[CriterionResult]:
    b = Builtins(corrupt)
    return [run_criterion(n, b) for n in (only or sorted(CRITERIA))]
