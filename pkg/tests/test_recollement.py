import pytest

from matcat.algebra import Bimodule, type_A
from matcat.modules import enumerate_indecomposables, simple
from matcat.recollement import (Functor, GFunctor, RecollementError, SubcategoryDatum, build_recollement,
                                check_compatibility_and_induce, check_recollement, comma_testset, full_subcategory,
                                induce_bimodule, quotient_category, restricted_hom_bimodule)


@pytest.fixture(scope="module")
def rec_A2_2():
    return build_recollement(SubcategoryDatum(type_A(2), ("2",)))


def test_quotient_of_A2_by_vertex_2(A2):
    Q = quotient_category(SubcategoryDatum(A2, ("2",)))
    assert Q.vertices == ("1",)
    assert Q.hom_dim("1", "1") == 1 and Q.total_dim() == 1


def test_quotient_by_everything_is_zero(A3):
    Q = quotient_category(SubcategoryDatum(A3, A3.vertices))
    assert Q.total_dim() == 0
    with pytest.raises(RecollementError):
        build_recollement(SubcategoryDatum(A3, A3.vertices))


@pytest.mark.parametrize("B", [("1",), ("2",), ("3",), ("1", "3")])
def test_quotient_dimension_additivity(A3, B):
    d = SubcategoryDatum(A3, B)
    s = build_recollement(d)
    for x in A3.vertices:
        for y in A3.vertices:
            kept = s.Q.hom_dim(x, y) if x in s.Q.vertices and y in s.Q.vertices else 0
            assert kept + s.qdata.ideal_dim(x, y) == A3.hom_dim(x, y)


def test_full_subcategory_keeps_homs(A3):
    R = full_subcategory(A3, ("1", "3"))
    assert R.hom_dim("1", "3") == 1 and R.hom_dim("3", "1") == 0


def test_six_functor_examples(rec_A2_2):
    F = rec_A2_2.functors
    K = simple(rec_A2_2.R, "2")
    assert F["j_!"](K).dims == {"1": 0, "2": 1}
    assert F["j_*"](K).dims == {"1": 1, "2": 1}
    S = simple(rec_A2_2.Q, "1")
    assert F["i_*"](S).dims == {"1": 1, "2": 0}
    assert F["j^!"](F["i_*"](S)).is_zero()


@pytest.mark.parametrize("n", [2, 3])
def test_restriction_after_extension_is_identity(n):
    C = type_A(n)
    for v in C.vertices:
        s = build_recollement(SubcategoryDatum(C, (v,)))
        F = s.functors
        for X in enumerate_indecomposables(s.R):
            assert F["j^!"](F["j_!"](X)) == X
            assert F["j^!"](F["j_*"](X)) == X


@pytest.mark.parametrize("n", [2, 3])
def test_recollement_axioms_all_singletons(n):
    C = type_A(n)
    for v in C.vertices:
        rep = check_recollement(build_recollement(SubcategoryDatum(C, (v,))))
        assert rep.passed, [c.name for c in rep.failures()]
        assert {c.axiom for c in rep.checks} == {"R1", "R2", "R3"}


def test_recollement_two_object_subcategory(A3):
    rep = check_recollement(build_recollement(SubcategoryDatum(A3, ("1", "3"))))
    assert rep.passed


@pytest.mark.parametrize("adj", ["(i^*, i_*)", "(i_*, i^!)", "(j_!, j^!)", "(j^!, j_*)"])
def test_corrupted_counit_fails_R1(rec_A2_2, adj):
    rep = check_recollement(rec_A2_2.corrupted(adj))
    assert not rep.passed
    fails = rep.failures()
    assert all(c.axiom == "R1" for c in fails)
    assert any(adj in c.name for c in fails)


def test_induce_along_identity_returns_M(rec_A2_2):
    A2 = rec_A2_2.C
    M = restricted_hom_bimodule(rec_A2_2.R, A2)
    ident = Functor("id", lambda X: X, lambda f: f)
    N = induce_bimodule(ident, M, rec_A2_2.R)
    assert N.dims == M.dims


def test_induce_along_extension(rec_A2_2):
    A2 = rec_A2_2.C
    M = restricted_hom_bimodule(rec_A2_2.R, A2)
    F = rec_A2_2.functors
    N = induce_bimodule(F["j_!"], M, A2)
    assert N.dims == {("1", "1"): 0, ("1", "2"): 0, ("2", "1"): 1, ("2", "2"): 1}
    for t in A2.vertices:
        jm = F["j_!"](M.module_at(t))
        for s in A2.vertices:
            assert N.dims[(s, t)] == jm.dims[s]
    Nr = induce_bimodule(F["j_*"], M, A2)
    for t in A2.vertices:
        jm = F["j_*"](M.module_at(t))
        for s in A2.vertices:
            assert Nr.dims[(s, t)] == jm.dims[s]


def test_induced_recollement_A2(rec_A2_2):
    A2 = rec_A2_2.C
    M = restricted_hom_bimodule(rec_A2_2.R, A2)
    _, rep, tests = check_compatibility_and_induce(rec_A2_2, M, size=8)
    assert len(tests["Lambda"]) == 8
    assert rep.passed, [(c.axiom, c.name, c.detail) for c in rep.failures()]
    axioms = {c.axiom for c in rep.checks}
    assert {"LR1", "LR2", "LR3", "RR1", "RR2", "RR3"} <= axioms
    rho = [c for c in rep.checks if "rho is a monomorphism" in c.name]
    assert rho and all(c.passed for c in rho)


@pytest.mark.parametrize("v", ["1", "2", "3"])
def test_induced_recollement_A3(A3, v):
    rec = build_recollement(SubcategoryDatum(A3, (v,)))
    _, rep, _ = check_compatibility_and_induce(rec, restricted_hom_bimodule(rec.R, A3))
    assert rep.passed, [(c.axiom, c.name, c.detail) for c in rep.failures()]


def test_induced_with_zero_bimodule(rec_A2_2):
    A2 = rec_A2_2.C
    R = rec_A2_2.R
    zero = Bimodule(R, A2, {(u, t): 0 for u in R.vertices for t in A2.vertices}, {}, {})
    _, rep, _ = check_compatibility_and_induce(rec_A2_2, zero)
    assert rep.passed


@pytest.mark.parametrize("adj", ["(j_!, j^!)", "(j^!, j_*)"])
def test_corruption_reaches_the_comma_checks(rec_A2_2, adj):
    A2 = rec_A2_2.C
    M = restricted_hom_bimodule(rec_A2_2.R, A2)
    _, rep, _ = check_compatibility_and_induce(rec_A2_2.corrupted(adj), M)
    assert not rep.passed


def test_comma_testset_objects(rec_A2_2):
    A2 = rec_A2_2.C
    G = GFunctor(restricted_hom_bimodule(rec_A2_2.R, A2))
    objs = comma_testset(G, 8)
    assert len(objs) == 8
    for o in objs:
        assert o.phi.source == o.X and o.phi.target == G.obj(o.B)
