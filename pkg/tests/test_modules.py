import random

import pytest
from hypothesis import given, settings, strategies as st

from matcat.algebra import truncated_delta, type_A
from matcat.linalg import FieldSpec, Matrix
from matcat.modules import (ModuleCategory, ModuleError, ModuleMorphism, Representation, ShortExactSequence,
                            almost_split_sequence, are_isomorphic, certify_enumeration, cokernel,
                            decompose_indecomposables, direct_sum, double_dual_iso, dual_module, dual_morphism,
                            enumerate_indecomposables, find_isomorphism, hom_dim, hom_space, image, injective,
                            is_exact_at, is_indecomposable, is_injective, is_projective, kernel,
                            minimal_projective_presentation, projective, projective_cover, radical_top_socle,
                            random_module, simple, tau, tau_inverse, transpose, verify_almost_split_module)

QQ = FieldSpec.rationals()
seeds = st.integers(0, 10**6)


def test_representation_checks_relations():
    D = truncated_delta(2)
    one = Matrix(QQ, 1, 1, [[1]])
    with pytest.raises(ModuleError):
        Representation(D, {"0": 1, "1": 1, "2": 1}, {"alpha0": one, "alpha1": one})


def test_projective_and_injective_dims(A3):
    # P(x)(y) = Hom(x, y) and I(x)(y) = Hom(y, x)
    for x in A3.vertices:
        P, I = projective(A3, x), injective(A3, x)
        for y in A3.vertices:
            assert P.dims[y] == A3.hom_dim(x, y)
            assert I.dims[y] == A3.hom_dim(y, x)
        assert is_projective(P) and is_injective(I)


@given(seeds)
@settings(max_examples=25, deadline=None)
def test_yoneda_dimension(seed):
    A = type_A(3)
    M = random_module(A, random.Random(seed))
    for x in A.vertices:
        assert hom_dim(projective(A, x), M) == M.dims[x]


@given(seeds)
@settings(max_examples=20, deadline=None)
def test_hom_basis_commutes_and_is_independent(seed):
    A = type_A(3)
    rng = random.Random(seed)
    X, Y = random_module(A, rng), random_module(A, rng)
    H = hom_space(X, Y)
    for h in H:
        for a in A.arrows:
            assert h.comps[a.target] @ X.maps[a.name] == Y.maps[a.name] @ h.comps[a.source]
    if H:
        flat = Matrix.from_columns(QQ, [h.flatten() for h in H], len(H[0].flatten()))
        assert flat.rank() == len(H)


@given(seeds)
@settings(max_examples=20, deadline=None)
def test_kernel_image_cokernel_exact(seed):
    A = type_A(3)
    rng = random.Random(seed)
    X, Y = random_module(A, rng), random_module(A, rng)
    H = hom_space(X, Y)
    if not H:
        return
    h = H[0]
    for c in H[1:]:
        h = h + c.scale(rng.randint(-2, 2))
    K, k = kernel(h)
    C, c = cokernel(h)
    I, inc, co = image(h)
    assert (h @ k).is_zero() and (c @ h).is_zero()
    assert is_exact_at(k, h) and is_exact_at(h, c)
    assert inc @ co == h
    assert K.total_dim() + I.total_dim() == X.total_dim()
    assert I.total_dim() + C.total_dim() == Y.total_dim()


def test_indecomposable_count_An():
    # Gabriel: indecomposables of linear A_n correspond to intervals [i, j]
    for n in (2, 3, 4):
        inds = enumerate_indecomposables(type_A(n))
        assert len(inds) == n * (n + 1) // 2
        vecs = sorted(M.dim_vector() for M in inds)
        intervals = sorted(tuple(int(i <= k <= j) for k in range(n)) for i in range(n) for j in range(i, n))
        assert vecs == intervals


def test_enumeration_certificate(A3):
    ok, problems = certify_enumeration(A3, enumerate_indecomposables(A3))
    assert ok, problems
    ok, _ = certify_enumeration(A3, enumerate_indecomposables(A3)[:-1])
    assert not ok


def test_tau_of_simple_top_over_A2(A2):
    T = tau(simple(A2, "1"))
    assert T.dims == {"1": 0, "2": 1}


def test_tau_on_A3_interval_modules(A3):
    # arrows run i -> i+1, so tau moves an interval module one step along the arrows; projectives go to 0
    for M in enumerate_indecomposables(A3):
        v = M.dim_vector()
        T = tau(M)
        if is_projective(M):
            assert T.is_zero()
        else:
            assert T.dim_vector() == (0,) + v[:-1]
            assert are_isomorphic(tau_inverse(T), M)


@given(seeds)
@settings(max_examples=20, deadline=None)
def test_transpose_vanishes_exactly_on_projectives(seed):
    A = type_A(3)
    M = random_module(A, random.Random(seed))
    projs = [projective(A, v) for v in A.vertices]
    proj = all(any(are_isomorphic(S, P) for P in projs) for S, _ in decompose_indecomposables(M))
    assert transpose(M).is_zero() == proj


@given(seeds)
@settings(max_examples=20, deadline=None)
def test_decomposition_adds_up(seed):
    A = type_A(3)
    M = random_module(A, random.Random(seed))
    parts = decompose_indecomposables(M)
    total = {v: sum(S.dims[v] * m for S, m in parts) for v in A.vertices}
    assert total == M.dims
    assert all(is_indecomposable(S) for S, _ in parts)


def test_decomposition_recovers_a_direct_sum(A3):
    P1, S2 = projective(A3, "1"), simple(A3, "2")
    S, _, _ = direct_sum([P1, S2, S2])
    parts = decompose_indecomposables(S)
    mults = sorted((X.dim_vector(), m) for X, m in parts)
    assert mults == sorted([(P1.dim_vector(), 1), (S2.dim_vector(), 2)])


def test_double_dual_natural(A3):
    inds = enumerate_indecomposables(A3)
    for X in inds:
        eta = double_dual_iso(X)
        assert eta.is_iso()
        for Y in inds:
            for h in hom_space(X, Y):
                assert dual_morphism(dual_morphism(h)) @ eta == double_dual_iso(Y) @ h


def test_dual_swaps_projectives_and_injectives(A3):
    op = A3.opposite()
    for x in A3.vertices:
        assert dual_module(projective(A3, x)).dims == injective(op, x).dims


def test_projective_cover_and_presentation(A3):
    for M in enumerate_indecomposables(A3):
        cov = projective_cover(M)
        assert cov.map.is_epi()
        # the cover has as many summands as the top has dimensions
        (_, _), (top, _), _ = radical_top_socle(M)
        assert len(cov.cover.vertices) == top.total_dim()
        pres = minimal_projective_presentation(M)
        assert pres.is_minimal()
        assert is_exact_at(pres.d1, pres.d0)


@pytest.mark.parametrize("n", [2, 3])
def test_almost_split_sequences_An(n):
    A = type_A(n)
    for M in enumerate_indecomposables(A):
        if is_projective(M):
            with pytest.raises(ValueError):
                almost_split_sequence(M)
            continue
        ses = almost_split_sequence(M)
        assert are_isomorphic(ses.left, tau(M))
        assert ses.middle.total_dim() == ses.left.total_dim() + M.total_dim()
        cert = verify_almost_split_module(ses)
        assert cert.verified, cert.summary()


def test_split_sequence_is_rejected(A2):
    S1, S2 = simple(A2, "1"), simple(A2, "2")
    S, inc, pr = direct_sum([S2, S1])
    cert = verify_almost_split_module(ShortExactSequence(inc[0], pr[1]))
    assert not cert.verified
    assert "section found" in cert.summary()


def test_non_exact_sequence_rejected(A2):
    S1 = simple(A2, "1")
    with pytest.raises(ModuleError):
        ShortExactSequence(S1.identity(), S1.identity())


def test_find_isomorphism(A3):
    P = projective(A3, "1")
    S, inc, pr = direct_sum([P])
    assert find_isomorphism(P, S) is not None
    assert find_isomorphism(P, injective(A3, "3")) is not None
    assert find_isomorphism(P, projective(A3, "2")) is None


def test_prime_field_agrees_with_rationals():
    for F in (FieldSpec.prime(2), FieldSpec.prime(5)):
        A = type_A(3, F)
        B = type_A(3)
        for x in A.vertices:
            for y in A.vertices:
                assert hom_dim(projective(A, x), injective(A, y)) == hom_dim(projective(B, x), injective(B, y))
        assert tau(simple(A, "1")).dims == tau(simple(B, "1")).dims


def test_module_category_hom_matches(A3):
    cat = ModuleCategory(A3)
    X, Y = projective(A3, "2"), injective(A3, "2")
    assert len(cat.hom(X, Y)) == hom_dim(X, Y)
    assert ModuleMorphism.zero(X, Y).is_zero()
