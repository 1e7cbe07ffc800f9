import itertools

import pytest

from matcat.algebra import (AlgebraError, Arrow, Quiver, RelationSet, build_path_algebra, doubled_maps_algebra,
                            hom_bimodule, truncated_delta, type_A)
from matcat.linalg import FieldSpec


def all_basis(A):
    for x in A.vertices:
        for y in A.vertices:
            for i in range(A.hom_dim(x, y)):
                yield A.basis_elem(x, y, i)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_linear_An_hom_dims(n):
    # one path i -> j exactly when i <= j; total n(n+1)/2
    A = type_A(n)
    for x in A.vertices:
        for y in A.vertices:
            assert A.hom_dim(x, y) == int(int(x) <= int(y))
    assert A.total_dim() == n * (n + 1) // 2


def test_truncated_delta_dims(delta5):
    # six idempotents and five arrows survive; every length-two path is a relation
    assert delta5.total_dim() == 11
    for x in delta5.vertices:
        for y in delta5.vertices:
            assert delta5.hom_dim(x, y) == int(int(y) - int(x) in (0, 1))


@pytest.mark.parametrize("make", [lambda: type_A(3), lambda: truncated_delta(5),
                                  lambda: doubled_maps_algebra(type_A(2)), lambda: doubled_maps_algebra(type_A(3))])
def test_associativity_and_identities(make):
    A = make()
    assert A.total_dim() <= 60
    basis = list(all_basis(A))
    for f in basis:
        assert A.compose(A.identity(f.target), f) == f
        assert A.compose(f, A.identity(f.source)) == f
    for f, g, h in itertools.product(basis, repeat=3):
        if f.target == g.source and g.target == h.source:
            assert A.compose(A.compose(h, g), f) == A.compose(h, A.compose(g, f))


def test_opposite_is_an_involution(A3):
    op = A3.opposite()
    assert op.opposite() is A3
    for x in A3.vertices:
        for y in A3.vertices:
            assert op.hom_dim(y, x) == A3.hom_dim(x, y)
            assert [tuple(reversed(p)) for p in A3.basis(x, y)] == op.basis(y, x)


def test_commutativity_relation_identifies_paths():
    q = Quiver(("1", "2", "3", "4"), (Arrow("a", "1", "2"), Arrow("b", "2", "4"), Arrow("c", "1", "3"),
                                      Arrow("d", "3", "4")))
    A = build_path_algebra(q, RelationSet((((1, ("b", "a")), (-1, ("d", "c"))),), 3))
    assert A.hom_dim("1", "4") == 1
    assert A.path_elem("1", "4", ("b", "a")) == A.path_elem("1", "4", ("d", "c"))


def test_non_admissible_relation_rejected():
    q = Quiver(("1", "2"), (Arrow("a", "1", "2"),))
    with pytest.raises(AlgebraError):
        build_path_algebra(q, RelationSet((((1, ("a",)),),), 2))


def test_non_parallel_relation_rejected():
    q = Quiver(("1", "2", "3"), (Arrow("a", "1", "2"), Arrow("b", "2", "3")))
    with pytest.raises(AlgebraError):
        build_path_algebra(q, RelationSet((((1, ("b", "a")), (1, ("a",))),), 3), check_admissible=False)


def test_unknown_arrow_in_relation_rejected():
    q = Quiver(("1", "2"), (Arrow("a", "1", "2"),))
    with pytest.raises(AlgebraError):
        build_path_algebra(q, RelationSet((((1, ("z", "a")),),), 3))


def test_doubled_A2_shape(maps_A2, A2):
    assert len(maps_A2.vertices) == 4
    assert len(maps_A2.arrows) == 5
    assert len(maps_A2.relations) == 2
    assert maps_A2.total_dim() == 3 * A2.total_dim()


@pytest.mark.parametrize("make", [lambda: type_A(2), lambda: type_A(3), lambda: truncated_delta(5)])
def test_doubled_block_formula(make):
    # Hom((i,1),(i',1)) = C(i,i'), Hom((j,2),(j',2)) = C(j,j'), Hom((i,1),(j',2)) = C(i,j'), nothing back
    C = make()
    L = doubled_maps_algebra(C)
    for x in C.vertices:
        for y in C.vertices:
            assert L.hom_dim("T:" + x, "T:" + y) == C.hom_dim(x, y)
            assert L.hom_dim("U:" + x, "U:" + y) == C.hom_dim(x, y)
            assert L.hom_dim("T:" + x, "U:" + y) == C.hom_dim(x, y)
            assert L.hom_dim("U:" + x, "T:" + y) == 0
    assert L.total_dim() == 3 * C.total_dim()


def test_prime_field_has_same_dims():
    A = type_A(3, FieldSpec.prime(5))
    B = type_A(3)
    assert A.hom_matrix() == B.hom_matrix()


def test_hom_bimodule_dims(A3):
    M = hom_bimodule(A3)
    for u in A3.vertices:
        for t in A3.vertices:
            assert M.dims[(u, t)] == A3.hom_dim(t, u)


def test_radical_dim(A3):
    for x in A3.vertices:
        for y in A3.vertices:
            assert A3.radical_dim(x, y) == A3.hom_dim(x, y) - int(x == y)
