import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from matcat.linalg import FieldSpec, LinalgError, Matrix, ModP, kernel_image_cokernel, pushout, pushout_factor

QQ = FieldSpec.rationals()
F7 = FieldSpec.prime(7)

small = st.integers(min_value=-4, max_value=4)


@st.composite
def int_matrices(draw, max_dim=5):
    r = draw(st.integers(0, max_dim))
    c = draw(st.integers(0, max_dim))
    return [[draw(small) for _ in range(c)] for _ in range(r)], r, c


def to_sympy(rows, r, c):
    return sympy.Matrix(r, c, [x for row in rows for x in row])


@given(int_matrices())
@settings(max_examples=80, deadline=None)
def test_rank_matches_sympy(data):
    rows, r, c = data
    M = Matrix(QQ, r, c, rows)
    assert M.rank() == (to_sympy(rows, r, c).rank() if r and c else 0)


@given(int_matrices())
@settings(max_examples=80, deadline=None)
def test_nullspace_is_kernel_basis(data):
    rows, r, c = data
    M = Matrix(QQ, r, c, rows)
    K = M.nullspace()
    assert K.rows == c and K.cols == c - M.rank()
    assert (M @ K).is_zero()
    assert K.rank() == K.cols


@given(int_matrices(), st.integers(0, 10**6))
@settings(max_examples=60, deadline=None)
def test_solve_recovers_consistent_systems(data, seed):
    rows, r, c = data
    M = Matrix(QQ, r, c, rows)
    rng = random.Random(seed)
    x = Matrix(QQ, c, 1, [[rng.randint(-3, 3)] for _ in range(c)])
    y = M.solve(M @ x)
    assert y is not None and M @ y == M @ x


def test_solve_reports_inconsistency():
    M = Matrix(QQ, 2, 1, [[1], [1]])
    assert M.solve(Matrix(QQ, 2, 1, [[1], [2]])) is None


@given(int_matrices())
@settings(max_examples=60, deadline=None)
def test_inverse_against_sympy(data):
    rows, r, _ = data
    rows = [row[:r] + [0] * (r - len(row[:r])) for row in rows]
    M = Matrix(QQ, r, r, rows)
    inv = M.inverse()
    S = to_sympy(rows, r, r)
    if r == 0:
        return
    if S.det() == 0:
        assert inv is None
    else:
        want = S.inv()
        assert [[Fraction(int(want[i, j].p), int(want[i, j].q)) for j in range(r)] for i in range(r)] == inv.tolist()


@given(int_matrices())
@settings(max_examples=60, deadline=None)
def test_kernel_image_cokernel_dimensions(data):
    rows, r, c = data
    M = Matrix(QQ, r, c, rows)
    K, I, Q = kernel_image_cokernel(M)
    rk = M.rank()
    assert K.cols == c - rk and I.cols == rk and Q.rows == r - rk
    assert (Q @ M).is_zero()
    assert Q.rank() == Q.rows


def test_pushout_square_commutes_and_factors():
    f = Matrix(QQ, 2, 1, [[1], [0]])
    g = Matrix(QQ, 1, 1, [[2]])
    n, fp, gp = pushout(f, g)
    assert n == 2
    assert fp @ g == gp @ f
    # the cocone (a, b) = (id on V, f g^-1 on W) factors uniquely
    a = Matrix.identity(QQ, 2)
    b = Matrix(QQ, 2, 1, [[Fraction(1, 2)], [0]])
    u = pushout_factor(fp, gp, a, b)
    assert u is not None and u @ gp == a and u @ fp == b


def test_modp_arithmetic():
    a, b = ModP(3, 7), ModP(5, 7)
    assert a + b == ModP(1, 7)
    assert a * b == ModP(1, 7)
    assert (a / b) * b == a
    assert -a == ModP(4, 7)
    with pytest.raises(ZeroDivisionError):
        ModP(1, 7) / ModP(0, 7)


@given(st.integers(1, 6), st.integers(0, 10**6))
@settings(max_examples=30, deadline=None)
def test_inverse_over_prime_field(n, seed):
    rng = random.Random(seed)
    M = Matrix(F7, n, n, [[F7(rng.randint(0, 6)) for _ in range(n)] for _ in range(n)])
    inv = M.inverse()
    if inv is not None:
        assert M @ inv == Matrix.identity(F7, n)
    else:
        assert M.rank() < n


def test_prime_field_rejects_composites():
    with pytest.raises(LinalgError):
        FieldSpec.prime(4)


def test_field_json_round_trip():
    for F in (QQ, F7):
        assert FieldSpec.from_json(F.to_json()) == F


def test_matmul_shape_mismatch():
    with pytest.raises(LinalgError):
        Matrix.identity(QQ, 2) @ Matrix.identity(QQ, 3)
