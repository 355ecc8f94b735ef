from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nilcomm import _kernels
from nilcomm.errors import DimensionMismatch, InconsistentSystem, NotNilpotent
from nilcomm.linalg import (
    GF,
    QQ,
    EchelonBasis,
    Field,
    Matrix,
    complement_basis,
    intersect_spaces,
    inverse,
    jordan_basis,
    nilpotency_index,
    nilpotent_jordan_type,
    nullspace,
    power_ranks,
    rank,
    rref,
    solve,
    sum_spaces,
)
from nilcomm.partitions import Partition, jordan_first

small_ints = st.integers(min_value=-4, max_value=4)


def int_matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small_ints, min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


def naive_product(a, b):
    return [[sum(Fraction(a[i][k]) * b[k][j] for k in range(len(b))) for j in range(len(b[0]))]
            for i in range(len(a))]


def test_field_rejects_composite_characteristic():
    with pytest.raises(ValueError):
        Field(6)


def test_gf_coerces_fractions():
    f = GF(7)
    assert f.coerce(Fraction(1, 2)) == 4
    with pytest.raises(ZeroDivisionError):
        f.coerce(Fraction(1, 7))


def test_to_json_is_exact():
    assert QQ.to_json(Fraction(3, 4)) == "3/4"
    assert QQ.to_json(Fraction(-2)) == -2
    assert GF(5).to_json(3) == 3


def test_matrix_is_read_only():
    m = Matrix([[1, 2], [3, 4]])
    with pytest.raises(ValueError):
        m.array[0, 0] = 5


def test_rank_of_known_matrix():
    m = Matrix([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    assert rank(m) == 2
    assert rank(Matrix([[1, 2, 3], [2, 4, 6], [1, 0, 1]], GF(2))) == 1  # rows 1 and 3 coincide mod 2


def test_rref_pivots():
    r, piv = rref(Matrix([[0, 2, 4], [0, 1, 3]]))
    assert list(piv) == [1, 2]
    assert r == Matrix([[0, 1, 0], [0, 0, 1]])


@given(int_matrices(), int_matrices())
@settings(max_examples=60, deadline=None)
def test_rational_product_matches_naive(a, b):
    b = [row[: len(b[0])] for row in b]
    if len(a[0]) != len(b):
        b = (b * len(a[0]))[: len(a[0])]
    ma, mb = Matrix(a), Matrix(b)
    ma = ma * Fraction(1, 3)
    expected = naive_product([[x * Fraction(1, 3) for x in row] for row in a], b)
    assert (ma @ mb) == Matrix(expected)


@given(int_matrices())
@settings(max_examples=60, deadline=None)
def test_rank_nullity_and_transpose(a):
    m = Matrix(a)
    ns = nullspace(m)
    assert rank(m) + ns.cols == m.cols
    assert (m @ ns).is_zero()
    assert rank(m) == rank(m.T)


@given(int_matrices(), st.sampled_from([2, 3, 7, 101]))
@settings(max_examples=60, deadline=None)
def test_rank_nullity_mod_p(a, p):
    m = Matrix(a, GF(p))
    ns = nullspace(m)
    assert rank(m) + ns.cols == m.cols
    assert (m @ ns).is_zero()


@given(st.integers(1, 6), st.integers(0, 10_000))
@settings(max_examples=40, deadline=None)
def test_inverse_roundtrip(n, seed):
    rng = np.random.default_rng(seed)
    a = Matrix(rng.integers(-3, 4, size=(n, n)).tolist())
    if rank(a) < n:
        with pytest.raises(InconsistentSystem):
            inverse(a)
        return
    assert a @ inverse(a) == Matrix.identity(n)
    assert a ** -1 == inverse(a)


def test_solve_and_inconsistent():
    a = Matrix([[1, 1], [1, -1]])
    b = Matrix([[3], [1]])
    assert solve(a, b) == Matrix([[2], [1]])
    with pytest.raises(InconsistentSystem):
        solve(Matrix([[1, 1], [2, 2]]), Matrix([[1], [3]]))


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        Matrix([[1, 2]]) @ Matrix([[1, 2]])


def test_subspace_operations():
    e1 = Matrix([[1], [0], [0]])
    e12 = Matrix([[1, 0], [0, 1], [0, 0]])
    e23 = Matrix([[0, 0], [1, 0], [0, 1]])
    assert sum_spaces(e12, e23).cols == 3
    inter = intersect_spaces(e12, e23)
    assert inter.cols == 1 and rank(Matrix.hstack([inter, Matrix([[0], [1], [0]])])) == 1
    comp = complement_basis(e1, e12)
    assert comp == Matrix([[0], [1], [0]])


def test_echelon_basis():
    eb = EchelonBasis(3)
    assert eb.add([1, 1, 0])
    assert not eb.add([2, 2, 0])
    assert eb.add([0, 1, 1])
    assert eb.contains([1, 2, 1])
    assert eb.dim == 2


def test_nilpotency_and_power_ranks():
    j = jordan_first(Partition([3, 1]))
    assert nilpotency_index(j) == 3
    assert power_ranks(j) == [4, 2, 1, 0]
    with pytest.raises(NotNilpotent):
        nilpotency_index(Matrix.identity(2))
    with pytest.raises(NotNilpotent):
        power_ranks(Matrix([[1, 0], [0, 0]]))


@pytest.mark.parametrize("field", [QQ, GF(7), GF(2)])
@pytest.mark.parametrize("parts", [(1,), (2, 1), (3, 3, 1), (4, 2, 2, 1), (5, 3, 1)])
def test_jordan_basis_conjugates_to_canonical_form(field, parts):
    t = Partition(parts)
    j = jordan_first(t, field)
    rng = np.random.default_rng(sum(parts))
    while True:
        s = Matrix(rng.integers(-2, 3, size=(t.size, t.size)).tolist(), field)
        if rank(s) == t.size:
            break
    x = inverse(s) @ j @ s
    assert nilpotent_jordan_type(x) == t
    h = jordan_basis(x)
    assert inverse(h) @ x @ h == j


@pytest.mark.parametrize("p", [2, 3, 101, 2_147_483_647])
def test_kernel_backends_agree(p):
    rng = np.random.default_rng(p % 1000)
    a = rng.integers(0, p, size=(12, 9), dtype=np.int64)
    b = rng.integers(0, p, size=(9, 7), dtype=np.int64)
    r1, p1 = _kernels.rref_modp_numpy(a, p)
    expected = np.array([[sum(int(a[i, k]) * int(b[k, j]) for k in range(9)) % p for j in range(7)]
                         for i in range(12)], dtype=np.int64)
    assert np.array_equal(_kernels.matmul_modp_numpy(a, b, p), expected)
    if _kernels.HAVE_NUMBA:
        r2, p2 = _kernels.rref_modp_numba(a, p)
        assert np.array_equal(r1, r2) and list(p1) == list(p2)
        assert np.array_equal(_kernels.matmul_modp_numba(a, b, p), expected)


@given(int_matrices(7, 7), st.integers(1, 5))
@settings(max_examples=80, deadline=None)
def test_fraction_free_rank_matches_rref(a, den):
    m = Matrix(a) * Fraction(1, den)
    assert rank(m) == len(rref(m)[1])
    low_rank = m @ m.T @ m  # same rank as m
    assert rank(low_rank) == len(rref(low_rank)[1])


def test_pure_numpy_flag_selects_fallback():
    import os
    import subprocess
    import sys

    code = ("from nilcomm import _kernels; from nilcomm.linalg import GF, Matrix, rank;"
            "print(_kernels.BACKEND, rank(Matrix([[1, 2, 3], [2, 4, 6], [1, 0, 1]], GF(2))))")
    env = {**os.environ, "NILCOMM_PURE_NUMPY": "1"}
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["numpy", "1"]
