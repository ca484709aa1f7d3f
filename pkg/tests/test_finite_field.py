from itertools import product

import numpy as np
import pytest

from iwahori_kit.errors import InvalidInputError
from iwahori_kit.finite_field import FiniteField, get_field


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8])
def test_field_axioms(q):
    F = get_field(q)
    for a in range(1, q):
        assert F.mul(a, F.inv[a]) == 1
    for a in range(q):
        assert F.add(a, F.neg[a]) == 0
        assert F.sub(a, a) == 0
    for a, b, c in product(range(q), repeat=3):
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


@pytest.mark.parametrize("q", [2, 3, 4, 5, 8])
def test_primitive_element_generates(q):
    F = get_field(q)
    powers = {F.power(F.primitive, k) for k in range(q - 1)}
    assert powers == set(range(1, q))


def test_binary_fields_have_characteristic_two():
    F = get_field(4)
    assert F.char == 2
    assert F.additive_basis == [1, 2]
    assert all(F.add(a, a) == 0 for a in range(4))
    assert F.mul(2, 2) == 3
    assert get_field(8).additive_basis == [1, 2, 4]


@pytest.mark.parametrize("q", [0, 1, 6, 9, 16])
def test_unsupported_sizes(q):
    with pytest.raises(InvalidInputError):
        FiniteField(q)


def test_rref_is_canonical():
    F = get_field(3)
    R1, p1 = F.rref(np.array([[1, 2, 0], [0, 1, 1]]))
    R2, p2 = F.rref(np.array([[1, 0, 1], [0, 1, 1]]))
    assert p1 == p2 == (0, 1)
    assert np.array_equal(R1, R2)
    assert R1.tolist() == [[1, 0, 1], [0, 1, 1]]


def test_rref_drops_dependent_rows():
    F = get_field(3)
    R, pivots = F.rref(np.array([[1, 1], [2, 2]]))
    assert R.tolist() == [[1, 1]]
    assert pivots == (0,)
    R, pivots = F.rref(np.zeros((2, 3), dtype=np.int64))
    assert R.shape == (0, 3)
    assert pivots == ()


def test_rref_over_f4():
    F = get_field(4)
    R, pivots = F.rref(np.array([[2, 3], [3, 1]]))
    assert pivots == (0,)
    assert R.tolist() == [[1, F.mul(F.inv[2], 3)]]


def test_contains_and_reduce():
    F = get_field(5)
    R, pivots = F.rref(np.array([[1, 2, 3, 0], [0, 0, 1, 4]]))
    combo = F.add(F.mul(3, R[0]), F.mul(2, R[1]))
    assert F.contains(R, pivots, combo)
    assert not F.contains(R, pivots, np.array([0, 1, 0, 0]))
    assert F.contains(R, pivots, np.zeros((0, 4), dtype=np.int64))


def test_nullspace():
    F = get_field(2)
    basis = F.nullspace(np.array([[1, 1, 0]]), 3)
    assert basis.tolist() == [[1, 1, 0], [0, 0, 1]]
    assert not np.any(F.matmul(np.array([[1, 1, 0]]), basis.T))
    assert F.nullspace(np.zeros((0, 2), dtype=np.int64), 2).tolist() == [[1, 0], [0, 1]]


def test_nullspace_over_f4():
    F = get_field(4)
    M = np.array([[1, 2, 3], [0, 1, 1]])
    basis = F.nullspace(M, 3)
    assert basis.shape == (1, 3)
    assert not np.any(F.matmul(M, basis.T))


def test_matmul_matches_tables():
    F = get_field(4)
    A = np.array([[1, 2], [3, 0]])
    B = np.array([[2, 1], [1, 3]])
    out = F.matmul(A, B)
    for i, j in product(range(2), repeat=2):
        expected = F.add(F.mul(A[i, 0], B[0, j]), F.mul(A[i, 1], B[1, j]))
        assert out[i, j] == expected


@pytest.mark.parametrize("q,m,k,count", [
    (2, 4, 2, 35),
    (3, 3, 1, 13),
    (2, 3, 0, 1),
    (4, 2, 1, 5),
])
def test_subspace_enumeration(q, m, k, count):
    F = get_field(q)
    assert F.gaussian_binomial(m, k) == count
    seen = set()
    for M in F.iter_subspaces(m, k):
        assert M.shape == (k, m)
        R, _ = F.rref(M)
        assert np.array_equal(R, M)
        seen.add(M.tobytes())
    assert len(seen) == count


def test_gaussian_binomial_out_of_range():
    F = get_field(2)
    assert F.gaussian_binomial(3, 4) == 0
    assert list(F.iter_subspaces(2, 3)) == []
