from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from oracles import matrix_rank
from stabkit.gf2 import (
    BitMatrix,
    RowspaceReducer,
    bits_to_int,
    hstack,
    in_rowspace,
    kernel,
    pack_rows,
    rank,
    rowspace_equal,
    rref,
    solve,
    unpack_rows,
    vstack,
)


def binary_matrices(max_rows=8, max_cols=70):
    shapes = st.tuples(st.integers(0, max_rows), st.integers(1, max_cols))
    return shapes.flatmap(lambda s: arrays(np.uint8, s, elements=st.integers(0, 1)))


@given(binary_matrices())
def test_pack_roundtrip(m):
    assert np.array_equal(unpack_rows(pack_rows(m), m.shape[1]), m)
    assert np.array_equal(BitMatrix.from_dense(m).to_dense(), m)


@given(binary_matrices())
def test_rank_matches_oracle(m):
    assert rank(BitMatrix.from_dense(m)) == matrix_rank(m)


@given(binary_matrices())
def test_rank_nullity(m):
    bm = BitMatrix.from_dense(m)
    ker = kernel(bm).to_dense()
    assert ker.shape == (m.shape[1] - matrix_rank(m), m.shape[1])
    assert not np.any((m.astype(int) @ ker.T.astype(int)) % 2)
    assert matrix_rank(ker) == ker.shape[0]


@given(binary_matrices())
def test_rref_shape(m):
    reduced, pivots = rref(BitMatrix.from_dense(m))
    r = reduced.to_dense()
    assert pivots == sorted(pivots)
    for i, p in enumerate(pivots):
        # pivot column is a unit vector and leads its row
        assert r[i, p] == 1 and r[:, p].sum() == 1
        assert not r[i, :p].any()
    assert not r[len(pivots):].any()
    assert rowspace_equal(reduced, BitMatrix.from_dense(m))


@given(binary_matrices(), st.data())
def test_solve(m, data):
    bm = BitMatrix.from_dense(m)
    x_true = data.draw(arrays(np.uint8, m.shape[1], elements=st.integers(0, 1)))
    s = (m.astype(int) @ x_true) % 2
    x = solve(bm, s)
    assert x is not None
    assert np.array_equal((m.astype(int) @ x) % 2, s)


def test_solve_inconsistent():
    m = BitMatrix.from_dense([[1, 1], [1, 1]])
    assert solve(m, [1, 0]) is None


@settings(max_examples=50)
@given(binary_matrices(max_rows=6, max_cols=20), st.data())
def test_rowspace_membership(m, data):
    bm = BitMatrix.from_dense(m)
    coeffs = data.draw(arrays(np.uint8, m.shape[0], elements=st.integers(0, 1)))
    combo = (coeffs.astype(int) @ m.astype(int)) % 2 if m.shape[0] else np.zeros(m.shape[1], int)
    assert in_rowspace(bm, combo)
    red = RowspaceReducer(bm)
    other = data.draw(arrays(np.uint8, m.shape[1], elements=st.integers(0, 1)))
    expected = matrix_rank(np.vstack([m, other[None, :]])) == matrix_rank(m)
    assert red.contains(other) == expected
    # reduction is canonical: v and v + combo reduce to the same remainder
    assert np.array_equal(red.reduce(other), red.reduce(other ^ combo.astype(np.uint8)))


@given(binary_matrices(max_cols=10), binary_matrices(max_cols=10))
def test_matmul_matches_numpy(a, b):
    if a.shape[1] != b.shape[0]:
        b = np.resize(b, (a.shape[1], b.shape[1]))
    prod = BitMatrix.from_dense(a) @ BitMatrix.from_dense(b)
    assert np.array_equal(prod.to_dense(), (a.astype(int) @ b.astype(int)) % 2)


def test_transpose_and_stack():
    a = BitMatrix.from_dense([[1, 0, 1], [0, 1, 1]])
    assert np.array_equal(a.T.to_dense(), [[1, 0], [0, 1], [1, 1]])
    assert hstack([a, a]).shape == (2, 6)
    assert vstack([a, a]).shape == (4, 3)
    with pytest.raises(ValueError):
        vstack([a, a.T])


def test_dot_vector():
    a = BitMatrix.from_dense([[1, 1, 0], [0, 1, 1]])
    assert a.dot_vector([1, 1, 1]).tolist() == [0, 0]
    assert a.dot_vector([1, 0, 0]).tolist() == [1, 0]


def test_rejects_non_binary_and_bad_padding():
    with pytest.raises(ValueError):
        BitMatrix.from_dense([[2, 0]])
    with pytest.raises(ValueError):
        BitMatrix(1, 3, np.array([[0b1000]], dtype=np.uint64))


def test_equality_and_hash():
    a = BitMatrix.from_dense([[1, 0], [0, 1]])
    assert a == BitMatrix.identity(2)
    assert hash(a) == hash(BitMatrix.identity(2))
    assert a != BitMatrix.zeros(2, 2)


def test_empty_matrices():
    assert rank(BitMatrix.zeros(0, 5)) == 0
    assert kernel(BitMatrix.zeros(0, 3)).shape == (3, 3)
    assert kernel(BitMatrix.identity(4)).shape == (0, 4)


def test_bits_to_int_little_endian():
    assert bits_to_int([1, 0, 1, 1]) == 0b1101
