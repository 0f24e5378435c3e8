from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import dense
from stabkit.pauli import (
    PauliOperator,
    commutes,
    from_symplectic,
    multiply,
    symplectic_product,
    to_symplectic,
    weight,
)


def paulis(n=None, max_n=4):
    sizes = st.just(n) if n is not None else st.integers(1, max_n)
    return sizes.flatmap(
        lambda k: st.builds(
            PauliOperator.from_letters, st.text("IXYZ", min_size=k, max_size=k), st.integers(0, 3)
        )
    )


def pauli_pairs(max_n=3):
    return st.integers(1, max_n).flatmap(lambda k: st.tuples(paulis(k), paulis(k)))


def test_x_z_anticommute():
    x, z = PauliOperator.from_letters("X"), PauliOperator.from_letters("Z")
    assert symplectic_product(x, z) == 1
    assert not commutes(x, z)
    assert commutes(x, x)


def test_separate_qubits_commute():
    assert symplectic_product(PauliOperator.from_letters("XI"), PauliOperator.from_letters("IZ")) == 0


def test_xy_is_iz():
    out = multiply(PauliOperator.from_letters("X"), PauliOperator.from_letters("Y"))
    assert out.x_bits.tolist() == [0]
    assert out.z_bits.tolist() == [1]
    assert out.phase_exp == 1


def test_single_qubit_table_matches_matrices():
    for a, b in itertools.product("IXYZ", repeat=2):
        p, q = PauliOperator.from_letters(a), PauliOperator.from_letters(b)
        assert np.allclose(multiply(p, q).to_matrix(), dense(a) @ dense(b))


@given(pauli_pairs())
def test_multiply_matches_dense(pair):
    p, q = pair
    expected = dense(p.letters, p.phase_exp) @ dense(q.letters, q.phase_exp)
    assert np.allclose(multiply(p, q).to_matrix(), expected)


@given(pauli_pairs())
def test_commutes_matches_dense(pair):
    p, q = pair
    a, b = dense(p.letters), dense(q.letters)
    assert commutes(p, q) == np.allclose(a @ b, b @ a)


@given(pauli_pairs())
def test_symplectic_product_symmetric_and_phase_blind(pair):
    p, q = pair
    assert symplectic_product(p, q) == symplectic_product(q, p)
    assert symplectic_product(p.with_phase(3), q) == symplectic_product(p, q)
    assert symplectic_product(p, p) == 0


@given(pauli_pairs())
def test_gamma_is_homomorphism(pair):
    p, q = pair
    assert np.array_equal(to_symplectic(multiply(p, q)), to_symplectic(p) ^ to_symplectic(q))


@given(pauli_pairs(), st.integers(0, 3))
def test_phase_shift_passes_through(pair, k):
    p, q = pair
    shifted = multiply(p.with_phase(p.phase_exp + k), q)
    assert shifted.phase_exp == (multiply(p, q).phase_exp + k) % 4


@given(st.integers(1, 3).flatmap(lambda k: st.tuples(paulis(k), paulis(k), paulis(k))))
def test_associative(triple):
    p, q, r = triple
    assert multiply(multiply(p, q), r) == multiply(p, multiply(q, r))


@given(paulis())
def test_square_is_phase_identity(p):
    sq = multiply(p, p)
    assert sq.weight() == 0


def test_weight_examples():
    assert weight(PauliOperator.identity(5)) == 0
    assert weight(PauliOperator.from_letters("X" * 7)) == 7
    assert weight(PauliOperator.from_string("Y2 Z5", 7)) == 2


def test_symplectic_layout():
    assert to_symplectic(PauliOperator.identity(3)).tolist() == [0] * 6
    assert to_symplectic(PauliOperator.from_letters("Y")).tolist() == [1, 1]
    assert to_symplectic(PauliOperator.from_letters("XZ")).tolist() == [1, 0, 0, 1]


@given(st.integers(1, 6).flatmap(lambda n: st.tuples(st.just(n), st.lists(st.integers(0, 1), min_size=2 * n, max_size=2 * n))))
def test_symplectic_roundtrip(args):
    n, v = args
    p = from_symplectic(v, n)
    assert p.phase_exp == 0
    assert to_symplectic(p).tolist() == v


def test_length_errors():
    with pytest.raises(ValueError):
        from_symplectic([1, 0, 1], 2)
    with pytest.raises(ValueError):
        multiply(PauliOperator.identity(2), PauliOperator.identity(3))
    with pytest.raises(ValueError):
        symplectic_product(PauliOperator.identity(1), PauliOperator.identity(2))


@given(paulis(max_n=9))
def test_text_roundtrip(p):
    assert PauliOperator.from_string(str(p), p.n) == p


def test_text_rendering():
    assert str(PauliOperator.from_letters("XIYIIIZ")) == "X1 Y3 Z7"
    assert str(PauliOperator.identity(3)) == "I"
    assert str(PauliOperator.from_letters("Z", 2)) == "- Z1"
    assert PauliOperator.from_string("-i X2", 3) == PauliOperator.from_letters("IXI", 3)
    assert PauliOperator.from_string("-X1", 1) == PauliOperator.from_letters("X", 2)


@pytest.mark.parametrize("text", ["", "Q1", "X0", "X4", "X1 Z1", "X"])
def test_bad_text(text):
    with pytest.raises(ValueError):
        PauliOperator.from_string(text, 3)


def test_immutable_bits():
    p = PauliOperator.from_letters("XZ")
    with pytest.raises(ValueError):
        p.x_bits[0] = 0
