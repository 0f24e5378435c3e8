from __future__ import annotations

import numpy as np
import pytest

from stabkit.constructions import bit_flip_code, shor, steane, surface
from stabkit.errors import ResourceLimitError
from stabkit.knill_laflamme import code_projector, errors_up_to_weight, kl_check
from stabkit.pauli import PauliOperator


def ops(*letters):
    return [PauliOperator.from_letters(l) for l in letters]


def test_bit_flip_code_corrects_single_x():
    ok, c = kl_check(bit_flip_code(), ops("III", "XII", "IXI", "IIX"))
    assert ok
    assert np.allclose(c, np.eye(4))


def test_bit_flip_code_fails_with_z():
    assert not kl_check(bit_flip_code(), ops("III", "ZII"))[0]
    assert not kl_check(bit_flip_code(), ops("III", "XII", "IXI", "IIX", "ZII"))[0]


def test_steane_weight_one():
    errors = errors_up_to_weight(7, 1)
    assert len(errors) == 22
    ok, c = kl_check(steane(), errors)
    assert ok
    assert np.allclose(c, c.conj().T)


def test_shor_weight_one():
    assert kl_check(shor(), errors_up_to_weight(9, 1))[0]


def test_steane_fails_at_weight_two():
    assert not kl_check(steane(), errors_up_to_weight(7, 2))[0]


def test_projector_rank():
    p = code_projector(steane())
    assert np.isclose(np.trace(p).real, 2)


def test_size_guard():
    with pytest.raises(ResourceLimitError):
        code_projector(surface(3))


def test_matches_direct_projector_formula():
    # P E_i† E_j P compared with c P using dense matrices built independently
    from oracles import dense

    gens = ["ZZI", "IZZ"]
    dim = 8
    proj = np.eye(dim, dtype=complex)
    for g in gens:
        proj = proj @ (np.eye(dim) + dense(g)) / 2
    letters = ["III", "XII", "IYI", "ZZI", "IIZ"]
    ok_direct = True
    c_direct = np.zeros((5, 5), complex)
    for i, a in enumerate(letters):
        for j, b in enumerate(letters):
            block = proj @ dense(a).conj().T @ dense(b) @ proj
            c_direct[i, j] = np.trace(block) / np.trace(proj)
            ok_direct &= np.allclose(block, c_direct[i, j] * proj)
    ok, c = kl_check(bit_flip_code(), ops(*letters))
    assert ok == ok_direct
    assert np.allclose(c, c_direct)
