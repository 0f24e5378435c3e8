"""Dense-matrix check of the Knill-Laflamme correctability condition."""

from __future__ import annotations

import itertools
from collections.abc import Sequence

import numpy as np
import numpy.typing as npt

from .errors import CodeError, ResourceLimitError
from .pauli import PauliOperator
from .stabilizer import StabilizerCode

MAX_DENSE_QUBITS = 12
TOLERANCE = 1e-9


def code_projector(code: StabilizerCode) -> npt.NDArray[np.complex128]:
    """``prod_i (I + S_i) / 2`` over the stored generators."""
    if code.n > MAX_DENSE_QUBITS:
        raise ResourceLimitError(f"dense projector on {code.n} qubits refused (limit {MAX_DENSE_QUBITS})")
    dim = 1 << code.n
    proj = np.eye(dim, dtype=complex)
    ident = np.eye(dim, dtype=complex)
    for g in code.check.generators():
        proj = proj @ ((ident + g.to_matrix()) / 2)
    if not np.allclose(proj @ proj, proj, atol=TOLERANCE) or not np.allclose(proj, proj.conj().T, atol=TOLERANCE):
        raise CodeError("generator product is not an orthogonal projector")
    trace = np.trace(proj).real
    if abs(trace - 2**code.k) > TOLERANCE:
        raise CodeError(f"projector has rank {trace:.3f}, expected 2**k = {2**code.k}")
    return proj


def kl_check(
    code: StabilizerCode, errors: Sequence[PauliOperator]
) -> tuple[bool, npt.NDArray[np.complex128]]:
    """Test ``P E_i† E_j P = c_ij P`` for every pair of ``errors``.

    Returns the overall verdict and the matrix of best-fit scalars
    ``c_ij = tr(P E_i† E_j P) / tr(P)``.
    """
    for e in errors:
        if e.n != code.n:
            raise ValueError(f"error acts on {e.n} qubits, code has {code.n}")
    proj = code_projector(code)
    # P = V V† with V an isometry onto the code space, so P A P = c P exactly
    # when V† A V = c I; the Gram matrix of the columns E_j V holds every block.
    vals, vecs = np.linalg.eigh(proj)
    basis = vecs[:, vals > 0.5]
    dim_code = basis.shape[1]
    m = len(errors)
    cols = np.hstack([e.to_matrix() @ basis for e in errors]) if m else np.zeros((proj.shape[0], 0))
    gram = (cols.conj().T @ cols).reshape(m, dim_code, m, dim_code).transpose(0, 2, 1, 3)
    c = np.einsum("ijaa->ij", gram) / dim_code
    resid = gram - c[:, :, None, None] * np.eye(dim_code)
    ok = bool(m == 0 or np.max(np.abs(resid)) <= TOLERANCE)
    if ok and np.max(np.abs(c - c.conj().T), initial=0.0) > TOLERANCE:
        ok = False
    return ok, c


def errors_up_to_weight(n: int, t: int) -> list[PauliOperator]:
    """Identity plus every Pauli of weight ``1..t`` (support order, letters X<Y<Z)."""
    out = [PauliOperator.identity(n)]
    for w in range(1, t + 1):
        for support in itertools.combinations(range(n), w):
            for letters in itertools.product("XYZ", repeat=w):
                text = ["I"] * n
                for q, a in zip(support, letters):
                    text[q] = a
                out.append(PauliOperator.from_letters("".join(text)))
    return out
