"""Brute-force distance and degeneracy for stabilizer codes."""

from __future__ import annotations

import numpy as np
import numpy.typing as npt

from ._search import DEFAULT_BUDGET, WeightSearch, pack_bits
from .gf2 import BitMatrix
from .pauli import PauliOperator
from .stabilizer import StabilizerCode

# Letter option order inside the search: X < Y < Z.
_LETTER_XZ = ((1, 0), (1, 1), (0, 1))

DEGENERACY_ENUMERATION_RANK = 20


def _quantum_search(code: StabilizerCode) -> WeightSearch:
    n = code.n
    hx = code.check.hx.to_dense()
    hz = code.check.hz.to_dense()
    lx = code.logical_matrix[:, :n]
    lz = code.logical_matrix[:, n:]
    keys = np.zeros((n, 3, code.r), dtype=np.uint8)
    tags = np.zeros((n, 3, lx.shape[0]), dtype=np.uint8)
    for o, (x, z) in enumerate(_LETTER_XZ):
        # single-qubit letter on qubit j: product with row [a|b] is x*b_j + z*a_j
        keys[:, o, :] = ((x * hz + z * hx) & 1).T
        tags[:, o, :] = ((x * lz + z * lx) & 1).T
    return WeightSearch(pack_bits(keys), pack_bits(tags))


def _witness(n: int, support: tuple[int, ...], options: tuple[int, ...]) -> PauliOperator:
    x = np.zeros(n, np.uint8)
    z = np.zeros(n, np.uint8)
    for q, o in zip(support, options):
        x[q], z[q] = _LETTER_XZ[o]
    return PauliOperator(x, z)


def min_weight_logical(
    code: StabilizerCode,
    max_weight: int,
    *,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> tuple[int, PauliOperator] | None:
    """Lightest nontrivial logical operator of weight ``<= max_weight``.

    The witness is the first hit in the order (weight, support, letters X<Y<Z).
    """
    if max_weight > code.n:
        raise ValueError(f"max_weight {max_weight} exceeds n = {code.n}")
    if code.k == 0:
        return None
    # A zero-syndrome operator lies outside the stabilizer rowspace exactly
    # when it anticommutes with some logical operator, so "logical" is a
    # nonzero tag.
    hit = _quantum_search(code).first_weight(max_weight, "nonzero", budget=budget, workers=workers)
    if hit is None:
        return None
    w, support, options = hit
    return w, _witness(code.n, support, options)


def min_distance(
    code: StabilizerCode,
    max_weight: int,
    *,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> int | None:
    """Least weight of an element of ``N(S) \\ S``, or ``None`` if above ``max_weight``.

    Raises:
        ResourceLimitError: the weight levels up to the answer hold more than
            ``budget`` candidates.
    """
    found = min_weight_logical(code, max_weight, budget=budget, workers=workers)
    return None if found is None else found[0]


def min_stabilizer_weight(code: StabilizerCode, max_weight: int, *, budget: int = DEFAULT_BUDGET) -> int | None:
    """Least weight of a nonidentity stabilizer group element, if ``<= max_weight``."""
    if code.rank <= DEGENERACY_ENUMERATION_RANK:
        weights = _rowspace_weights(code)
        small = weights[(weights > 0) & (weights <= max_weight)]
        return int(small.min()) if small.size else None
    hit = _quantum_search(code).first_weight(min(max_weight, code.n), "zero", budget=budget)
    return None if hit is None else hit[0]


def _rowspace_weights(code: StabilizerCode, chunk: int = 1 << 16) -> npt.NDArray[np.int64]:
    """Pauli weights of all ``2**rank`` elements of the stabilizer rowspace."""
    basis = code.reducer.basis.astype(np.int64)
    rk, n = basis.shape[0], code.n
    total = 1 << rk
    out = np.empty(total, dtype=np.int64)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        coeffs = ((idx[:, None] >> np.arange(rk)) & 1).astype(np.int64)
        vecs = (coeffs @ basis) & 1
        out[start : start + idx.size] = np.count_nonzero(vecs[:, :n] | vecs[:, n:], axis=1)
    return out


def is_degenerate(code: StabilizerCode, d: int, *, budget: int = DEFAULT_BUDGET) -> bool:
    """Whether some nonidentity stabilizer has weight strictly below ``d``."""
    if d <= 1:
        return False
    return min_stabilizer_weight(code, d - 1, budget=budget) is not None


def classical_search(h: BitMatrix) -> WeightSearch:
    dense = h.to_dense()
    keys = dense.T[:, None, :]
    tags = np.zeros((h.cols, 1, 1), dtype=np.uint8)
    return WeightSearch(pack_bits(keys), pack_bits(tags))
