"""Stabilizer codes described by a binary check matrix ``[hx | hz]``."""

from __future__ import annotations

import enum
from collections.abc import Sequence
from dataclasses import dataclass
from functools import cached_property

import numpy as np
import numpy.typing as npt

from . import gf2
from .errors import CodeError, NonCommutingError, RedundantGeneratorError
from .gf2 import BitMatrix, RowspaceReducer
from .pauli import PauliOperator

LogicalPair = tuple[PauliOperator, PauliOperator]


@dataclass(frozen=True)
class CheckMatrix:
    """``r`` generators on ``n`` qubits; row ``i`` is ``E(hx[i], hz[i])``."""

    hx: BitMatrix
    hz: BitMatrix

    def __post_init__(self):
        if self.hx.shape != self.hz.shape:
            raise CodeError(f"hx is {self.hx.shape} but hz is {self.hz.shape}")

    @property
    def n(self) -> int:
        return self.hx.cols

    @property
    def r(self) -> int:
        return self.hx.rows

    @classmethod
    def from_symplectic(cls, h: npt.ArrayLike) -> CheckMatrix:
        arr = np.asarray(h, dtype=np.uint8)
        if arr.ndim != 2 or arr.shape[1] % 2:
            raise CodeError(f"symplectic check matrix must be r x 2n, got {arr.shape}")
        n = arr.shape[1] // 2
        return cls(BitMatrix.from_dense(arr[:, :n]), BitMatrix.from_dense(arr[:, n:]))

    @classmethod
    def from_paulis(cls, generators: Sequence[str | PauliOperator], n: int | None = None) -> CheckMatrix:
        """Build from letter strings (``"XXI"``) or sparse strings (``"X1 X2"``, needs ``n``)."""
        ops = []
        for g in generators:
            if isinstance(g, PauliOperator):
                ops.append(g)
            elif n is not None and any(ch.isdigit() for ch in g):
                ops.append(PauliOperator.from_string(g, n))
            else:
                ops.append(PauliOperator.from_letters(g))
        if not ops:
            if n is None:
                raise CodeError("empty generator list needs an explicit n")
            return cls(BitMatrix.zeros(0, n), BitMatrix.zeros(0, n))
        return cls.from_symplectic(np.array([p.to_symplectic() for p in ops]))

    @cached_property
    def symplectic(self) -> BitMatrix:
        return gf2.hstack([self.hx, self.hz])

    def generators(self) -> list[PauliOperator]:
        hx, hz = self.hx.to_dense(), self.hz.to_dense()
        return [PauliOperator(hx[i], hz[i]) for i in range(self.r)]

    def commutation_matrix(self) -> npt.NDArray[np.uint8]:
        hx = self.hx.to_dense().astype(np.int64)
        hz = self.hz.to_dense().astype(np.int64)
        return ((hx @ hz.T + hz @ hx.T) & 1).astype(np.uint8)

    def css_rows(self) -> tuple[npt.NDArray[np.intp], npt.NDArray[np.intp]] | None:
        """Indices of pure-X and pure-Z rows, or ``None`` if some row mixes both."""
        hx, hz = self.hx.to_dense(), self.hz.to_dense()
        has_x = hx.any(axis=1)
        has_z = hz.any(axis=1)
        if np.any(has_x & has_z):
            return None
        return np.flatnonzero(has_x), np.flatnonzero(~has_x)


class ResidualClass(enum.Enum):
    STABILIZER = "stabilizer"
    LOGICAL = "logical"
    DETECTABLE = "detectable"


class StabilizerCode:
    """A validated check matrix together with ``k`` and paired logical operators.

    Build through :func:`validate` rather than directly.
    """

    def __init__(self, check: CheckMatrix, k: int, logical_pairs: Sequence[LogicalPair]):
        self.check = check
        self.n = check.n
        self.k = k
        self.logical_pairs = tuple(logical_pairs)

    @property
    def r(self) -> int:
        return self.check.r

    @cached_property
    def rank(self) -> int:
        return self.n - self.k

    @cached_property
    def reducer(self) -> RowspaceReducer:
        return RowspaceReducer(self.check.symplectic)

    @cached_property
    def logical_matrix(self) -> npt.NDArray[np.uint8]:
        """``2k x 2n`` rows ``X̄_1, Z̄_1, X̄_2, Z̄_2, ...`` in symplectic layout."""
        rows = [op.to_symplectic() for pair in self.logical_pairs for op in pair]
        return np.array(rows, dtype=np.uint8).reshape(len(rows), 2 * self.n)

    def is_css(self) -> bool:
        return self.check.css_rows() is not None

    def stabilizers_commute_with(self, p: PauliOperator) -> bool:
        return not np.any(syndrome(self, p))

    def __repr__(self) -> str:
        return f"StabilizerCode(n={self.n}, k={self.k}, r={self.r})"


def _first_anticommuting(check: CheckMatrix) -> tuple[int, int] | None:
    comm = check.commutation_matrix()
    hits = np.argwhere(np.triu(comm, 1))
    if hits.size == 0:
        return None
    i, j = hits[0]
    return int(i), int(j)


def _check_pairs(check: CheckMatrix, pairs: Sequence[LogicalPair]) -> None:
    ops = [op for pair in pairs for op in pair]
    for op in ops:
        if op.n != check.n:
            raise CodeError(f"logical operator on {op.n} qubits, code has {check.n}")
    if not ops:
        return
    n = check.n
    reducer = RowspaceReducer(check.symplectic)
    mat = np.array([op.to_symplectic() for op in ops], dtype=np.int64)
    swapped = np.hstack([mat[:, n:], mat[:, :n]])
    with_stab = (check.symplectic.to_dense().astype(np.int64) @ swapped.T) & 1
    for j, op in enumerate(ops):
        if with_stab[:, j].any():
            raise CodeError(f"logical operator {op} anticommutes with a stabilizer")
        if reducer.contains(mat[j].astype(np.uint8)):
            raise CodeError(f"logical operator {op} is a stabilizer")
    gram = (mat @ swapped.T) & 1  # rows/cols ordered X1, Z1, X2, Z2, ...
    k = len(pairs)
    expected = np.kron(np.eye(k, dtype=np.int64), np.array([[0, 1], [1, 0]]))
    if not np.array_equal(gram, expected):
        i, j = (int(t) // 2 for t in np.argwhere(gram != expected)[0])
        raise CodeError(f"logical pairs {i + 1} and {j + 1} violate the pairing condition")


def validate(
    check: CheckMatrix,
    allow_redundant: bool = False,
    logical_pairs: Sequence[LogicalPair] | None = None,
) -> StabilizerCode:
    """Check that the generators commute, compute ``k`` and attach logical operators.

    Raises:
        NonCommutingError: two rows anticommute (``.rows`` holds the first such pair).
        RedundantGeneratorError: rows are dependent and ``allow_redundant`` is false.
    """
    bad = _first_anticommuting(check)
    if bad is not None:
        raise NonCommutingError(bad)
    rk = gf2.rank(check.symplectic)
    if rk < check.r and not allow_redundant:
        raise RedundantGeneratorError(check.r, rk)
    k = check.n - rk
    if logical_pairs is None:
        logical_pairs = extract_logicals(check)
    else:
        logical_pairs = list(logical_pairs)
        if len(logical_pairs) != k:
            raise CodeError(f"{len(logical_pairs)} logical pairs supplied but k = {k}")
    _check_pairs(check, logical_pairs)
    return StabilizerCode(check, k, logical_pairs)


def syndrome(code: StabilizerCode | CheckMatrix, e: PauliOperator) -> npt.NDArray[np.uint8]:
    """One bit per stored generator row: its symplectic product with ``e``."""
    check = code.check if isinstance(code, StabilizerCode) else code
    if e.n != check.n:
        raise ValueError(f"error acts on {e.n} qubits, code has {check.n}")
    return (check.hz.dot_vector(e.x_bits) ^ check.hx.dot_vector(e.z_bits)).astype(np.uint8)


def _lex_sorted(rows: npt.NDArray[np.uint8]) -> npt.NDArray[np.uint8]:
    if rows.shape[0] == 0:
        return rows
    return rows[np.lexsort(rows[:, ::-1].T)]


def _complement_basis(candidates: npt.NDArray[np.uint8], span: npt.NDArray[np.uint8]) -> list:
    """Greedy pick of candidates that stay independent modulo ``span`` (in given order)."""
    echelon: dict[int, int] = {}  # leading bit -> row, rows packed into Python ints

    def insert(v: int) -> bool:
        while v:
            top = v.bit_length() - 1
            if top not in echelon:
                echelon[top] = v
                return True
            v ^= echelon[top]
        return False

    def as_int(row: npt.NDArray[np.uint8]) -> int:
        return int.from_bytes(np.packbits(row, bitorder="little").tobytes(), "little")

    width = candidates.shape[1] if candidates.ndim == 2 else span.shape[1]
    for row in span.reshape(-1, width):
        insert(as_int(row))
    return [v.copy() for v in candidates if insert(as_int(v))]


def _symp(u: npt.NDArray[np.uint8], v: npt.NDArray[np.uint8], n: int) -> int:
    return int((np.sum(u[:n] & v[n:]) + np.sum(u[n:] & v[:n])) & 1)


def extract_logicals(check: CheckMatrix) -> list[LogicalPair]:
    """Symplectically paired basis of the normalizer modulo the stabilizer group.

    The normalizer is the kernel of ``[hz | hx]``; a complement of the
    stabilizer rowspace is picked greedily (kernel rows in ascending
    lexicographic order) and then paired by symplectic Gram-Schmidt. When
    every generator is pure X or pure Z the X-type and Z-type parts are
    extracted separately, so each pair is (pure X, pure Z).
    """
    n = check.n
    hx, hz = check.hx.to_dense(), check.hz.to_dense()
    stab = np.hstack([hx, hz])
    split = check.css_rows()
    if split is not None:
        xr, zr = split
        zeros = np.zeros((0, n), np.uint8)
        hx_x = hx[xr] if xr.size else zeros
        hz_z = hz[zr] if zr.size else zeros
        ker_x = gf2.kernel(BitMatrix.from_dense(hz_z, cols=n)).to_dense()
        ker_z = gf2.kernel(BitMatrix.from_dense(hx_x, cols=n)).to_dense()
        xs = _complement_basis(_lex_sorted(ker_x), hx_x)
        zs = _complement_basis(_lex_sorted(ker_z), hz_z)
        pad = np.zeros(n, np.uint8)
        vecs = [np.concatenate([v, pad]) for v in xs] + [np.concatenate([pad, v]) for v in zs]
    else:
        swapped = BitMatrix.from_dense(np.hstack([hz, hx]))
        normalizer = _lex_sorted(gf2.kernel(swapped).to_dense())
        vecs = _complement_basis(normalizer, stab)

    pairs: list[LogicalPair] = []
    pool = [v.copy() for v in vecs]
    while pool:
        u = pool.pop(0)
        partner = next((i for i, w in enumerate(pool) if _symp(u, w, n)), None)
        if partner is None:
            raise CodeError("normalizer basis cannot be symplectically paired; check matrix is inconsistent")
        v = pool.pop(partner)
        for i, w in enumerate(pool):
            # Make w commute with both u and v without changing its class otherwise.
            if _symp(w, v, n):
                w = w ^ u
            if _symp(w, u, n):
                w = w ^ v
            pool[i] = w
        pairs.append((PauliOperator.from_symplectic(u, n), PauliOperator.from_symplectic(v, n)))
    return pairs


def classify_residual(code: StabilizerCode, p: PauliOperator) -> ResidualClass:
    if np.any(syndrome(code, p)):
        return ResidualClass.DETECTABLE
    if code.reducer.contains(p.to_symplectic()):
        return ResidualClass.STABILIZER
    return ResidualClass.LOGICAL


def logical_action(code: StabilizerCode, p: PauliOperator) -> npt.NDArray[np.uint8]:
    """Symplectic products of ``p`` with ``X̄_1, Z̄_1, ...``; zero iff ``p`` is trivial on the logicals."""
    n = code.n
    v = p.to_symplectic()
    swapped = np.concatenate([v[n:], v[:n]])
    return ((code.logical_matrix.astype(np.int64) @ swapped) & 1).astype(np.uint8)


def generator_weights(code: StabilizerCode) -> list[int]:
    hx, hz = code.check.hx.to_dense(), code.check.hz.to_dense()
    return (hx | hz).sum(axis=1).astype(int).tolist()


def classify_batch(
    code: StabilizerCode, x: npt.ArrayLike, z: npt.ArrayLike
) -> npt.NDArray[np.uint8]:
    """Vectorized residual classes: 0 stabilizer, 1 logical, 2 detectable.

    With a zero syndrome ``p`` lies in the normalizer, and there it is a
    stabilizer exactly when it commutes with every paired logical operator.
    """
    xs = np.atleast_2d(np.asarray(x, dtype=np.int64))
    zs = np.atleast_2d(np.asarray(z, dtype=np.int64))
    hx = code.check.hx.to_dense().astype(np.int64)
    hz = code.check.hz.to_dense().astype(np.int64)
    detect = ((xs @ hz.T + zs @ hx.T) & 1).any(axis=1)
    logic = code.logical_matrix.astype(np.int64)
    n = code.n
    act = ((xs @ logic[:, n:].T + zs @ logic[:, :n].T) & 1).any(axis=1)
    out = np.where(act, 1, 0).astype(np.uint8)
    out[detect] = 2
    return out


CLASS_CODES = (ResidualClass.STABILIZER, ResidualClass.LOGICAL, ResidualClass.DETECTABLE)
