"""Bit-packed linear algebra over GF(2).

Rows are stored as little-endian arrays of 64-bit words: column ``j`` lives in
word ``j // 64`` at bit ``j % 64``. Padding bits above ``cols`` are always zero.
Elimination XORs whole packed rows at once, which is what keeps distance
searches and repeated rowspace tests cheap.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence

import numpy as np
import numpy.typing as npt

WORD = 64

BitVector = npt.NDArray[np.uint8]


def _nwords(cols: int) -> int:
    return (cols + WORD - 1) // WORD


def pack_rows(dense: npt.ArrayLike) -> npt.NDArray[np.uint64]:
    """Pack a 2D 0/1 array into rows of little-endian 64-bit words."""
    arr = np.asarray(dense, dtype=np.uint8) & 1
    rows, cols = arr.shape
    nw = _nwords(cols)
    padded = np.zeros((rows, nw * WORD), dtype=np.uint8)
    padded[:, :cols] = arr
    # packbits(bitorder="little") gives bytes with bit i of byte b = column 8b+i;
    # viewing 8 bytes as little-endian uint64 keeps that ordering.
    packed = np.packbits(padded, axis=1, bitorder="little")
    return np.ascontiguousarray(packed).view("<u8").astype(np.uint64).reshape(rows, nw)


def unpack_rows(data: npt.NDArray[np.uint64], cols: int) -> npt.NDArray[np.uint8]:
    rows = data.shape[0]
    as_bytes = np.ascontiguousarray(data.astype("<u8")).view(np.uint8).reshape(rows, data.shape[1] * 8)
    bits = np.unpackbits(as_bytes, axis=1, bitorder="little")
    return bits[:, :cols].copy()


class BitMatrix:
    """Immutable binary matrix with packed row storage."""

    __slots__ = ("rows", "cols", "data", "_dense")

    def __init__(self, rows: int, cols: int, data: npt.NDArray[np.uint64] | None = None):
        if rows < 0 or cols < 0:
            raise ValueError(f"negative shape ({rows}, {cols})")
        nw = _nwords(cols)
        if data is None:
            data = np.zeros((rows, nw), dtype=np.uint64)
        data = np.asarray(data, dtype=np.uint64).reshape(rows, nw)
        if cols % WORD and nw:
            tail = np.uint64((1 << (cols % WORD)) - 1)
            if np.any(data[:, -1] & ~tail):
                raise ValueError("padding bits must be zero")
        data = data.copy()
        data.setflags(write=False)
        self.rows = rows
        self.cols = cols
        self.data = data
        self._dense: npt.NDArray[np.uint8] | None = None

    @classmethod
    def from_dense(cls, dense: npt.ArrayLike, cols: int | None = None) -> BitMatrix:
        arr = np.asarray(dense, dtype=np.uint8)
        if arr.ndim == 1 and arr.size == 0:
            arr = arr.reshape(0, cols or 0)
        if arr.ndim != 2:
            raise ValueError(f"expected a 2D array, got shape {arr.shape}")
        if np.any(arr > 1):
            raise ValueError("entries must be 0 or 1")
        return cls(arr.shape[0], arr.shape[1], pack_rows(arr))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> BitMatrix:
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> BitMatrix:
        return cls.from_dense(np.eye(n, dtype=np.uint8))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def to_dense(self) -> npt.NDArray[np.uint8]:
        """Unpacked 0/1 copy as a ``(rows, cols)`` uint8 array."""
        if self._dense is None:
            dense = unpack_rows(self.data, self.cols)
            dense.setflags(write=False)
            self._dense = dense
        return self._dense.copy()

    def __array__(self, dtype=None, copy=None):
        out = self.to_dense()
        return out if dtype is None else out.astype(dtype)

    def row(self, i: int) -> BitVector:
        return self.to_dense()[i]

    @property
    def T(self) -> BitMatrix:
        return BitMatrix.from_dense(self.to_dense().T)

    def transpose(self) -> BitMatrix:
        return self.T

    def __matmul__(self, other: BitMatrix) -> BitMatrix:
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        prod = self.to_dense().astype(np.int64) @ other.to_dense().astype(np.int64)
        return BitMatrix.from_dense((prod & 1).astype(np.uint8))

    def dot_vector(self, v: npt.ArrayLike) -> BitVector:
        """``m · vᵀ`` over GF(2)."""
        vec = _as_bits(v, self.cols)
        bits = np.bitwise_and(self.data, pack_rows(vec[None, :])[0])
        return (np.bitwise_count(bits).sum(axis=1) & 1).astype(np.uint8)

    def is_zero(self) -> bool:
        return not np.any(self.data)

    def __getitem__(self, rows) -> BitMatrix:
        return BitMatrix(*_select(self, rows))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.shape == other.shape and np.array_equal(self.data, other.data)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.data.tobytes()))

    def __repr__(self) -> str:
        return f"BitMatrix({self.rows}x{self.cols})"

    def __str__(self) -> str:
        return "\n".join("".join(map(str, r)) for r in self.to_dense())


def _select(m: BitMatrix, rows) -> tuple[int, int, npt.NDArray[np.uint64]]:
    data = m.data[rows]
    if data.ndim == 1:
        data = data[None, :]
    return data.shape[0], m.cols, data


def _as_bits(v: npt.ArrayLike, length: int) -> BitVector:
    vec = np.asarray(v, dtype=np.uint8).ravel()
    if vec.shape[0] != length:
        raise ValueError(f"vector length {vec.shape[0]} != {length}")
    return vec & 1


def hstack(blocks: Sequence[BitMatrix]) -> BitMatrix:
    return BitMatrix.from_dense(np.hstack([b.to_dense() for b in blocks]))


def vstack(blocks: Sequence[BitMatrix]) -> BitMatrix:
    cols = {b.cols for b in blocks}
    if len(cols) != 1:
        raise ValueError(f"column counts differ: {sorted(cols)}")
    return BitMatrix(sum(b.rows for b in blocks), cols.pop(), np.vstack([b.data for b in blocks]))


def _eliminate(data: npt.NDArray[np.uint64], cols: int, stop_col: int | None = None):
    """In-place Gauss-Jordan on packed rows; returns pivot columns.

    Pivot choice: for each column in increasing order, the first remaining row
    with that bit set.
    """
    rows = data.shape[0]
    pivots: list[int] = []
    r = 0
    last = cols if stop_col is None else stop_col
    for c in range(last):
        if r == rows:
            break
        w, b = divmod(c, WORD)
        colbits = (data[:, w] >> np.uint64(b)) & np.uint64(1)
        below = np.flatnonzero(colbits[r:])
        if below.size == 0:
            continue
        p = r + int(below[0])
        if p != r:
            data[[r, p]] = data[[p, r]]
            colbits[[r, p]] = colbits[[p, r]]
        hit = colbits.astype(bool)
        hit[r] = False
        if hit.any():
            data[hit] ^= data[r]
        pivots.append(c)
        r += 1
    return pivots


def rref(m: BitMatrix) -> tuple[BitMatrix, list[int]]:
    """Reduced row-echelon form and its pivot columns (strictly increasing)."""
    data = np.array(m.data, dtype=np.uint64, copy=True)
    pivots = _eliminate(data, m.cols)
    return BitMatrix(m.rows, m.cols, data), pivots


def rank(m: BitMatrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    data = np.array(m.data, dtype=np.uint64, copy=True)
    return len(_eliminate(data, m.cols))


def kernel(m: BitMatrix) -> BitMatrix:
    """Basis of the right null space, one row per free column (in column order)."""
    reduced, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in set(pivots)]
    dense = reduced.to_dense()
    basis = np.zeros((len(free), m.cols), dtype=np.uint8)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for j, p in enumerate(pivots):
            basis[i, p] = dense[j, f]
    return BitMatrix.from_dense(basis.reshape(len(free), m.cols))


class RowspaceReducer:
    """Precomputed echelon basis for repeated membership and reduction queries."""

    def __init__(self, m: BitMatrix):
        reduced, pivots = rref(m)
        self.cols = m.cols
        self.pivots = pivots
        self.basis = reduced.to_dense()[: len(pivots)]

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, v: npt.ArrayLike) -> BitVector:
        """Canonical remainder of ``v`` (or each row of a 2D batch) modulo the rowspace."""
        arr = np.array(v, dtype=np.uint8) & 1
        if arr.shape[-1] != self.cols:
            raise ValueError(f"vector length {arr.shape[-1]} != {self.cols}")
        for row, p in zip(self.basis, self.pivots):
            hit = arr[..., p].astype(bool)
            arr[hit] ^= row
        return arr

    def contains(self, v: npt.ArrayLike):
        rem = self.reduce(v)
        out = ~np.any(rem, axis=-1)
        return bool(out) if out.ndim == 0 else out


def in_rowspace(m: BitMatrix, v: npt.ArrayLike) -> bool:
    vec = _as_bits(v, m.cols)
    return bool(RowspaceReducer(m).contains(vec))


def solve(m: BitMatrix, s: npt.ArrayLike) -> BitVector | None:
    """Some ``x`` with ``m · xᵀ = s``, or ``None`` if the system is inconsistent."""
    rhs = _as_bits(s, m.rows)
    aug = np.hstack([m.to_dense(), rhs[:, None]])
    data = pack_rows(aug)
    pivots = _eliminate(data, m.cols + 1, stop_col=m.cols)
    reduced = unpack_rows(data, m.cols + 1)
    if np.any(reduced[len(pivots):, -1]):
        return None
    x = np.zeros(m.cols, dtype=np.uint8)
    for i, p in enumerate(pivots):
        x[p] = reduced[i, -1]
    return x


def rowspace_equal(a: BitMatrix, b: BitMatrix) -> bool:
    if a.cols != b.cols:
        return False
    ra, rb = RowspaceReducer(a), RowspaceReducer(b)
    return bool(np.all(ra.contains(b.to_dense())) and np.all(rb.contains(a.to_dense())))


def bits_to_int(bits: Iterable[int]) -> int:
    """Little-endian integer encoding: bit ``i`` of the result is ``bits[i]``."""
    out = 0
    for i, b in enumerate(bits):
        if b:
            out |= 1 << i
    return out
