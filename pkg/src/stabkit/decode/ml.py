"""Exhaustive maximum-likelihood decoding tables for small codes.

Every one of the ``4^n`` Paulis is visited once. An error is addressed by the
integer whose binary expansion is its symplectic vector ``(x_1..x_n, z_1..z_n)``
read most-significant-first, so integer order is lexicographic vector order.
Syndromes and logical classes are linear, so both are XORs of two per-half
lookup tables; the channel probability depends only on the counts of X, Y and
Z letters and is read from a table built with exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import numpy.typing as npt

from ..channels import PauliChannel
from ..errors import ResourceLimitError
from ..pauli import PauliOperator
from ..stabilizer import StabilizerCode

MAX_QUBITS = 14
MAX_CHECKS = 16
# Coset sums are held densely over (syndrome, logical class): 2^(r + 2k) slots.
MAX_COSET_BITS = 22
EXACT_TIE_QUBITS = 10
TIE_RTOL = 1e-9
_CHUNK = 1 << 22


def syndrome_keys(syndromes: npt.ArrayLike) -> npt.NDArray[np.int64]:
    """Little-endian integer key of each syndrome row (bit ``i`` is check ``i``)."""
    s = np.atleast_2d(np.asarray(syndromes, dtype=np.int64))
    return (s << np.arange(s.shape[1], dtype=np.int64)).sum(axis=1)


@dataclass(frozen=True)
class CosetTable:
    """Representative error for every attainable syndrome, stored by syndrome key."""

    n: int
    r: int
    present: npt.NDArray[np.bool_]
    rep_x: npt.NDArray[np.uint8]
    rep_z: npt.NDArray[np.uint8]

    def __len__(self) -> int:
        return int(self.present.sum())

    def __contains__(self, syndrome) -> bool:
        key = int(syndrome_keys(syndrome)[0])
        return bool(self.present[key])

    def lookup(self, syndrome: npt.ArrayLike) -> PauliOperator:
        s = np.asarray(syndrome, dtype=np.uint8).ravel()
        if s.size != self.r:
            raise ValueError(f"syndrome length {s.size} != {self.r}")
        key = int(syndrome_keys(s)[0])
        if not self.present[key]:
            raise ValueError(f"syndrome {s.tolist()} is not attainable")
        return PauliOperator(self.rep_x[key], self.rep_z[key])

    def lookup_batch(self, syndromes: npt.ArrayLike) -> tuple[npt.NDArray[np.uint8], npt.NDArray[np.uint8]]:
        s = np.atleast_2d(np.asarray(syndromes, dtype=np.uint8))
        if s.shape[1] != self.r:
            raise ValueError(f"syndrome length {s.shape[1]} != {self.r}")
        keys = syndrome_keys(s)
        if not self.present[keys].all():
            raise ValueError("batch contains an unattainable syndrome")
        return self.rep_x[keys], self.rep_z[keys]

    def items(self):
        """``(syndrome bits, representative)`` pairs in increasing key order."""
        for key in np.flatnonzero(self.present):
            bits = ((int(key) >> np.arange(self.r)) & 1).astype(np.uint8)
            yield bits, PauliOperator(self.rep_x[key], self.rep_z[key])


def _check_size(code: StabilizerCode) -> None:
    if code.n > MAX_QUBITS or code.r > MAX_CHECKS:
        raise ResourceLimitError(
            f"exhaustive decoding needs n <= {MAX_QUBITS} and r <= {MAX_CHECKS}, got n={code.n}, r={code.r}"
        )
    if code.r + 2 * code.k > MAX_COSET_BITS:
        raise ResourceLimitError(
            f"coset table would need 2^{code.r + 2 * code.k} entries (limit 2^{MAX_COSET_BITS})"
        )


def _linear_table(per_qubit: npt.NDArray[np.int64], n: int) -> npt.NDArray[np.int64]:
    """Value of a GF(2)-linear map on every n-bit word (qubit ``j`` is bit ``n-1-j``)."""
    table = np.zeros(1 << n, dtype=np.int64)
    for b in range(n):
        j = n - 1 - b
        table[1 << b : 1 << (b + 1)] = table[: 1 << b] ^ per_qubit[j]
    return table


def _bits_to_keys(rows: npt.NDArray[np.uint8]) -> npt.NDArray[np.int64]:
    """Per-column little-endian integer over the rows of ``rows``."""
    if rows.shape[0] == 0:
        return np.zeros(rows.shape[1], dtype=np.int64)
    weights = np.int64(1) << np.arange(rows.shape[0], dtype=np.int64)
    return (rows.astype(np.int64) * weights[:, None]).sum(axis=0)


def signature_probabilities(ch: PauliChannel, n: int) -> list[Fraction]:
    """Exact probability of one error with ``(nx, ny, nz)`` letters, flattened by :func:`_signature`."""
    p_i, p_x, p_y, p_z = (Fraction(p) for p in ch.probabilities)
    size = n + 1
    out = [Fraction(0)] * size**3
    for nx in range(size):
        for ny in range(size - nx):
            for nz in range(size - nx - ny):
                out[(nx * size + ny) * size + nz] = p_i ** (n - nx - ny - nz) * p_x**nx * p_y**ny * p_z**nz
    return out


def _signature(nx, ny, nz, n: int):
    size = n + 1
    return (nx * size + ny) * size + nz


@dataclass
class _Tables:
    n: int
    r: int
    k: int
    sx: npt.NDArray[np.int64]
    sz: npt.NDArray[np.int64]
    cx: npt.NDArray[np.int64]
    cz: npt.NDArray[np.int64]

    @classmethod
    def build(cls, code: StabilizerCode) -> _Tables:
        n = code.n
        hx, hz = code.check.hx.to_dense(), code.check.hz.to_dense()
        logic = code.logical_matrix
        return cls(
            n, code.r, code.k,
            _linear_table(_bits_to_keys(hz), n),
            _linear_table(_bits_to_keys(hx), n),
            _linear_table(_bits_to_keys(logic[:, n:]), n),
            _linear_table(_bits_to_keys(logic[:, :n]), n),
        )

    def chunks(self):
        """Yield ``(index, syndrome key, class, signature, weight)`` arrays covering all 4^n errors."""
        n = self.n
        zi = np.arange(1 << n, dtype=np.int64)
        pz = np.bitwise_count(zi).astype(np.int64)
        step = max(1, _CHUNK >> n)
        for lo in range(0, 1 << n, step):
            xi = np.arange(lo, min(lo + step, 1 << n), dtype=np.int64)
            px = np.bitwise_count(xi).astype(np.int64)
            ny = np.bitwise_count(xi[:, None] & zi[None, :]).astype(np.int64)
            nx = px[:, None] - ny
            nz = pz[None, :] - ny
            idx = (xi[:, None] << n) | zi[None, :]
            syn = self.sx[xi][:, None] ^ self.sz[None, :]
            cls = self.cx[xi][:, None] ^ self.cz[None, :]
            yield (idx.ravel(), syn.ravel(), cls.ravel(),
                   _signature(nx, ny, nz, n).ravel(), (nx + ny + nz).ravel())

    def decode_index(self, idx: npt.NDArray[np.int64]) -> tuple[npt.NDArray[np.uint8], npt.NDArray[np.uint8]]:
        n = self.n
        shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
        x = ((idx[:, None] >> (shifts + n)) & 1).astype(np.uint8)
        z = ((idx[:, None] >> shifts) & 1).astype(np.uint8)
        return x, z


def _make_table(t: _Tables, present: npt.NDArray[np.bool_], rep_idx: npt.NDArray[np.int64]) -> CosetTable:
    x, z = t.decode_index(np.where(present, rep_idx, 0))
    x[~present] = 0
    z[~present] = 0
    for arr in (present, x, z):
        arr.setflags(write=False)
    return CosetTable(t.n, t.r, present, x, z)


def build_ml_error_table(code: StabilizerCode, ch: PauliChannel) -> CosetTable:
    """Most probable single error per syndrome; ties go to the lexicographically smallest."""
    _check_size(code)
    t = _Tables.build(code)
    exact = signature_probabilities(ch, code.n)
    # Rank signatures by exact probability (rank 0 = most probable, equal values share a rank).
    distinct = sorted(set(exact), reverse=True)
    rank_of = {p: i for i, p in enumerate(distinct)}
    sig_rank = np.array([rank_of[p] for p in exact], dtype=np.int64)
    span = np.int64(1) << (2 * code.n)
    sentinel = np.iinfo(np.int64).max
    best = np.full(1 << code.r, sentinel, dtype=np.int64)
    for idx, syn, _cls, sig, _w in t.chunks():
        np.minimum.at(best, syn, sig_rank[sig] * span + idx)
    present = best != sentinel
    return _make_table(t, present, best % span)


def build_ml_coset_table(code: StabilizerCode, ch: PauliChannel) -> CosetTable:
    """Most probable logical coset per syndrome, represented by its lightest member.

    A coset's score is the total channel probability of its members. Scores
    within a relative ``TIE_RTOL`` of the best are re-scored exactly with
    rationals when ``n <= EXACT_TIE_QUBITS``; remaining exact ties (and exact
    float ties for larger n) go to the coset whose lightest member is smallest
    by (weight, lexicographic vector).
    """
    _check_size(code)
    t = _Tables.build(code)
    n, k = code.n, code.k
    exact = signature_probabilities(ch, n)
    prob = np.array([float(p) for p in exact])
    span = np.int64(1) << (2 * n)
    slots = 1 << (code.r + 2 * k)
    sentinel = np.iinfo(np.int64).max
    sums = np.zeros(slots)
    lightest = np.full(slots, sentinel, dtype=np.int64)
    for idx, syn, cls, sig, w in t.chunks():
        key = (syn << (2 * k)) | cls
        sums += np.bincount(key, weights=prob[sig], minlength=slots)
        np.minimum.at(lightest, key, w * span + idx)

    sums = sums.reshape(1 << code.r, 1 << (2 * k))
    lightest = lightest.reshape(sums.shape)
    member = lightest != sentinel
    present = member.any(axis=1)
    scores = np.where(member, sums, -1.0)
    top = scores.max(axis=1, keepdims=True)
    rtol = TIE_RTOL if n <= EXACT_TIE_QUBITS else 0.0
    tied = member & (scores >= top * (1 - rtol))
    if n <= EXACT_TIE_QUBITS and np.any(tied.sum(axis=1) > 1):
        tied = _exact_ties(t, tied, exact)
    # Among the (now exactly) tied cosets, prefer the one with the lightest member.
    winner = np.argmin(np.where(tied, lightest, sentinel), axis=1)
    rep = lightest[np.arange(sums.shape[0]), winner] % span
    return _make_table(t, present, rep)


def _exact_ties(t: _Tables, tied: npt.NDArray[np.bool_], exact: list[Fraction]) -> npt.NDArray[np.bool_]:
    """Narrow near-tied cosets to those whose exact rational score is maximal."""
    k2 = 2 * t.k
    rows = np.flatnonzero(tied.sum(axis=1) > 1)
    cand = np.zeros(tied.shape, dtype=bool)
    cand[rows] = tied[rows]
    slot_of = np.full(cand.size, -1, dtype=np.int64)
    flat = np.flatnonzero(cand.ravel())
    slot_of[flat] = np.arange(flat.size)
    nsig = len(exact)
    hist = np.zeros(flat.size * nsig, dtype=np.int64)
    for _idx, syn, cls, sig, _w in t.chunks():
        slot = slot_of[(syn << k2) | cls]
        keep = slot >= 0
        hist += np.bincount(slot[keep] * nsig + sig[keep], minlength=hist.size)
    hist = hist.reshape(flat.size, nsig)
    score = {}
    for i, key in enumerate(flat):
        nz = np.flatnonzero(hist[i])
        score[int(key)] = sum((int(hist[i, s]) * exact[s] for s in nz), Fraction(0))
    out = tied.copy()
    width = tied.shape[1]
    for row in rows:
        keys = [row * width + c for c in np.flatnonzero(tied[row])]
        best = max(score[key] for key in keys)
        for key in keys:
            out[row, key % width] = score[key] == best
    return out
