"""Flooding belief propagation and normalized min-sum on a Tanner graph.

Messages are log-likelihood ratios ``log P(0)/P(1)``. A batch of syndromes is
decoded in lock-step; a row stops updating as soon as its hard decision
reproduces its syndrome, so each row behaves exactly as if decoded alone.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

import numpy as np
import numpy.typing as npt
import scipy.sparse as sp

from ..gf2 import BitMatrix

Variant = Literal["sum_product", "min_sum"]

LLR_CLIP = 30.0
_TANH_CLIP = 1.0 - 1e-15


@dataclass(frozen=True)
class TannerGraph:
    """Bipartite check/variable adjacency of a parity-check matrix."""

    check_count: int
    var_count: int
    check_vars: tuple[tuple[int, ...], ...]
    var_checks: tuple[tuple[int, ...], ...]
    edge_check: npt.NDArray[np.intp] = field(repr=False)
    edge_var: npt.NDArray[np.intp] = field(repr=False)

    @classmethod
    def from_matrix(cls, h: BitMatrix | npt.ArrayLike) -> TannerGraph:
        dense = h.to_dense() if isinstance(h, BitMatrix) else np.asarray(h, dtype=np.uint8)
        m, n = dense.shape
        edge_check, edge_var = np.nonzero(dense)  # row-major: grouped by check
        check_vars = tuple(tuple(np.flatnonzero(dense[c]).tolist()) for c in range(m))
        var_checks = tuple(tuple(np.flatnonzero(dense[:, v]).tolist()) for v in range(n))
        return cls(m, n, check_vars, var_checks, edge_check, edge_var)

    @property
    def edge_count(self) -> int:
        return int(self.edge_check.size)

    def matrix(self) -> npt.NDArray[np.uint8]:
        out = np.zeros((self.check_count, self.var_count), dtype=np.uint8)
        out[self.edge_check, self.edge_var] = 1
        return out

    def _incidence(self) -> tuple[sp.csr_matrix, sp.csr_matrix]:
        e = self.edge_count
        ones = np.ones(e)
        to_var = sp.csr_matrix((ones, (np.arange(e), self.edge_var)), shape=(e, self.var_count))
        to_check = sp.csr_matrix((ones, (np.arange(e), self.edge_check)), shape=(e, self.check_count))
        return to_var, to_check


def _edge_sums(values: npt.NDArray[np.float64], incidence: sp.csr_matrix) -> npt.NDArray[np.float64]:
    """Row-wise sums of per-edge ``values`` (B x E) grouped by node: B x nodes."""
    return np.asarray((incidence.T @ values.T).T)


def _syndromes(h: npt.NDArray[np.uint8], est: npt.NDArray[np.uint8]) -> npt.NDArray[np.uint8]:
    return ((est.astype(np.int64) @ h.T.astype(np.int64)) & 1).astype(np.uint8)


def bp_decode_batch(
    g: TannerGraph,
    syndromes: npt.ArrayLike,
    prior: float | npt.ArrayLike,
    max_iter: int,
    variant: Variant = "sum_product",
    norm: float = 0.75,
) -> tuple[npt.NDArray[np.uint8], npt.NDArray[np.bool_], npt.NDArray[np.int64]]:
    """Decode each row of ``syndromes``; returns (estimates, converged, iterations)."""
    synd = np.atleast_2d(np.asarray(syndromes, dtype=np.uint8))
    if synd.shape[1] != g.check_count:
        raise ValueError(f"syndrome length {synd.shape[1]} != {g.check_count} checks")
    if max_iter < 1:
        raise ValueError(f"max_iter must be >= 1, got {max_iter}")
    if variant not in ("sum_product", "min_sum"):
        raise ValueError(f"unknown BP variant {variant!r}")
    p = np.broadcast_to(np.asarray(prior, dtype=float), (g.var_count,))
    if np.any(p <= 0) or np.any(p >= 0.5):
        raise ValueError("prior must lie strictly between 0 and 1/2")
    llr0 = np.log((1 - p) / p)

    batch = synd.shape[0]
    h = g.matrix()
    est = np.zeros((batch, g.var_count), dtype=np.uint8)
    iterations = np.zeros(batch, dtype=np.int64)
    # The all-zero hard decision of the prior is iteration 0.
    converged = ~synd.any(axis=1)
    active = np.flatnonzero(~converged)
    if active.size == 0 or g.edge_count == 0:
        if g.edge_count == 0:
            iterations[active] = max_iter
        return est, converged, iterations

    to_var, to_check = g._incidence()
    ec, ev = g.edge_check, g.edge_var
    starts = np.flatnonzero(np.r_[True, ec[1:] != ec[:-1]])
    seg = np.cumsum(np.r_[0, (ec[1:] != ec[:-1]).astype(np.int64)])

    s_edge = synd[active][:, ec].astype(np.int64)
    m_vc = np.tile(llr0[ev], (active.size, 1))
    for it in range(1, max_iter + 1):
        if variant == "sum_product":
            t = np.tanh(m_vc / 2)
            neg = (t < 0).astype(float)
            logabs = np.log(np.maximum(np.abs(t), 1e-300))
            excl = _edge_sums(logabs, to_check)[:, ec] - logabs
            negs = np.rint(_edge_sums(neg, to_check)[:, ec] - neg).astype(np.int64)
            mag = np.minimum(np.exp(excl), _TANH_CLIP)
            m_cv = np.where((negs + s_edge) & 1, -1.0, 1.0) * 2 * np.arctanh(mag)
        else:
            mag = np.abs(m_vc)
            neg = (m_vc < 0).astype(np.int64)
            min1 = np.minimum.reduceat(mag, starts, axis=1)[:, seg]
            is_min = mag == min1
            count = np.add.reduceat(is_min.astype(np.int64), starts, axis=1)[:, seg]
            min2 = np.minimum.reduceat(np.where(is_min, np.inf, mag), starts, axis=1)[:, seg]
            excl = np.where(is_min & (count == 1), min2, min1)
            negs = np.add.reduceat(neg, starts, axis=1)[:, seg] - neg
            m_cv = np.where((negs + s_edge) & 1, -1.0, 1.0) * norm * np.minimum(excl, LLR_CLIP)
        m_cv = np.clip(m_cv, -LLR_CLIP, LLR_CLIP)
        total = llr0 + _edge_sums(m_cv, to_var)
        hard = (total < 0).astype(np.uint8)  # LLR exactly 0 decides "no error"
        ok = np.all(_syndromes(h, hard) == synd[active], axis=1)
        est[active] = hard
        iterations[active] = it
        converged[active[ok]] = True
        if ok.all():
            break
        keep = ~ok
        active = active[keep]
        s_edge = s_edge[keep]
        m_vc = (total[keep][:, ev] - m_cv[keep])
    return est, converged, iterations


def bp_decode(
    g: TannerGraph,
    syndrome: npt.ArrayLike,
    prior: float | npt.ArrayLike,
    max_iter: int,
    variant: Variant = "sum_product",
    norm: float = 0.75,
) -> tuple[npt.NDArray[np.uint8], bool, int]:
    """Single-syndrome wrapper around :func:`bp_decode_batch`."""
    s = np.asarray(syndrome, dtype=np.uint8).ravel()
    est, conv, its = bp_decode_batch(g, s[None, :], prior, max_iter, variant, norm)
    return est[0], bool(conv[0]), int(its[0])
