"""Exhaustive weight-level search for low-weight vectors with zero syndrome.

Every position carries ``q`` options (the letters X, Y, Z for qubits, a single
flip for classical bits). Each option has a syndrome key and a tag, both bit
vectors packed into 64-bit words; a set of options on distinct positions has
the XOR of its members' keys and tags. A weight-``w`` set is found by splitting
its sorted support into a lower part of size ``w // 2`` and an upper part,
enumerating both halves and joining them on equal keys. This visits exactly
the same candidate space as listing all ``C(n, w) q**w`` sets, at roughly the
square-root cost.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import comb
from typing import Literal

import numpy as np
import numpy.typing as npt

from .errors import ResourceLimitError

TagRule = Literal["nonzero", "zero", "any"]

DEFAULT_BUDGET = 200_000_000
_PAIR_CHUNK = 2_000_000

U64 = npt.NDArray[np.uint64]


def candidate_count(n: int, w: int, q: int) -> int:
    return comb(n, w) * q**w


@dataclass(frozen=True)
class _Sets:
    pos: npt.NDArray[np.int64]  # (N, m) sorted positions
    opt: npt.NDArray[np.int64]  # (N, m)
    key: U64  # (N, W)
    tag: U64  # (N, T)
    hsh: U64  # (N,)


class WeightSearch:
    """Join-based enumeration over one fixed table of option keys and tags."""

    def __init__(self, keys: U64, tags: U64, seed: int = 0x5EED):
        # keys: (n, q, W); tags: (n, q, T)
        self.keys = np.asarray(keys, dtype=np.uint64)
        self.tags = np.asarray(tags, dtype=np.uint64)
        self.n, self.q, self.kw = self.keys.shape
        # GF(2)-linear 64-bit fingerprint of the key; XOR-compatible by construction.
        rng = np.random.default_rng(seed)
        nbits = self.kw * 64
        proj = rng.integers(0, 2**63, size=nbits, dtype=np.uint64) * np.uint64(2) + rng.integers(
            0, 2, size=nbits, dtype=np.uint64
        )
        flat = self.keys.reshape(-1, self.kw)
        bits = np.unpackbits(flat.astype("<u8").view(np.uint8), axis=1, bitorder="little")
        h = np.zeros(flat.shape[0], dtype=np.uint64)
        for j in np.flatnonzero(bits.any(axis=0)):
            h[bits[:, j].astype(bool)] ^= proj[j]
        self.hashes = h.reshape(self.n, self.q)
        self._cache: dict[int, _Sets] = {}

    def _sets(self, m: int) -> _Sets:
        if m in self._cache:
            return self._cache[m]
        n, q = self.n, self.q
        if m == 0:
            combos = np.zeros((1, 0), dtype=np.int64)
            opts = np.zeros((1, 0), dtype=np.int64)
        else:
            combos = np.array(list(itertools.combinations(range(n), m)), dtype=np.int64)
            opts = np.array(list(itertools.product(range(q), repeat=m)), dtype=np.int64)
        nc, no = combos.shape[0], opts.shape[0]
        key = np.zeros((nc, no, self.kw), dtype=np.uint64)
        tag = np.zeros((nc, no, self.tags.shape[2]), dtype=np.uint64)
        hsh = np.zeros((nc, no), dtype=np.uint64)
        for j in range(m):
            p = combos[:, j][:, None]
            o = opts[:, j][None, :]
            key ^= self.keys[p, o]
            tag ^= self.tags[p, o]
            hsh ^= self.hashes[p, o]
        sets = _Sets(
            pos=np.repeat(combos, no, axis=0),
            opt=np.tile(opts, (nc, 1)),
            key=key.reshape(nc * no, -1),
            tag=tag.reshape(nc * no, -1),
            hsh=hsh.reshape(-1),
        )
        self._cache[m] = sets
        return sets

    def level(self, w: int, rule: TagRule, workers: int = 1) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
        """Smallest (support, options) of weight ``w`` with zero key and the tag rule, if any."""
        if w < 1 or w > self.n:
            return None
        lo_sets = self._sets(w // 2)
        hi_sets = self._sets(w - w // 2)
        order = np.argsort(hi_sets.hsh, kind="stable")
        hi_sorted = hi_sets.hsh[order]
        lo_max = lo_sets.pos[:, -1] if lo_sets.pos.shape[1] else np.full(len(lo_sets.hsh), -1)
        hi_min = hi_sets.pos[:, 0]
        left = np.searchsorted(hi_sorted, lo_sets.hsh, side="left")
        right = np.searchsorted(hi_sorted, lo_sets.hsh, side="right")
        counts = right - left
        # Chunk the lower half so that no chunk expands into too many pairs.
        bounds = [0]
        running = 0
        for i, c in enumerate(counts):
            running += int(c)
            if running >= _PAIR_CHUNK:
                bounds.append(i + 1)
                running = 0
        if bounds[-1] != len(counts):
            bounds.append(len(counts))

        def run(chunk: tuple[int, int]):
            a, b = chunk
            cnt = counts[a:b]
            total = int(cnt.sum())
            if total == 0:
                return None
            ia = np.repeat(np.arange(a, b), cnt)
            starts = np.repeat(left[a:b], cnt)
            offs = np.arange(total) - np.repeat(np.cumsum(cnt) - cnt, cnt)
            ib = order[starts + offs]
            keep = lo_max[ia] < hi_min[ib]
            keep &= np.all(lo_sets.key[ia] == hi_sets.key[ib], axis=1)
            if rule != "any":
                nonzero = np.any(lo_sets.tag[ia] ^ hi_sets.tag[ib], axis=1)
                keep &= nonzero if rule == "nonzero" else ~nonzero
            ia, ib = ia[keep], ib[keep]
            if ia.size == 0:
                return None
            pos = np.hstack([lo_sets.pos[ia], hi_sets.pos[ib]])
            opt = np.hstack([lo_sets.opt[ia], hi_sets.opt[ib]])
            idx = np.lexsort(np.hstack([pos, opt])[:, ::-1].T)[0]
            return tuple(pos[idx].tolist()), tuple(opt[idx].tolist())

        chunks = list(zip(bounds[:-1], bounds[1:]))
        if workers > 1 and len(chunks) > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(run, chunks))
        else:
            results = [run(c) for c in chunks]
        hits = [r for r in results if r is not None]
        return min(hits) if hits else None

    def first_weight(
        self,
        max_weight: int,
        rule: TagRule,
        *,
        budget: int = DEFAULT_BUDGET,
        workers: int = 1,
    ) -> tuple[int, tuple[int, ...], tuple[int, ...]] | None:
        """Least weight ``<= max_weight`` with a hit, plus its witness."""
        spent = 0
        for w in range(1, max_weight + 1):
            spent += candidate_count(self.n, w, self.q)
            if spent > budget:
                raise ResourceLimitError(
                    f"weight-{w} search needs {spent} candidate evaluations (budget {budget})"
                )
            hit = self.level(w, rule, workers=workers)
            if hit is not None:
                return (w, *hit)
        return None


def pack_bits(dense: npt.ArrayLike) -> U64:
    """Pack the last axis of a 0/1 array into 64-bit words (at least one word)."""
    arr = np.asarray(dense, dtype=np.uint8)
    lead = arr.shape[:-1]
    flat = arr.reshape(-1, arr.shape[-1])
    nw = max(1, (flat.shape[1] + 63) // 64)
    padded = np.zeros((flat.shape[0], nw * 64), dtype=np.uint8)
    padded[:, : flat.shape[1]] = flat
    words = np.packbits(padded, axis=1, bitorder="little").view("<u8").astype(np.uint64)
    return words.reshape(*lead, nw)
