"""Slow reference implementations used as test oracles.

Nothing here imports the package: Paulis are letter strings, GF(2) rows are
Python ints, and operators are dense complex matrices.
"""

from __future__ import annotations

import itertools
from functools import reduce

import numpy as np

I2 = np.eye(2, dtype=complex)
MATS = {
    "I": I2,
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def dense(letters: str, phase_exp: int = 0) -> np.ndarray:
    return (1j**phase_exp) * reduce(np.kron, [MATS[c] for c in letters])


def letters_commute(a: str, b: str) -> bool:
    clashes = sum(1 for p, q in zip(a, b) if p != "I" and q != "I" and p != q)
    return clashes % 2 == 0


def to_row(letters: str) -> int:
    """Symplectic row as an int: bit j is x_j, bit n+j is z_j."""
    n = len(letters)
    v = 0
    for j, c in enumerate(letters):
        if c in "XY":
            v |= 1 << j
        if c in "ZY":
            v |= 1 << (n + j)
    return v


def int_rank(rows) -> int:
    basis: dict[int, int] = {}
    for v in rows:
        while v:
            top = v.bit_length() - 1
            if top not in basis:
                basis[top] = v
                break
            v ^= basis[top]
    return len(basis)


def matrix_rank(dense_rows) -> int:
    return int_rank(int("".join(str(int(b)) for b in row[::-1]) or "0", 2) for row in np.asarray(dense_rows))


def in_span(gens_rows, v: int) -> bool:
    return int_rank(list(gens_rows) + [v]) == int_rank(gens_rows)


def paulis_of_weight(n: int, w: int):
    for support in itertools.combinations(range(n), w):
        for letters in itertools.product("XYZ", repeat=w):
            out = ["I"] * n
            for q, a in zip(support, letters):
                out[q] = a
            yield "".join(out)


def all_paulis(n: int):
    for t in itertools.product("IXYZ", repeat=n):
        yield "".join(t)


def brute_distance(gens: list[str], max_weight: int | None = None) -> int | None:
    """Least weight of a Pauli that commutes with all generators but is not in their group."""
    n = len(gens[0])
    rows = [to_row(g) for g in gens]
    for w in range(1, (max_weight or n) + 1):
        for p in paulis_of_weight(n, w):
            if all(letters_commute(p, g) for g in gens) and not in_span(rows, to_row(p)):
                return w
    return None


def brute_min_stabilizer_weight(gens: list[str]) -> int:
    """Least weight over all nonidentity products of the generators (by subset enumeration)."""
    n = len(gens[0])
    rows = [to_row(g) for g in gens]
    best = n + 1
    for mask in range(1, 1 << len(rows)):
        v = 0
        for i, r in enumerate(rows):
            if mask >> i & 1:
                v ^= r
        if v:
            support = (v | (v >> n)) & ((1 << n) - 1)
            best = min(best, bin(support).count("1"))
    return best


def letters_of(x, z) -> str:
    return "".join("IXZY"[int(a) + 2 * int(b)] for a, b in zip(x, z))
