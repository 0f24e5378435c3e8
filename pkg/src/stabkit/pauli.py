"""n-qubit Pauli operators in the binary symplectic picture.

An operator is stored as ``i**phase_exp * E(x, z)`` where
``E(x, z) = ⊗_j i**(x_j z_j) X**x_j Z**z_j``. The ``i**(x_j z_j)`` factor makes
every ``E`` Hermitian, so the letter ``Y`` is exactly ``E(1, 1)``.
"""

from __future__ import annotations

import re
from functools import reduce

import numpy as np
import numpy.typing as npt

_LETTERS = "IXZY"  # indexed by x + 2*z
_LETTER_BITS = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}
_PHASE_TEXT = {0: "", 1: "i", 2: "-", 3: "-i"}
_PHASE_PARSE = {"": 0, "+": 0, "+1": 0, "1": 0, "i": 1, "+i": 1, "-": 2, "-1": 2, "-i": 3}
_TOKEN = re.compile(r"^([IXYZ])(\d+)$")

_SINGLE = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def _bits(v: npt.ArrayLike, n: int | None = None) -> npt.NDArray[np.uint8]:
    arr = np.array(v, dtype=np.uint8).ravel() & 1
    if n is not None and arr.shape[0] != n:
        raise ValueError(f"expected {n} bits, got {arr.shape[0]}")
    arr.setflags(write=False)
    return arr


class PauliOperator:
    """Immutable ``i**phase_exp * E(x_bits, z_bits)`` on ``n`` qubits."""

    __slots__ = ("n", "x_bits", "z_bits", "phase_exp")

    def __init__(self, x_bits: npt.ArrayLike, z_bits: npt.ArrayLike, phase_exp: int = 0):
        x = _bits(x_bits)
        z = _bits(z_bits)
        if x.shape != z.shape:
            raise ValueError(f"x_bits has length {x.shape[0]} but z_bits has {z.shape[0]}")
        self.n = int(x.shape[0])
        self.x_bits = x
        self.z_bits = z
        self.phase_exp = int(phase_exp) % 4

    @classmethod
    def identity(cls, n: int) -> PauliOperator:
        return cls(np.zeros(n, np.uint8), np.zeros(n, np.uint8))

    @classmethod
    def from_letters(cls, letters: str, phase_exp: int = 0) -> PauliOperator:
        """Dense letter string, e.g. ``"XIZY"`` (qubit 1 first)."""
        try:
            pairs = [_LETTER_BITS[c] for c in letters.upper()]
        except KeyError as exc:
            raise ValueError(f"bad Pauli letter {exc.args[0]!r}") from None
        x, z = zip(*pairs) if pairs else ((), ())
        return cls(np.array(x, np.uint8), np.array(z, np.uint8), phase_exp)

    @classmethod
    def from_string(cls, text: str, n: int) -> PauliOperator:
        """Parse the sparse grammar ``"[phase] X1 Y3 Z7"`` (1-indexed; ``I`` alone is identity)."""
        tokens = text.split()
        phase = 0
        if tokens and tokens[0] in _PHASE_PARSE:
            phase = _PHASE_PARSE[tokens.pop(0)]
        elif tokens:
            m = re.match(r"^([+-]?i?)([IXYZ].*)$", tokens[0])
            if m and m.group(1):
                phase = _PHASE_PARSE[m.group(1)]
                tokens[0] = m.group(2)
        x = np.zeros(n, np.uint8)
        z = np.zeros(n, np.uint8)
        if tokens == ["I"]:
            return cls(x, z, phase)
        if not tokens:
            raise ValueError("empty Pauli string")
        seen = set()
        for tok in tokens:
            m = _TOKEN.match(tok)
            if not m:
                raise ValueError(f"bad Pauli token {tok!r}")
            q = int(m.group(2))
            if not 1 <= q <= n:
                raise ValueError(f"qubit index {q} outside 1..{n}")
            if q in seen:
                raise ValueError(f"qubit {q} listed twice")
            seen.add(q)
            x[q - 1], z[q - 1] = _LETTER_BITS[m.group(1)]
        return cls(x, z, phase)

    @classmethod
    def from_symplectic(cls, v: npt.ArrayLike, n: int) -> PauliOperator:
        vec = _bits(v)
        if vec.shape[0] != 2 * n:
            raise ValueError(f"symplectic vector has length {vec.shape[0]}, expected {2 * n}")
        return cls(vec[:n], vec[n:])

    def to_symplectic(self) -> npt.NDArray[np.uint8]:
        """``[x | z]`` as one length-2n vector."""
        return np.concatenate([self.x_bits, self.z_bits])

    @property
    def letters(self) -> str:
        return "".join(_LETTERS[x + 2 * z] for x, z in zip(self.x_bits, self.z_bits))

    def weight(self) -> int:
        return int(np.count_nonzero(self.x_bits | self.z_bits))

    def support(self) -> list[int]:
        return np.flatnonzero(self.x_bits | self.z_bits).tolist()

    def with_phase(self, phase_exp: int) -> PauliOperator:
        return PauliOperator(self.x_bits, self.z_bits, phase_exp)

    def to_matrix(self) -> npt.NDArray[np.complex128]:
        """Dense ``2**n x 2**n`` matrix; qubit 1 is the leftmost Kronecker factor."""
        mats = [_SINGLE[c] for c in self.letters]
        dense = reduce(np.kron, mats, np.ones((1, 1), dtype=complex))
        return (1j**self.phase_exp) * dense

    def __mul__(self, other: PauliOperator) -> PauliOperator:
        return multiply(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PauliOperator):
            return NotImplemented
        return (
            self.phase_exp == other.phase_exp
            and np.array_equal(self.x_bits, other.x_bits)
            and np.array_equal(self.z_bits, other.z_bits)
        )

    def __hash__(self) -> int:
        return hash((self.phase_exp, self.x_bits.tobytes(), self.z_bits.tobytes()))

    def __str__(self) -> str:
        terms = [f"{c}{j + 1}" for j, c in enumerate(self.letters) if c != "I"]
        body = " ".join(terms) if terms else "I"
        prefix = _PHASE_TEXT[self.phase_exp]
        return f"{prefix} {body}" if prefix else body

    def __repr__(self) -> str:
        return f"PauliOperator({_PHASE_TEXT[self.phase_exp] or '+'}{self.letters})"


def _check_same_n(p: PauliOperator, q: PauliOperator) -> None:
    if p.n != q.n:
        raise ValueError(f"qubit counts differ: {p.n} vs {q.n}")


def symplectic_product(p: PauliOperator, q: PauliOperator) -> int:
    """``c·bᵀ + a·dᵀ mod 2`` for ``p = [a|b]``, ``q = [c|d]``."""
    _check_same_n(p, q)
    return int((np.sum(q.x_bits & p.z_bits) + np.sum(p.x_bits & q.z_bits)) & 1)


def commutes(p: PauliOperator, q: PauliOperator) -> bool:
    return symplectic_product(p, q) == 0


def multiply(p: PauliOperator, q: PauliOperator) -> PauliOperator:
    """Matrix product ``p · q`` with the phase tracked exactly."""
    _check_same_n(p, q)
    a = p.x_bits.astype(np.int64)
    b = p.z_bits.astype(np.int64)
    c = q.x_bits.astype(np.int64)
    d = q.z_bits.astype(np.int64)
    # Per qubit: i^{ab} X^a Z^b · i^{cd} X^c Z^d
    #   = i^{ab + cd} (-1)^{bc} X^{a⊕c} Z^{b⊕d}
    #   = i^{ab + cd + 2bc - (a⊕c)(b⊕d)} E(a⊕c, b⊕d)
    x = a ^ c
    z = b ^ d
    local = int(np.sum(a * b + c * d + 2 * b * c - x * z))
    return PauliOperator(x, z, p.phase_exp + q.phase_exp + local)


def weight(p: PauliOperator) -> int:
    return p.weight()


def to_symplectic(p: PauliOperator) -> npt.NDArray[np.uint8]:
    return p.to_symplectic()


def from_symplectic(v: npt.ArrayLike, n: int) -> PauliOperator:
    return PauliOperator.from_symplectic(v, n)
