"""Code families: classical components, CSS, Steane, Shor, surface, toric,
hypergraph product, lifted product and concatenation."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from . import gf2
from ._search import DEFAULT_BUDGET
from .distance import classical_search
from .errors import CodeError
from .gf2 import BitMatrix
from .pauli import PauliOperator
from .stabilizer import CheckMatrix, StabilizerCode, validate


@dataclass(frozen=True)
class ClassicalCode:
    """Binary linear code given by an ``m x n`` parity-check matrix (rows may be dependent)."""

    h: BitMatrix

    def __post_init__(self):
        if self.h.cols == 0:
            raise CodeError("parity-check matrix needs at least one column")

    @classmethod
    def from_dense(cls, h: npt.ArrayLike) -> ClassicalCode:
        return cls(BitMatrix.from_dense(np.atleast_2d(np.asarray(h, dtype=np.uint8))))

    @property
    def n(self) -> int:
        return self.h.cols

    @property
    def m(self) -> int:
        return self.h.rows

    @property
    def k(self) -> int:
        return self.n - gf2.rank(self.h)

    def transpose(self) -> ClassicalCode:
        """The code whose parity-check matrix is ``hᵀ``."""
        return ClassicalCode(self.h.T)


def repetition(L: int) -> ClassicalCode:
    if L < 2:
        raise CodeError(f"repetition code needs L >= 2, got {L}")
    h = np.zeros((L - 1, L), dtype=np.uint8)
    idx = np.arange(L - 1)
    h[idx, idx] = 1
    h[idx, idx + 1] = 1
    return ClassicalCode.from_dense(h)


def hamming_7_4() -> ClassicalCode:
    # Column j (1-based) is j in binary, most significant bit in row 0.
    cols = np.arange(1, 8)
    h = np.array([(cols >> s) & 1 for s in (2, 1, 0)], dtype=np.uint8)
    return ClassicalCode.from_dense(h)


def classical_distance(
    c: ClassicalCode, max_weight: int | None = None, *, budget: int = DEFAULT_BUDGET
) -> int | None:
    """Minimum weight of a nonzero codeword; ``None`` for a trivial kernel or none up to ``max_weight``."""
    if c.k == 0:
        return None
    bound = c.n if max_weight is None else min(max_weight, c.n)
    hit = classical_search(c.h).first_weight(bound, "any", budget=budget)
    return None if hit is None else hit[0]


def _css_from_blocks(hx_block: BitMatrix, hz_block: BitMatrix) -> StabilizerCode:
    """X-type rows first, then Z-type rows."""
    n = hx_block.cols
    zx = BitMatrix.zeros(hx_block.rows, n)
    zz = BitMatrix.zeros(hz_block.rows, n)
    check = CheckMatrix(gf2.vstack([hx_block, zz]), gf2.vstack([zx, hz_block]))
    return validate(check, allow_redundant=True)


def css(h1: ClassicalCode, h2: ClassicalCode) -> StabilizerCode:
    """CSS code with X-checks from ``h1`` and Z-checks from ``h2``; needs ``h2 h1ᵀ = 0``."""
    if h1.n != h2.n:
        raise CodeError(f"component lengths differ: {h1.n} vs {h2.n}")
    overlap = (h2.h.to_dense().astype(np.int64) @ h1.h.to_dense().T.astype(np.int64)) & 1
    if overlap.any():
        i, j = (int(v) for v in np.argwhere(overlap)[0])
        raise CodeError(f"h2 row {i} and h1 row {j} have odd overlap (h2·h1ᵀ != 0)")
    return _css_from_blocks(h1.h, h2.h)


def steane() -> StabilizerCode:
    h = hamming_7_4()
    return css(h, h)


SHOR_GENERATORS = (
    "Z1 Z2",
    "Z2 Z3",
    "Z4 Z5",
    "Z5 Z6",
    "Z7 Z8",
    "Z8 Z9",
    "X1 X2 X3 X4 X5 X6",
    "X4 X5 X6 X7 X8 X9",
)


def shor() -> StabilizerCode:
    return validate(CheckMatrix.from_paulis(SHOR_GENERATORS, n=9))


def bit_flip_code() -> StabilizerCode:
    """Three-qubit code stabilized by ``Z1Z2, Z2Z3``."""
    return validate(CheckMatrix.from_paulis(["ZZI", "IZZ"]))


def phase_flip_code() -> StabilizerCode:
    """Three-qubit code stabilized by ``X1X2, X2X3``."""
    return validate(CheckMatrix.from_paulis(["XXI", "IXX"]))


def surface(L: int) -> StabilizerCode:
    """Planar surface code with side length ``L``: ``[[L² + (L-1)², 1, L]]``.

    Qubits are lattice edges: ``L x L`` horizontal edges ``h(r, c)`` (row-major)
    then ``(L-1) x (L-1)`` vertical edges ``v(r, c)`` (row-major). Vertex
    ``(r, c)`` for ``r < L, c < L-1`` carries an X-check on ``h(r, c), h(r, c+1),
    v(r-1, c), v(r, c)``; face ``(r, c)`` for ``r < L-1, c < L`` carries a
    Z-check on ``h(r, c), h(r+1, c), v(r, c-1), v(r, c)``. Edges that fall off
    the lattice are dropped, giving weight-3 checks on the boundary.
    """
    if L < 2:
        raise CodeError(f"surface code needs L >= 2, got {L}")
    nh = L * L
    n = nh + (L - 1) ** 2

    def h(r: int, c: int) -> int:
        return r * L + c

    def v(r: int, c: int) -> int | None:
        if 0 <= r < L - 1 and 0 <= c < L - 1:
            return nh + r * (L - 1) + c
        return None

    xs = np.zeros((L * (L - 1), n), dtype=np.uint8)
    for r in range(L):
        for c in range(L - 1):
            row = xs[r * (L - 1) + c]
            for q in (h(r, c), h(r, c + 1), v(r - 1, c), v(r, c)):
                if q is not None:
                    row[q] = 1
    zs = np.zeros(((L - 1) * L, n), dtype=np.uint8)
    for r in range(L - 1):
        for c in range(L):
            row = zs[r * L + c]
            for q in (h(r, c), h(r + 1, c), v(r, c - 1), v(r, c)):
                if q is not None:
                    row[q] = 1
    return _css_from_blocks(BitMatrix.from_dense(xs), BitMatrix.from_dense(zs))


def toric(L: int) -> StabilizerCode:
    """Toric code on the ``L x L`` periodic lattice: ``[[2L², 2, L]]``.

    Horizontal edges ``h(r, c)`` first, then vertical edges ``v(r, c)``, both
    row-major with indices taken mod ``L``. All ``L²`` vertex X-checks and ``L²``
    face Z-checks are stored; each type has exactly one dependency.
    """
    if L < 2:
        raise CodeError(f"toric code needs L >= 2, got {L}")
    n = 2 * L * L

    def h(r: int, c: int) -> int:
        return (r % L) * L + (c % L)

    def v(r: int, c: int) -> int:
        return L * L + (r % L) * L + (c % L)

    xs = np.zeros((L * L, n), dtype=np.uint8)
    zs = np.zeros((L * L, n), dtype=np.uint8)
    for r in range(L):
        for c in range(L):
            xs[r * L + c, [h(r, c), h(r, c - 1), v(r, c), v(r - 1, c)]] = 1
            zs[r * L + c, [h(r, c), h(r + 1, c), v(r, c), v(r, c + 1)]] = 1
    return _css_from_blocks(BitMatrix.from_dense(xs), BitMatrix.from_dense(zs))


def _kron(a: npt.ArrayLike, b: npt.ArrayLike) -> npt.NDArray[np.uint8]:
    return (np.kron(np.asarray(a, np.int64), np.asarray(b, np.int64)) & 1).astype(np.uint8)


def hgp_matrices(h1: npt.ArrayLike, h2: npt.ArrayLike) -> tuple[npt.NDArray[np.uint8], npt.NDArray[np.uint8]]:
    """``HX = [H1⊗I_{n2} | I_{m1}⊗H2ᵀ]`` and ``HZ = [I_{n1}⊗H2 | H1ᵀ⊗I_{m2}]``."""
    h1 = np.asarray(h1, np.uint8)
    h2 = np.asarray(h2, np.uint8)
    m1, n1 = h1.shape
    m2, n2 = h2.shape
    hx = np.hstack([_kron(h1, np.eye(n2)), _kron(np.eye(m1), h2.T)])
    hz = np.hstack([_kron(np.eye(n1), h2), _kron(h1.T, np.eye(m2))])
    return hx, hz


def hgp(c1: ClassicalCode, c2: ClassicalCode) -> StabilizerCode:
    """Hypergraph product on ``n1 n2 + m1 m2`` qubits (the ``n1 n2`` block first)."""
    hx, hz = hgp_matrices(c1.h.to_dense(), c2.h.to_dense())
    return _css_from_blocks(BitMatrix.from_dense(hx), BitMatrix.from_dense(hz))


# --- circulant ring R_l = F2[x]/(x^l - 1) -------------------------------------


@dataclass(frozen=True)
class CirculantPoly:
    """``a(x) = sum_i coeffs[i] x^i`` in ``F2[x]/(x^l - 1)``."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) < 1:
            raise CodeError("lift size l must be at least 1")
        if any(c not in (0, 1) for c in self.coeffs):
            raise CodeError("coefficients must be 0 or 1")

    @classmethod
    def from_exponents(cls, exponents: Sequence[int], l: int) -> CirculantPoly:
        coeffs = [0] * l
        for e in exponents:
            coeffs[e % l] ^= 1
        return cls(tuple(coeffs))

    @property
    def l(self) -> int:
        return len(self.coeffs)

    def __mul__(self, other: CirculantPoly) -> CirculantPoly:
        if self.l != other.l:
            raise CodeError(f"lift sizes differ: {self.l} vs {other.l}")
        out = np.zeros(self.l, dtype=np.int64)
        for i, a in enumerate(self.coeffs):
            if a:
                out ^= np.roll(np.asarray(other.coeffs, np.int64), i)
        return CirculantPoly(tuple(int(c) for c in out))

    def __add__(self, other: CirculantPoly) -> CirculantPoly:
        if self.l != other.l:
            raise CodeError(f"lift sizes differ: {self.l} vs {other.l}")
        return CirculantPoly(tuple(a ^ b for a, b in zip(self.coeffs, other.coeffs)))


def poly_transpose(p: CirculantPoly) -> CirculantPoly:
    """``a0 + a_{l-1} x + ... + a_1 x^{l-1}``."""
    c = p.coeffs
    return CirculantPoly((c[0],) + tuple(reversed(c[1:])))


def circulant_lift(p: CirculantPoly) -> BitMatrix:
    """``l x l`` circulant with the coefficients as column 0, each later column shifted down by one."""
    col = np.asarray(p.coeffs, dtype=np.uint8)
    mat = np.stack([np.roll(col, j) for j in range(p.l)], axis=1)
    return BitMatrix.from_dense(mat)


class PolyMatrix:
    """Matrix over ``R_l`` stored as a ``(rows, cols, l)`` coefficient array."""

    def __init__(self, coeffs: npt.ArrayLike):
        arr = np.asarray(coeffs, dtype=np.uint8)
        if arr.ndim != 3 or arr.shape[2] < 1:
            raise CodeError(f"poly matrix coefficients must have shape (rows, cols, l), got {arr.shape}")
        self.coeffs = arr & 1

    @classmethod
    def from_polys(cls, entries: Sequence[Sequence[CirculantPoly]]) -> PolyMatrix:
        ls = {p.l for row in entries for p in row}
        if len(ls) != 1:
            raise CodeError(f"entries use different lift sizes: {sorted(ls)}")
        return cls(np.array([[p.coeffs for p in row] for row in entries], dtype=np.uint8))

    @classmethod
    def from_binary(cls, h: npt.ArrayLike, l: int = 1) -> PolyMatrix:
        """Embed a binary matrix as constant polynomials."""
        h = np.asarray(h, dtype=np.uint8)
        arr = np.zeros(h.shape + (l,), dtype=np.uint8)
        arr[..., 0] = h
        return cls(arr)

    @classmethod
    def identity(cls, size: int, l: int) -> PolyMatrix:
        return cls.from_binary(np.eye(size, dtype=np.uint8), l)

    @property
    def rows(self) -> int:
        return self.coeffs.shape[0]

    @property
    def cols(self) -> int:
        return self.coeffs.shape[1]

    @property
    def l(self) -> int:
        return self.coeffs.shape[2]

    def entry(self, i: int, j: int) -> CirculantPoly:
        return CirculantPoly(tuple(int(c) for c in self.coeffs[i, j]))

    @property
    def T(self) -> PolyMatrix:
        """Transpose with every entry replaced by its ring transpose."""
        c = np.swapaxes(self.coeffs, 0, 1)
        return PolyMatrix(np.concatenate([c[..., :1], c[..., :0:-1]], axis=2))

    def kron(self, other: PolyMatrix) -> PolyMatrix:
        if self.l != other.l:
            raise CodeError(f"lift sizes differ: {self.l} vs {other.l}")
        out = np.zeros((self.rows * other.rows, self.cols * other.cols, self.l), dtype=np.uint8)
        for i in range(self.rows):
            for j in range(self.cols):
                a = self.entry(i, j)
                if not any(a.coeffs):
                    continue
                for p in range(other.rows):
                    for q in range(other.cols):
                        prod = a * other.entry(p, q)
                        out[i * other.rows + p, j * other.cols + q] = prod.coeffs
        return PolyMatrix(out)

    def lift(self) -> BitMatrix:
        """Replace each entry by its ``l x l`` circulant."""
        l = self.l
        dense = np.zeros((self.rows * l, self.cols * l), dtype=np.uint8)
        for i in range(self.rows):
            for j in range(self.cols):
                dense[i * l : (i + 1) * l, j * l : (j + 1) * l] = circulant_lift(self.entry(i, j)).to_dense()
        return BitMatrix.from_dense(dense)


def _hstack_poly(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    return PolyMatrix(np.concatenate([a.coeffs, b.coeffs], axis=1))


def lifted_product_matrices(a1: PolyMatrix, a2: PolyMatrix) -> tuple[BitMatrix, BitMatrix]:
    """``HX = B([A1⊗I_{m2} | I_{m1}⊗A2])``, ``HZ = B([I_{n1}⊗A2ᵀ | A1ᵀ⊗I_{n2}])``."""
    if a1.l != a2.l:
        raise CodeError(f"lift sizes differ: {a1.l} vs {a2.l}")
    l = a1.l
    m1, n1 = a1.rows, a1.cols
    m2, n2 = a2.rows, a2.cols
    hx = _hstack_poly(a1.kron(PolyMatrix.identity(m2, l)), PolyMatrix.identity(m1, l).kron(a2))
    hz = _hstack_poly(PolyMatrix.identity(n1, l).kron(a2.T), a1.T.kron(PolyMatrix.identity(n2, l)))
    return hx.lift(), hz.lift()


def lifted_product(a1: PolyMatrix, a2: PolyMatrix) -> StabilizerCode:
    """Lifted product on ``l (n1 m2 + m1 n2)`` qubits.

    At ``l = 1`` this reproduces ``hgp(A1, A2ᵀ)`` matrix for matrix.
    """
    hx, hz = lifted_product_matrices(a1, a2)
    return _css_from_blocks(hx, hz)


def concatenate(outer: StabilizerCode, inner: StabilizerCode) -> StabilizerCode:
    """Replace each outer qubit by an inner block.

    Generators are the inner generators on every block (block order), followed
    by the outer generators with X and Z on qubit ``q`` replaced by the inner
    logical X̄ and Z̄ on block ``q``. Logical operators are lifted the same way.
    """
    if inner.k != 1:
        raise CodeError(f"inner code must encode one qubit, has k = {inner.k}")
    for i, g in enumerate(outer.check.generators()):
        if np.any(g.x_bits & g.z_bits):
            raise CodeError(f"outer generator {i} ({g}) uses Y; only I/X/Z letters are supported")
    ni = inner.n
    n = outer.n * ni
    xbar, zbar = inner.logical_pairs[0]
    xbar_v, zbar_v = xbar.to_symplectic(), zbar.to_symplectic()

    def lift_op(p: PauliOperator) -> np.ndarray:
        vec = np.zeros(2 * n, dtype=np.uint8)
        for q in range(outer.n):
            block = np.zeros(2 * ni, dtype=np.uint8)
            if p.x_bits[q]:
                block ^= xbar_v
            if p.z_bits[q]:
                block ^= zbar_v
            vec[q * ni : (q + 1) * ni] = block[:ni]
            vec[n + q * ni : n + (q + 1) * ni] = block[ni:]
        return vec

    inner_rows = inner.check.symplectic.to_dense()
    rows = []
    for q in range(outer.n):
        for row in inner_rows:
            vec = np.zeros(2 * n, dtype=np.uint8)
            vec[q * ni : (q + 1) * ni] = row[:ni]
            vec[n + q * ni : n + (q + 1) * ni] = row[ni:]
            rows.append(vec)
    rows += [lift_op(g) for g in outer.check.generators()]
    check = CheckMatrix.from_symplectic(np.array(rows, dtype=np.uint8).reshape(len(rows), 2 * n))
    pairs = [
        (PauliOperator.from_symplectic(lift_op(x), n), PauliOperator.from_symplectic(lift_op(z), n))
        for x, z in outer.logical_pairs
    ]
    return validate(check, allow_redundant=True, logical_pairs=pairs)
