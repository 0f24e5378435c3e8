"""Syndrome decoders and failure classification.

Two families share one interface: exhaustive table decoders (maximum-likelihood
coset, or most-likely single error) for codes with at most 14 qubits, and
belief propagation / normalized min-sum run separately on the X-check and
Z-check Tanner graphs of a CSS code.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Protocol

import numpy as np
import numpy.typing as npt

from ..channels import PauliChannel
from ..errors import CodeError, ConfigError
from ..pauli import PauliOperator, multiply
from ..stabilizer import ResidualClass, StabilizerCode, classify_residual, syndrome
from .bp import LLR_CLIP, TannerGraph, Variant, bp_decode, bp_decode_batch
from .ml import (
    CosetTable,
    build_ml_coset_table,
    build_ml_error_table,
    signature_probabilities,
    syndrome_keys,
)

DEFAULT_MAX_ITER = 50
DEFAULT_NORM = 0.75
PRIOR_FLOOR = 1e-9

DECODERS = ("mlcoset", "mlerror", "bp", "minsum")


@dataclass(frozen=True)
class DecodeResult:
    estimate: PauliOperator
    converged: bool
    iterations: int


@dataclass(frozen=True)
class BatchDecodeResult:
    x: npt.NDArray[np.uint8]
    z: npt.NDArray[np.uint8]
    converged: npt.NDArray[np.bool_]
    iterations: npt.NDArray[np.int64]


class Decoder(Protocol):
    name: str
    code: StabilizerCode

    def decode(self, syndrome: npt.ArrayLike) -> DecodeResult: ...

    def decode_batch(self, syndromes: npt.ArrayLike) -> BatchDecodeResult: ...


class TableDecoder:
    """Lookup in a precomputed :class:`CosetTable`; always reproduces the syndrome."""

    def __init__(self, code: StabilizerCode, table: CosetTable, name: str):
        self.code = code
        self.table = table
        self.name = name

    def decode(self, syndrome: npt.ArrayLike) -> DecodeResult:
        return DecodeResult(self.table.lookup(syndrome), True, 0)

    def decode_batch(self, syndromes: npt.ArrayLike) -> BatchDecodeResult:
        x, z = self.table.lookup_batch(syndromes)
        b = x.shape[0]
        return BatchDecodeResult(x, z, np.ones(b, dtype=bool), np.zeros(b, dtype=np.int64))


def clamp_prior(p: float) -> float:
    """Force a marginal flip probability into the open interval BP accepts."""
    return float(min(max(p, PRIOR_FLOOR), 0.5 - PRIOR_FLOOR))


class BPDecoder:
    """Independent BP on the Z-error graph (X checks) and the X-error graph (Z checks)."""

    def __init__(
        self,
        code: StabilizerCode,
        ch: PauliChannel,
        max_iter: int = DEFAULT_MAX_ITER,
        variant: Variant = "sum_product",
        norm: float = DEFAULT_NORM,
    ):
        split = code.check.css_rows()
        if split is None:
            raise CodeError("BP decoding needs a CSS code (every generator pure X or pure Z)")
        if max_iter < 1:
            raise ConfigError(f"max_iter must be >= 1, got {max_iter}")
        if not 0 < norm <= 1:
            raise ConfigError(f"min-sum normalization must lie in (0, 1], got {norm}")
        self.code = code
        self.name = "bp" if variant == "sum_product" else "minsum"
        self.x_rows, self.z_rows = split
        hx, hz = code.check.hx.to_dense(), code.check.hz.to_dense()
        # X-type checks see Z errors; Z-type checks see X errors.
        self.z_graph = TannerGraph.from_matrix(hx[self.x_rows].reshape(-1, code.n))
        self.x_graph = TannerGraph.from_matrix(hz[self.z_rows].reshape(-1, code.n))
        self.z_prior = clamp_prior(ch.z_marginal)
        self.x_prior = clamp_prior(ch.x_marginal)
        self.max_iter = max_iter
        self.variant = variant
        self.norm = norm

    def decode_batch(self, syndromes: npt.ArrayLike) -> BatchDecodeResult:
        s = np.atleast_2d(np.asarray(syndromes, dtype=np.uint8))
        if s.shape[1] != self.code.r:
            raise ValueError(f"syndrome length {s.shape[1]} != {self.code.r}")
        ez, cz, iz = bp_decode_batch(
            self.z_graph, s[:, self.x_rows], self.z_prior, self.max_iter, self.variant, self.norm
        )
        ex, cx, ix = bp_decode_batch(
            self.x_graph, s[:, self.z_rows], self.x_prior, self.max_iter, self.variant, self.norm
        )
        return BatchDecodeResult(ex, ez, cx & cz, np.maximum(ix, iz))

    def decode(self, syndrome: npt.ArrayLike) -> DecodeResult:
        s = np.asarray(syndrome, dtype=np.uint8).ravel()
        res = self.decode_batch(s[None, :])
        return DecodeResult(PauliOperator(res.x[0], res.z[0]), bool(res.converged[0]), int(res.iterations[0]))


def make_decoder(
    name: str,
    code: StabilizerCode,
    ch: PauliChannel,
    *,
    max_iter: int = DEFAULT_MAX_ITER,
    norm: float = DEFAULT_NORM,
) -> Decoder:
    if name == "mlcoset":
        return TableDecoder(code, build_ml_coset_table(code, ch), name)
    if name == "mlerror":
        return TableDecoder(code, build_ml_error_table(code, ch), name)
    if name == "bp":
        return BPDecoder(code, ch, max_iter, "sum_product", norm)
    if name == "minsum":
        return BPDecoder(code, ch, max_iter, "min_sum", norm)
    raise ConfigError(f"unknown decoder {name!r}; choose from {', '.join(DECODERS)}")


def ml_error_decode(code: StabilizerCode, ch: PauliChannel, syndrome_bits: npt.ArrayLike) -> DecodeResult:
    """Most probable single error with the given syndrome (builds the full table)."""
    return DecodeResult(build_ml_error_table(code, ch).lookup(syndrome_bits), True, 0)


def css_decode(
    code: StabilizerCode,
    syndrome_bits: npt.ArrayLike,
    ch: PauliChannel,
    max_iter: int = DEFAULT_MAX_ITER,
    variant: Variant = "sum_product",
    norm: float = DEFAULT_NORM,
) -> DecodeResult:
    return BPDecoder(code, ch, max_iter, variant, norm).decode(syndrome_bits)


class Outcome(enum.Enum):
    SUCCESS = "success"
    LOGICAL_ERROR = "logical_error"


@dataclass(frozen=True)
class TrialOutcome:
    outcome: Outcome
    residual_class: ResidualClass
    result: DecodeResult

    @property
    def detectable(self) -> bool:
        """Residual still has a syndrome (only possible when BP did not converge)."""
        return self.residual_class is ResidualClass.DETECTABLE


def decode_and_classify(code: StabilizerCode, e: PauliOperator, decoder: Decoder) -> TrialOutcome:
    """Decode ``syndrome(e)`` and classify the residual; anything but a stabilizer is a failure."""
    if e.n != code.n:
        raise ValueError(f"error acts on {e.n} qubits, code has {code.n}")
    result = decoder.decode(syndrome(code, e))
    residual = multiply(result.estimate, e)
    cls = classify_residual(code, residual)
    outcome = Outcome.SUCCESS if cls is ResidualClass.STABILIZER else Outcome.LOGICAL_ERROR
    return TrialOutcome(outcome, cls, result)


__all__ = [
    "BPDecoder",
    "BatchDecodeResult",
    "CosetTable",
    "DECODERS",
    "DecodeResult",
    "Decoder",
    "LLR_CLIP",
    "Outcome",
    "TableDecoder",
    "TannerGraph",
    "TrialOutcome",
    "bp_decode",
    "bp_decode_batch",
    "build_ml_coset_table",
    "build_ml_error_table",
    "clamp_prior",
    "css_decode",
    "decode_and_classify",
    "make_decoder",
    "ml_error_decode",
    "signature_probabilities",
    "syndrome_keys",
]
