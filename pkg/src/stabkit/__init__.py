"""Stabilizer and CSS quantum error-correcting codes over GF(2).

Binary symplectic Pauli algebra, code constructions (CSS, Steane, Shor,
surface, toric, hypergraph and lifted products, concatenation), brute-force
distance, exhaustive and message-passing decoders, and a deterministic Monte
Carlo harness.
"""

from __future__ import annotations

from .channels import PauliChannel, bit_flip, dephasing, depolarizing, make_channel, sample_error
from .constructions import (
    ClassicalCode,
    CirculantPoly,
    PolyMatrix,
    bit_flip_code,
    classical_distance,
    concatenate,
    css,
    hamming_7_4,
    hgp,
    lifted_product,
    phase_flip_code,
    repetition,
    shor,
    steane,
    surface,
    toric,
)
from .decode import (
    CosetTable,
    DecodeResult,
    Outcome,
    TannerGraph,
    bp_decode,
    build_ml_coset_table,
    css_decode,
    decode_and_classify,
    make_decoder,
    ml_error_decode,
)
from .distance import is_degenerate, min_distance, min_weight_logical
from .errors import CodeError, ConfigError, NonCommutingError, RedundantGeneratorError, ResourceLimitError
from .gf2 import BitMatrix, kernel, rank, rref, solve
from .harness import ExperimentConfig, SweepResult, TrialRecord, run_point, run_sweep
from .knill_laflamme import kl_check
from .pauli import PauliOperator, commutes, multiply, symplectic_product, weight
from .registry import build_code
from .stabilizer import (
    CheckMatrix,
    ResidualClass,
    StabilizerCode,
    classify_residual,
    extract_logicals,
    logical_action,
    syndrome,
    validate,
)

__all__ = [name for name in dir() if not name.startswith("_")]
