"""Monte Carlo logical-error-rate experiments.

Randomness: trials are grouped into fixed chunks of ``CHUNK_TRIALS``. Chunk
``c`` draws from ``Philox(key=seed)`` with its counter started at ``c << 192``
(``numpy.random.Philox``, the 4x64 variant), so the error of trial ``t`` is a
function of ``(seed, t)`` only. Chunks can then run in any order on any number
of workers and the ordered reduction gives identical tallies.
"""

from __future__ import annotations

import csv
import io
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from statistics import NormalDist

import numpy as np

from . import qchk
from .channels import CHANNELS, PauliChannel, make_channel
from .decode import DECODERS, DEFAULT_MAX_ITER, DEFAULT_NORM, Decoder, make_decoder
from .errors import ConfigError
from .registry import build_code
from .stabilizer import StabilizerCode, classify_batch, validate

CHUNK_TRIALS = 4096
CONFIDENCE = 0.95
CSV_HEADER = ("eps", "trials", "failures", "nonconverged", "ler", "ci_lo", "ci_hi", "seconds")


def chunk_rng(seed: int, chunk: int) -> np.random.Generator:
    if seed < 0:
        raise ConfigError(f"seed must be nonnegative, got {seed}")
    return np.random.Generator(np.random.Philox(key=seed, counter=[0, 0, 0, chunk]))


def wilson_interval(failures: int, trials: int, confidence: float = CONFIDENCE) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if trials < 1:
        raise ValueError("need at least one trial")
    z = NormalDist().inv_cdf(0.5 + confidence / 2)
    p = failures / trials
    z2n = z * z / trials
    centre = (p + z2n / 2) / (1 + z2n)
    half = z * math.sqrt(p * (1 - p) / trials + z2n / (4 * trials)) / (1 + z2n)
    return max(0.0, min(centre - half, p)), min(1.0, max(centre + half, p))


@dataclass(frozen=True)
class TrialRecord:
    eps: float
    trials: int
    failures: int
    nonconverged: int
    detectable: int
    ci_lo: float
    ci_hi: float
    seconds: float | None = None

    @property
    def ler(self) -> float:
        return self.failures / self.trials

    def csv_row(self) -> list[str]:
        secs = "" if self.seconds is None else f"{self.seconds:.10g}"
        return [
            f"{self.eps:.10g}",
            str(self.trials),
            str(self.failures),
            str(self.nonconverged),
            f"{self.ler:.10g}",
            f"{self.ci_lo:.10g}",
            f"{self.ci_hi:.10g}",
            secs,
        ]


def _run_chunk(
    code: StabilizerCode, ch: PauliChannel, decoder: Decoder, seed: int, chunk: int, size: int
) -> tuple[int, int, int]:
    rng = chunk_rng(seed, chunk)
    x, z = ch.sample_letters(rng, (size, code.n))
    hx = code.check.hx.to_dense().astype(np.int64)
    hz = code.check.hz.to_dense().astype(np.int64)
    synd = ((x.astype(np.int64) @ hz.T + z.astype(np.int64) @ hx.T) & 1).astype(np.uint8)
    res = decoder.decode_batch(synd)
    cls = classify_batch(code, res.x ^ x, res.z ^ z)
    return int(np.count_nonzero(cls)), int(np.count_nonzero(~res.converged)), int(np.count_nonzero(cls == 2))


def run_point(
    code: StabilizerCode,
    ch: PauliChannel,
    decoder: Decoder,
    trials: int,
    seed: int,
    *,
    workers: int = 1,
    eps: float = float("nan"),
    timing: bool = False,
) -> TrialRecord:
    """Sample ``trials`` i.i.d. errors, decode each and count logical failures.

    A residual with a nonzero syndrome (BP gave up) counts as a failure and is
    also tallied in ``detectable``.
    """
    if trials < 1:
        raise ConfigError(f"trials must be >= 1, got {trials}")
    if workers < 1:
        raise ConfigError(f"workers must be >= 1, got {workers}")
    start = time.perf_counter()
    sizes = [min(CHUNK_TRIALS, trials - lo) for lo in range(0, trials, CHUNK_TRIALS)]

    def job(c: int) -> tuple[int, int, int]:
        return _run_chunk(code, ch, decoder, seed, c, sizes[c])

    if workers == 1:
        parts = [job(c) for c in range(len(sizes))]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(job, range(len(sizes))))
    failures, nonconv, detect = (sum(col) for col in zip(*parts))
    lo, hi = wilson_interval(failures, trials)
    seconds = time.perf_counter() - start if timing else None
    return TrialRecord(eps, trials, failures, nonconv, detect, lo, hi, seconds)


@dataclass(frozen=True)
class ExperimentConfig:
    code: str = ""
    code_file: str | None = None
    channel: str = "depolarizing"
    eps: tuple[float, ...] = ()
    decoder: str = "mlcoset"
    max_iter: int = DEFAULT_MAX_ITER
    norm: float = DEFAULT_NORM
    trials: int = 1000
    seed: int = 0
    workers: int = 1
    timing: bool = False

    def __post_init__(self):
        object.__setattr__(self, "eps", tuple(float(e) for e in self.eps))
        if not self.eps:
            raise ConfigError("eps list is empty")
        if self.channel not in CHANNELS:
            raise ConfigError(f"unknown channel {self.channel!r}; choose from {', '.join(CHANNELS)}")
        for e in self.eps:
            make_channel(self.channel, e)
        if self.decoder not in DECODERS:
            raise ConfigError(f"unknown decoder {self.decoder!r}; choose from {', '.join(DECODERS)}")
        if self.trials < 1:
            raise ConfigError(f"trials must be >= 1, got {self.trials}")
        if self.workers < 1:
            raise ConfigError(f"workers must be >= 1, got {self.workers}")
        if self.max_iter < 1:
            raise ConfigError(f"max_iter must be >= 1, got {self.max_iter}")
        if self.seed < 0:
            raise ConfigError(f"seed must be nonnegative, got {self.seed}")
        if bool(self.code) == bool(self.code_file):
            raise ConfigError("give exactly one of a code name or a QCHK file")

    def build_code(self) -> StabilizerCode:
        if self.code_file:
            return validate(qchk.read(self.code_file), allow_redundant=True)
        return build_code(self.code)


@dataclass(frozen=True)
class SweepResult:
    config: ExperimentConfig
    records: tuple[TrialRecord, ...] = field(default_factory=tuple)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for rec in self.records:
            writer.writerow(rec.csv_row())
        return buf.getvalue()

    def write_csv(self, path: str | Path) -> None:
        Path(path).write_text(self.to_csv())


def run_sweep(cfg: ExperimentConfig, code: StabilizerCode | None = None) -> SweepResult:
    """One :func:`run_point` per eps, in the given order, all with the config seed."""
    if code is None:
        code = cfg.build_code()
    records = []
    for eps in cfg.eps:
        ch = make_channel(cfg.channel, eps)
        decoder = make_decoder(cfg.decoder, code, ch, max_iter=cfg.max_iter, norm=cfg.norm)
        records.append(
            run_point(code, ch, decoder, cfg.trials, cfg.seed, workers=cfg.workers, eps=eps, timing=cfg.timing)
        )
    return SweepResult(cfg, tuple(records))

