from __future__ import annotations

import numpy as np
import pytest
from scipy.stats import binomtest

from stabkit.channels import bit_flip, depolarizing
from stabkit.constructions import bit_flip_code, steane, surface
from stabkit.decode import make_decoder
from stabkit.errors import ConfigError
from stabkit.harness import (
    CHUNK_TRIALS,
    CSV_HEADER,
    ExperimentConfig,
    TrialRecord,
    _run_chunk,
    chunk_rng,
    run_point,
    run_sweep,
    wilson_interval,
)


def bitflip_point(eps, trials, seed, workers=1):
    code = bit_flip_code()
    ch = bit_flip(eps)
    return run_point(code, ch, make_decoder("mlcoset", code, ch), trials, seed, workers=workers, eps=eps)


def test_wilson_reference_values():
    lo, hi = wilson_interval(0, 10)
    assert lo == 0 and hi == pytest.approx(0.27753, abs=1e-5)
    lo, hi = wilson_interval(5, 10)
    assert (lo, hi) == pytest.approx((0.23659, 0.76341), abs=1e-5)
    lo, hi = wilson_interval(10, 10)
    assert hi == 1 and lo == pytest.approx(0.72247, abs=1e-5)


@pytest.mark.parametrize("k,n", [(0, 1), (3, 17), (40, 1000), (999, 1000)])
def test_wilson_matches_scipy(k, n):
    ci = binomtest(k, n).proportion_ci(0.95, method="wilson")
    assert wilson_interval(k, n) == pytest.approx((ci.low, ci.high), abs=1e-12)


def test_wilson_needs_trials():
    with pytest.raises(ValueError):
        wilson_interval(0, 0)


def test_eps_zero_never_fails():
    rec = bitflip_point(0.0, 5000, 1)
    assert rec.failures == 0 and rec.ler == 0 and rec.ci_lo == 0


def test_tallies_reconcile():
    code = surface(3)
    ch = depolarizing(0.15)
    rec = run_point(code, ch, make_decoder("bp", code, ch, max_iter=3), 3000, 11)
    assert 0 <= rec.detectable <= rec.failures <= rec.trials
    assert rec.detectable <= rec.nonconverged
    assert rec.ci_lo <= rec.ler <= rec.ci_hi


def test_deterministic_across_workers():
    a = bitflip_point(0.1, 20_000, 42, workers=1)
    b = bitflip_point(0.1, 20_000, 42, workers=8)
    assert a == b


def test_seed_changes_outcome():
    assert bitflip_point(0.2, 20_000, 1).failures != bitflip_point(0.2, 20_000, 2).failures


def test_chunks_are_prefix_independent():
    code = bit_flip_code()
    ch = bit_flip(0.2)
    dec = make_decoder("mlcoset", code, ch)
    total = run_point(code, ch, dec, 2 * CHUNK_TRIALS + 100, 9)
    parts = [_run_chunk(code, ch, dec, 9, c, s) for c, s in enumerate([CHUNK_TRIALS, CHUNK_TRIALS, 100])]
    assert total.failures == sum(p[0] for p in parts)
    # the first chunk is the same whatever the total
    assert _run_chunk(code, ch, dec, 9, 0, CHUNK_TRIALS) == parts[0]


def test_chunk_streams_differ():
    a = chunk_rng(5, 0).random(4)
    b = chunk_rng(5, 1).random(4)
    assert not np.allclose(a, b)
    assert np.array_equal(a, chunk_rng(5, 0).random(4))
    with pytest.raises(ConfigError):
        chunk_rng(-1, 0)


def test_interval_coverage():
    eps = 0.1
    p = 3 * eps**2 * (1 - eps) + eps**3
    covered = 0
    for seed in range(100):
        rec = bitflip_point(eps, 1000, seed)
        covered += rec.ci_lo <= p <= rec.ci_hi
    assert covered >= 90


def test_sweep_single_eps_equals_point():
    cfg = ExperimentConfig(code="steane", eps=(0.05,), trials=3000, seed=3)
    sweep = run_sweep(cfg)
    code = steane()
    ch = depolarizing(0.05)
    rec = run_point(code, ch, make_decoder("mlcoset", code, ch), 3000, 3, eps=0.05)
    assert sweep.records == (rec,)


def test_bp_sweep_is_monotone():
    cfg = ExperimentConfig(code="surface:3", eps=(0.001, 0.01, 0.05), decoder="bp", trials=20_000, seed=5)
    recs = run_sweep(cfg).records
    for lo, hi in zip(recs, recs[1:]):
        gap = hi.ler - lo.ler
        sigma = np.sqrt(lo.ler * (1 - lo.ler) / lo.trials + hi.ler * (1 - hi.ler) / hi.trials)
        assert gap > 3 * sigma


@pytest.mark.parametrize(
    "kwargs",
    [
        {"eps": ()},
        {"eps": (0.1,), "channel": "amplitude"},
        {"eps": (0.9,)},
        {"eps": (0.1,), "decoder": "lookup"},
        {"eps": (0.1,), "trials": 0},
        {"eps": (0.1,), "workers": 0},
        {"eps": (0.1,), "seed": -1},
        {"eps": (0.1,), "max_iter": 0},
    ],
)
def test_config_errors(kwargs):
    with pytest.raises(ConfigError):
        ExperimentConfig(code="steane", **kwargs)


def test_config_needs_exactly_one_code_source():
    with pytest.raises(ConfigError):
        ExperimentConfig(eps=(0.1,))
    with pytest.raises(ConfigError):
        ExperimentConfig(code="steane", code_file="x.qchk", eps=(0.1,))


def test_csv_layout(tmp_path):
    cfg = ExperimentConfig(code="bitflip", channel="bitflip", eps=(0.1, 0.2), trials=500, seed=1)
    sweep = run_sweep(cfg)
    text = sweep.to_csv()
    lines = text.splitlines()
    assert lines[0] == ",".join(CSV_HEADER)
    assert len(lines) == 3
    row = lines[1].split(",")
    assert row[0] == "0.1" and row[1] == "500" and row[-1] == ""
    sweep.write_csv(tmp_path / "out.csv")
    assert (tmp_path / "out.csv").read_text() == text


def test_csv_row_formatting():
    rec = TrialRecord(1 / 3, 7, 2, 0, 0, 0.1, 0.6, seconds=1.5)
    assert rec.csv_row() == ["0.3333333333", "7", "2", "0", "0.2857142857", "0.1", "0.6", "1.5"]


def test_steane_low_noise_rate():
    code = steane()
    ch = depolarizing(0.01)
    rec = run_point(code, ch, make_decoder("mlcoset", code, ch), 100_000, 7, workers=4, eps=0.01)
    # weight >= 2 errors are the only failures; their total probability is below 0.01
    assert rec.ler < 0.01
    assert rec.nonconverged == 0 and rec.detectable == 0
