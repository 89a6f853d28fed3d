"""Exit criteria. Each test records one PASS/FAIL line in the terminal summary."""
import contextlib
import io
import itertools
import time

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from modemsim._backend import BACKEND
from modemsim.channels import AwgnSpec, apply_awgn
from modemsim.cli import main
from modemsim.demodulators import demodulate
from modemsim.metrics import (
    binomial_band,
    bit_error_rate,
    channel_ber,
    run_sweep,
    theoretical_ber,
)
from modemsim.modulators import Scheme, modulate
from modemsim.rng import RandomSource, generate_bits
from modemsim.signal import ModemConfig, Waveform, mean_power

SEED = 20240601
GRID = [0.0, 2.0, 4.0, 6.0, 8.0]
BITS_PER_POINT = 10**6


def report(number, title, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] #{number} {title}" + (f": {detail}" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


@pytest.fixture(scope="module")
def awgn_sweeps():
    cfg = ModemConfig()
    t0 = time.perf_counter()
    sweeps = {s: run_sweep(s, GRID, 0.0, BITS_PER_POINT, cfg, SEED) for s in Scheme}
    return sweeps, time.perf_counter() - t0


def test_1_worked_ber_example():
    r = bit_error_rate("0101000110", "0111010011")
    elapsed = min(_timed(lambda: bit_error_rate("0101000110", "0111010011")) for _ in range(20))
    ok = (r.error_bits == 4 and r.ber == 0.4 and r.error_positions.tolist() == [2, 5, 7, 9]
          and elapsed < 1e-3)
    report(1, "worked BER example", ok,
           f"errors={r.error_bits} ber={r.ber} positions={r.error_positions.tolist()} "
           f"t={elapsed * 1e6:.0f}us")


def _timed(fn):
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0


def test_2_loopback_identity():
    cfg = ModemConfig()
    t0 = time.perf_counter()
    failures = 0
    for scheme in Scheme:
        for pattern in itertools.product([0, 1], repeat=10):
            rx, _ = demodulate(scheme, modulate(scheme, pattern, cfg), cfg)
            failures += rx.tolist() != list(pattern)
        master = RandomSource(SEED).spawn(2)
        for i in range(100):
            bits = generate_bits(1000, master.spawn(i))
            rx, _ = demodulate(scheme, modulate(scheme, bits, cfg), cfg)
            failures += int(np.count_nonzero(rx != bits))
    elapsed = time.perf_counter() - t0
    report(2, "noiseless loopback identity", failures == 0 and elapsed < 10,
           f"failures={failures} t={elapsed:.2f}s")


def test_3_monte_carlo_vs_closed_form(awgn_sweeps):
    sweeps, elapsed = awgn_sweeps
    worst = 0.0
    ok = True
    for scheme, pts in sweeps.items():
        for p in pts:
            q = theoretical_ber(scheme, p.ebn0_db)
            z = abs(p.ber - q) / (binomial_band(q, p.bits_sent) / 3)
            worst = max(worst, z)
            ok &= abs(p.ber - q) <= binomial_band(q, p.bits_sent)
    report(3, "Monte Carlo within 99.7% band of Q-function BER", ok and elapsed < 120,
           f"worst |z|={worst:.2f} t={elapsed:.1f}s backend={BACKEND}")


def test_4_ask_matches_fsk_bpsk_best(awgn_sweeps):
    sweeps, _ = awgn_sweeps
    ask, fsk, bpsk = sweeps[Scheme.ASK], sweeps[Scheme.FSK], sweeps[Scheme.BPSK]
    overlap = all(a.ci_low <= f.ci_high and f.ci_low <= a.ci_high for a, f in zip(ask, fsk))
    bpsk_lower = all(b.ber < min(a.ber, f.ber) for a, f, b in zip(ask, fsk, bpsk))
    separated = all(b.ci_high < min(a.ci_low, f.ci_low)
                    for a, f, b in zip(ask, fsk, bpsk) if b.ebn0_db >= 4.0)
    report(4, "ASK ~ FSK, BPSK best", overlap and bpsk_lower and separated,
           f"ask/fsk CIs overlap={overlap} bpsk lower={bpsk_lower} "
           f"separated from 4 dB={separated}")


def test_5_monotonicity(awgn_sweeps):
    sweeps, _ = awgn_sweeps
    fine = np.arange(-5.0, 12.01, 0.25)
    exact = True
    for scheme in Scheme:
        for p in (0.0, 0.2, 0.4):
            vals = [theoretical_ber(scheme, g, p) for g in fine]
            exact &= all(b < a + 1e-12 and b < a for a, b in zip(vals, vals[1:]))
    statistical = all(nxt.ci_low <= cur.ci_high
                      for pts in sweeps.values() for cur, nxt in zip(pts, pts[1:]))
    report(5, "BER decreases as Eb/N0 increases", exact and statistical,
           f"closed form strictly decreasing={exact} Monte Carlo non-increasing={statistical}")


def test_6_error_rate_floor():
    cfg = ModemConfig()
    n = 10**5
    t0 = time.perf_counter()
    details, ok = [], True
    for scheme in Scheme:
        for p in (0.2, 0.4, 0.6):
            (pt,) = run_sweep(scheme, [40.0], p, n, cfg, SEED)
            ok &= abs(pt.ber - p) <= binomial_band(p, n)
            details.append(f"{scheme.value}@p={p}:{pt.ber:.4f}")
        (pt,) = run_sweep(scheme, [0.0], 0.2, n, cfg, SEED)
        q = channel_ber(scheme, 0.0)
        expected = 0.2 * (1 - q) + 0.8 * q
        ok &= abs(pt.ber - expected) <= binomial_band(expected, n)
        details.append(f"{scheme.value}@0dB,p=0.2:{pt.ber:.4f}/{expected:.4f}")
    elapsed = time.perf_counter() - t0
    report(6, "error-rate floor", ok and elapsed < 30, " ".join(details) + f" t={elapsed:.1f}s")


def test_7_zero_error_regime():
    cfg = ModemConfig()
    counts = {s.value: [p.bit_errors for p in run_sweep(s, GRID, 0.0, 10**4, cfg, SEED, noiseless=True)]
              for s in Scheme}
    ok = all(c == [0] * len(GRID) for c in counts.values())
    report(7, "zero BER with p=0 and no noise", ok, str(counts))


def _cli(argv):
    with contextlib.redirect_stdout(io.StringIO()), contextlib.redirect_stderr(io.StringIO()):
        return main([str(a) for a in argv])


def test_8_cli_determinism(tmp_path):
    runs = {}
    for tag in ("a", "b"):
        d = tmp_path / tag
        d.mkdir()
        codes = [
            _cli(["modulate", "--scheme", "fsk", "--random", "40", "--seed", "5", "-o", d / "w.csv"]),
            _cli(["channel", "awgn", d / "w.csv", "--ebn0", "3", "--seed", "5", "-o", d / "n.csv"]),
            _cli(["demodulate", d / "n.csv", "--scheme", "fsk", "-o", d / "rx.txt",
                  "--trace", d / "trace.csv"]),
            _cli(["channel", "bsc", d / "rx.txt", "--error-rate", "0.3", "--seed", "5",
                  "-o", d / "bsc.txt"]),
            _cli(["sweep", "--ebn0", "0:2:10", "--error-rate", "0.2", "--bits", "5000",
                  "--seed", "5", "-o", d / "sweep.csv"]),
            _cli(["plot", "waterfall", d / "sweep.csv", "-o", d / "ber.svg"]),
            _cli(["plot", "waveform", d / "w.csv", d / "n.csv", "-o", d / "wave.svg"]),
            _cli(["figures", "--bits", "1000", "--ebn0", "0:5:10", "--seed", "5",
                  "--out-dir", d / "fig"]),
        ]
        assert codes == [0] * len(codes)
        runs[tag] = {p.relative_to(d): p.read_bytes() for p in sorted(d.rglob("*")) if p.is_file()}
    same = runs["a"] == runs["b"]
    report(8, "CLI outputs byte-identical for equal seeds", same, f"{len(runs['a'])} files compared")


def test_9_physical_checks():
    cfg = ModemConfig()
    bits = generate_bits(1000, RandomSource(SEED))
    p_bpsk = mean_power(modulate(Scheme.BPSK, bits, cfg))
    zero = Waveform(cfg.sample_rate_hz, np.zeros(10**6))
    sig = modulate(Scheme.BPSK, generate_bits(10**6 // 64, RandomSource(SEED + 1)), cfg)
    added_zero = mean_power(apply_awgn(zero, AwgnSpec(noise_sigma=1.0), cfg, RandomSource(SEED)))
    added_sig = mean_power(apply_awgn(sig, AwgnSpec(noise_sigma=1.0), cfg, RandomSource(SEED))) \
        - mean_power(sig)
    ok = abs(p_bpsk - 0.5) <= 1e-9 and abs(added_zero - 1.0) <= 0.01 and abs(added_sig - 1.0) <= 0.01
    report(9, "physical checks", ok,
           f"BPSK power={p_bpsk:.12f} added noise power={added_zero:.4f} (silence), "
           f"{added_sig:.4f} (signal)")
