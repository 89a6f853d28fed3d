import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modemsim.channels import AwgnSpec, apply_awgn
from modemsim.demodulators import (
    DecisionTrace,
    correlate_bit,
    demod_ask,
    demod_bpsk,
    demod_fsk,
    demodulate,
)
from modemsim.modulators import Scheme, carrier, modulate, modulate_ask
from modemsim.rng import RandomSource, generate_bits
from modemsim.signal import ModemConfig, Waveform


def test_correlate_self(cfg):
    block = carrier(cfg, 4.0, 64)
    expected = math.fsum(v * v for v in block)
    assert abs(expected - 32.0) < 1e-12
    assert abs(correlate_bit(block, block) - 32.0) <= 1e-9 * 32
    a3 = 3.0 * block
    assert abs(correlate_bit(a3, a3) - 9 * 32.0) <= 1e-9 * 9 * 32


def test_correlate_orthogonal(cfg):
    a, b = carrier(cfg, 5.0, 64), carrier(cfg, 1.0, 64)
    assert abs(math.fsum(x * y for x, y in zip(a, b))) < 1e-12
    assert abs(correlate_bit(a, b)) <= 1e-9 * 32


def test_correlate_zero_and_errors(cfg):
    assert correlate_bit(np.zeros(64), carrier(cfg, 4.0, 64)) == 0.0
    with pytest.raises(ValueError):
        correlate_bit(np.zeros(3), np.zeros(4))
    with pytest.raises(ValueError):
        correlate_bit([], [])


def test_ask_paper_loopback(cfg):
    bits = [1, 0, 1, 1, 0, 1, 0]
    rx, trace = demod_ask(modulate_ask(bits, cfg), cfg)
    assert rx.tolist() == bits
    assert trace.threshold == 16.0
    assert trace.consistent()


def test_ask_all_zero(cfg):
    rx, _ = demod_ask(Waveform(64.0, np.zeros(640)), cfg)
    assert rx.tolist() == [0] * 10


def test_ask_high_snr_no_errors(cfg):
    w = modulate_ask(np.ones(1000, dtype=np.uint8), cfg)
    noisy = apply_awgn(w, AwgnSpec(ebn0_db=40.0), cfg, RandomSource(1))
    assert demod_ask(noisy, cfg)[0].sum() == 1000


def test_fsk_loopback(cfg):
    rx, trace = demod_fsk(modulate(Scheme.FSK, [1, 0, 0, 1], cfg), cfg)
    assert rx.tolist() == [1, 0, 0, 1]
    assert trace.stat2 is not None and trace.consistent()


def test_fsk_paper_pair_random(cfg):
    bits = generate_bits(1000, RandomSource(2))
    assert np.array_equal(demod_fsk(modulate(Scheme.FSK, bits, cfg), cfg)[0], bits)


def test_fsk_pure_mark_tone(cfg):
    assert demod_fsk(Waveform(64.0, carrier(cfg, 5.0, 640)), cfg)[0].tolist() == [1] * 10


def test_bpsk_loopback_and_symmetry(cfg):
    w = modulate(Scheme.BPSK, [1, 0, 1], cfg)
    assert demod_bpsk(w, cfg)[0].tolist() == [1, 0, 1]
    assert demod_bpsk(Waveform(64.0, -carrier(cfg, 4.0, 64)), cfg)[0].tolist() == [0]
    assert demod_bpsk(w.scaled(-1.0), cfg)[0].tolist() == [0, 1, 0]


def test_alignment_required(cfg):
    for scheme in Scheme:
        with pytest.raises(ValueError, match="length not bit-aligned"):
            demodulate(scheme, Waveform(64.0, np.zeros(65)), cfg)


def test_tie_decides_one(cfg):
    # BPSK statistic of exact silence is 0, the threshold
    assert demod_bpsk(Waveform(64.0, np.zeros(64)), cfg)[0].tolist() == [1]
    assert demod_fsk(Waveform(64.0, np.zeros(64)), cfg)[0].tolist() == [1]
    # ASK: a block whose statistic equals the threshold exactly
    half = 0.5 * carrier(cfg, 4.0, 64)
    _, trace = demod_ask(Waveform(64.0, half), cfg)
    assert trace.stat1[0] == 16.0 and trace.decisions[0] == 1


@pytest.mark.parametrize("scheme", list(Scheme))
def test_exhaustive_loopback_short(cfg, scheme):
    for n in range(1, 11):
        for bits in itertools.product([0, 1], repeat=n):
            rx, _ = demodulate(scheme, modulate(scheme, bits, cfg), cfg)
            assert rx.tolist() == list(bits)


integer_configs = st.builds(
    lambda fc, f1, df, spb, a, br: ModemConfig(amplitude=a, carrier_freq_hz=fc * br, fsk_f1_hz=f1 * br,
                                               fsk_f2_hz=(f1 + df) * br, bit_rate_hz=br,
                                               samples_per_bit=spb),
    st.integers(1, 5), st.integers(1, 4), st.integers(1, 3),
    st.sampled_from([32, 48, 64]), st.floats(0.05, 20.0), st.sampled_from([1.0, 2.0, 1200.0]),
)


@settings(max_examples=40, deadline=None)
@given(integer_configs, st.integers(1, 1000), st.integers(0, 2**32))
def test_loopback_random_configs(cfg, n, seed):
    bits = generate_bits(n, RandomSource(seed))
    for scheme in Scheme:
        rx, trace = demodulate(scheme, modulate(scheme, bits, cfg), cfg)
        assert np.array_equal(rx, bits)
        assert trace.consistent()


def test_bpsk_scale_invariant(cfg):
    bits = generate_bits(200, RandomSource(3))
    noisy = apply_awgn(modulate(Scheme.BPSK, bits, cfg), AwgnSpec(ebn0_db=0.0), cfg, RandomSource(4))
    base = demod_bpsk(noisy, cfg)[0]
    for c in (0.01, 3.0, 1e6):
        assert np.array_equal(demod_bpsk(noisy.scaled(c), cfg)[0], base)


def test_ask_not_scale_invariant_but_loops_back_with_matching_config(cfg):
    bits = generate_bits(100, RandomSource(5))
    w = modulate(Scheme.ASK, bits, cfg)
    # shrinking the signal below the fixed threshold loses every mark
    assert demod_ask(w.scaled(0.4), cfg)[0].sum() == 0
    big = ModemConfig(amplitude=2.0)
    assert np.array_equal(demod_ask(modulate(Scheme.ASK, bits, big), big)[0], bits)


def test_fsk_swap_symmetry(cfg):
    bits = generate_bits(300, RandomSource(6))
    noisy = apply_awgn(modulate(Scheme.FSK, bits, cfg), AwgnSpec(ebn0_db=2.0), cfg, RandomSource(7))
    swapped = ModemConfig(fsk_f1_hz=cfg.fsk_f2_hz, fsk_f2_hz=cfg.fsk_f1_hz,
                          fsk_theta1_rad=cfg.fsk_theta2_rad, fsk_theta2_rad=cfg.fsk_theta1_rad)
    a = demod_fsk(noisy, cfg)[0]
    b = demod_fsk(noisy, swapped)[0]
    assert np.array_equal(a, 1 - b)


@pytest.mark.parametrize("scheme", list(Scheme))
def test_trace_consistent_under_noise(cfg, scheme):
    bits = generate_bits(500, RandomSource(8))
    noisy = apply_awgn(modulate(scheme, bits, cfg), AwgnSpec(ebn0_db=1.0), cfg, RandomSource(9))
    rx, trace = demodulate(scheme, noisy, cfg)
    assert trace.consistent()
    assert np.array_equal(trace.decisions, rx)


def test_trace_csv(cfg):
    _, trace = demod_fsk(modulate(Scheme.FSK, [1, 0], cfg), cfg)
    lines = trace.to_csv().splitlines()
    assert lines[0] == "bit_index,stat1,stat2,threshold,decision"
    assert len(lines) == 3
    fields = lines[1].split(",")
    assert fields[0] == "0" and fields[4] == "1" and float(fields[1]) == pytest.approx(32.0)
    _, trace = demod_ask(modulate(Scheme.ASK, [1], cfg), cfg)
    assert trace.to_csv().splitlines()[1].split(",")[2] == ""


def test_non_integer_cycles_loopback():
    cfg = ModemConfig(carrier_freq_hz=2.5, fsk_f1_hz=3.25, fsk_f2_hz=1.5)
    bits = generate_bits(64, RandomSource(1))
    for scheme in (Scheme.ASK, Scheme.BPSK):
        assert np.array_equal(demodulate(scheme, modulate(scheme, bits, cfg), cfg)[0], bits)


def test_decision_trace_detects_mismatch():
    t = DecisionTrace(np.array([1.0, -1.0]), None, 0.0, np.array([1, 1], dtype=np.uint8))
    assert not t.consistent()
