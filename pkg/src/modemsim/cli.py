"""Command-line front end.

Exit status is 0 on success, 2 on usage errors and 1 on runtime errors.
All diagnostics go to stderr. ``-`` stands for stdin/stdout wherever a path
is accepted, so ``modulate | demodulate`` works as a pipe.
"""
import argparse
import os
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import plotting
from .channels import AwgnSpec, BscSpec, apply_awgn, apply_bsc
from .demodulators import demodulate
from .metrics import format_sweep, parse_sweep, run_sweep
from .modulators import Scheme, bit_carrier, modulate
from .rng import RandomSource, generate_bits
from .signal import (
    WAVEFORM_HEADER,
    ModemConfig,
    Waveform,
    as_bits,
    bits_to_str,
    format_bits,
    format_waveform,
    parse_bits,
    parse_waveform,
)

OUTPUT_DIR_ENV = "MODEMSIM_OUTPUT_DIR"
PAPER_BITS = "1011010"


# -- argument types -----------------------------------------------------------

def scheme_arg(text):
    try:
        return Scheme.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def schemes_arg(text):
    return [scheme_arg(s.strip()) for s in text.split(",") if s.strip()]


def parse_grid(text):
    """``start:step:stop`` (stop included when reached exactly) or a comma list."""
    try:
        if ":" not in text:
            return [float(v) for v in text.split(",") if v.strip()]
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError
        start, step, stop = (Fraction(p.strip()) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad grid {text!r}; expected start:step:stop") from None
    if step <= 0 or start > stop:
        raise argparse.ArgumentTypeError("grid needs step > 0 and start <= stop")
    count = int((stop - start) // step) + 1
    return [float(start + i * step) for i in range(count)]


def probability_arg(text):
    p = float(text)
    if not 0.0 <= p <= 1.0:
        raise argparse.ArgumentTypeError("error rate must lie in [0, 1]")
    return p


def seed_arg(text):
    s = int(text, 0)
    if not 0 <= s < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return s


# -- I/O helpers --------------------------------------------------------------

def read_text(path):
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def write_text(path, text):
    if path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    p = Path(path)
    if p.parent != Path("."):
        p.parent.mkdir(parents=True, exist_ok=True)
    with open(p, "w", newline="\n") as fh:
        fh.write(text)


def config_from_args(args):
    return ModemConfig(
        amplitude=args.amplitude, carrier_freq_hz=args.fc, fsk_f1_hz=args.f1, fsk_f2_hz=args.f2,
        fsk_theta1_rad=args.theta1, fsk_theta2_rad=args.theta2, bit_rate_hz=args.bit_rate,
        samples_per_bit=args.spb,
    )


def source_bits(args):
    if args.bits is not None:
        return as_bits(args.bits)
    if args.bits_file is not None:
        return parse_bits(read_text(args.bits_file))
    return generate_bits(args.random, RandomSource(args.seed))


# -- subcommands --------------------------------------------------------------

def cmd_modulate(args):
    cfg = config_from_args(args)
    w = modulate(args.scheme, source_bits(args), cfg)
    write_text(args.output, format_waveform(w))


def _check_rate(text, cfg):
    lines = text.splitlines()
    if len(lines) >= 3:
        inferred = parse_waveform("\n".join(lines[:3])).sample_rate_hz
        if abs(inferred - cfg.sample_rate_hz) > 1e-6 * cfg.sample_rate_hz:
            raise ValueError(f"waveform sample rate {inferred:g} Hz does not match "
                             f"configured {cfg.sample_rate_hz:g} Hz")


def cmd_demodulate(args):
    cfg = config_from_args(args)
    text = read_text(args.input)
    _check_rate(text, cfg)
    w = parse_waveform(text, cfg.sample_rate_hz)
    bits, trace = demodulate(args.scheme, w, cfg)
    if args.trace:
        write_text(args.trace, trace.to_csv())
    if args.output:
        write_text(args.output, format_bits(bits))
    else:
        sys.stdout.write(bits_to_str(bits) + "\n")


def cmd_channel(args):
    rng = RandomSource(args.seed)
    if args.kind == "bsc":
        if args.error_rate is None:
            raise ValueError("bsc channel needs --error-rate")
        bits = parse_bits(read_text(args.input))
        write_text(args.output, format_bits(apply_bsc(bits, BscSpec(args.error_rate), rng)))
        return
    if (args.ebn0 is None) == (args.sigma is None):
        raise ValueError("awgn channel needs exactly one of --ebn0 or --sigma")
    cfg = config_from_args(args)
    text = read_text(args.input)
    _check_rate(text, cfg)
    w = parse_waveform(text, cfg.sample_rate_hz)
    spec = AwgnSpec(ebn0_db=args.ebn0) if args.ebn0 is not None else AwgnSpec(noise_sigma=args.sigma)
    write_text(args.output, format_waveform(apply_awgn(w, spec, cfg, rng)))


def _sweep_all(schemes, grid, error_rate, n_bits, cfg, seed, noiseless=False, workers=1):
    points = []
    for scheme in schemes:
        points += run_sweep(scheme, grid, error_rate, n_bits, cfg, seed,
                            noiseless=noiseless, workers=workers)
    return points


def cmd_sweep(args):
    cfg = config_from_args(args)
    points = _sweep_all(args.schemes, args.ebn0, args.error_rate, args.n_bits, cfg, args.seed,
                        args.noiseless, args.workers)
    write_text(args.output, format_sweep(points))


def _group_series(points, prefix=""):
    groups = {}
    for p in points:
        groups.setdefault((p.scheme.value, p.error_rate), []).append(p)
    return [(f"{prefix}{s.upper()} p={r:g}", pts) for (s, r), pts in groups.items()]


def cmd_plot(args):
    if args.kind == "waterfall":
        series = []
        for path in args.inputs:
            prefix = f"{Path(path).stem}: " if len(args.inputs) > 1 else ""
            series += _group_series(parse_sweep(read_text(path)), prefix)
        svg = plotting.ber_waterfall(series, title=args.title)
    else:
        labels = args.labels.split(",") if args.labels else [Path(p).stem for p in args.inputs]
        if len(labels) != len(args.inputs):
            raise ValueError("number of labels does not match number of inputs")
        panels = []
        for label, path in zip(labels, args.inputs):
            text = read_text(path)
            if text.startswith(WAVEFORM_HEADER):
                w = parse_waveform(text)
                panels.append((label, w.times(), w.samples, "line"))
            else:
                b = parse_bits(text)
                panels.append((label, np.arange(len(b)) / args.bit_rate, b, "step"))
        svg = plotting.waveform_stack(panels, title=args.title)
    write_text(args.output, svg)


def _bit_panel(label, bits, cfg):
    return (label, np.arange(len(bits)) / cfg.bit_rate_hz, np.asarray(bits, dtype=float), "step")


def _wave_panel(label, w):
    return (label, w.times(), w.samples, "line")


def cmd_figures(args):
    out = Path(args.out_dir or os.environ.get(OUTPUT_DIR_ENV) or "figures")
    out.mkdir(parents=True, exist_ok=True)
    cfg = config_from_args(args)
    bits = as_bits(PAPER_BITS)

    # modulation and demodulation of the paper's stream, one figure per scheme
    for num, scheme in ((3, Scheme.ASK), (4, Scheme.FSK), (5, Scheme.BPSK)):
        w = modulate(scheme, bits, cfg)
        rx, trace = demodulate(scheme, w, cfg)
        panels = [_bit_panel("message", bits, cfg)]
        if scheme is Scheme.FSK:
            for name, f, th in (("mark f1", cfg.fsk_f1_hz, cfg.fsk_theta1_rad),
                                ("space f2", cfg.fsk_f2_hz, cfg.fsk_theta2_rad)):
                c = bit_carrier(cfg, f, len(bits), th).ravel()
                panels.append(_wave_panel(name, Waveform(cfg.sample_rate_hz, c)))
        else:
            c = bit_carrier(cfg, cfg.carrier_freq_hz, len(bits)).ravel()
            panels.append(_wave_panel("carrier", Waveform(cfg.sample_rate_hz, c)))
        panels += [_wave_panel(f"{scheme.value.upper()}", w), _bit_panel("demodulated", rx, cfg)]
        stem = f"fig{num}_{scheme.value}"
        write_text(out / f"{stem}.csv", format_waveform(w))
        write_text(out / f"{stem}_trace.csv", trace.to_csv())
        write_text(out / f"{stem}.svg", plotting.waveform_stack(
            panels, title=f"{scheme.value.upper()} modulation and demodulation"))

    master = RandomSource(args.seed)
    schemes = list(Scheme)
    for pattern_fig, ber_fig, p in ((6, 7, 0.0), (8, 9, 0.2), (10, 11, 0.4), (12, 13, 0.6)):
        src = generate_bits(args.pattern_bits, master.spawn(pattern_fig, 0))
        sent = apply_bsc(src, BscSpec(p), master.spawn(pattern_fig, 1))
        panels = [_bit_panel("input", src, cfg)]
        if p > 0:
            panels.append(_bit_panel(f"after p={p:g}", sent, cfg))
        for scheme in schemes:
            panels.append(_wave_panel(scheme.value.upper(), modulate(scheme, sent, cfg)))
        write_text(out / f"fig{pattern_fig}_bits_p{p:g}.svg", plotting.waveform_stack(
            panels, title=f"Input and modulated bit pattern, error rate {p:g}"))
        write_text(out / f"fig{pattern_fig}_input_bits.txt", format_bits(src))
        write_text(out / f"fig{pattern_fig}_sent_bits_p{p:g}.txt", format_bits(sent))

        points = _sweep_all(schemes, args.ebn0, p, args.n_bits, cfg, args.seed, workers=args.workers)
        write_text(out / f"fig{ber_fig}_ber_p{p:g}.csv", format_sweep(points))
        write_text(out / f"fig{ber_fig}_ber_p{p:g}.svg", plotting.ber_waterfall(
            _group_series(points), title=f"BER vs Eb/N0, error rate {p:g}"))
    print(f"figures written to {out}", file=sys.stderr)


# -- parser -------------------------------------------------------------------

def _modem_parent():
    d = ModemConfig()
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("modem configuration")
    g.add_argument("--amplitude", "-A", type=float, default=d.amplitude, help="carrier amplitude")
    g.add_argument("--fc", type=float, default=d.carrier_freq_hz, help="ASK/BPSK carrier (Hz)")
    g.add_argument("--f1", type=float, default=d.fsk_f1_hz, help="FSK mark frequency, bit 1 (Hz)")
    g.add_argument("--f2", type=float, default=d.fsk_f2_hz, help="FSK space frequency, bit 0 (Hz)")
    g.add_argument("--theta1", type=float, default=d.fsk_theta1_rad, help="FSK mark phase (rad)")
    g.add_argument("--theta2", type=float, default=d.fsk_theta2_rad, help="FSK space phase (rad)")
    g.add_argument("--bit-rate", type=float, default=d.bit_rate_hz, help="bits per second")
    g.add_argument("--spb", type=int, default=d.samples_per_bit, help="samples per bit")
    return p


def build_parser():
    modem = _modem_parent()
    parser = argparse.ArgumentParser(prog="modemsim", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("modulate", parents=[modem], help="bits -> waveform CSV")
    p.add_argument("--scheme", type=scheme_arg, required=True)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--bits", help="inline bit string, e.g. 1011010")
    src.add_argument("--bits-file", help="file of ASCII 0/1")
    src.add_argument("--random", type=int, metavar="N", help="N random bits from --seed")
    p.add_argument("--seed", type=seed_arg, default=0)
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_modulate)

    p = sub.add_parser("demodulate", parents=[modem], help="waveform CSV -> bits")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--scheme", type=scheme_arg, required=True)
    p.add_argument("-o", "--output", help="bits file (default: print to stdout)")
    p.add_argument("--trace", help="write per-bit decision trace CSV")
    p.set_defaults(func=cmd_demodulate)

    p = sub.add_parser("channel", parents=[modem], help="AWGN on a waveform or BSC on bits")
    p.add_argument("kind", choices=["awgn", "bsc"])
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--ebn0", type=float, help="target Eb/N0 (dB) for awgn")
    p.add_argument("--sigma", type=float, help="explicit per-sample noise sigma for awgn")
    p.add_argument("--error-rate", type=probability_arg, help="flip probability for bsc")
    p.add_argument("--seed", type=seed_arg, default=0)
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_channel)

    p = sub.add_parser("sweep", parents=[modem], help="Monte Carlo BER vs Eb/N0 -> sweep CSV")
    p.add_argument("--schemes", type=schemes_arg, default=list(Scheme))
    p.add_argument("--ebn0", type=parse_grid, default=parse_grid("0:1:10"), help="start:step:stop dB")
    p.add_argument("--error-rate", type=probability_arg, default=0.0)
    p.add_argument("--bits", dest="n_bits", type=int, default=100000, help="bits per point")
    p.add_argument("--seed", type=seed_arg, default=0)
    p.add_argument("--noiseless", action="store_true", help="disable the AWGN stage")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("plot", help="render CSVs to SVG")
    p.add_argument("kind", choices=["waterfall", "waveform"])
    p.add_argument("inputs", nargs="+")
    p.add_argument("--labels", help="comma-separated panel labels (waveform)")
    p.add_argument("--bit-rate", type=float, default=1.0, help="bit rate for bits-file panels")
    p.add_argument("--title", default="")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("figures", parents=[modem], help="reproduce the full figure set")
    p.add_argument("--out-dir", help=f"output directory (default ${OUTPUT_DIR_ENV} or ./figures)")
    p.add_argument("--ebn0", type=parse_grid, default=parse_grid("0:1:10"))
    p.add_argument("--bits", dest="n_bits", type=int, default=20000, help="bits per sweep point")
    p.add_argument("--pattern-bits", type=int, default=20, help="length of the pattern figures")
    p.add_argument("--seed", type=seed_arg, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_figures)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        args.func(args)
    except (OSError, ValueError) as exc:
        print(f"modemsim {args.command}: error: {exc}", file=sys.stderr)
        return 1
    return 0


run_cli = main

if __name__ == "__main__":
    sys.exit(main())
