"""Compare the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--samples N] [--repeat R]

Also times one full Monte Carlo sweep point per backend.
"""
import argparse
import time

import numpy as np

import modemsim.demodulators
import modemsim.rng
from modemsim import _fallback
from modemsim.metrics import simulate_point
from modemsim.rng import RandomSource
from modemsim.signal import ModemConfig

try:
    from modemsim import _kernels
except ImportError:
    _kernels = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=1 << 22)
    ap.add_argument("--bits", type=int, default=50000, help="bits for the sweep-point timing")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    backends = [("python", _fallback)]
    if _kernels is None:
        print("compiled extension not built; timing the fallback only")
    else:
        backends.append(("compiled", _kernels))

    n = args.samples
    x = np.random.default_rng(0).standard_normal(n)
    ref = np.cos(np.arange(64) * 2 * np.pi * 4 / 64)
    cases = {
        "splitmix64 words": lambda k: k.splitmix64_words(1, 0, n),
        "uniforms": lambda k: k.uniforms(1, 0, n),
        "normals": lambda k: k.normals(1, 0, n),
        "add_normals": lambda k: k.add_normals(x, 0.5, 1, 0),
        "block_correlate": lambda k: k.block_correlate(x, ref, 64),
    }

    print(f"{'kernel':<20}" + "".join(f"{name:>14}" for name, _ in backends) + f"{'speedup':>10}")
    for label, fn in cases.items():
        times = [best_of(lambda: fn(k), args.repeat) for _, k in backends]
        row = f"{label:<20}" + "".join(f"{t / n * 1e9:>11.2f} ns" for t in times)
        if len(times) == 2:
            row += f"{times[0] / times[1]:>9.1f}x"
        print(row)

    cfg = ModemConfig()
    print(f"\nsweep point: {args.bits} bits x {cfg.samples_per_bit} samples, BPSK at 4 dB")
    for name, k in backends:
        modemsim.rng.kernels = k
        modemsim.demodulators.kernels = k
        t = best_of(lambda: simulate_point("bpsk", 4.0, 0.0, args.bits, cfg, RandomSource(1)),
                    args.repeat)
        errors = simulate_point("bpsk", 4.0, 0.0, args.bits, cfg, RandomSource(1))
        print(f"  {name:<10} {t:8.3f} s   errors={errors}")


if __name__ == "__main__":
    main()
