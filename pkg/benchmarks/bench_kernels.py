"""Compare the compiled and pure-Python kernel backends on the hot workload.

The workload mirrors what the chained-gap sweep does per (n, d) cell: build
the direction blocks for every sub-setting, then an amplitude table per
setting pair that the gap reads.  Both backends execute the identical call
sequence; the compiled one must also agree with the pure one entrywise.

Run:  python3 benchmarks/bench_kernels.py [--n 32] [--d 12] [--repeat 3]
"""

from __future__ import annotations

import argparse
import math
import time

from qontology._kernels import _fallback

try:
    from qontology._kernels import _core
except ImportError:
    _core = None


def chain_pairs(n: int) -> list[tuple[int, int]]:
    pairs = [(0, 1)]
    for a in range(2, 2 * n, 2):
        pairs.append((a, a - 1))
        pairs.append((a, a + 1))
    pairs.append((0, 2 * n - 1))
    return pairs


def workload(impl, n: int, d: int) -> complex:
    big = d + 1
    amp = 1.0 / math.sqrt(d)
    state = [0j] * (big * big)
    for j in range(d):
        state[j * big + j] = amp

    def stack(s: int, conjugate: bool) -> list[complex]:
        flat: list[complex] = []
        if s == 0:
            rows = [
                [1 + 0j if m == j else 0j for m in range(d)] for j in range(d)
            ]
        else:
            block = impl.measurement_block(n, d, s)
            rows = [block[j * d : (j + 1) * d] for j in range(d)]
        for j in range(d):
            row = rows[j] + [0j]
            if conjugate:
                row = [z.conjugate() for z in row]
            flat.extend(row)
        flat.extend([0j] * d + [1 + 0j])
        return flat

    a_stacks = {a: stack(a, False) for a in range(0, 2 * n, 2)}
    b_stacks = {b: stack(b, True) for b in range(1, 2 * n, 2)}
    acc = 0j
    for a, b in chain_pairs(n):
        out = impl.amplitude_table(state, big, big, a_stacks[a], big, b_stacks[b], big)
        acc += sum(out)
    return acc


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=32)
    parser.add_argument("--d", type=int, default=12)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    print(f"workload: chain n={args.n}, d={args.d}, best of {args.repeat}")
    timings = {}
    for name, impl in (("pure", _fallback), ("compiled", _core)):
        if impl is None:
            print(f"{name:>9}: extension not built, skipped")
            continue
        best = float("inf")
        check = None
        for _ in range(args.repeat):
            t0 = time.perf_counter()
            check = workload(impl, args.n, args.d)
            best = min(best, time.perf_counter() - t0)
        timings[name] = best
        print(f"{name:>9}: {best * 1000:9.2f} ms   (checksum {check:.6f})")
    if "pure" in timings and "compiled" in timings:
        print(f"  speedup: {timings['pure'] / timings['compiled']:.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
