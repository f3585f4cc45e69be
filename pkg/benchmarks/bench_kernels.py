"""Time each enumeration kernel on the compiled and numpy backends.

``spectral_grid`` is shared by both backends (numpy FFT) and is not timed.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import timeit

from hyperkloosterman import kernels
from hyperkloosterman.core import build_context


def cases():
    c31, c61, c101, c211 = (build_context(p) for p in (31, 61, 101, 211))
    return {
        "pq_histogram p=31 s=4": lambda k: k.pq_histogram(31, 4, 1),
        "unit_product_q_histogram p=101 s=4": lambda k: k.unit_product_q_histogram(101, 4, c101.inv),
        "k_naive_sum p=31 s=3": lambda k: k.k_naive_sum(
            31, 3, 5, 2, c31.addchar, c31.roots, c31.dlog, c31.inv
        ),
        "gauss_direct p=211": lambda k: k.gauss_direct(211, c211.powg, c211.addchar, c211.roots),
        "pq_histogram p=61 s=3 lo=2": lambda k: k.pq_histogram(61, 3, 2),
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    backends = kernels.available_backends()
    names = sorted(backends)
    print(f"{'kernel':40s}" + "".join(f"{n:>12s}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    for label, fn in cases().items():
        times = {}
        for n in names:
            mod = backends[n]
            fn(mod)  # warm up
            times[n] = min(timeit.repeat(lambda: fn(mod), number=1, repeat=args.repeat))
        line = f"{label:40s}" + "".join(f"{times[n] * 1e3:10.2f}ms" for n in names)
        if "cython" in times:
            line += f"{times['python'] / times['cython']:11.1f}x"
        print(line)


if __name__ == "__main__":
    main()
