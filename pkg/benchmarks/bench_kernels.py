"""Compare the compiled and pure-Python kernels on synthetic pages.

Usage: python3 benchmarks/bench_kernels.py [--pages N] [--repeats N]
"""
from __future__ import annotations

import argparse
import statistics
import time

from bartree._kernels import available_backends
from bartree.synth import generate_template


def _median_ms(fn, repeats: int) -> float:
    samples = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        samples.append((time.perf_counter() - t0) * 1000.0)
    return statistics.median(samples)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--pages", type=int, default=20)
    ap.add_argument("--repeats", type=int, default=7)
    args = ap.parse_args()

    pages = [generate_template(25, s).html.encode() * 20 for s in range(args.pages)]
    size_kb = sum(map(len, pages)) / 1024
    backends = available_backends()
    ref = backends["python"]
    pair_inputs = []
    for src in pages:
        toks = ref.scan_markup(src)
        names = [hash(src[t[3]:t[4]]) % 64 for t in toks if t[0]]
        pushers = [t[0] == ref.OPEN for t in toks if t[0]]
        pair_inputs.append((names, pushers))

    print(f"{len(pages)} pages, {size_kb:.0f} KiB total, backends: {', '.join(backends)}")
    results = {}
    for name, mod in backends.items():
        scan = _median_ms(lambda: [mod.scan_markup(s) for s in pages], args.repeats)
        pair = _median_ms(lambda: [mod.match_pairs(n, p) for n, p in pair_inputs], args.repeats)
        results[name] = (scan, pair)
        print(f"{name:>8}: scan_markup {scan:8.2f} ms   match_pairs {pair:8.2f} ms")
    if "cython" in results:
        ps, pp = results["python"]
        cs, cp = results["cython"]
        print(f" speedup: scan_markup x{ps / cs:.1f}   match_pairs x{pp / cp:.1f}")


if __name__ == "__main__":
    main()
