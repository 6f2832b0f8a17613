#!/usr/bin/env python3
"""Benchmark the compiled elimination kernels against the pure-Python twins.

Workloads are the rank/determinant computations that dominate the heavy
checks: generator-matrix ranks, the planar incidence matrices at n = 3, the
(4,2) incidence matrix at n = 4, and the reduced-block determinants.

Usage: python benchmarks/bench_kernels.py [--quick]
"""

import argparse
import time

from covpkit._kernels import _pykernels

try:
    from covpkit._kernels import _fastkernels
except ImportError:
    _fastkernels = None


def _generator_rows(d, s, n):
    from covpkit.savs import savs_generator_matrix

    return [list(row) for row in savs_generator_matrix(d, s, n).entries]


def _md_rows(d):
    from covpkit.covp import build_Md

    return [list(row) for row in build_Md(d).entries]


def _incidence_cols(d, s, n):
    # transposed augmented incidence matrix, the shape `rank` works on
    from covpkit.covp import build_incidence
    from covpkit.feasible import enumerate_general

    enum = enumerate_general(d, s, n)
    inc = build_incidence(enum.solutions, d, n)
    rows = [list(row) + [1] for row in inc.matrix.entries]
    return [list(col) for col in zip(*rows)]


def _reduced_block(k):
    from covpkit.covp import build_reduced

    A, B, C = build_reduced(k)
    return [
        [b + c - 2 * a for a, b, c in zip(ra, rb, rc)]
        for ra, rb, rc in zip(A.entries, B.entries, C.entries)
    ]


def bench(label, make_input, run, repeats=3):
    results = {}
    backends = [("pure", _pykernels)]
    if _fastkernels is not None:
        backends.append(("compiled", _fastkernels))
    for name, impl in backends:
        best = None
        value = None
        for _ in range(repeats):
            data = make_input()
            t0 = time.perf_counter()
            value = run(impl, data)
            elapsed = time.perf_counter() - t0
            best = elapsed if best is None else min(best, elapsed)
        results[name] = (best, value)
    pure_t, pure_v = results["pure"]
    line = f"{label:<42} pure {pure_t * 1000:9.1f} ms"
    if "compiled" in results:
        fast_t, fast_v = results["compiled"]
        assert fast_v == pure_v, f"backend disagreement on {label}"
        line += f"   compiled {fast_t * 1000:9.1f} ms   speedup {pure_t / fast_t:5.2f}x"
    print(line)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--quick", action="store_true", help="skip the largest inputs")
    args = parser.parse_args()

    if _fastkernels is None:
        print("compiled kernels not available; timing the pure backend only")

    def rank_of(impl, rows):
        return len(impl.echelon(rows, len(rows[0])))

    def det_of(impl, rows):
        return impl.det_bareiss(rows)

    bench("rank: generator matrix (4,2,3) 54x81", lambda: _generator_rows(4, 2, 3), rank_of)
    bench("rank: generator matrix (5,2,4) 160x1024", lambda: _generator_rows(5, 2, 4), rank_of)
    bench("rank: generator matrix (5,3,4) 640x1024", lambda: _generator_rows(5, 3, 4), rank_of)
    if not args.quick:
        bench(
            "rank: generator matrix (5,4,4) 1280x1024",
            lambda: _generator_rows(5, 4, 4),
            rank_of,
        )
    bench("rank: planar incidence M_6 96x729", lambda: _md_rows(6), rank_of)
    if not args.quick:
        bench(
            "rank: (4,2) n=4 incidence^T 257x6912",
            lambda: _incidence_cols(4, 2, 4),
            rank_of,
            repeats=1,
        )
    bench("det: reduced block combination k=5 64x64", lambda: _reduced_block(5), det_of)


if __name__ == "__main__":
    main()
