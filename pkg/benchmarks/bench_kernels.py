"""Benchmark the compiled tile-scan kernel against the pure-Python twin.

The scan is the hot inner loop of the exhaustive degree-diameter search:
every candidate lattice gets one pruned scan, and the winners get a full
one.  This driver times both kernels on identical workloads, checks that
they produce identical output, and prints the speedup.

Usage: python3 benchmarks/bench_kernels.py [--quick]
"""

import argparse
import time

from cayleycover import _tilescan_py
from cayleycover.lattices import enumerate_sublattices

try:
    from cayleycover import _tilescan
except ImportError:
    _tilescan = None


def workload(n, indices, prune_of):
    jobs = []
    for m in indices:
        for lattice in enumerate_sublattices(n, m):
            jobs.append(
                (lattice.diagonal, lattice.flat(), lattice.det, prune_of(lattice))
            )
    return jobs


def run(kernel, jobs):
    started = time.perf_counter()
    out = [kernel.scan_tile(*job) for job in jobs]
    return time.perf_counter() - started, out


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--quick", action="store_true", help="smaller workloads")
    args = parser.parse_args()

    scale = 2 if args.quick else 1
    suites = [
        ("full tiles, n=2, index 1..{}".format(60 // scale),
         workload(2, range(1, 61 // scale), lambda lat: -1)),
        ("full tiles, n=3, index 1..{}".format(40 // scale),
         workload(3, range(1, 41 // scale), lambda lat: -1)),
        ("pruned search scans, n=3, d=3, index 1..{}".format(30 // scale),
         workload(3, range(1, 31 // scale), lambda lat: 3)),
        ("pruned search scans, n=4, d=2, index 1..{}".format(16 // scale),
         workload(4, range(1, 17 // scale), lambda lat: 2)),
    ]

    if _tilescan is None:
        print("compiled kernel not built; timing the pure kernel only")
    header = f"{'workload':<44} {'jobs':>6} {'pure':>9} {'compiled':>9} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, jobs in suites:
        pure_time, pure_out = run(_tilescan_py, jobs)
        if _tilescan is None:
            print(f"{name:<44} {len(jobs):>6} {pure_time:>8.3f}s {'-':>9} {'-':>8}")
            continue
        fast_time, fast_out = run(_tilescan, jobs)
        assert pure_out == fast_out, "kernels disagree on " + name
        print(
            f"{name:<44} {len(jobs):>6} {pure_time:>8.3f}s "
            f"{fast_time:>8.3f}s {pure_time / fast_time:>7.1f}x"
        )


if __name__ == "__main__":
    main()
