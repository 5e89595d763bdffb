"""Timing comparison of the jitted kernels against their numpy fallbacks.

Runs the two hot kernels (oscillatory phase sums, transfer-matrix momentum
scans) on sweep-sized inputs through both code paths and reports the median
wall time per call.  The jitted path is skipped with a note when numba is
unavailable or disabled via CATPACKET_NO_NUMBA.

Usage: python3 benchmarks/bench_kernels.py [--repeats N] [--n-energies N]
"""

import argparse
import time

import numpy as np

from catpacket import kernels


def median_time(fn, repeats):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return float(np.median(times))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeats", type=int, default=7, help="timed calls per case")
    ap.add_argument("--n-energies", type=int, default=4096,
                    help="quadrature nodes per integral")
    ap.add_argument("--n-taus", type=int, default=512, help="lag values per sweep")
    ap.add_argument("--n-momenta", type=int, default=4096,
                    help="momentum grid for the transfer scan")
    args = ap.parse_args()

    rng = np.random.default_rng(7)
    energies = np.sort(rng.uniform(0.05, 8.0, args.n_energies))
    weights = rng.uniform(0.0, 1.0, args.n_energies)
    taus = np.linspace(0.0, 64.0, args.n_taus)

    p = np.linspace(0.2, 3.0, args.n_momenta)
    seg_widths = np.array([1.0, 2.2214, 1.0])
    seg_heights = np.array([3.5, 0.0, 3.5])

    cases = [
        ("oscillatory_sums", "numpy",
         lambda: kernels.oscillatory_sums_numpy(weights, energies, taus)),
        ("transfer_scan", "numpy",
         lambda: kernels.transfer_scan_numpy(p, 1.0, seg_widths, seg_heights,
                                             0.0, 4.2214)),
    ]
    if kernels.NUMBA_ENABLED:
        cases += [
            ("oscillatory_sums", "numba",
             lambda: kernels.oscillatory_sums_numba(weights, energies, taus)),
            ("transfer_scan", "numba",
             lambda: kernels.transfer_scan_numba(p, 1.0, seg_widths, seg_heights,
                                                 0.0, 4.2214)),
        ]
    else:
        print("numba path disabled (CATPACKET_NO_NUMBA set or numba missing); "
              "timing the numpy fallback only\n")

    # first call pays any JIT compilation cost; keep it out of the timings
    results = {}
    for kernel, path, fn in cases:
        fn()
        results[(kernel, path)] = median_time(fn, args.repeats)

    print(f"{'kernel':<18} {'path':<7} {'median/call':>12}")
    for (kernel, path), t in results.items():
        print(f"{kernel:<18} {path:<7} {t * 1e3:>10.2f}ms")
    for kernel in ("oscillatory_sums", "transfer_scan"):
        if (kernel, "numba") in results:
            speedup = results[(kernel, "numpy")] / results[(kernel, "numba")]
            print(f"{kernel}: numba speedup x{speedup:.1f}")


if __name__ == "__main__":
    main()
