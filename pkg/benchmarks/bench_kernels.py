"""Compare the numba and numpy backends of the hot kernels.

    python3 benchmarks/bench_kernels.py [--gmax 100] [--repeat 3]

Reports the best wall time per backend and checks the two agree.
"""

import argparse
import time

import numpy as np

from scrollhn import _kernels
from scrollhn.nodal import degeneration


def sweep(backend, gmax):
    out = []
    for g in range(5, gmax + 1):
        out.append(_kernels.enumerate_destabilizers(g, degeneration(g).caps, backend))
    return out


def subset_ranks(backend, n=16, seed=0):
    rng = np.random.default_rng(seed)
    rows = rng.integers(0, _kernels.MODULUS, size=(n, n), dtype=np.int64)
    masks = np.arange(1, 1 << n, dtype=np.uint64)
    return _kernels.subset_ranks_mod_p(rows, masks, backend)


def best_time(fn, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--gmax", type=int, default=100)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not _kernels.HAVE_NUMBA:
        print("numba not importable; only the numpy backend can run")
        return

    # compile outside the timed region
    sweep("numba", 6)
    subset_ranks("numba", n=4)

    cases = [
        (f"destabilizer sweep g=5..{args.gmax}", lambda b: sweep(b, args.gmax)),
        ("subset ranks mod p, 16x16, 65535 subsets", lambda b: subset_ranks(b)),
    ]
    print(f"{'kernel':<44}{'numba [s]':>11}{'numpy [s]':>11}{'speedup':>9}")
    for name, fn in cases:
        t_nb, r_nb = best_time(lambda: fn("numba"), args.repeat)
        t_np, r_np = best_time(lambda: fn("numpy"), args.repeat)
        same = all(np.array_equal(a, b) for a, b in zip(r_nb, r_np)) if isinstance(r_nb, list) else np.array_equal(r_nb, r_np)
        if not same:
            raise SystemExit(f"backends disagree on {name}")
        print(f"{name:<44}{t_nb:>11.3f}{t_np:>11.3f}{t_np / t_nb:>8.1f}x")


if __name__ == "__main__":
    main()
