"""Compare the numba and pure-numpy GF(p) kernels, and exact rank over Q vs GF(p).

    python3 benchmarks/bench_kernels.py --sizes 64 128 256 --prime 32003 --repeat 3
"""

import argparse
import statistics
import time

import numpy as np

from nilcomm import _kernels
from nilcomm.linalg import GF, QQ, Matrix, rank


def best_time(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times), statistics.median(times)


def bench_gfp(sizes, p, repeat, rng):
    rows = []
    for n in sizes:
        a = rng.integers(0, p, size=(n, n), dtype=np.int64)
        b = rng.integers(0, p, size=(n, n), dtype=np.int64)
        cases = {
            "rref": (lambda: _kernels.rref_modp_numpy(a, p),
                     (lambda: _kernels.rref_modp_numba(a, p)) if _kernels.HAVE_NUMBA else None),
            "matmul": (lambda: _kernels.matmul_modp_numpy(a, b, p),
                       (lambda: _kernels.matmul_modp_numba(a, b, p)) if _kernels.HAVE_NUMBA else None),
        }
        for name, (np_fn, nb_fn) in cases.items():
            t_np, _ = best_time(np_fn, repeat)
            if nb_fn is not None:
                nb_fn()  # compile outside the timed region
                t_nb, _ = best_time(nb_fn, repeat)
            else:
                t_nb = float("nan")
            rows.append((name, n, t_np, t_nb))
    return rows


def bench_fields(sizes, p, repeat, rng):
    rows = []
    for n in sizes:
        data = rng.integers(-3, 4, size=(n, n)).tolist()
        q, f = Matrix(data, QQ), Matrix(data, GF(p))
        rows.append((n, best_time(lambda: rank(q), repeat)[0], best_time(lambda: rank(f), repeat)[0]))
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[64, 128, 256])
    ap.add_argument("--prime", type=int, default=32003)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--field-sizes", type=int, nargs="*", default=[32, 64],
                    help="sizes for the Q vs GF(p) rank comparison (empty to skip)")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    rng = np.random.default_rng(args.seed)

    print(f"GF({args.prime}) kernels, best of {args.repeat}; numba available: {_kernels.HAVE_NUMBA}")
    print(f"{'kernel':<8}{'n':>6}{'numpy [s]':>12}{'numba [s]':>12}{'speedup':>9}")
    for name, n, t_np, t_nb in bench_gfp(args.sizes, args.prime, args.repeat, rng):
        print(f"{name:<8}{n:>6}{t_np:>12.4f}{t_nb:>12.4f}{t_np / t_nb:>8.1f}x")
    if args.field_sizes:
        print(f"\nexact rank, Q (Fraction, fraction-free elimination) vs GF({args.prime}) (active backend "
              f"{_kernels.BACKEND})")
        print(f"{'n':>6}{'Q [s]':>12}{'GF(p) [s]':>12}")
        for n, t_q, t_p in bench_fields(args.field_sizes, args.prime, args.repeat, rng):
            print(f"{n:>6}{t_q:>12.4f}{t_p:>12.4f}")


if __name__ == "__main__":
    main()
