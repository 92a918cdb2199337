"""Compare the compiled and numpy kernel backends on the hot paths.

    python3 benchmarks/bench_kernels.py [--K 50] [--n 2000] [--repeat 5]

Each row reports the best-of-``repeat`` wall time per backend and the speedup.
Results of the two backends are also compared for exact equality.
"""
import argparse
import timeit

import numpy as np

from lscheck import kernels
from lscheck.correspondences import make_F, make_F2, sample_array
from lscheck.seq import unit_ray


def workloads(K: int, n: int, seed: int):
    F = make_F(0.1, K)
    F2 = make_F2(0.1, K)
    rng = np.random.default_rng(seed)
    pts = sample_array(make_F2(0.0, K), n, "boundary", seed)
    pts = pts + rng.normal(0.0, 0.3, pts.shape)
    rays = np.stack([unit_ray(k, K).coords for k in range(2, K + 1)])
    t1s = rng.uniform(-5, 5, n)

    def caps(m):
        return [m.cap_values(F2.slopes, F2.intercepts, t) for t in t1s]

    def contains(m):
        return m.contains_rows(F2.slopes, F2.intercepts, F2.t1_lo, F2.t1_hi, pts, 1e-12)

    def feasible(m):
        return [m.feasible_interval(F2.slopes, F2.intercepts, F2.t1_lo, F2.t1_hi, c, 0.5) for c in pts]

    def bisect(m):
        return [m.bisect_distance(F.slopes, F.intercepts, F.t1_lo, F.t1_hi, c, 64.0, 1e-12, 1e-12, 200) for c in rays]

    return {"cap_values": caps, "contains_rows": contains, "feasible_interval": feasible, "bisect_distance(rays)": bisect}


def same(a, b) -> bool:
    if isinstance(a, list):
        return len(a) == len(b) and all(same(u, v) for u, v in zip(a, b))
    return bool(np.array_equal(np.asarray(a), np.asarray(b)))


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--K", type=int, default=50)
    ap.add_argument("--n", type=int, default=2000)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    backends = kernels.available_backends()
    if "cython" not in backends:
        print("compiled backend not built; timing the numpy fallback only")
    names = [b for b in ("python", "cython") if b in backends]
    print(f"K={args.K} n={args.n} best of {args.repeat}")
    print(f"{'kernel':<24}" + "".join(f"{b + ' [ms]':>14}" for b in names) + f"{'speedup':>10}{'equal':>8}")
    for label, fn in workloads(args.K, args.n, args.seed).items():
        times = {b: min(timeit.repeat(lambda: fn(backends[b]), number=1, repeat=args.repeat)) for b in names}
        speed = times["python"] / times["cython"] if "cython" in times else float("nan")
        eq = same(fn(backends["python"]), fn(backends["cython"])) if "cython" in times else "-"
        print(f"{label:<24}" + "".join(f"{1e3 * times[b]:>14.2f}" for b in names) + f"{speed:>9.1f}x{str(eq):>8}")


if __name__ == "__main__":
    main()
