"""Compare the numba and numpy kernel backends.

    python3 benchmarks/bench_kernels.py --n 1 2 4 8 16 32 --depth 8 --repeat 2000

Times one raw kernel call (no DilationState wrapping) for each operator kind,
and a full ``check_commutation`` run through the engine, per backend.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from ando_dilation._kernels import numba_impl, numpy_impl
from ando_dilation.engine import classical4_specs, minimal_specs
from ando_dilation.pairs import generate_commuting_pair
from ando_dilation.verify import check_commutation


def _time(fn, repeat):
    fn()  # warm-up, triggers numba compilation
    t0 = time.perf_counter()
    for _ in range(repeat):
        fn()
    return (time.perf_counter() - t0) / repeat


def bench_raw(n, depth, repeat, backends):
    pair = generate_commuting_pair(0, n)
    rows = []
    for spec in (*minimal_specs(pair), *classical4_specs(pair)):
        rng = np.random.default_rng(0)
        h = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        b = rng.standard_normal((depth, spec.block_dim)) + 1j * rng.standard_normal((depth, spec.block_dim))
        u = spec.unitary if spec.kind.index == 1 else spec.unitary_inv
        name = {"minimal": "minimal", "classical4": "classical"}[spec.kind.family] + f"_v{spec.kind.index}"
        times = {}
        for impl in backends:
            kernel = getattr(impl, name)
            times[impl.name] = _time(lambda: kernel(spec._t, spec._d, u, h, b), repeat)
        rows.append((spec.kind.value, times))
    return rows


def bench_engine(n, trials, backends):
    import ando_dilation._kernels as k

    pair = generate_commuting_pair(0, n)
    v1, v2 = minimal_specs(pair)
    out = {}
    saved = k.kernels
    try:
        for impl in backends:
            k.kernels = impl
            out[impl.name] = _time(lambda: check_commutation(v1, v2, trials=trials), 1)
    finally:
        k.kernels = saved
    return out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, nargs="+", default=[1, 2, 4, 8, 16, 32])
    ap.add_argument("--depth", type=int, default=8)
    ap.add_argument("--repeat", type=int, default=2000)
    ap.add_argument("--trials", type=int, default=500)
    args = ap.parse_args(argv)

    backends = [numpy_impl] + ([numba_impl] if numba_impl is not None else [])
    if numba_impl is None:
        print("numba not installed; timing numpy only")
    names = [b.name for b in backends]
    print(f"raw kernel call, depth {args.depth}, microseconds")
    print(f"{'n':>4} {'kind':16s}" + "".join(f"{nm:>10s}" for nm in names) + ("   speedup" if len(names) == 2 else ""))
    for n in args.n:
        for kind, times in bench_raw(n, args.depth, args.repeat, backends):
            cells = "".join(f"{times[nm] * 1e6:10.2f}" for nm in names)
            extra = f"{times['numpy'] / times['numba']:9.1f}x" if len(names) == 2 else ""
            print(f"{n:>4} {kind:16s}{cells}{extra}")
    print(f"\ncheck_commutation with {args.trials} states, seconds")
    for n in args.n:
        times = bench_engine(n, args.trials, backends)
        print(f"{n:>4} " + "".join(f"{nm}={times[nm]:.3f}  " for nm in names))


if __name__ == "__main__":
    main()
