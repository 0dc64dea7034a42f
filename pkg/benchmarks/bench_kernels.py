"""Benchmark the compiled training kernel against the NumPy fallback.

Usage:  python benchmarks/bench_kernels.py [--batch 100] [--n-words 20]
        [--dim 400] [--repeats 200]

The shapes default to the production-scale training step: batches of 100
couples, 20-word fragments, 400-dimensional embeddings.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from shortsim.kernels import _numpy

try:
    from shortsim.kernels import _inner
except ImportError:
    _inner = None


def time_backend(impl, w1, w2, signs, factors, reg_lambda, repeats):
    impl.batch_objective_grad(w1, w2, signs, factors, reg_lambda)  # warm up
    start = time.perf_counter()
    for _ in range(repeats):
        impl.batch_objective_grad(w1, w2, signs, factors, reg_lambda)
    return (time.perf_counter() - start) / repeats


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--batch", type=int, default=100)
    parser.add_argument("--n-words", type=int, default=20)
    parser.add_argument("--dim", type=int, default=400)
    parser.add_argument("--repeats", type=int, default=200)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    w1 = rng.normal(size=(args.batch, args.n_words, args.dim))
    w2 = rng.normal(size=(args.batch, args.n_words, args.dim))
    signs = rng.choice([-1.0, 1.0], size=args.batch)
    factors = np.full(args.n_words, 0.5)

    print(
        f"batch_objective_grad  batch={args.batch} n_words={args.n_words} "
        f"dim={args.dim} repeats={args.repeats}"
    )

    t_numpy = time_backend(_numpy, w1, w2, signs, factors, 0.0015, args.repeats)
    rate = args.batch / t_numpy
    print(f"  numpy    {t_numpy * 1e3:8.3f} ms/batch  ({rate:,.0f} couples/s)")

    if _inner is None:
        print("  compiled backend not built; run pip install -e . first")
        return

    t_inner = time_backend(_inner, w1, w2, signs, factors, 0.0015, args.repeats)
    rate = args.batch / t_inner
    print(f"  compiled {t_inner * 1e3:8.3f} ms/batch  ({rate:,.0f} couples/s)")
    print(f"  speedup  {t_numpy / t_inner:8.2f}x")

    obj_np, grad_np = _numpy.batch_objective_grad(w1, w2, signs, factors, 0.0015)
    obj_cy, grad_cy = _inner.batch_objective_grad(w1, w2, signs, factors, 0.0015)
    drift = max(abs(obj_np - obj_cy), float(np.abs(grad_np - grad_cy).max()))
    print(f"  max numeric difference between backends: {drift:.3g}")


if __name__ == "__main__":
    main()
