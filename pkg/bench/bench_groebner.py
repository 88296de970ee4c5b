#!/usr/bin/env python3
"""Benchmark the compiled reduction kernel against the pure-numpy one.

Runs Buchberger on seeded random ideal and submodule families under
both backends, checks that the reduced bases agree element for element,
and prints median/min timings with the speedup.

Usage:
    python3 bench/bench_groebner.py [--cases N] [--nvars D] [--gens G]
                                    [--degree K] [--iters I] [--seed S]
"""

from __future__ import annotations

import argparse
import random
import sys
import time
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from reespow import Element, Ring, backend, buchberger  # noqa: E402


def make_cases(n_cases: int, nvars: int, n_gens: int, degree: int, seed: int):
    """Seeded random generator families: ideals and rank-2 submodules."""
    rng = random.Random(seed)
    names = tuple("abcdefgh"[:nvars])
    ring = Ring(names)
    cases = []
    while len(cases) < n_cases:
        rank = 1 if len(cases) % 2 == 0 else 2
        gens = []
        for _ in range(n_gens):
            total = Element.zero(ring, rank)
            for c in range(rank):
                comp = Element.zero(ring, 1)
                for _ in range(rng.randint(1, 3)):
                    deg = rng.randint(1, degree)
                    monos = ring.monomials_of_degree(deg)
                    exps = rng.choice(monos)
                    coeff = rng.randint(1, ring.char - 1)
                    comp = comp + Element.monomial(ring, exps, coeff)
                total = total + comp.embedded(rank, c)
            if not total.is_zero():
                gens.append(total)
        if gens:
            cases.append(gens)
    return cases


def run_all(cases):
    return [buchberger(gens).elements for gens in cases]


def benchmark_one(label: str, cases, iters: int) -> dict:
    times = []
    bases = None
    for _ in range(iters):
        t0 = time.perf_counter()
        bases = run_all(cases)
        times.append(time.perf_counter() - t0)
    arr = np.array(times)
    return {
        "label": label,
        "mean": arr.mean(),
        "std": arr.std(),
        "min": arr.min(),
        "median": float(np.median(arr)),
        "bases": bases,
    }


def run_benchmarks(args) -> int:
    cases = make_cases(args.cases, args.nvars, args.gens, args.degree, args.seed)
    print(f"Groebner backend benchmark: {len(cases)} cases, "
          f"{args.nvars} vars, {args.gens} gens of degree <= {args.degree}, "
          f"{args.iters} iterations, seed {args.seed}")
    print()

    results = []
    try:
        backend.configure("numpy")
        results.append(benchmark_one("pure numpy", cases, args.iters))

        if backend.HAS_NUMBA:
            backend.configure("numba")
            print("warming up the compiled kernel...", end=" ", flush=True)
            t0 = time.perf_counter()
            run_all(cases[:1])
            print(f"done ({time.perf_counter() - t0:.2f}s compile)")
            results.append(benchmark_one("numba kernel", cases, args.iters))
        else:
            print("numba not importable, timing the numpy path only")
    finally:
        backend.configure(None)

    print()
    baseline = results[0]["median"]
    print(f"{'Backend':<16s} {'Median (ms)':>12s} {'Min (ms)':>10s} {'Speedup':>8s}")
    print("-" * 50)
    for res in results:
        speedup = baseline / res["median"] if res["median"] > 0 else float("inf")
        print(f"{res['label']:<16s} {res['median'] * 1000:>12.2f} "
              f"{res['min'] * 1000:>10.2f} {speedup:>7.2f}x")

    if len(results) == 2:
        agree = results[0]["bases"] == results[1]["bases"]
        print()
        print(f"bases agree element for element: {'yes' if agree else 'NO'}")
        if not agree:
            return 1
    return 0


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--cases", type=int, default=40, help="number of generator families")
    parser.add_argument("--nvars", type=int, default=3, help="number of ring variables")
    parser.add_argument("--gens", type=int, default=4, help="generators per family")
    parser.add_argument("--degree", type=int, default=4, help="maximum generator degree")
    parser.add_argument("--iters", type=int, default=5, help="timing repetitions")
    parser.add_argument("--seed", type=int, default=20260814, help="random seed")
    return run_benchmarks(parser.parse_args())


if __name__ == "__main__":
    sys.exit(main())
