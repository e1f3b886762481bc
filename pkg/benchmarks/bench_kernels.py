#!/usr/bin/env python3
"""Benchmark the numba kernels against the numpy fallbacks.

Times the three hot loops (group convolution, structure counts, quotient
convolution) on order-120 groups, calling each backend implementation
directly so the COSETALG_NO_NUMBA flag is irrelevant here.

    python benchmarks/bench_kernels.py [--repeats 200]
"""

import argparse
import time

import numpy as np

import cosetalg as ca
from cosetalg._kernels import IMPLEMENTATIONS


def timeit(fn, *args, repeats):
    fn(*args)  # warm-up / JIT
    start = time.perf_counter()
    for _ in range(repeats):
        fn(*args)
    return (time.perf_counter() - start) / repeats


def bench_pair(name, G, H, repeats):
    Q = ca.build_coset_space(G, H)
    members = np.array(H.members, dtype=np.int64)
    rng = np.random.Generator(np.random.PCG64(0))
    w1 = rng.random(G.order) + 1j * rng.random(G.order)
    w2 = rng.random(G.order) + 1j * rng.random(G.order)
    s1 = rng.random(Q.coset_count) + 1j * rng.random(Q.coset_count)
    s2 = rng.random(Q.coset_count) + 1j * rng.random(Q.coset_count)
    c = IMPLEMENTATIONS["numpy"]["structure_counts"](
        G.mul, Q.reps, members, Q.coset_of) / H.order

    print(f"\n{name}: |G|={G.order}, |H|={H.order}, cosets={Q.coset_count}")
    header = f"  {'kernel':18s}" + "".join(f"{b:>12s}" for b in sorted(IMPLEMENTATIONS))
    print(header + f"{'speedup':>10s}")
    cases = [
        ("group_convolve", (G.mul, w1, w2)),
        ("structure_counts", (G.mul, Q.reps, members, Q.coset_of)),
        ("quotient_convolve", (c, s1, s2)),
    ]
    for kernel, args in cases:
        times = {b: timeit(IMPLEMENTATIONS[b][kernel], *args, repeats=repeats)
                 for b in sorted(IMPLEMENTATIONS)}
        row = f"  {kernel:18s}" + "".join(f"{times[b] * 1e6:>10.1f}us" for b in sorted(times))
        if "numba" in times:
            row += f"{times['numpy'] / times['numba']:>9.1f}x"
        print(row)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=200)
    args = parser.parse_args()

    print(f"backends available: {', '.join(sorted(IMPLEMENTATIONS))}")

    d60 = ca.builtin_catalog("dihedral", 60)
    refl = d60.labels[d60.order - 1]
    bench_pair("D60 / <reflection>", d60, ca.subgroup_from_tokens(d60, [refl]),
               args.repeats)

    s5 = ca.builtin_catalog("symmetric", 5)
    stab = ca.subgroup_from_tokens(s5, ["(12)", "(1234)"])  # S4 point stabilizer
    bench_pair("S5 / S4", s5, stab, args.repeats)

    s5_triv = ca.generate_subgroup(s5, [])
    bench_pair("S5 / {e}  (widest tensor)", s5, s5_triv, max(1, args.repeats // 10))


if __name__ == "__main__":
    main()
