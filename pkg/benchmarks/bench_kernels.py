"""Benchmark the compiled solver kernel against the pure-Python twin.

Run:  python3 benchmarks/bench_kernels.py

Workloads mirror the acceptance sweeps: the syllable-abstracted solver
over the theorem families and the concrete resolution-vector solver used
for abstraction cross-validation.
"""

import itertools
import time

from linkgame import kernels


def family_sizes(max_len=3, max_size=3):
    out = []
    for n in range(1, max_len + 1):
        out += list(itertools.product(range(0, max_size + 1), repeat=n))
    return out


def bench_solve_sizes(backend, reps=1):
    t0 = time.perf_counter()
    for _ in range(reps):
        for sizes in family_sizes():
            for first in (True, False):
                backend.solve_sizes(sizes, first)
        backend.solve_sizes((4, 4, 4, 4), True)
        backend.solve_sizes((5, 5, 5), True)
    return time.perf_counter() - t0


def bench_solve_concrete(backend, reps=1):
    t0 = time.perf_counter()
    for _ in range(reps):
        for sizes in [(2, 2, 2), (3, 3), (3, 1, 2), (4, 4), (3, 3, 3)]:
            syl = tuple(i for i, b in enumerate(sizes) for _ in range(b))
            init = (0,) * len(syl)
            for first in (True, False):
                backend.solve_concrete(syl, len(sizes), init, first)
    return time.perf_counter() - t0


def bench_terminal_enum(backend, reps=20):
    t0 = time.perf_counter()
    for _ in range(reps):
        for sizes in [(0, 4, 0, 4), (0, 3, 0, 3), (0, 4)]:
            backend.all_terminals_splittable(sizes)
    return time.perf_counter() - t0


def main():
    backends = kernels.backends()
    print(f"available backends: {', '.join(sorted(backends))} "
          f"(active: {kernels.BACKEND})")
    workloads = [
        ("solve_sizes (theorem sweeps)", bench_solve_sizes),
        ("solve_concrete (cross-validation)", bench_solve_concrete),
        ("terminal enumeration", bench_terminal_enum),
    ]
    results = {}
    for name, bench in workloads:
        results[name] = {key: bench(backend)
                         for key, backend in backends.items()}
    width = max(len(n) for n, _ in workloads)
    header = f"{'workload':<{width}}  " + "".join(
        f"{key:>12}" for key in sorted(backends))
    if len(backends) > 1:
        header += f"{'speedup':>10}"
    print(header)
    for name, _ in workloads:
        row = f"{name:<{width}}  "
        times = results[name]
        for key in sorted(backends):
            row += f"{times[key]:>11.3f}s"
        if "compiled" in times and "python" in times:
            row += f"{times['python'] / times['compiled']:>9.1f}x"
        print(row)

    # the two backends must agree on everything they both solve
    if len(backends) > 1:
        a, b = backends["python"], backends["compiled"]
        for sizes in family_sizes():
            for first in (True, False):
                assert a.solve_sizes(sizes, first)[0] == \
                    b.solve_sizes(sizes, first)[0], sizes
        print("backend agreement verified on the sweep family")


if __name__ == "__main__":
    main()
