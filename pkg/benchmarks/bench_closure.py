"""Compare the compiled and pure-Python closure kernels.

Run:  python benchmarks/bench_closure.py
"""

import random
import timeit

from finstream._kernels._closure_py import closure_rows as py_closure

try:
    from finstream._kernels._closure_cy import closure_rows as cy_closure
except ImportError:
    cy_closure = None


def random_rows(rng, n, density):
    return [
        sum(1 << j for j in range(n) if rng.random() < density) for _ in range(n)
    ]


def bench(fn, cases, repeats):
    def run():
        for rows, n in cases:
            fn(rows, n)

    return min(timeit.repeat(run, number=1, repeat=repeats)) / len(cases)


def main():
    rng = random.Random(7)
    print(f"{'n':>4} {'density':>8} {'python (us)':>12} {'compiled (us)':>14} {'speedup':>8}")
    for n in (4, 8, 16, 32, 64):
        for density in (0.1, 0.3):
            cases = [(random_rows(rng, n, density), n) for _ in range(2000)]
            py_t = bench(py_closure, cases, 5) * 1e6
            if cy_closure is None:
                print(f"{n:>4} {density:>8} {py_t:>12.2f} {'not built':>14} {'-':>8}")
                continue
            cy_t = bench(cy_closure, cases, 5) * 1e6
            print(
                f"{n:>4} {density:>8} {py_t:>12.2f} {cy_t:>14.2f} {py_t / cy_t:>7.1f}x"
            )


if __name__ == "__main__":
    main()
