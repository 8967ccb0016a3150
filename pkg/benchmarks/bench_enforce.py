"""Compare the compiled and pure-Python enforce kernels.

Runs full no-short-circuit model checks (every profile pair is visited) on
sensor networks of growing size and prints the best-of-N wall time per
backend.  Usage::

    python benchmarks/bench_enforce.py [--repeat 3] [--max-n 400]
"""
import argparse
import time

from rcgs import gen_h1, gen_h3, kernels, mcheck, parse_formula


def workloads(max_n):
    n = 50
    while n <= max_n:
        coalition = ",".join(map(str, range(1, n // 2 + 1)))
        yield f"h1 n={n}", gen_h1(n, n // 2), parse_formula(f"<<{coalition}>>F p")
        n *= 2
    for n in (8, 16, 32):
        half = [*range(1, n // 2 + 1), *range(n + 1, n + n // 2 + 1)]
        coalition = ",".join(map(str, half))
        yield f"h3 n1=n2={n}", gen_h3(n, n, n // 2, n // 2), parse_formula(f"<<{coalition}>>G !p")


def best_of(repeat, fn):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--max-n", type=int, default=400)
    args = parser.parse_args(argv)

    backends = sorted(kernels.BACKENDS)
    if "cython" not in backends:
        print("compiled kernel not built; only the python backend is timed")
    print(f"{'workload':<16} {'pairs':>10} " + " ".join(f"{b:>10}" for b in backends) + "  speedup")
    for label, model, phi in workloads(args.max_n):
        pairs = mcheck(model, phi, short_circuit=False)[1].transitions_inspected
        times = {
            b: best_of(args.repeat, lambda b=b: mcheck(model, phi, short_circuit=False, backend=b))
            for b in backends
        }
        speedup = f"{times['python'] / times['cython']:7.1f}x" if "cython" in times else ""
        print(f"{label:<16} {pairs:>10} " + " ".join(f"{times[b]:>9.4f}s" for b in backends)
              + f"  {speedup}")


if __name__ == "__main__":
    main()
