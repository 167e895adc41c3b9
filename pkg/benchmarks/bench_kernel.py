"""Compare the compiled and pure-Python longest-match kernels.

    python3 benchmarks/bench_kernel.py [--sentences 2000] [--repeat 5]

Reports kernel-only time on the builtin ruleset's constraint rows and
end-to-end annotation throughput with each backend.
"""
from __future__ import annotations

import argparse
import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from corpus import plain_corpus  # noqa: E402

from suspan import _kernel_py, matcher  # noqa: E402
from suspan.ingest import ingest_plain  # noqa: E402
from suspan.pipeline import annotate_sentences  # noqa: E402
from suspan.rules import builtin_compiled  # noqa: E402

try:
    from suspan import _kernel as _kernel_c
except ImportError:
    _kernel_c = None


def kernel_jobs(sentences, crs):
    """Every (sat, n, ops) the matcher would hand the kernel."""
    jobs = []
    for s in sentences:
        n = len(s.tokens)
        for p in crs.candidates(s):
            sat = b"".join(bytes(crs.tests[c](t) for t in s.tokens) for c in p.slots)
            jobs.append((sat, n, p.ops))
    return jobs


def random_jobs(count, seed=0):
    rng = random.Random(seed)
    jobs = []
    for _ in range(count):
        k, n = rng.randint(1, 8), rng.randint(5, 40)
        ops = bytes(rng.choice((0, 0, 1, 2)) for _ in range(k))
        jobs.append((bytes(rng.random() < 0.5 for _ in range(k * n)), n, ops))
    return jobs


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sentences", type=int, default=2000)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    crs = builtin_compiled()
    text = " ".join(plain_corpus(args.sentences, seed=42))
    sentences = list(ingest_plain(text).sentences)
    workloads = {"builtin rows": kernel_jobs(sentences, crs), "random rows": random_jobs(20000)}

    kernels = {"python": _kernel_py.longest_ends}
    if _kernel_c is not None:
        kernels["cython"] = _kernel_c.longest_ends
    else:
        print("compiled kernel not built; reporting the fallback only")

    print(f"{'workload':<14} {'backend':<8} {'calls':>7} {'seconds':>9} {'us/call':>8}")
    for name, jobs in workloads.items():
        times = {}
        for backend, fn in kernels.items():
            t = best_of(lambda: [fn(*j) for j in jobs], args.repeat)
            times[backend] = t
            print(f"{name:<14} {backend:<8} {len(jobs):>7} {t:>9.4f} {1e6 * t / len(jobs):>8.2f}")
        if len(times) == 2:
            print(f"{'':<14} speedup  {times['python'] / times['cython']:.1f}x")

    print()
    print(f"end-to-end annotation, {len(sentences)} sentences")
    for backend, fn in kernels.items():
        matcher.longest_ends = fn
        t = best_of(lambda: annotate_sentences(crs, sentences), args.repeat)
        print(f"  {backend:<8} {t:.3f}s  {len(sentences) / t:,.0f} sentences/s")


if __name__ == "__main__":
    main()
