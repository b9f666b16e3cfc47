"""Benchmark the compiled simplex kernel against the pure-Python fallback.

Runs the same instances through both backends, checks they produce the
same answers, and prints a timing table. Invoke directly:

    python benchmarks/bench_solver.py
"""
import os
import time

from captrans import example_instance, solve
from captrans.solver import HAVE_COMPILED

CASES = (
    ("example 1, exact", 1, 8, "exact", None),
    ("example 1, exact", 1, 16, "exact", None),
    ("example 1, float", 1, 16, "float", None),
    ("example 1, float", 1, 32, "float", None),
    ("example 2, exact", 2, 16, "exact", None),
    ("example 3, float", 3, 32, "float", 2),
)


def timed_solve(p, backend):
    old = os.environ.get("CAPTRANS_PURE")
    os.environ["CAPTRANS_PURE"] = "1" if backend == "pure" else "0"
    try:
        t0 = time.perf_counter()
        res = solve(p)
        dt = time.perf_counter() - t0
    finally:
        if old is None:
            os.environ.pop("CAPTRANS_PURE", None)
        else:
            os.environ["CAPTRANS_PURE"] = old
    if res.backend != backend:
        raise RuntimeError(f"asked for {backend} backend, got {res.backend}")
    return dt, res


def main():
    if not HAVE_COMPILED:
        print("compiled kernel not available; nothing to compare "
              "(build it with: pip install -e . --no-build-isolation)")
        return
    header = f"{'case':<22}{'n':>4}{'pivots':>8}{'compiled':>10}{'pure':>10}{'speedup':>9}  agree"
    print(header)
    print("-" * len(header))
    for label, which, n, mode, hbar in CASES:
        p, _ = example_instance(which, n, hbar=hbar, mode=mode)
        tc, rc = timed_solve(p, "compiled")
        tp, rp = timed_solve(p, "pure")
        # float backends are bit-identical by construction, so == is fair in both modes
        agree = rc.objective == rp.objective and (rc.plan.h == rp.plan.h).all()
        print(f"{label:<22}{n:>4}{rc.pivot_count:>8}{tc:>9.3f}s{tp:>9.3f}s"
              f"{tp / tc:>8.1f}x  {'yes' if agree else 'NO'}")


if __name__ == "__main__":
    main()
