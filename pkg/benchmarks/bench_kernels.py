"""Benchmark the numba kernels against the pure-numpy fallback.

Run without arguments to time both backends (each in its own subprocess so
the import-time backend selection applies) and print the comparison:

    python benchmarks/bench_kernels.py

The --worker flag times only the backend active in the current process.
"""

import argparse
import os
import subprocess
import sys
import time

import numpy as np


def _workload():
    from rindlertangle import kernels
    from rindlertangle.qmat import eig_hermitian
    from rindlertangle.states import named_state
    from rindlertangle.unruh import reduced_state

    rho = reduced_state(named_state("ghz"), "A", np.pi / 6)
    w, v = eig_hermitian(rho.matrix)
    b0 = np.ascontiguousarray(np.sqrt(w[0]) * v[:, 0])
    b1 = np.ascontiguousarray(np.sqrt(w[1]) * v[:, 1])
    rng = np.random.default_rng(0)

    results = []

    batch = rng.standard_normal((200_000, 8)) + 1j * rng.standard_normal((200_000, 8))
    kernels.hyperdet_batch(batch[:8])  # trigger any JIT compile
    start = time.perf_counter()
    for _ in range(5):
        kernels.hyperdet_batch(batch)
    results.append(("hyperdet_batch_200k_x5", time.perf_counter() - start))

    for m in (2, 4):
        starts = rng.uniform(0, 2 * np.pi, (16, 3 * m - 4))
        kernels.roof_descend(b0, b1, m, starts[:1], 8, 2, 1e-6)  # compile
        start = time.perf_counter()
        kernels.roof_descend(b0, b1, m, starts, 24, 500, 1e-10)
        results.append((f"roof_descend_m{m}_16starts", time.perf_counter() - start))

    return kernels.backend_name(), results


def worker():
    backend, results = _workload()
    print(f"backend {backend}")
    for name, seconds in results:
        print(f"{name} {seconds:.6f}")


def compare():
    rows = {}
    for label, no_numba in (("numba", ""), ("numpy", "1")):
        env = dict(os.environ)
        env["RINDLERTANGLE_NO_NUMBA"] = no_numba
        out = subprocess.run(
            [sys.executable, os.path.abspath(__file__), "--worker"],
            capture_output=True,
            text=True,
            env=env,
            check=True,
        ).stdout.splitlines()
        backend = out[0].split()[1]
        if label == "numba" and backend != "numba":
            print("numba unavailable; fallback timings only")
        for line in out[1:]:
            name, seconds = line.rsplit(" ", 1)
            rows.setdefault(name, {})[backend] = float(seconds)
    print(f"{'kernel':<28} {'numba [s]':>12} {'numpy [s]':>12} {'speedup':>9}")
    for name, timings in rows.items():
        tn = timings.get("numba")
        tp = timings.get("numpy")
        speedup = f"{tp / tn:8.1f}x" if tn and tp else "      n/a"
        print(
            f"{name:<28} {tn if tn is not None else float('nan'):>12.4f} "
            f"{tp if tp is not None else float('nan'):>12.4f} {speedup:>9}"
        )


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--worker", action="store_true", help="time the active backend only")
    args = parser.parse_args()
    worker() if args.worker else compare()
