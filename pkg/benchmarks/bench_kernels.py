"""Compare the numba kernels against the numpy fallback.

Each path runs in its own interpreter because the backend is fixed at import
time by TREEHOM_DISABLE_NUMBA.  Usage: python benchmarks/bench_kernels.py
"""

from __future__ import annotations

import json
import os
import subprocess
import sys

WORKER = r"""
import json, time
from treehom import _accel
from treehom.graphcore import path, star, complete, Tree
from treehom.homcount import hom_count, hom_brute_force
from treehom.enumpose import prufer_tree_count

def best(fn, reps):
    fn()  # warm-up (triggers compilation on the numba path)
    out = []
    for _ in range(reps):
        t0 = time.perf_counter(); fn(); out.append(time.perf_counter() - t0)
    return min(out)

cases = {
    "tree-walk P12 into K30": (lambda: hom_count(path(12), complete(30)), 20),
    "tree-walk S12 into P2000": (lambda: hom_count(star(12), path(2000)), 20),
    "brute force P6 into K8": (lambda: hom_brute_force(path(6), complete(8)), 3),
    "pruefer classes n=7": (lambda: prufer_tree_count(7), 3),
}
res = {"numba": _accel.NUMBA_ENABLED}
res.update({k: best(fn, reps) for k, (fn, reps) in cases.items()})
print(json.dumps(res))
"""


def run(disable: bool) -> dict:
    env = dict(os.environ)
    env["TREEHOM_DISABLE_NUMBA"] = "1" if disable else "0"
    out = subprocess.run([sys.executable, "-c", WORKER], env=env, check=True, capture_output=True, text=True)
    return json.loads(out.stdout.strip().splitlines()[-1])


def main() -> None:
    fast, slow = run(False), run(True)
    if not fast.pop("numba") or slow.pop("numba"):
        print("warning: backend selection did not take effect", file=sys.stderr)
    print(f"{'case':28s} {'numba [s]':>11s} {'fallback [s]':>13s} {'speed-up':>9s}")
    for case in fast:
        a, b = fast[case], slow[case]
        print(f"{case:28s} {a:11.5f} {b:13.5f} {b / a:8.1f}x")


if __name__ == "__main__":
    main()
