"""Time the numba and numpy kernel paths against each other.

Each backend runs in its own interpreter because the path is picked once at
import time from QWPERIOD_DISABLE_NUMBA.

    python benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
import numpy as np
from qwperiod import kernels
from qwperiod.parity import adjacency, compress_row
from qwperiod.period import integer_charpoly
from qwperiod.walk import hadamard_walk

repeat = int(sys.argv[1])
rng = np.random.default_rng(0)
p = 2147483647

def best(fn):
    fn()  # warm-up (and JIT compile)
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)

A, _ = hadamard_walk(48).matrix.integer_form()
A = np.array(A, dtype=np.int64) % p
bits = rng.integers(0, 2, size=(256, 256), dtype=np.uint8)
packed = kernels.pack_rows(bits)
start = compress_row(adjacency(101)[0])
psi0 = np.zeros((64, 2), complex); psi0[0, 0] = 1
h = np.array([[1, 1], [1, -1]]) / np.sqrt(2)

out = {
    "backend": kernels.backend(),
    "charpoly_mod (96x96)": best(lambda: kernels.charpoly_mod(A, p)),
    "gf2_matmul (256x256)": best(lambda: kernels.gf2_matmul(packed, packed, 256)),
    "parity_orbit (N=101, 4096 steps)": best(lambda: kernels.parity_orbit(start, 4096)),
    "walk_measures (N=64, 2000 steps)": best(lambda: kernels.walk_measures(psi0, h, 2000)),
    "integer_charpoly U_32": best(lambda: integer_charpoly(np.array(hadamard_walk(32).matrix.integer_form()[0]))),
}
print(json.dumps(out))
"""


def run(disable: bool, repeat: int) -> dict:
    env = dict(os.environ, QWPERIOD_DISABLE_NUMBA="1" if disable else "0")
    res = subprocess.run([sys.executable, "-c", WORKER, str(repeat)], env=env, capture_output=True, text=True, check=True)
    return json.loads(res.stdout)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    fast = run(False, args.repeat)
    slow = run(True, args.repeat)
    print(f"{'kernel':<36s} {fast['backend']:>10s} {slow['backend']:>10s} {'speedup':>8s}")
    for key in fast:
        if key == "backend":
            continue
        a, b = fast[key], slow[key]
        print(f"{key:<36s} {a * 1e3:9.2f}ms {b * 1e3:9.2f}ms {b / a:7.1f}x")


if __name__ == "__main__":
    main()
