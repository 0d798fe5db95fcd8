#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Runs each workload in a subprocess (kernel selection happens at import
time) and prints a side-by-side table.

    python benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import json
import os
import subprocess
import sys

WORKLOADS = ["poly_mul", "buchberger", "radical", "vertices"]

_WORKER = r"""
import json, sys, time
from fractions import Fraction as F
import powerpoly as pp
from powerpoly import _kernels

def bench_poly_mul():
    names = ["p1", "p2", "p3", "p4"]
    a = pp.parse_polynomial("p1^3 + 2*p2^2*p3 - 1/3*p4 + p1*p2*p3*p4 + 5", names)
    b = pp.parse_polynomial("p4^3 - p1*p2 + 7/2*p3^2 - p2*p4 + 1", names)
    t0 = time.perf_counter()
    acc = a
    for _ in range(200):
        acc = a * b * b
    return time.perf_counter() - t0

EX5 = [
    "p11 - p12 - p13 + 2*p21",
    "p12*p21 - p12*p22 - p13*p22 + 2*p21*p22",
    "2*p12^2 + 4*p12*p13 + 2*p13^2 - 4*p13*p21 + 2*p21^2 - 4*p12*p22"
    " - 4*p13*p22 + 8*p21*p22 - p12 - p13 + 2*p21",
    "2*p13^2*p21 - 4*p13*p21^2 + 2*p21^3 + 2*p12*p13*p22 + 2*p13^2*p22"
    " - 8*p13*p21*p22 + 6*p21^2*p22 - 4*p12*p22^2 - 4*p13*p22^2"
    " + 8*p21*p22^2 - p13*p21 + 2*p21^2",
]
EX5_VARS = ["p11", "p12", "p13", "p21", "p22"]

def bench_buchberger():
    hyp = pp.build_hypothesis({"kind": "independence", "params": {"p": 3, "q": 3}})
    gens = hyp.substituted_generators()
    t0 = time.perf_counter()
    pp.buchberger_reduced(gens)
    return time.perf_counter() - t0

def bench_radical():
    gens = [pp.parse_polynomial(s, EX5_VARS) for s in EX5]
    t0 = time.perf_counter()
    for _ in range(20):
        assert pp.radical_membership(gens[3], gens[:3])
    return time.perf_counter() - t0

def bench_vertices():
    sph = pp.build_hypothesis(
        {"kind": "sphere", "params": {"k": 3, "delta_sq": "1/6"}}
    ).generators[0]
    poly = pp.coefficient_polytope(sph, 6, F(1, 20))
    t0 = time.perf_counter()
    poly = pp.enumerate_vertices(poly)
    assert len(poly.vertices) == 188
    return time.perf_counter() - t0

name = sys.argv[1]
elapsed = {"poly_mul": bench_poly_mul, "buchberger": bench_buchberger,
           "radical": bench_radical, "vertices": bench_vertices}[name]()
print(json.dumps({"backend": _kernels.BACKEND, "seconds": elapsed}))
"""


def run(workload: str, pure: bool) -> dict:
    env = dict(os.environ)
    if pure:
        env["POWERPOLY_PURE"] = "1"
    else:
        env.pop("POWERPOLY_PURE", None)
    proc = subprocess.run(
        [sys.executable, "-c", _WORKER, workload],
        capture_output=True,
        text=True,
        env=env,
        check=True,
    )
    return json.loads(proc.stdout.strip().splitlines()[-1])


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    print(f"{'workload':<12} {'pure (s)':>10} {'compiled (s)':>13} {'speedup':>8}")
    for workload in WORKLOADS:
        pure_best = min(run(workload, pure=True)["seconds"] for _ in range(args.repeat))
        fast = [run(workload, pure=False) for _ in range(args.repeat)]
        if fast[0]["backend"] != "cython":
            print(f"{workload:<12} {pure_best:>10.3f} {'(extension unavailable)':>13}")
            continue
        fast_best = min(r["seconds"] for r in fast)
        print(
            f"{workload:<12} {pure_best:>10.3f} {fast_best:>13.3f} "
            f"{pure_best / fast_best:>7.2f}x"
        )


if __name__ == "__main__":
    main()
