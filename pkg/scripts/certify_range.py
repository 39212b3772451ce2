"""Scan f(n) mod 2^m for n <= N and report which n could still be zeros."""
import argparse
import json
import time

from wilfmotzkin.wilf import certify_nonzero, compute_ak_table, theorem2_narrative

parser = argparse.ArgumentParser(description=__doc__)
parser.add_argument("--n-max", type=int, default=10 ** 6)
parser.add_argument("--m", type=int, default=40)
parser.add_argument("--threads", type=int, default=4)
parser.add_argument("--k", type=int, default=20, help="table depth for the narrative")
args = parser.parse_args()

t0 = time.perf_counter()
rep = certify_nonzero(args.n_max, args.m, threads=args.threads)
print(f"scanned n <= {args.n_max} mod 2^{args.m} in {time.perf_counter() - t0:.1f}s")
print(f"survivors: {rep.surviving_n}  confirmed zeros: {rep.confirmed_zero}  "
      f"unconfirmed: {rep.unconfirmed}")
narrative = theorem2_narrative(args.k, compute_ak_table(args.k), rep)
print(json.dumps(narrative, indent=2))
