"""Recompute a_5..a_K by both routes (candidate jumps and full-period scans) and compare."""
import argparse
import time

from wilfmotzkin.wilf import compute_ak_table, find_zero_residues

TABULATED = {5: 38, 6: 134, 7: 326, 8: 326, 9: 326, 10: 1862, 11: 1862, 12: 8006, 13: 20294,
             14: 44870, 15: 94022, 16: 192326, 17: 192326, 18: 585542, 19: 1371974, 20: 2944838}

parser = argparse.ArgumentParser(description=__doc__)
parser.add_argument("--max-k", type=int, default=20)
parser.add_argument("--threads", type=int, default=1)
parser.add_argument("--skip-scan", action="store_true")
args = parser.parse_args()

t0 = time.perf_counter()
jump = compute_ak_table(args.max_k, threads=args.threads)
t_jump = time.perf_counter() - t0
scan = None
if not args.skip_scan:
    t0 = time.perf_counter()
    scan = compute_ak_table(args.max_k, threads=args.threads, method="scan")
    t_scan = time.perf_counter() - t0

print(f"{'k':>3} {'a_k':>9} {'witness':>9} {'scan':>9} {'tabulated':>10} {'full-period':>12}")
for i, e in enumerate(jump):
    full = ""
    if e.k <= 12:
        full = "ok" if find_zero_residues(e.k, args.threads) == {2, e.a_k} else "MISMATCH"
    tab = TABULATED.get(e.k, "-")
    s = scan[i].a_k if scan else "-"
    print(f"{e.k:>3} {e.a_k:>9} {e.witness_n!s:>9} {s!s:>9} {tab!s:>10} {full:>12}")
print(f"jump route {t_jump:.2f}s" + (f", scan route {t_scan:.2f}s" if scan else ""))
