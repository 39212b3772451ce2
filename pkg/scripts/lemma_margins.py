"""Tabulate how tight each congruence is: min(observed v2 - required v2) over a grid."""
from wilfmotzkin import congruences as cg

print("lemma4 (E-1)^r W[n][k], n <= 100, k <= 4r+3")
for r in range(1, 6):
    row = [cg.verify_lemma4(r, t, 100, 4 * r + 3).min_margin for t in (1, 2, 3)]
    print(f"  r={r}: margins t=1,2,3 -> {row}")

print("lemma5 (E^(2^k)-1)^2 f(n), n <= 100")
for k in range(4):
    row = [cg.verify_lemma5(k, t, 100).min_margin for t in (1, 2)]
    print(f"  k={k}: margins t=1,2 -> {row}")

print("single difference (E^(2^k)-1) f(n), n <= 100")
for k in range(5):
    print(f"  k={k}: margin {cg.verify_single_difference(k, 1, 100).min_margin}")

print("negative controls")
print(f"  lemma4 with shift 5: {len(cg.verify_lemma4(1, 1, 100, 10, period=5).violations)} violations")
print(f"  periodicity k=5 with period 191: "
      f"{len(cg.verify_periodicity(5, 2000, offset=-1).violations)} violations")
