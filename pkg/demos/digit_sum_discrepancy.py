"""
Discrepancy of digit-sum-indexed sequences
==========================================

Re-indexing the van der Corput sequence by the digit-sum function s_q piles
enormous multiplicity onto few points: the most frequent value alone forces
N * D_N >= max_k G(k) (a central binomial for q = 2), while a chained block
decomposition bounds it from above.  The result is a discrepancy of order
1/sqrt(log N) -- far slower than the (log N)/N of the sequence itself.

All D_N values below are exact rationals: only the distinct points are
materialized, weighted by their exact multiplicities.
"""

import math

from lowdisc import (
    SumOfDigits,
    VanDerCorput,
    general_sandwich,
    transformed_discrepancy,
)

spec = VanDerCorput(2)
transform = SumOfDigits(2)

print("exact sandwich  lower <= N*D_N <= upper  along N = 2^d:")
print(f"{'d':>3} {'N':>8} {'lower':>8} {'N*D_N':>14} {'upper':>12}")
for d, rep in enumerate(general_sandwich(spec, transform, d_max=12)):
    print(
        f"{d:>3} {rep.n:>8} {int(rep.lower):>8} "
        f"{str(rep.measured):>14} {rep.upper:>12.1f}"
    )

print("\nscaled discrepancy D_N * sqrt(log N) (flat band = 1/sqrt(log N) law):")
rows = []
for d in range(4, 23, 2):
    n = 2**d
    value = float(transformed_discrepancy(spec, transform, n).value)
    rows.append((n, value * math.sqrt(math.log(n))))
    print(f"  N = 2^{d:<2}  D_N = {value:.6f}   D_N*sqrt(log N) = {rows[-1][1]:.4f}")

band = [y for _, y in rows]
print(f"\nband spread max/min over the ladder: {max(band) / min(band):.3f}")
