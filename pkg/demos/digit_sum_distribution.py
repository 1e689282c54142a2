"""
Distribution of digit sums on blocks
====================================

The number of n < q^j with digit sum k is the x^k coefficient of
(1 + x + ... + x^(q-1))^j.  The exact integer profile is symmetric, unimodal,
and well approximated by a Gaussian with sigma_q = sqrt((q^2-1)/12); its peak
grows like q^j / sqrt(j).
"""

import math

from lowdisc import distribution, gaussian_main_term, max_count, unimodality_onset

q, j = 3, 6
dist = distribution(q, j)
print(f"digit-sum counts on a block of {q}^{j} = {dist.total} integers:")
print(f"{'k':>4} {'count':>8} {'gaussian':>12} {'ratio':>8}")
for k, c in enumerate(dist.counts):
    g = gaussian_main_term(q, j, k)
    print(f"{k:>4} {c:>8} {g:>12.2f} {c / g:>8.3f}")

# the peak sits at the midpoint and scales like q^j / sqrt(j)
print("\npeak scaling (value * sqrt(j) / q^j):")
for jj in (8, 16, 32, 64):
    _, peak = max_count(q, jj)
    print(f"  j={jj:>3}: {peak * math.sqrt(jj) / q**jj:.4f}")

# unimodality holds from the very first convolution for every base tried here
for base in (2, 3, 5, 10):
    print(f"unimodality onset for q={base}: j0 = {unimodality_onset(base, 40)}")

# the scaled worst-case Gaussian error shrinks like 1/sqrt(j)
print("\nscaled sup error of the Gaussian main term:")
for jj in (8, 16, 32, 64):
    counts = distribution(q, jj).counts
    worst = max(abs(c - gaussian_main_term(q, jj, k)) for k, c in enumerate(counts))
    print(f"  j={jj:>3}: {worst * math.sqrt(jj) / q**jj:.5f}")
