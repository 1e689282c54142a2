"""b-adic characters, rho weights, Weyl sums over digit sums, and the
character-based discrepancy bound.

Phases are reduced mod 1 in exact integer arithmetic (every phase is a
rational with denominator b**(r+1)); the single transcendental call per
distinct phase happens afterwards.  Sums use exact compensated summation
(math.fsum), so the summation error is O(eps) independent of N.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .digits import BRational, expand, monna_plus, radical_inverse
from .digitsum_dist import digit_sum_counts_below

# direct fsum cost grows linearly with N while the grouped path stays at
# O(digit-sum range); the crossover keeps both well inside exact territory
DEFAULT_DIRECT_BUDGET = 1 << 14


def e_frac(num: int, den: int) -> complex:
    """exp(2 pi i num/den) with the argument already reduced mod den."""
    return cmath.exp(2j * math.pi * (num % den) / den)


def phi_fraction(b: int, k: int) -> tuple[int, int]:
    """Radical inverse of k as an exact pair (numerator, denominator b**r)."""
    x = radical_inverse(k, b)
    return x.num, x.base**x.prec


def gamma_k(b: int, k: int, x: BRational) -> complex:
    """Character value e(phi_b(k) * monna_plus(x)) on the unit circle."""
    if x.base != b:
        raise ValueError(f"point base {x.base} differs from character base {b}")
    num, den = phi_fraction(b, k)
    return e_frac(num * monna_plus(x), den)


_DIGIT_SUM_CACHE: dict[tuple[int, int], np.ndarray] = {}


def _digit_sums_vector(q: int, n: int) -> np.ndarray:
    """Digit sums of 0..n-1 (cached, read-only)."""
    key = (q, n)
    cached = _DIGIT_SUM_CACHE.get(key)
    if cached is not None:
        return cached
    s = np.zeros(n, dtype=np.int64)
    rem = np.arange(n, dtype=np.int64)
    while rem.any():
        s += rem % q
        rem //= q
    s.setflags(write=False)
    if len(_DIGIT_SUM_CACHE) < 64:
        _DIGIT_SUM_CACHE[key] = s
    return s


_PHASE_TABLE_CACHE: dict[int, np.ndarray] = {}


def _phase_table(den: int) -> np.ndarray:
    """Unit-circle table e(a/den) for a < den (cached, read-only)."""
    table = _PHASE_TABLE_CACHE.get(den)
    if table is None:
        table = np.exp(2j * math.pi * np.arange(den) / den)
        table.setflags(write=False)
        if len(_PHASE_TABLE_CACHE) < 256:
            _PHASE_TABLE_CACHE[den] = table
    return table


@dataclass(frozen=True)
class WeylSum:
    b: int
    q: int
    k: int
    n: int
    value: complex
    method: str

    @property
    def abs(self) -> float:
        return abs(self.value)


def weyl_sum(
    b: int, q: int, k: int, n: int, direct_budget: int = DEFAULT_DIRECT_BUDGET
) -> WeylSum:
    """T_k(N) = (1/N) sum_{n<N} e(s_q(n) phi_b(k)).

    Direct term-by-term evaluation (vectorized phases, fsum reduction) up to
    the budget; beyond it the terms are grouped exactly by digit-sum value,
    which is a plain regrouping of the same finite sum with exact integer
    multiplicities.
    """
    if n < 1:
        raise ValueError("need N >= 1")
    num, den = phi_fraction(b, k)
    if num == 0:
        return WeylSum(b, q, k, n, complex(1.0, 0.0), "trivial")
    table = _phase_table(den)
    if n <= direct_budget:
        phases = (_digit_sums_vector(q, n) * num) % den
        terms = table[phases]
        value = complex(
            math.fsum(terms.real) / n,
            math.fsum(terms.imag) / n,
        )
        return WeylSum(b, q, k, n, value, "direct")
    counts = digit_sum_counts_below(q, n)
    small = 1 << 53  # ints below this are exact as floats
    re = []
    im = []
    for j, c in enumerate(counts):
        if not c:
            continue
        w = c / n if (c < small and n < small) else float(Fraction(c, n))
        z = table[(j * num) % den]
        re.append(w * z.real)
        im.append(w * z.imag)
    return WeylSum(b, q, k, n, complex(math.fsum(re), math.fsum(im)), "grouped")


def product_identity_check(
    b: int, q: int, k: int, m: int, tol: float = 1e-10
) -> bool:
    """Check |T_k(q**m) - T_k(q)**m| < tol numerically."""
    lhs = weyl_sum(b, q, k, q**m).value
    rhs = weyl_sum(b, q, k, q).value ** m
    return abs(lhs - rhs) < tol


class LemmaBound(NamedTuple):
    lhs: float
    rhs: float
    holds: bool
    clamped: bool = False


def lemma_le1_bound(
    b: int, q: int, k: int, m: int, slack: float = 1e-12
) -> LemmaBound:
    """|T_k(q**m)| against (1 - 16(q-1)/q^2 ||phi_b(k)||^2)^(m/2).

    For q >= 14 the base can go negative (the theorem assumes q < 14); it is
    clamped to zero and flagged.
    """
    lhs = abs(weyl_sum(b, q, k, q**m).value)
    num, den = phi_fraction(b, k)
    dist = min(Fraction(num, den), 1 - Fraction(num, den))
    base = 1 - Fraction(16 * (q - 1), q * q) * dist * dist
    clamped = base < 0
    if clamped:
        base = Fraction(0)
    rhs = float(base) ** (m / 2.0)
    return LemmaBound(lhs, rhs, lhs <= rhs + slack, clamped)


def lemma_le2_bound(
    b: int, q: int, k: int, n: int, slack: float = 1e-12
) -> LemmaBound:
    """|T_k(N)| against (1/N) sum_r a_r q^r |T_k(q^r)| over the digits of N."""
    lhs = abs(weyl_sum(b, q, k, n).value)
    rhs_terms = []
    for r, a_r in enumerate(expand(n, q).digits):
        if a_r:
            rhs_terms.append(a_r * q**r * abs(weyl_sum(b, q, k, q**r).value))
    rhs = math.fsum(rhs_terms) / n
    return LemmaBound(lhs, rhs, lhs <= rhs + slack)


def rho_weight(b: int, k: int) -> float:
    """Decay weight of the k-th character: 2 / (b**(r+1) sin(pi kappa_r / b))."""
    if k == 0:
        return 1.0
    digs = expand(k, b).digits
    r = len(digs) - 1
    kappa = digs[-1]
    return 2.0 / (b ** (r + 1) * math.sin(math.pi * kappa / b))


def hellekalek_resolution(b: int, n: int) -> int:
    """The resolution g = floor(log_b sqrt(log N)) used to tune the bound (>= 1)."""
    if n < 2:
        return 1
    return max(1, math.floor(math.log(math.sqrt(math.log(n)), b)))


def hellekalek_star_bound(b: int, g: int, points, counts=None) -> float:
    """Character-sum bound 1/b**g + sum_{k<b**g} rho_b(k) |mean_n gamma_k(y_n)|.

    This display dominates the STAR discrepancy of the multiset and is tight
    on some inputs; it does not dominate the extreme discrepancy (see
    hellekalek_bound for the certified extreme version).
    """
    if g < 1:
        raise ValueError("resolution g must be >= 1")
    pts = list(points)
    if counts is None:
        counts = [1] * len(pts)
    n = sum(counts)
    if n < 1:
        raise ValueError("empty point multiset")
    zs = []
    for x in pts:
        if not isinstance(x, BRational):
            raise ValueError("character bounds need exact b-adic points (BRational)")
        if x.base != b:
            raise ValueError(f"point base {x.base} differs from bound base {b}")
        zs.append(monna_plus(x))
    terms = []
    for k in range(1, b**g):
        num, den = phi_fraction(b, k)
        re = []
        im = []
        for z, c in zip(zs, counts):
            w = float(Fraction(c, n))
            val = e_frac(num * z, den)
            re.append(w * val.real)
            im.append(w * val.imag)
        mean = complex(math.fsum(re), math.fsum(im))
        terms.append(rho_weight(b, k) * abs(mean))
    return 1.0 / b**g + math.fsum(terms)


def hellekalek_bound(b: int, g: int, points, counts=None) -> float:
    """Certified character-sum upper bound on the EXTREME discrepancy.

    Twice the star-level display: an arbitrary interval [a, c) splits into
    two anchored ones, so extreme <= 2 * star <= 2 * display.  The display
    alone can be beaten by the extreme discrepancy (e.g. the multiset
    {0, 0, 0, 3/4, 13/16, 7/8} in base 2 has extreme discrepancy 3/4 while
    the g = 1 display is 1/2), hence the factor here.
    """
    return 2.0 * hellekalek_star_bound(b, g, points, counts)
