"""Index transforms f: N0 -> N0 and their counting statistics.

Supported transforms: the q-ary sum-of-digits function, floor(n^(u/v)) for a
rational exponent 0 < u/v < 1 (kept rational so everything stays exact), and
explicit non-decreasing tables.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Mapping, Sequence

from ._util import BudgetExceededError, int_nth_root
from .digits import sum_of_digits

DEFAULT_SCAN_BUDGET = 1 << 24


@dataclass(frozen=True)
class SumOfDigits:
    """f(n) = s_q(n).  Every value is attained infinitely often."""

    q: int

    def __post_init__(self):
        if self.q < 2:
            raise ValueError("digit-sum base must be >= 2")

    def apply(self, n: int) -> int:
        return sum_of_digits(n, self.q)

    @property
    def monotone(self) -> bool:
        return False

    def label(self) -> str:
        return f"sod:{self.q}"


@dataclass(frozen=True)
class FloorPower:
    """f(n) = floor(n**(u/v)) with 0 < u < v and gcd(u, v) = 1.

    Evaluated by exact integer root bracketing k**v <= n**u < (k+1)**v; no
    floating point anywhere.  Irrational exponents must be approximated by a
    rational by the caller.
    """

    u: int
    v: int

    def __post_init__(self):
        if not (0 < self.u < self.v):
            raise ValueError("need 0 < u < v so that 0 < alpha < 1")
        if math.gcd(self.u, self.v) != 1:
            raise ValueError("u/v must be in lowest terms")

    @property
    def alpha(self) -> float:
        return self.u / self.v

    def apply(self, n: int) -> int:
        if n < 0:
            raise ValueError("index must be non-negative")
        if n == 0:
            return 0
        return int_nth_root(n**self.u, self.v)

    def inverse_ceil(self, k: int) -> int:
        """Smallest integer n with n**u >= k**v, i.e. ceil(k**(v/u))."""
        if k < 0:
            raise ValueError("k must be non-negative")
        target = k**self.v
        r = int_nth_root(target, self.u)
        return r if r**self.u == target else r + 1

    @property
    def monotone(self) -> bool:
        return True

    def label(self) -> str:
        return f"pow:{self.u}/{self.v}"


@dataclass(frozen=True)
class TableTransform:
    """Explicit non-decreasing map on 0..n_max."""

    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        if not self.values:
            raise ValueError("table must not be empty")
        for a, b in zip(self.values, self.values[1:]):
            if b < a:
                raise ValueError("table transform must be non-decreasing")

    def apply(self, n: int) -> int:
        if not 0 <= n < len(self.values):
            raise ValueError(f"index {n} outside table range 0..{len(self.values)-1}")
        return self.values[n]

    @property
    def monotone(self) -> bool:
        return True

    def label(self) -> str:
        return f"table[{len(self.values)}]"


IndexTransform = SumOfDigits | FloorPower | TableTransform


def apply(transform: IndexTransform, n: int) -> int:
    return transform.apply(n)


def multiplicity_F(transform: IndexTransform, k: int) -> int:
    """Number of indices n with f(n) = k, for monotone transforms.

    For FloorPower this is the exact ceiling difference
    ceil((k+1)**(v/u)) - ceil(k**(v/u)).
    """
    if isinstance(transform, SumOfDigits):
        raise ValueError("multiplicity is infinite for the sum-of-digits transform")
    if isinstance(transform, FloorPower):
        if k < 0:
            raise ValueError("k must be >= f(0) = 0")
        return transform.inverse_ceil(k + 1) - transform.inverse_ceil(k)
    return sum(1 for v in transform.values if v == k)


def block_counts(
    transform: IndexTransform,
    block: int,
    j: int,
    chain,
    budget: int = DEFAULT_SCAN_BUDGET,
) -> dict[int, int]:
    """Value multiplicities of f on the block [A*N_j, (A+1)*N_j).

    ``chain`` is anything indexable by j (a DivisibilityChain, list, ...).
    The sum-of-digits transform on the geometric chain N_j = q**j uses the
    digit-block shift identity G_{A,j}(k) = G_{0,j}(k - s_q(A)); other cases
    scan the block within the budget.
    """
    n_j = chain[j]
    if isinstance(transform, SumOfDigits) and n_j == transform.q**j:
        from .digitsum_dist import distribution

        shift = sum_of_digits(block, transform.q)
        counts = distribution(transform.q, j).counts
        return {k + shift: c for k, c in enumerate(counts)}
    if n_j > budget:
        raise BudgetExceededError(
            f"block of length {n_j} exceeds the scan budget {budget}"
        )
    out: dict[int, int] = {}
    for n in range(block * n_j, (block + 1) * n_j):
        k = transform.apply(n)
        out[k] = out.get(k, 0) + 1
    return dict(sorted(out.items()))


def distinct_values(
    transform: IndexTransform,
    block: int,
    j: int,
    chain,
    budget: int = DEFAULT_SCAN_BUDGET,
) -> int:
    """Number of distinct values of f on the block [A*N_j, (A+1)*N_j)."""
    n_j = chain[j]
    if isinstance(transform, SumOfDigits) and n_j == transform.q**j:
        return 1 if j == 0 else j * (transform.q - 1) + 1
    return len(block_counts(transform, block, j, chain, budget))


def is_unimodal(counts) -> bool:
    """True iff the successive differences change sign at most once.

    Accepts a sequence or a mapping k -> count; gaps inside a mapping's key
    range count as zeros (which breaks unimodality unless at the ends).
    """
    if isinstance(counts, Mapping):
        if not counts:
            return True
        lo, hi = min(counts), max(counts)
        seq = [counts.get(k, 0) for k in range(lo, hi + 1)]
    else:
        seq = list(counts)
    descending = False
    for a, b in zip(seq, seq[1:]):
        if b > a and descending:
            return False
        if b < a:
            descending = True
    return True


def value_counts_below(transform: IndexTransform, n: int) -> dict[int, int]:
    """Multiplicities of f(0), ..., f(n-1), computed without scanning when possible.

    Sum-of-digits uses an exact digit dynamic program, FloorPower uses exact
    ceilings, tables are scanned.  This is what makes desk-scale discrepancy
    of index-transformed sequences cheap: the number of distinct values is
    tiny compared to n.
    """
    if n <= 0:
        return {}
    if isinstance(transform, SumOfDigits):
        from .digitsum_dist import digit_sum_counts_below

        counts = digit_sum_counts_below(transform.q, n)
        return {k: c for k, c in enumerate(counts) if c}
    if isinstance(transform, FloorPower):
        top = transform.apply(n - 1)
        out = {}
        for k in range(top + 1):
            lo = transform.inverse_ceil(k)
            hi = min(transform.inverse_ceil(k + 1), n)
            if hi > lo:
                out[k] = hi - lo
        return out
    out: dict[int, int] = {}
    for i in range(n):
        k = transform.apply(i)
        out[k] = out.get(k, 0) + 1
    return dict(sorted(out.items()))


@dataclass
class CountingProfile:
    """Counting statistics of a transform along a divisibility chain."""

    transform: IndexTransform
    chain: Sequence[int]

    def F(self, k: int) -> int:
        return multiplicity_F(self.transform, k)

    def G(self, block: int, j: int) -> dict[int, int]:
        return block_counts(self.transform, block, j, self.chain)

    def v(self, block: int, j: int) -> int:
        return distinct_values(self.transform, block, j, self.chain)


def parse_transform(text: str) -> IndexTransform:
    """Parse transform specs: JSON objects or the compact sod:Q / pow:U/V forms."""
    text = text.strip()
    if text.startswith("{"):
        cfg = json.loads(text)
        kind = cfg.get("kind")
        if kind == "sod":
            return SumOfDigits(int(cfg["q"]))
        if kind == "pow":
            return FloorPower(int(cfg["u"]), int(cfg["v"]))
        if kind == "table":
            with open(cfg["path"]) as fh:
                values = tuple(int(line) for line in fh if line.strip())
            return TableTransform(values)
        raise ValueError(f"unknown transform kind {kind!r}")
    kind, _, rest = text.partition(":")
    kind = kind.lower()
    if kind == "sod":
        return SumOfDigits(int(rest))
    if kind == "pow":
        u, _, v = rest.replace(",", "/").partition("/")
        return FloorPower(int(u), int(v))
    raise ValueError(f"cannot parse transform {text!r}")
