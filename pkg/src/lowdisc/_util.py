"""Shared plumbing: scan budgets, deterministic parallel map, integer roots."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

THREADS_ENV = "LOWDISC_THREADS"


class BudgetExceededError(RuntimeError):
    """An exhaustive scan or enumeration would exceed its evaluation budget."""


class UnimodalityError(RuntimeError):
    """A bound hypothesis failed: some block-count profile is not unimodal."""

    def __init__(self, block: int, level: int):
        self.block = block
        self.level = level
        super().__init__(
            f"block counts for A={block}, j={level} are not unimodal"
        )


def thread_count() -> int:
    """Worker count, capped by the LOWDISC_THREADS environment variable."""
    env = os.environ.get(THREADS_ENV)
    if env is not None:
        n = int(env)
        if n < 1:
            raise ValueError(f"{THREADS_ENV} must be >= 1, got {env!r}")
        return n
    return os.cpu_count() or 1


def pmap(fn, items):
    """Map fn over items, preserving input order in the result.

    Uses a thread pool of size thread_count(); results are deterministic and
    independent of the worker count because reduction order is the input order.
    """
    items = list(items)
    n = thread_count()
    if n == 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def int_nth_root(x: int, r: int) -> int:
    """Largest integer g with g**r <= x, exact for arbitrary-precision x."""
    if x < 0:
        raise ValueError("x must be non-negative")
    if r < 1:
        raise ValueError("r must be >= 1")
    if r == 1 or x < 2:
        return x
    g = 1 << -(-x.bit_length() // r)  # >= true root
    while True:
        ng = ((r - 1) * g + x // g ** (r - 1)) // r
        if ng >= g:
            break
        g = ng
    while g**r > x:
        g -= 1
    while (g + 1) ** r <= x:
        g += 1
    return g


def as_fraction(x) -> Fraction:
    """Coerce Fraction / int / BRational-like values to Fraction."""
    if isinstance(x, Fraction):
        return x
    if hasattr(x, "as_fraction"):
        return x.as_fraction()
    return Fraction(x)


def format_fraction(x) -> str:
    """Serialize an exact value as num/den."""
    f = as_fraction(x)
    return f"{f.numerator}/{f.denominator}"
