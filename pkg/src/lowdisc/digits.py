"""Base-b digit arithmetic: expansions, digit sums, radical inverses, Monna map.

Everything here is exact integer arithmetic on arbitrary-precision ints; the
one floating-point routine is :func:`nearest_int_distance`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering


def _check_base(base: int) -> None:
    if not isinstance(base, int) or base < 2:
        raise ValueError(f"base must be an integer >= 2, got {base!r}")


def _check_nonneg(n: int) -> None:
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"expected a non-negative integer, got {n!r}")


@dataclass(frozen=True)
class DigitVector:
    """Base-b expansion of a non-negative integer, least-significant digit first.

    The most significant stored digit is nonzero; the value 0 has no digits.
    """

    base: int
    digits: tuple[int, ...]

    def __post_init__(self):
        _check_base(self.base)
        for d in self.digits:
            if not (isinstance(d, int) and 0 <= d < self.base):
                raise ValueError(f"digit {d!r} out of range for base {self.base}")
        if self.digits and self.digits[-1] == 0:
            raise ValueError("most significant stored digit must be nonzero")

    def value(self) -> int:
        acc = 0
        for d in reversed(self.digits):
            acc = acc * self.base + d
        return acc

    def __len__(self) -> int:
        return len(self.digits)

    def __iter__(self):
        return iter(self.digits)


@total_ordering
@dataclass(frozen=True, eq=False)
class BRational:
    """Exact value num / base**prec in [0, 1) with the base kept explicit.

    Comparisons (also across bases) cross-multiply arbitrary-precision
    integers; no floating point is involved.  Instances compare and hash by
    value, so ``BRational(1, 2, 1) == BRational(2, 4, 2) == Fraction(1, 2)``.
    """

    num: int
    base: int
    prec: int

    def __post_init__(self):
        _check_base(self.base)
        _check_nonneg(self.num)
        if self.prec < 0:
            raise ValueError("prec must be >= 0")
        if self.num >= self.base**self.prec:
            raise ValueError(
                f"{self.num}/{self.base}^{self.prec} does not lie in [0, 1)"
            )

    @property
    def is_normalized(self) -> bool:
        if self.num == 0:
            return self.prec == 0
        return self.num % self.base != 0

    def normalized(self) -> BRational:
        """Drop trailing zero digits so that prec is minimal."""
        if self.num == 0:
            return BRational(0, self.base, 0)
        num, prec = self.num, self.prec
        while num % self.base == 0:
            num //= self.base
            prec -= 1
        return BRational(num, self.base, prec)

    def padded(self, prec: int) -> BRational:
        """Re-express with precision ``prec`` >= current prec."""
        if prec < self.prec:
            raise ValueError("cannot pad to a smaller precision")
        return BRational(self.num * self.base ** (prec - self.prec), self.base, prec)

    def as_fraction(self) -> Fraction:
        return Fraction(self.num, self.base**self.prec)

    def __float__(self) -> float:
        return float(self.as_fraction())

    def _cmp_key(self, other):
        if isinstance(other, BRational):
            return (
                self.num * other.base**other.prec,
                other.num * self.base**self.prec,
            )
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return (self.num * f.denominator, f.numerator * self.base**self.prec)
        return None

    def __eq__(self, other):
        key = self._cmp_key(other)
        if key is None:
            return NotImplemented
        return key[0] == key[1]

    def __lt__(self, other):
        key = self._cmp_key(other)
        if key is None:
            return NotImplemented
        return key[0] < key[1]

    def __hash__(self):
        return hash(self.as_fraction())

    def __repr__(self):
        return f"BRational({self.num}/{self.base}^{self.prec})"


def expand(n: int, base: int) -> DigitVector:
    """Base-b digits of n, least-significant first (empty for n = 0)."""
    _check_nonneg(n)
    _check_base(base)
    digits = []
    while n:
        n, d = divmod(n, base)
        digits.append(d)
    return DigitVector(base, tuple(digits))


def sum_of_digits(n: int, q: int) -> int:
    """Sum of the base-q digits of n."""
    _check_nonneg(n)
    _check_base(q)
    s = 0
    while n:
        n, d = divmod(n, q)
        s += d
    return s


def radical_inverse(n: int, base: int) -> BRational:
    """Mirror the base-b digits of n across the radix point.

    The result has precision equal to the digit count of n, which is minimal.
    """
    _check_nonneg(n)
    _check_base(base)
    num, prec = 0, 0
    while n:
        n, d = divmod(n, base)
        num = num * base + d
        prec += 1
    return BRational(num, base, prec)


def monna_plus(x: BRational) -> int:
    """Inverse of the radical inverse on finite expansions.

    Sends sum(x_r / b^(r+1)) to sum(x_r * b^r); exact for any finite b-adic
    rational regardless of normalization.
    """
    num, out = x.num, 0
    for _ in range(x.prec):
        num, d = divmod(num, x.base)
        out = out * x.base + d
    return out


def nearest_int_distance(x: float) -> float:
    """Distance of a real number to the nearest integer, in [0, 1/2]."""
    frac = x % 1.0
    return min(frac, 1.0 - frac)
