"""Bound formulas for index-transformed sequences and their empirical checks.

Conventions: `lower` values are exact integers or rationals compared with
zero tolerance; `upper` values are floats built from envelopes with fitted
constants (the underlying theorems leave those constants unspecified, so the
artifact fits them on a calibration prefix and reports them).  All logs are
natural, absorbed by the fitted constants.  Every verification records the
hypothesis checks it performed and refuses to report success if one failed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from ._util import UnimodalityError, pmap
from .digitsum_dist import distribution
from .discrepancy import (
    DiscrepancyReport,
    extreme_discrepancy_1d,
    star_discrepancy,
    windowed_uniform_discrepancy,
)
from .generators import SequenceSpec
from .transforms import (
    FloorPower,
    IndexTransform,
    SumOfDigits,
    block_counts,
    is_unimodal,
    multiplicity_F,
    value_counts_below,
)

UPPER_SLACK = 1e-9  # float-comparison slack for fitted upper bounds


@dataclass(frozen=True)
class DivisibilityChain:
    """Strictly increasing N_0 = 1 | N_1 | N_2 | ... (finite prefix)."""

    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        if not self.values or self.values[0] != 1:
            raise ValueError("a divisibility chain starts at N_0 = 1")
        for a, b in zip(self.values, self.values[1:]):
            if b <= a or b % a:
                raise ValueError(
                    f"chain must be strictly increasing with {a} | {b}"
                )

    @classmethod
    def geometric(cls, q: int, d: int) -> DivisibilityChain:
        return cls(tuple(q**j for j in range(d + 1)))

    def __getitem__(self, j: int) -> int:
        return self.values[j]

    def __len__(self) -> int:
        return len(self.values)

    def ratio(self, j: int) -> int:
        return self.values[j + 1] // self.values[j]


@dataclass
class Envelope:
    """Non-decreasing f with N * (uniform discrepancy of the base sequence) <= f(N).

    Sources: a measured table (running max of windowed measurements, which
    are lower estimates of the true uniform discrepancy -- recorded as such)
    or an analytic C * (log N)^s shape with a fitted constant.
    """

    source: str
    _fn: Callable[[int], float]
    n_max: int | None = None

    def __call__(self, n: int) -> float:
        if n < 1:
            raise ValueError("envelope argument must be >= 1")
        if self.n_max is not None and n > self.n_max:
            raise ValueError(f"envelope table only covers N <= {self.n_max}")
        return self._fn(n)

    @classmethod
    def from_table(cls, table: Mapping[int, float], source: str = "measured-table"):
        n_max = max(table)
        running = {}
        acc = 0.0
        for n in range(1, n_max + 1):
            if n in table:
                acc = max(acc, float(table[n]))
            running[n] = acc
        return cls(source, lambda n: running[n], n_max)

    @classmethod
    def from_log_power(cls, c: float, s: int, source: str = "fitted-log-power"):
        # max(n, 2) keeps f positive at n = 1, where (log n)^s would vanish
        return cls(source, lambda n: c * math.log(max(n, 2)) ** s, None)

    @classmethod
    def constant(cls, c: float):
        return cls("constant", lambda n: c, None)


def measured_envelope(
    spec: SequenceSpec, n_max: int, window_factor: int = 4
) -> Envelope:
    """Envelope table from windowed uniform-discrepancy measurements.

    The windowed sup is a lower estimate of the true uniform discrepancy, so
    the source tag records that this is a measured stand-in, not a proof.
    """
    table = {}
    for n in range(1, n_max + 1):
        rep = windowed_uniform_discrepancy(spec, None, n, window_factor * n)
        table[n] = float(n * rep.value)
    return Envelope.from_table(table, source="measured-windowed")


def general_lower(transform: IndexTransform, chain: DivisibilityChain, d: int) -> int:
    """max_k G_{0,d}(k): the exact multiplicity floor for N in [N_d, N_{d+1})."""
    if d >= len(chain):
        raise ValueError("chain prefix too short for depth d")
    return max(block_counts(transform, 0, d, chain).values())


@dataclass
class GeneralUpper:
    value: float
    per_j: list[tuple[int, int, int, int, float, float]]  # j, ratio, G_j, v_j, f(v_j), term
    flags: dict


def general_upper(
    transform: IndexTransform,
    chain: DivisibilityChain,
    envelope: Envelope,
    d: int,
    a_window: int = 16,
) -> GeneralUpper:
    """sum_{j<=d} (N_{j+1}/N_j) G_j f(v_j), after verifying unimodality.

    For the sum-of-digits transform on its geometric chain the shift identity
    makes G_j and v_j exact (the sup over blocks A equals the block-0 value);
    other transforms scan blocks A < a_window, a stated approximation.
    Raises UnimodalityError on the first non-unimodal block profile.
    """
    if d + 1 >= len(chain):
        raise ValueError("chain too short: need N_{d+1}")
    sod_exact = isinstance(transform, SumOfDigits) and all(
        chain[j] == transform.q**j for j in range(d + 1)
    )
    per_j = []
    total = []
    for j in range(d + 1):
        if sod_exact:
            counts = distribution(transform.q, j).counts
            if not is_unimodal(counts):
                raise UnimodalityError(0, j)
            g_j = max(counts)
            v_j = 1 if j == 0 else j * (transform.q - 1) + 1
        else:
            g_j = 0
            v_j = 0
            for a in range(a_window):
                profile = block_counts(transform, a, j, chain)
                if not is_unimodal(profile):
                    raise UnimodalityError(a, j)
                g_j = max(g_j, max(profile.values()))
                v_j = max(v_j, len(profile))
        f_vj = envelope(v_j)
        term = chain.ratio(j) * g_j * f_vj
        per_j.append((j, chain.ratio(j), g_j, v_j, f_vj, term))
        total.append(term)
    flags = {
        "unimodality_verified": True,
        "block_window": "exact-shift-identity" if sod_exact else a_window,
        "envelope_source": envelope.source,
    }
    return GeneralUpper(math.fsum(total), per_j, flags)


def transformed_discrepancy(
    spec: SequenceSpec,
    transform: IndexTransform | None,
    n: int,
    mode: str = "extreme",
) -> DiscrepancyReport:
    """Exact discrepancy of the first n terms of (x_{f(m)})_m.

    Works at large n because only the distinct index values are materialized,
    weighted by their exact multiplicities.
    """
    if transform is None:
        pts = [spec.point(i) for i in range(n)]
        counts = None
    else:
        multiplicity = value_counts_below(transform, n)
        pts = [spec.point(k) for k in multiplicity]
        counts = list(multiplicity.values())
    if spec.dimension == 1:
        values = [p.coords[0] for p in pts]
        if mode == "extreme":
            return extreme_discrepancy_1d(values, counts)
        return star_discrepancy(values, counts)
    if mode == "extreme":
        from .discrepancy import extreme_discrepancy_grid

        return extreme_discrepancy_grid(pts, counts)
    return star_discrepancy(pts, counts)


@dataclass
class BoundReport:
    """One sandwich check: lower <= N * D_N <= upper, with provenance."""

    n: int
    lower: Fraction
    measured: Fraction  # N * D_N, exact
    upper: float
    per_j_terms: list = field(default_factory=list)
    hypothesis_flags: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        if not all(self.hypothesis_flags.get(k, True) for k in ("unimodality_verified",)):
            return False
        lower_ok = self.lower <= self.measured
        upper_ok = float(self.measured) <= self.upper * (1 + UPPER_SLACK) + UPPER_SLACK
        return lower_ok and upper_ok


def general_sandwich(
    spec: SequenceSpec,
    transform: IndexTransform,
    d_max: int,
    envelope: Envelope | None = None,
    mode: str = "extreme",
) -> list[BoundReport]:
    """Per-level sandwich lower <= N_d * D_{N_d} <= upper for the transform.

    The default envelope is measured from the base sequence's windowed
    uniform discrepancy up to the largest v_j needed.
    """
    if not isinstance(transform, SumOfDigits):
        raise ValueError("the sandwich driver currently covers the digit-sum transform")
    q = transform.q
    chain = DivisibilityChain.geometric(q, d_max + 1)
    if envelope is None:
        envelope = measured_envelope(spec, d_max * (q - 1) + 1)
    reports = []
    for d in range(d_max + 1):
        n = q**d
        lower = Fraction(general_lower(transform, chain, d))
        measured = n * transformed_discrepancy(spec, transform, n, mode).value
        upper = general_upper(transform, chain, envelope, d)
        reports.append(
            BoundReport(n, lower, measured, upper.value, upper.per_j, upper.flags)
        )
    return reports


@dataclass
class EnvelopeFitRow:
    d: int
    n: int
    measured: float  # D_N as a float (exact value available upstream)
    scaled: float  # D_N * sqrt(log N)
    lower_fit: float  # c2 / sqrt(log N)
    upper_fit: float | None  # c3 (loglog N)^s / sqrt(log N); None if loglog <= 0
    holds: bool


def sod_envelope_check(
    spec: SequenceSpec,
    q: int,
    d_max: int,
    calibration_d: int | None = None,
    mode: str = "extreme",
) -> tuple[list[EnvelopeFitRow], dict]:
    """Fit and verify c2/sqrt(log N) <= D_N <= c3 (loglog N)^s / sqrt(log N).

    Constants are fitted on the calibration prefix d <= calibration_d and the
    sandwich is then checked on every level; rows where loglog N <= 0 only
    check the lower side (flagged trivial).
    """
    transform = SumOfDigits(q)
    s = spec.dimension
    if calibration_d is None:
        calibration_d = max(2, d_max // 2)
    levels = []
    for d in range(1, d_max + 1):
        n = q**d
        value = float(transformed_discrepancy(spec, transform, n, mode).value)
        levels.append((d, n, value))
    c2 = min(
        v * math.sqrt(math.log(n)) for d, n, v in levels if d <= calibration_d
    )
    uppers = [
        v * math.sqrt(math.log(n)) / math.log(math.log(n)) ** s
        for d, n, v in levels
        if d <= calibration_d and math.log(math.log(n)) > 0
    ]
    c3 = max(uppers) if uppers else float("nan")
    rows = []
    for d, n, v in levels:
        lower_fit = c2 / math.sqrt(math.log(n))
        loglog = math.log(math.log(n)) if math.log(n) > 1 else 0.0
        upper_fit = c3 * loglog**s / math.sqrt(math.log(n)) if loglog > 0 else None
        ok = lower_fit <= v * (1 + UPPER_SLACK)
        if upper_fit is not None:
            ok = ok and v <= upper_fit * (1 + UPPER_SLACK)
        rows.append(EnvelopeFitRow(d, n, v, v * math.sqrt(math.log(n)), lower_fit, upper_fit, ok))
    fits = {"c2": c2, "c3": c3, "calibration_d": calibration_d, "s": s}
    return rows, fits


def monotone_lower(transform: IndexTransform, n: int) -> Fraction:
    """F(f(N) - 1) / N, the repeated-point floor for monotone transforms.

    Zero when f(N) equals f(0) (the degenerate branch of the theorem).
    """
    if not transform.monotone:
        raise ValueError("monotone_lower needs a monotone transform")
    f_n = transform.apply(n)
    if f_n == transform.apply(0):
        return Fraction(0)
    return Fraction(multiplicity_F(transform, f_n - 1), n)


def monotone_hypotheses(transform: IndexTransform, n_max: int, k_max: int) -> dict:
    """Record the theorem hypotheses on a scan window.

    f must be non-decreasing and surjective (steps of at most 1).  F is
    allowed unit jitter: exact ceiling counts of floor-power maps wobble by
    +-1 around a growing trend, so strict monotonicity fails infinitely often
    even though the asymptotic statement stands; the flag distinguishes
    'monotone', 'unit-jitter', and 'violated'.
    """
    steps_ok = True
    prev = transform.apply(0)
    for i in range(1, n_max + 1):
        cur = transform.apply(i)
        if cur < prev or cur - prev > 1:
            steps_ok = False
            break
        prev = cur
    f_values = [multiplicity_F(transform, k) for k in range(k_max + 1)]
    worst_drop = 0
    for a, b in zip(f_values, f_values[1:]):
        worst_drop = max(worst_drop, a - b)
    if worst_drop == 0:
        f_status = "monotone"
    elif worst_drop <= 1:
        f_status = "unit-jitter"
    else:
        f_status = "violated"
    return {
        "f_monotone_surjective": steps_ok,
        "F_monotonicity": f_status,
        "scan_n_max": n_max,
        "scan_k_max": k_max,
    }


def monotone_upper(
    transform: IndexTransform,
    n: int,
    s: int,
    fitted_c: float,
    p: int | None = None,
    t: int = 0,
) -> float:
    """C * p^t * 2 F(f(N-1)+1) (log N)^s / N with a caller-fitted constant."""
    if n < 2:
        raise ValueError("the upper-bound shape needs N >= 2")
    factor = 1 if p is None else p**t
    big_f = multiplicity_F(transform, transform.apply(n - 1) + 1)
    return fitted_c * factor * 2 * big_f * math.log(n) ** s / n


def fit_monotone_constant(
    spec: SequenceSpec,
    transform: IndexTransform,
    calibration_n: Sequence[int],
    mode: str = "extreme",
    p: int | None = None,
    t: int = 0,
) -> float:
    """Smallest C making the upper-bound shape dominate the measured values."""
    s = spec.dimension
    factor = 1 if p is None else p**t
    best = 0.0
    for n in calibration_n:
        measured = float(transformed_discrepancy(spec, transform, n, mode).value)
        big_f = multiplicity_F(transform, transform.apply(n - 1) + 1)
        shape = factor * 2 * big_f * math.log(n) ** s / n
        best = max(best, measured / shape)
    return best


@dataclass
class AlphaRow:
    n: int
    measured: float
    scaled: float  # D_N * N^alpha
    banded: float  # D_N * N^alpha / log N


def alpha_corollary_check(
    spec: SequenceSpec,
    transform: FloorPower,
    n_values: Sequence[int],
    k_probe: int = 1000,
    mode: str = "extreme",
) -> tuple[list[AlphaRow], dict]:
    """Probe F(k) * k^(1 - 1/alpha) for boundedness, then the D_N sandwich scale.

    Returns per-N rows of D_N * N^alpha (and its log-normalized variant) plus
    the observed F-window; the caller asserts the band it expects.
    """
    alpha = transform.u / transform.v
    ratios = [
        multiplicity_F(transform, k) * k ** (1 - 1 / alpha)
        for k in range(1, k_probe + 1)
    ]
    stats = {
        "f_window_min": min(ratios),
        "f_window_max": max(ratios),
        "alpha": alpha,
    }

    def one(n: int) -> AlphaRow:
        measured = float(transformed_discrepancy(spec, transform, n, mode).value)
        scaled = measured * n**alpha
        return AlphaRow(n, measured, scaled, scaled / math.log(n) if n > 1 else scaled)

    rows = pmap(one, n_values)
    return rows, stats


def uniform_bound_ts(
    b: int, t: int, s: int, n: int, delta_table: Mapping[int, float]
) -> float:
    """(2b-1) (t b^t + sum_{m=t}^{floor(log_b N)} Delta_b(t,m,s)) on N * uniform D.

    For N < b^t the trivial bound N applies.  The delta table must cover
    every m up to floor(log_b N); each entry bounds b^m * D for the
    (t,m,s)-nets in play (measured or shape-fitted, per its provenance).
    """
    if n < b**t:
        return float(n)
    m_top = 0
    size = b
    while size <= n:
        m_top += 1
        size *= b
    missing = [m for m in range(t, m_top + 1) if m not in delta_table]
    if missing:
        raise ValueError(f"delta table is missing levels {missing}")
    return (2 * b - 1) * (
        t * b**t + math.fsum(delta_table[m] for m in range(t, m_top + 1))
    )


def measured_delta_table(
    spec: SequenceSpec, b: int, t: int, s: int, m_max: int, blocks: int = 8
) -> dict[int, float]:
    """Delta(m) = max over the first aligned blocks of b^m * (exact block D)."""
    if spec.dimension != s:
        raise ValueError("spec dimension does not match s")
    table = {}
    for m in range(t, m_max + 1):
        size = b**m
        worst = Fraction(0)
        for k in range(blocks):
            pts = [spec.point(i) for i in range(k * size, (k + 1) * size)]
            if s == 1:
                rep = extreme_discrepancy_1d([p.coords[0] for p in pts])
            else:
                from .discrepancy import extreme_discrepancy_grid

                rep = extreme_discrepancy_grid(pts)
            worst = max(worst, rep.value)
        table[m] = float(size * worst)
    return table


def halton_uniform_main_term(bases: Sequence[int], n: int) -> float:
    """(1/s!) prod_j (floor(b_j/2) log N / log b_j + s)."""
    if n < 2:
        raise ValueError("main term needs N >= 2")
    s = len(bases)
    prod = 1.0
    for b in bases:
        prod *= (b // 2) * math.log(n) / math.log(b) + s
    return prod / math.factorial(s)
