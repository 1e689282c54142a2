"""Exact extreme and star discrepancy of finite point multisets.

All values are exact rationals.  Suprema over half-open boxes are realized
symbolically: every candidate wall carries a closed/open attainment flag
standing for a one-sided limit, so no numeric epsilon ever appears.  Witness
boxes are reported so each value can be re-checked independently.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from ._util import BudgetExceededError, as_fraction, pmap
from .generators import Point, SequenceSpec, VanDerCorput
from .transforms import IndexTransform

DEFAULT_BOX_BUDGET = 1 << 24

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class BoxSide:
    """One axis of a witness box; closed flags mark which walls touch points."""

    lower: Fraction
    upper: Fraction
    closed_lower: bool
    closed_upper: bool

    def admits(self, x: Fraction) -> bool:
        above = x > self.lower or (self.closed_lower and x == self.lower)
        below = x < self.upper or (self.closed_upper and x == self.upper)
        return above and below

    def __str__(self):
        lb = "[" if self.closed_lower else "("
        rb = "]" if self.closed_upper else ")"
        return f"{lb}{self.lower},{self.upper}{rb}"


@dataclass(frozen=True)
class Box:
    sides: tuple[BoxSide, ...]

    def volume(self) -> Fraction:
        vol = ONE
        for side in self.sides:
            vol *= side.upper - side.lower
        return vol

    def contains(self, coords: Sequence[Fraction]) -> bool:
        return all(side.admits(x) for side, x in zip(self.sides, coords))

    def __str__(self):
        return "x".join(str(s) for s in self.sides)


@dataclass(frozen=True)
class DiscrepancyReport:
    n: int
    value: Fraction
    witness: Box | None
    method: str
    shift: int | None = None

    def __float__(self):
        return float(self.value)


def _coerce_points(points) -> list[tuple[Fraction, ...]]:
    out = []
    for pt in points:
        if isinstance(pt, Point):
            out.append(pt.as_fractions())
        elif isinstance(pt, (tuple, list)):
            out.append(tuple(as_fraction(c) for c in pt))
        else:
            out.append((as_fraction(pt),))
    return out


def _weighted_1d(values, counts) -> tuple[list[Fraction], list[int]]:
    """Merge into sorted unique values with positive multiplicities."""
    vals = [as_fraction(v) for v in values]
    if counts is None:
        counts = [1] * len(vals)
    merged: dict[Fraction, int] = {}
    for v, c in zip(vals, counts):
        if c < 0:
            raise ValueError("multiplicities must be non-negative")
        if not 0 <= v < 1:
            raise ValueError(f"point {v} outside [0, 1)")
        if c:
            merged[v] = merged.get(v, 0) + c
    if not merged:
        raise ValueError("empty point multiset")
    ys = sorted(merged)
    return ys, [merged[y] for y in ys]


def recount(points, box: Box, counts=None) -> Fraction:
    """|A(box)/N - vol(box)| recomputed from scratch (witness verification)."""
    pts = _coerce_points(points)
    if counts is None:
        counts = [1] * len(pts)
    n = sum(counts)
    inside = sum(c for pt, c in zip(pts, counts) if box.contains(pt))
    return abs(Fraction(inside, n) - box.volume())


def extreme_discrepancy_1d(points, counts=None) -> DiscrepancyReport:
    """Exact sup over half-open intervals [a, b) of |A/N - (b-a)|.

    Closed form on the sorted multiset: with cumulative counts c_i at the
    distinct values y_i, the value is max_i(c_i/N - y_i) + max_i(y_i -
    c_{i-1}/N).  The brute-force interval oracle in the test suite checks
    this exactly.
    """
    ys, cnts = _weighted_1d(points, counts)
    n = sum(cnts)
    cum = 0
    d_plus = None
    d_minus = None
    i_plus = i_minus = 0
    for i, (y, c) in enumerate(zip(ys, cnts)):
        below = Fraction(cum, n)
        cum += c
        at = Fraction(cum, n)
        dp = at - y
        dm = y - below
        if d_plus is None or dp > d_plus:
            d_plus, i_plus = dp, i
        if d_minus is None or dm > d_minus:
            d_minus, i_minus = dm, i
    value = d_plus + d_minus
    if ys[i_minus] <= ys[i_plus]:
        box = Box((BoxSide(ys[i_minus], ys[i_plus], True, True),))
    else:
        box = Box((BoxSide(ys[i_plus], ys[i_minus], False, False),))
    return DiscrepancyReport(n, value, box, "exact-1d")


def _star_1d(points, counts=None) -> DiscrepancyReport:
    ys, cnts = _weighted_1d(points, counts)
    n = sum(cnts)
    cum = 0
    best = ZERO
    box = Box((BoxSide(ZERO, ys[0], True, False),))
    for y, c in zip(ys, cnts):
        dm = y - Fraction(cum, n)
        cum += c
        dp = Fraction(cum, n) - y
        if dm > best:
            best = dm
            box = Box((BoxSide(ZERO, y, True, False),))
        if dp > best:
            best = dp
            box = Box((BoxSide(ZERO, y, True, True),))
    return DiscrepancyReport(n, best, box, "star-1d")


def _unique_axes(pts) -> list[list[Fraction]]:
    dim = len(pts[0])
    return [sorted({pt[i] for pt in pts}) for i in range(dim)]


def extreme_discrepancy_grid(
    points, counts=None, budget: int = DEFAULT_BOX_BUDGET
) -> DiscrepancyReport:
    """Exact sup over half-open boxes by exhaustive critical-grid enumeration.

    Positive deviations are maximized by boxes shrink-wrapped onto points
    (all walls closed on coordinate values); negative ones by boxes fattened
    until the walls exclude points (all walls open, or resting on 0/1).  Both
    attainment families are enumerated; budget is in point-evaluation units.
    """
    pts = _coerce_points(points)
    if counts is None:
        counts = [1] * len(pts)
    n = sum(counts)
    if n < 1:
        raise ValueError("empty point multiset")
    dim = len(pts[0])
    axes = _unique_axes(pts)
    closed_boxes = 1
    open_boxes = 1
    for ax in axes:
        u = len(ax)
        closed_boxes *= u * (u + 1) // 2
        open_boxes *= (u + 1) * (u + 1)
    if (closed_boxes + open_boxes) * len(pts) > budget:
        raise BudgetExceededError(
            f"{closed_boxes + open_boxes} candidate boxes at {len(pts)} points "
            f"exceed the budget {budget}; consider the star-discrepancy proxy"
        )

    best: Fraction | None = None
    best_box: Box | None = None

    def consider(dev: Fraction, box: Box):
        nonlocal best, best_box
        if best is None or dev > best:
            best, best_box = dev, box

    # shrink-wrapped closed boxes
    pair_lists = [
        [(lo, hi) for i, lo in enumerate(ax) for hi in ax[i:]] for ax in axes
    ]
    for combo in itertools.product(*pair_lists):
        vol = ONE
        for lo, hi in combo:
            vol *= hi - lo
        inside = sum(
            c
            for pt, c in zip(pts, counts)
            if all(lo <= x <= hi for x, (lo, hi) in zip(pt, combo))
        )
        consider(
            Fraction(inside, n) - vol,
            Box(tuple(BoxSide(lo, hi, True, True) for lo, hi in combo)),
        )

    # fattened open boxes (walls exclude points; 0/1 walls are domain edges)
    lower_lists = [[ZERO] + ax for ax in axes]
    upper_lists = [ax + [ONE] for ax in axes]
    side_lists = [
        [(lo, hi) for lo in los for hi in his if lo < hi]
        for los, his in zip(lower_lists, upper_lists)
    ]
    for combo in itertools.product(*side_lists):
        vol = ONE
        for lo, hi in combo:
            vol *= hi - lo
        inside = sum(
            c
            for pt, c in zip(pts, counts)
            if all(lo < x < hi for x, (lo, hi) in zip(pt, combo))
        )
        consider(
            vol - Fraction(inside, n),
            Box(tuple(BoxSide(lo, hi, False, False) for lo, hi in combo)),
        )

    return DiscrepancyReport(n, best, best_box, "exact-grid")


def star_discrepancy(
    points, counts=None, budget: int = DEFAULT_BOX_BUDGET
) -> DiscrepancyReport:
    """Sup over anchored boxes [0, b): the cheap proxy for extreme discrepancy.

    Satisfies star <= extreme <= 2^s * star.  Upper corners run over the
    coordinate grid (plus 1), each evaluated in both attainment limits.
    """
    pts = _coerce_points(points)
    if counts is None:
        counts = [1] * len(pts)
    dim = len(pts[0])
    if dim == 1:
        return _star_1d([pt[0] for pt in pts], counts)
    n = sum(counts)
    axes = _unique_axes(pts)
    corner_lists = [ax + [ONE] for ax in axes]
    total = 2 * len(pts)
    for cl in corner_lists:
        total *= len(cl)
    if total > budget:
        raise BudgetExceededError(
            f"star enumeration needs {total} point evaluations, over budget {budget}"
        )
    best: Fraction | None = None
    best_box: Box | None = None
    for corner in itertools.product(*corner_lists):
        vol = ONE
        for c in corner:
            vol *= c
        closed = sum(
            c for pt, c in zip(pts, counts) if all(x <= u for x, u in zip(pt, corner))
        )
        opened = sum(
            c for pt, c in zip(pts, counts) if all(x < u for x, u in zip(pt, corner))
        )
        dev_p = Fraction(closed, n) - vol
        dev_m = vol - Fraction(opened, n)
        if best is None or dev_p > best:
            best = dev_p
            best_box = Box(tuple(BoxSide(ZERO, u, True, True) for u in corner))
        if dev_m > best:
            best = dev_m
            best_box = Box(tuple(BoxSide(ZERO, u, True, False) for u in corner))
    return DiscrepancyReport(n, best, best_box, "star-grid")


def _transformed_indices(transform: IndexTransform | None, start: int, n: int):
    if transform is None:
        return range(start, start + n)
    return [transform.apply(i) for i in range(start, start + n)]


_VDC_NUM_CACHE: dict[tuple[int, int], np.ndarray] = {}


def _vdc_scaled_inverses(b: int, prec: int, top: int) -> np.ndarray:
    """radical_inverse(i, b) numerators at fixed precision, for i < top."""
    from .digits import radical_inverse

    key = (b, prec)
    cached = _VDC_NUM_CACHE.get(key)
    if cached is not None and len(cached) >= top:
        return cached[:top]
    size = b**prec
    build = size if size <= 1 << 20 else top
    nums = np.empty(build, dtype=np.int64)
    for i in range(build):
        r = radical_inverse(i, b)
        nums[i] = r.num * b ** (prec - r.prec)
    nums.setflags(write=False)
    if build == size and len(_VDC_NUM_CACHE) < 16:
        _VDC_NUM_CACHE[key] = nums
    return nums[:top]


def _vdc_window_fast(spec: VanDerCorput, n: int, k_max: int):
    """Scaled integer evaluation of all shifted-block extreme discrepancies.

    All points in the window share the denominator b**prec, so D+ and D- are
    maxima of integers over the common denominator n * b**prec.
    """
    b = spec.base
    top = k_max + n
    prec = 0
    t = top - 1
    while t:
        t //= b
        prec += 1
    den = b**prec
    if den * n >= 1 << 62:
        return None
    nums = _vdc_scaled_inverses(b, prec, top)
    ranks = np.arange(1, n + 1, dtype=np.int64)

    def shift_value(k: int) -> int:
        w = np.sort(nums[k : k + n])
        d_plus = int(np.max(ranks * den - w * n))
        d_minus = int(np.max(w * n - (ranks - 1) * den))
        return d_plus + d_minus

    scaled = pmap(shift_value, range(k_max + 1))
    best_k = 0
    for k, v in enumerate(scaled):
        if v > scaled[best_k]:
            best_k = k
    return best_k, Fraction(scaled[best_k], n * den)


def windowed_uniform_discrepancy(
    spec: SequenceSpec,
    transform: IndexTransform | None,
    n: int,
    k_max: int | None = None,
    mode: str = "extreme",
) -> DiscrepancyReport:
    """Max over shifts 0 <= k <= k_max of the discrepancy of the shifted block.

    This is a certified LOWER estimate of the uniform discrepancy (the true
    sup ranges over all shifts); the arg-max shift is reported.  The window
    defaults to k_max = 4n.
    """
    if mode not in ("extreme", "star"):
        raise ValueError(f"unknown mode {mode!r}")
    if k_max is None:
        k_max = 4 * n
    if n < 1 or k_max < 0:
        raise ValueError("need n >= 1 and k_max >= 0")

    if (
        mode == "extreme"
        and transform is None
        and isinstance(spec, VanDerCorput)
    ):
        fast = _vdc_window_fast(spec, n, k_max)
        if fast is not None:
            best_k, value = fast
            block = [spec.point(i).coords[0] for i in range(best_k, best_k + n)]
            report = extreme_discrepancy_1d(block)
            if report.value != value:
                raise AssertionError(
                    "fast windowed path disagrees with the exact 1d formula"
                )
            return DiscrepancyReport(n, value, report.witness, "windowed-extreme", best_k)

    def one_shift(k: int) -> Fraction:
        idx = _transformed_indices(transform, k, n)
        pts = [spec.point(i) for i in idx]
        if spec.dimension == 1 and mode == "extreme":
            return extreme_discrepancy_1d([p.coords[0] for p in pts]).value
        if mode == "extreme":
            return extreme_discrepancy_grid(pts).value
        return star_discrepancy(pts).value

    values = pmap(one_shift, range(k_max + 1))
    best_k = 0
    for k, v in enumerate(values):
        if v > values[best_k]:
            best_k = k
    idx = _transformed_indices(transform, best_k, n)
    pts = [spec.point(i) for i in idx]
    if spec.dimension == 1 and mode == "extreme":
        rep = extreme_discrepancy_1d([p.coords[0] for p in pts])
    elif mode == "extreme":
        rep = extreme_discrepancy_grid(pts)
    else:
        rep = star_discrepancy(pts)
    return DiscrepancyReport(n, rep.value, rep.witness, f"windowed-{mode}", best_k)
