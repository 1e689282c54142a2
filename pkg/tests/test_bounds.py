import math
from fractions import Fraction

import pytest

from lowdisc import (
    DivisibilityChain,
    Envelope,
    FloorPower,
    Halton,
    SumOfDigits,
    TableTransform,
    UnimodalityError,
    VanDerCorput,
    alpha_corollary_check,
    fit_monotone_constant,
    general_lower,
    general_sandwich,
    general_upper,
    halton_uniform_main_term,
    measured_delta_table,
    measured_envelope,
    monotone_hypotheses,
    monotone_lower,
    monotone_upper,
    transformed_discrepancy,
    uniform_bound_ts,
    windowed_uniform_discrepancy,
)


def test_chain_validation():
    DivisibilityChain((1, 2, 4, 12))
    with pytest.raises(ValueError):
        DivisibilityChain((2, 4))
    with pytest.raises(ValueError):
        DivisibilityChain((1, 2, 3))
    with pytest.raises(ValueError):
        DivisibilityChain((1, 4, 4))
    chain = DivisibilityChain.geometric(3, 4)
    assert chain[2] == 9 and chain.ratio(2) == 3 and len(chain) == 5


def test_general_lower_examples():
    t = SumOfDigits(2)
    chain = DivisibilityChain.geometric(2, 6)
    assert general_lower(t, chain, 4) == 6  # C(4, 2)
    assert general_lower(SumOfDigits(3), DivisibilityChain.geometric(3, 3), 2) == 3
    assert general_lower(t, chain, 0) == 1


def test_general_upper_constant_envelope_example():
    t = SumOfDigits(2)
    chain = DivisibilityChain.geometric(2, 4)
    res = general_upper(t, chain, Envelope.constant(1.0), d=2)
    # sum_{j<=2} 2 * G_j * 1 = 2 (1 + 1 + 2) = 8
    assert res.value == pytest.approx(8.0)
    assert [term[2] for term in res.per_j] == [1, 1, 2]
    assert res.flags["block_window"] == "exact-shift-identity"


def test_general_upper_d0_case():
    t = SumOfDigits(2)
    chain = DivisibilityChain.geometric(2, 2)
    res = general_upper(t, chain, Envelope.constant(3.5), d=0)
    assert res.value == pytest.approx(2 * 1 * 3.5)


def test_general_upper_refuses_non_unimodal_blocks():
    # non-decreasing staircase whose block-0 value counts are 2,1,3,2 (bimodal)
    t = TableTransform((0, 0, 1, 2, 2, 2, 3, 3) + (3, 3, 3, 3, 4, 4, 4, 4))
    chain = DivisibilityChain((1, 8, 16))
    with pytest.raises(UnimodalityError) as err:
        general_upper(t, chain, Envelope.constant(1.0), d=1, a_window=1)
    assert err.value.level == 1 and err.value.block == 0


def test_general_upper_generic_window_flags():
    t = FloorPower(1, 2)
    chain = DivisibilityChain.geometric(2, 4)
    res = general_upper(t, chain, Envelope.constant(1.0), d=2, a_window=4)
    assert res.flags["block_window"] == 4


def test_measured_envelope_is_nondecreasing():
    env = measured_envelope(VanDerCorput(2), 12)
    values = [env(n) for n in range(1, 13)]
    assert all(b >= a for a, b in zip(values, values[1:]))
    assert env(1) >= 1.0  # a single point has discrepancy 1
    with pytest.raises(ValueError):
        env(13)


def test_transformed_discrepancy_matches_direct_pointset():
    spec = VanDerCorput(2)
    t = SumOfDigits(2)
    from lowdisc import extreme_discrepancy_1d

    for n in (1, 5, 16, 100):
        direct = extreme_discrepancy_1d(
            [spec.point(t.apply(i)).coords[0] for i in range(n)]
        )
        weighted = transformed_discrepancy(spec, t, n)
        assert weighted.value == direct.value


def test_general_sandwich_small():
    reports = general_sandwich(VanDerCorput(2), SumOfDigits(2), d_max=8)
    for d, rep in enumerate(reports):
        assert rep.lower == math.comb(d, d // 2)
        assert rep.holds, (d, rep)
        assert rep.lower <= rep.measured
        assert float(rep.measured) <= rep.upper


def test_monotone_lower_examples():
    t = FloorPower(1, 2)
    assert monotone_lower(t, 10) == Fraction(5, 10)  # f(10)=3, F(2)=5
    assert monotone_lower(t, 100) == Fraction(19, 100)  # f(100)=10, F(9)=19
    assert monotone_lower(t, 1) == Fraction(1)  # f(1)=1 > f(0): F(0)/1
    table = TableTransform((0, 0, 0, 0))
    assert monotone_lower(table, 3) == 0  # f(N) == f(0): degenerate branch


def test_monotone_lower_requires_monotone():
    with pytest.raises(ValueError):
        monotone_lower(SumOfDigits(2), 4)


def test_monotone_lower_below_exact_discrepancy():
    spec = VanDerCorput(2)
    for u, v in ((1, 2), (1, 3), (2, 3)):
        t = FloorPower(u, v)
        for n in (2, 16, 128, 1024):
            lower = monotone_lower(t, n)
            measured = transformed_discrepancy(spec, t, n).value
            assert lower <= measured


def test_monotone_hypotheses_flags():
    hyp = monotone_hypotheses(FloorPower(1, 2), n_max=500, k_max=200)
    assert hyp["f_monotone_surjective"]
    assert hyp["F_monotonicity"] == "monotone"
    # ceiling jitter: F for alpha=2/3 dips by one infinitely often
    hyp23 = monotone_hypotheses(FloorPower(2, 3), n_max=500, k_max=200)
    assert hyp23["f_monotone_surjective"]
    assert hyp23["F_monotonicity"] == "unit-jitter"


def test_monotone_upper_shape():
    t = FloorPower(1, 2)
    # F(f(9)+1) = F(4) = 9
    from lowdisc import multiplicity_F

    assert multiplicity_F(t, t.apply(9) + 1) == 9
    val = monotone_upper(t, 10, s=1, fitted_c=1.0)
    assert val == pytest.approx(2 * 9 * math.log(10) / 10)
    # digital family with t=0 reduces to the plain shape
    assert monotone_upper(t, 10, s=1, fitted_c=1.0, p=2, t=0) == pytest.approx(val)


def test_fitted_monotone_constant_dominates_calibration_and_extension():
    spec = VanDerCorput(2)
    t = FloorPower(1, 2)
    cal = [2**d for d in range(1, 7)]
    c = fit_monotone_constant(spec, t, cal)
    for n in cal + [256, 1024, 4096]:
        measured = float(transformed_discrepancy(spec, t, n).value)
        assert measured <= monotone_upper(t, n, 1, c) * (1 + 1e-9) + 1e-12


def test_alpha_corollary_window_and_band():
    spec = VanDerCorput(2)
    rows, stats = alpha_corollary_check(
        spec, FloorPower(1, 2), [2**d for d in range(1, 11)]
    )
    # F(k) k^(1-1/alpha) = (2k+1)/k in [2, 3] for k >= 1
    assert 2.0 <= stats["f_window_min"] <= stats["f_window_max"] <= 3.0
    scaled = [row.scaled for row in rows]
    assert max(scaled) / min(scaled) < 100  # two-decade band


def test_uniform_bound_examples():
    delta = {m: 1.0 for m in range(0, 4)}
    # (2b-1)(t b^t + sum Delta) = 3 * (0 + 4) at N=8, b=2
    assert uniform_bound_ts(2, 0, 1, 8, delta) == pytest.approx(12.0)
    # trivial branch N < b^t
    assert uniform_bound_ts(2, 3, 1, 7, {}) == 7.0
    with pytest.raises(ValueError, match="missing"):
        uniform_bound_ts(2, 0, 1, 64, {0: 1.0})


def test_measured_delta_table_vdc():
    # every aligned van der Corput block is a shifted grid: b^m * D = 1 exactly
    table = measured_delta_table(VanDerCorput(2), 2, 0, 1, m_max=6, blocks=8)
    for m, val in table.items():
        assert val == pytest.approx(1.0)


def test_windowed_below_uniform_bound():
    spec = VanDerCorput(2)
    delta = measured_delta_table(spec, 2, 0, 1, m_max=7, blocks=8)
    for d in range(0, 8):
        n = 2**d
        rep = windowed_uniform_discrepancy(spec, None, n, 4 * n)
        assert float(n * rep.value) <= uniform_bound_ts(2, 0, 1, n, delta) + 1e-9


def test_halton_main_term_examples():
    for d in (1, 5, 12):
        assert halton_uniform_main_term([2], 2**d) == pytest.approx(d + 1)
        assert halton_uniform_main_term([3], 3**d) == pytest.approx(d + 1)
    # s = 2 sanity: (1/2) prod (floor(b/2) log N / log b + 2)
    n = 729
    want = 0.5 * (math.log(n) / math.log(2) + 2) * (math.log(n) / math.log(3) + 2)
    assert halton_uniform_main_term([2, 3], n) == pytest.approx(want)


def test_sod_envelope_check_band():
    from lowdisc import sod_envelope_check

    rows, fits = sod_envelope_check(VanDerCorput(2), 2, d_max=12, calibration_d=6)
    assert all(row.holds for row in rows)
    assert fits["c2"] > 0
    # s-dimensional star proxy flavor on the Halton sequence
    rows_h, fits_h = sod_envelope_check(Halton((2, 3)), 2, d_max=8, calibration_d=4, mode="star")
    assert all(row.holds for row in rows_h)


@pytest.mark.parametrize("b,q,d_max", [(3, 2, 10), (2, 3, 9), (3, 3, 9)])
def test_sqrt_log_band_other_bases(b, q, d_max):
    # the scaled discrepancy stays in a narrow band for all small (b, q) pairs
    spec = VanDerCorput(b)
    t = SumOfDigits(q)
    scaled = []
    for d in range(max(2, d_max - 8), d_max + 1):
        n = q**d
        value = float(transformed_discrepancy(spec, t, n).value)
        scaled.append(value * math.sqrt(math.log(n)))
    assert max(scaled) <= 3.0 * min(scaled)


@pytest.mark.parametrize("b,q", [(3, 2), (2, 3), (3, 3)])
def test_general_sandwich_other_bases(b, q):
    reports = general_sandwich(VanDerCorput(b), SumOfDigits(q), d_max=8)
    for rep in reports:
        assert rep.holds, (b, q, rep.n)
